#include "owalk/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace owalk {

LineFit loglog_fit(const std::vector<PlotPoint>& pts) {
    std::vector<double> x, y, w;
    for (const auto& p : pts) {
        if (p.flagged) continue;
        if (!(p.x > 0 && p.y > 0)) throw std::invalid_argument("loglog_fit: nonpositive data");
        x.push_back(std::log(p.x));
        y.push_back(std::log(p.y));
        // var(log y) ~ (yerr / y)^2
        double rel = p.yerr > 0 ? p.yerr / p.y : 0.0;
        w.push_back(rel > 0 ? 1.0 / (rel * rel) : 1.0);
    }
    if (x.size() < 2) throw std::invalid_argument("loglog_fit: need >= 2 unflagged points");
    return least_squares(x, y, w);
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string svg_loglog_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<PlotPoint>& pts) {
    if (pts.size() < 2) throw std::invalid_argument("svg_loglog_plot: need >= 2 points");
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;

    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const auto& p : pts) {
        double lx = std::log10(p.x), ly = std::log10(p.y);
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, std::log10(std::max(p.y - p.yerr, p.y * 0.5)));
        ly1 = std::max(ly1, std::log10(p.y + p.yerr));
    }
    double padx = 0.05 * std::max(lx1 - lx0, 0.1), pady = 0.05 * std::max(ly1 - ly0, 0.1);
    lx0 -= padx;
    lx1 += padx;
    ly0 -= pady;
    ly1 += pady;

    auto X = [&](double v) { return ml + (std::log10(v) - lx0) / (lx1 - lx0) * (W - ml - mr); };
    auto Y = [&](double v) { return H - mb - (std::log10(v) - ly0) / (ly1 - ly0) * (H - mt - mb); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" +
         fmt(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         title + "</text>\n";
    s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" + fmt(W - mr) +
         "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
         fmt(H - mb) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(W / 2) + "\" y=\"" + fmt(H - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + xlabel + "</text>\n";
    s += "<text x=\"16\" y=\"" + fmt(H / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + fmt(H / 2) + ")\">" + ylabel + "</text>\n";

    // decade ticks
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        double xv = std::pow(10.0, e);
        s += "<line x1=\"" + fmt(X(xv)) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" + fmt(X(xv)) +
             "\" y2=\"" + fmt(H - mb + 6) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt(X(xv)) + "\" y=\"" + fmt(H - mb + 20) +
             "\" text-anchor=\"middle\" font-size=\"11\">1e" + std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        double yv = std::pow(10.0, e);
        s += "<line x1=\"" + fmt(ml - 6) + "\" y1=\"" + fmt(Y(yv)) + "\" x2=\"" + fmt(ml) +
             "\" y2=\"" + fmt(Y(yv)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt(ml - 10) + "\" y=\"" + fmt(Y(yv) + 4) +
             "\" text-anchor=\"end\" font-size=\"11\">1e" + std::to_string(e) + "</text>\n";
    }

    LineFit fit = loglog_fit(pts);
    // fitted line in natural-log space: ln y = slope ln x + intercept
    double xa = std::pow(10.0, lx0 + padx), xb = std::pow(10.0, lx1 - padx);
    double ya = std::exp(fit.slope * std::log(xa) + fit.intercept);
    double yb = std::exp(fit.slope * std::log(xb) + fit.intercept);
    s += "<line x1=\"" + fmt(X(xa)) + "\" y1=\"" + fmt(Y(ya)) + "\" x2=\"" + fmt(X(xb)) +
         "\" y2=\"" + fmt(Y(yb)) + "\" stroke=\"steelblue\" stroke-dasharray=\"5,3\"/>\n";
    s += "<text x=\"" + fmt(W - mr - 8) + "\" y=\"" + fmt(mt + 16) +
         "\" text-anchor=\"end\" font-size=\"13\" fill=\"steelblue\">slope = " +
         fmt(fit.slope) + "</text>\n";

    for (const auto& p : pts) {
        if (p.yerr > 0) {
            s += "<line x1=\"" + fmt(X(p.x)) + "\" y1=\"" + fmt(Y(p.y + p.yerr)) + "\" x2=\"" +
                 fmt(X(p.x)) + "\" y2=\"" + fmt(Y(std::max(p.y - p.yerr, p.y * 0.5))) +
                 "\" stroke=\"black\"/>\n";
        }
        s += "<circle cx=\"" + fmt(X(p.x)) + "\" cy=\"" + fmt(Y(p.y)) + "\" r=\"4\" " +
             (p.flagged ? "fill=\"white\" stroke=\"crimson\"" : "fill=\"black\"") + "/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace owalk
