#ifndef OWALK_SVG_HPP
#define OWALK_SVG_HPP

#include <string>
#include <vector>

#include "owalk/stats.hpp"

namespace owalk {

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    double yerr = 0.0;
    bool flagged = false;  // drawn hollow, excluded from the fit
};

// Deterministic hand-emitted log-log scatter with a least-squares slope
// annotation over the unflagged points.
std::string svg_loglog_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<PlotPoint>& pts);

// Slope of log y vs log x over unflagged points, inverse-variance weighted.
LineFit loglog_fit(const std::vector<PlotPoint>& pts);

}  // namespace owalk

#endif
