#include "owalk/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <ostream>
#include <semaphore>
#include <sstream>
#include <thread>

#include "owalk/spectral.hpp"
#include "owalk/svg.hpp"

namespace owalk {

void ExperimentConfig::validate() const {
    model.validate();
    if (N_grid.empty()) throw std::invalid_argument("config: N_grid must be nonempty");
    for (long long n : N_grid)
        if (n <= 0) throw std::invalid_argument("config: N_grid entries must be positive");
    if (chains < 2) throw std::invalid_argument("config: chains >= 2 required");
    if (sweeps <= 0 || thin <= 0 || burn_in < 0)
        throw std::invalid_argument("config: bad sweep counts");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line, section;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            section = line.substr(1, line.find(']') - 1);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("load_config: bad line: " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(key);
        trim(val);
        std::string full = section.empty() ? key : section + "." + key;

        if (full == "model.d") cfg.model.d = std::stoi(val);
        else if (full == "model.p") cfg.model.p = std::stod(val);
        else if (full == "model.seed") cfg.model.seed = std::stoull(val);
        else if (full == "run.N_grid") {
            cfg.N_grid.clear();
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) cfg.N_grid.push_back(std::stoll(tok));
        } else if (full == "run.chains") cfg.chains = std::stoi(val);
        else if (full == "run.sweeps") cfg.sweeps = std::stoll(val);
        else if (full == "run.burn_in") cfg.burn_in = std::stoll(val);
        else if (full == "run.thin") cfg.thin = std::stoll(val);
        else if (full == "run.output_dir") cfg.output_dir = val;
        else if (full == "run.emit_plots") cfg.emit_plots = (val == "true" || val == "1");
        else if (full == "moves.w_segment") cfg.chain.w_segment = std::stod(val);
        else if (full == "moves.w_endpoint") cfg.chain.w_endpoint = std::stod(val);
        else if (full == "moves.w_wiggle") cfg.chain.w_wiggle = std::stod(val);
        else if (full == "moves.segment_mean_frac") cfg.chain.segment_mean_frac = std::stod(val);
        else if (full == "moves.coiled_start") cfg.chain.coiled_start = (val == "true" || val == "1");
        else if (full == "moves.start_box_side") cfg.chain.start_box_side = std::stoll(val);
        else if (full == "moves.segment_len_sqrt_coeff") cfg.segment_len_sqrt_coeff = std::stod(val);
        else if (full == "truly_open.t_surv") cfg.truly_open.t_surv = std::stoll(val);
        else if (full == "truly_open.threshold") cfg.truly_open.threshold = std::stod(val);
        else if (full == "crossings.inner_frac") cfg.crossing_inner_frac = std::stod(val);
        else if (full == "crossings.outer_frac") cfg.crossing_outer_frac = std::stod(val);
        else throw std::runtime_error("load_config: unknown key " + full);
    }
    return cfg;
}

namespace {

struct ChainObservables {
    MeanErr range, boundary, covering, d07, d08, d09, crossings;
    double tau = 1.0;
    bool reliable = true;
};

ChainObservables run_one_chain(const ExperimentConfig& cfg, long long N, int chain_idx) {
    ModelParams params = cfg.model;
    params.N = N;
    // per-(N, chain) stream; independent of scheduling
    params.seed = cfg.model.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(N) * 1000003ull +
                  static_cast<std::uint64_t>(chain_idx);

    ScalingConstants sc = scaling_constants(params.d, params.p);
    const double rho = sc.rho_N(N);

    ChainConfig cc = cfg.chain;
    cc.sweeps = cfg.sweeps;
    cc.burn_in = cfg.burn_in;
    cc.thin = cfg.thin;
    if (cc.coiled_start && cc.start_box_side == 0)
        cc.start_box_side = std::max<long long>(2, std::llround(std::ceil(rho)));
    if (cfg.segment_len_sqrt_coeff > 0.0)
        cc.segment_mean_frac =
            cfg.segment_len_sqrt_coeff / std::sqrt(static_cast<double>(N));

    // rho_N is a volume^{1/d}: the confinement ball of volume (f*rho)^d has
    // Euclidean radius f*rho*omega_d^{-1/d}
    const double ball_r = rho / std::pow(unit_ball_volume(params.d), 1.0 / params.d);
    std::vector<double> deficit07, deficit08, deficit09, crossings;
    auto on_sample = [&](const Chain& chain, long long) {
        LatticeSet range = chain.path().range_set();
        CenterResult c = empirical_center(range);
        deficit07.push_back(ball_covering_deficit(range, c.center, 0.7 * ball_r).fraction);
        deficit08.push_back(ball_covering_deficit(range, c.center, 0.8 * ball_r).fraction);
        deficit09.push_back(ball_covering_deficit(range, c.center, 0.9 * ball_r).fraction);
        CrossingDecomposition cd = crossing_decomposition(
            chain.path(), c.center, cfg.crossing_inner_frac * rho,
            cfg.crossing_outer_frac * rho);
        crossings.push_back(static_cast<double>(cd.K));
    };

    ChainResult res = run_chain(params, cc, on_sample);

    ChainObservables out;
    std::vector<double> range_v, bnd_v, cov_v;
    for (const auto& s : res.samples) {
        range_v.push_back(static_cast<double>(s.range_size));
        bnd_v.push_back(static_cast<double>(s.boundary_size));
        cov_v.push_back(s.covering_radius);
    }
    out.range = mean_stderr(range_v);
    out.boundary = mean_stderr(bnd_v);
    out.covering = mean_stderr(cov_v);
    out.d07 = mean_stderr(deficit07);
    out.d08 = mean_stderr(deficit08);
    out.d09 = mean_stderr(deficit09);
    out.crossings = mean_stderr(crossings);
    out.tau = res.tau_range.tau;
    out.reliable = res.tau_range.reliable;
    return out;
}

MeanErr combine_chain_means(const std::vector<MeanErr>& per_chain) {
    std::vector<double> means;
    for (const auto& m : per_chain) means.push_back(m.mean);
    return mean_stderr(means);
}

}  // namespace

std::vector<ScalingRow> run_scaling_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ScalingConstants sc = scaling_constants(cfg.model.d, cfg.model.p);

    struct Task {
        long long N;
        int chain;
    };
    std::vector<Task> tasks;
    for (long long N : cfg.N_grid)
        for (int c = 0; c < cfg.chains; ++c) tasks.push_back({N, c});

    std::vector<ChainObservables> results(tasks.size());
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::counting_semaphore<64> slots(std::min<unsigned>(workers, 64));
    std::vector<std::future<void>> futs;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        slots.acquire();
        futs.push_back(std::async(std::launch::async, [&, t] {
            results[t] = run_one_chain(cfg, tasks[t].N, tasks[t].chain);
            slots.release();
        }));
    }
    for (auto& f : futs) f.get();

    // deterministic fold in (N, chain) order
    std::vector<ScalingRow> rows;
    std::size_t idx = 0;
    for (long long N : cfg.N_grid) {
        std::vector<MeanErr> range, bnd, cov, d07, d08, d09, cross;
        ScalingRow row;
        row.N = N;
        row.rho = sc.rho_N(N);
        for (int c = 0; c < cfg.chains; ++c, ++idx) {
            const auto& r = results[idx];
            range.push_back(r.range);
            bnd.push_back(r.boundary);
            cov.push_back(r.covering);
            d07.push_back(r.d07);
            d08.push_back(r.d08);
            d09.push_back(r.d09);
            cross.push_back(r.crossings);
            row.max_tau = std::max(row.max_tau, r.tau);
            if (!r.reliable) row.flagged = true;
        }
        row.range = combine_chain_means(range);
        row.boundary = combine_chain_means(bnd);
        row.covering_radius = combine_chain_means(cov);
        row.deficit07 = combine_chain_means(d07);
        row.deficit08 = combine_chain_means(d08);
        row.deficit09 = combine_chain_means(d09);
        row.crossings = combine_chain_means(cross);
        rows.push_back(row);
    }
    return rows;
}

void write_scaling_csv(std::ostream& os, const ExperimentConfig& cfg,
                       const std::vector<ScalingRow>& rows) {
    os << "# owalk scaling run\n";
    os << "# d=" << cfg.model.d << " p=" << cfg.model.p << " seed=" << cfg.model.seed
       << " chains=" << cfg.chains << " sweeps=" << cfg.sweeps << " burn_in=" << cfg.burn_in
       << " thin=" << cfg.thin << "\n";
    os << "# moves: w_segment=" << cfg.chain.w_segment << " w_endpoint=" << cfg.chain.w_endpoint
       << " w_wiggle=" << cfg.chain.w_wiggle
       << " segment_mean_frac=" << cfg.chain.segment_mean_frac
       << " coiled_start=" << cfg.chain.coiled_start << "\n";
    os << "# N_grid=";
    for (std::size_t i = 0; i < cfg.N_grid.size(); ++i)
        os << (i ? "," : "") << cfg.N_grid[i];
    os << "\n";
    os << "N,rho,range_mean,range_err,boundary_mean,boundary_err,covering_mean,covering_err,"
          "deficit07,deficit07_err,deficit08,deficit08_err,deficit09,deficit09_err,"
          "crossings_mean,crossings_err,max_tau,flagged\n";
    for (const auto& r : rows) {
        os << r.N << ',' << r.rho << ',' << r.range.mean << ',' << r.range.err << ','
           << r.boundary.mean << ',' << r.boundary.err << ',' << r.covering_radius.mean << ','
           << r.covering_radius.err << ',' << r.deficit07.mean << ',' << r.deficit07.err << ','
           << r.deficit08.mean << ',' << r.deficit08.err << ',' << r.deficit09.mean << ','
           << r.deficit09.err << ',' << r.crossings.mean << ',' << r.crossings.err << ','
           << r.max_tau << ',' << (r.flagged ? 1 : 0) << '\n';
    }
}

std::vector<std::string> emit_plots(const std::vector<ScalingRow>& rows,
                                    const std::string& output_dir) {
    if (rows.size() < 2) throw std::invalid_argument("emit_plots: need >= 2 rows");
    auto make_points = [&](auto getter) {
        std::vector<PlotPoint> pts;
        for (const auto& r : rows) {
            MeanErr m = getter(r);
            pts.push_back({static_cast<double>(r.N), m.mean, m.err, r.flagged});
        }
        return pts;
    };
    std::vector<std::pair<std::string, std::string>> files = {
        {"range", svg_loglog_plot("mean range vs N", "N", "E|range|",
                                  make_points([](const ScalingRow& r) { return r.range; }))},
        {"boundary", svg_loglog_plot("mean boundary vs N", "N", "E|boundary|",
                                     make_points([](const ScalingRow& r) { return r.boundary; }))},
        {"covering", svg_loglog_plot("covering radius vs N", "N", "covering radius",
                                     make_points([](const ScalingRow& r) {
                                         return r.covering_radius;
                                     }))},
    };
    std::vector<std::string> written;
    for (const auto& [name, svg] : files) {
        std::string path = output_dir + "/scaling_" + name + ".svg";
        std::ofstream os(path, std::ios::binary);
        os << svg;
        written.push_back(path);
    }
    return written;
}

}  // namespace owalk
