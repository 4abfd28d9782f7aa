#include <fstream>
#include <iostream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "owalk/bessel.hpp"
#include "owalk/enumeration.hpp"
#include "owalk/experiments.hpp"
#include "owalk/spectral.hpp"
#include "owalk/svg.hpp"

using namespace owalk;

namespace {

std::ostream& open_out(std::ofstream& file, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") return std::cout;
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + out_path);
    return file;
}

LatticeSet load_domain(const std::string& domain_file, double radius, int d) {
    if (!domain_file.empty()) {
        std::ifstream is(domain_file);
        if (!is) throw std::runtime_error("cannot open domain file " + domain_file);
        return LatticeSet::read(is);
    }
    return ball_points({origin(d), radius});
}

int cmd_exact(int d, double p, long long n_max, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "d,p,N,value,paths_enumerated\n";
    for (long long n = 0; n <= n_max; ++n) {
        double z = exact_partition_function({d, p, n, 1});
        double paths = std::pow(2.0 * d, static_cast<double>(n));
        os << d << ',' << p << ',' << n << ',' << std::setprecision(17) << z << ','
           << std::setprecision(6) << paths << '\n';
    }
    return 0;
}

int cmd_sample(const ExperimentConfig& cfg, const std::string& out_path) {
    ModelParams params = cfg.model;
    params.N = cfg.N_grid.front();
    ChainConfig cc = cfg.chain;
    cc.sweeps = cfg.sweeps;
    cc.burn_in = cfg.burn_in;
    cc.thin = cfg.thin;
    ChainResult res = run_chain(params, cc);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "# d=" << params.d << " p=" << params.p << " N=" << params.N
       << " seed=" << params.seed << " sweeps=" << cc.sweeps << " burn_in=" << cc.burn_in
       << " thin=" << cc.thin << "\n";
    write_chain_csv(os, res);
    std::cerr << "tau(range)=" << res.tau_range.tau
              << (res.tau_range.reliable ? "" : " [unreliable]") << "\n";
    return 0;
}

int cmd_spectral(const std::string& domain_file, double radius, int d, int k,
                 const std::string& out_path) {
    LatticeSet dom = load_domain(domain_file, radius, d);
    SpectrumResult sp = dirichlet_spectrum(dom, k);
    FaberKrahnResult fk = faber_krahn_gap(dom);

    nlohmann::json j;
    j["sites"] = dom.size();
    j["eigenvalues"] = sp.eigenvalues;
    j["faber_krahn"] = {{"lambda_discrete", fk.lambda_discrete},
                        {"hull_volume", fk.hull_volume},
                        {"lambda_ball_same_volume", fk.lambda_ball_same_volume},
                        {"gap", fk.gap}};
    if (dom.size() <= kDenseSolveThreshold) {
        ParityCheckReport pr = parity_spectrum_check(dom);
        j["parity"] = {{"max_asymmetry", pr.max_asymmetry},
                       {"projection_residual", pr.projection_residual}};
    }
    EigenBoundsMeasurement m = eigen_bounds_measurement(dom);
    j["bounds"] = {{"inradius", m.inradius},
                   {"gap_times_r2", m.gap_times_r2},
                   {"sup_times_rd2", m.sup_times_rd2}};
    std::ofstream file;
    open_out(file, out_path) << j.dump(2) << "\n";
    return 0;
}

int cmd_geometry(const ExperimentConfig& cfg, double radius, const std::string& out_path) {
    ModelParams params = cfg.model;
    LatticeSet window = ball_points({origin(params.d), radius + 2.0});
    Environment env = sample_environment(params, window);

    nlohmann::json j;
    j["d"] = params.d;
    j["p"] = params.p;
    j["seed"] = params.seed;
    j["radius"] = radius;
    j["obstacles"] = env.obstacles.size();

    LatticeSet cluster =
        truly_open_cluster(env, cfg.truly_open, {origin(params.d), radius});
    j["truly_open_cluster_size"] = cluster.size();
    if (!cluster.empty()) {
        FaberKrahnResult fk = faber_krahn_gap(cluster);
        j["cluster_faber_krahn_gap"] = fk.gap;
        j["cluster_hull_volume"] = fk.hull_volume;
    }
    if (!env.obstacles.empty()) {
        Point anchor = env.obstacles.sorted_points().front();
        long long l = static_cast<long long>(radius);
        SkeletalSet sk = skeletal_set(env, anchor, l);
        j["skeletal"] = {{"anchor", anchor.to_string()},
                         {"l", l},
                         {"size", sk.points.size()},
                         {"inner_size", sk.inner_points.size()},
                         {"separation", sk.separation()}};
    }
    std::ofstream file;
    open_out(file, out_path) << j.dump(2) << "\n";
    return 0;
}

int cmd_scaling(const ExperimentConfig& cfg) {
    std::vector<ScalingRow> rows = run_scaling_experiment(cfg);
    std::string csv_path = cfg.output_dir + "/scaling.csv";
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + csv_path);
    write_scaling_csv(os, cfg, rows);
    std::cerr << "wrote " << csv_path << "\n";
    if (cfg.emit_plots && rows.size() >= 2)
        for (const std::string& f : emit_plots(rows, cfg.output_dir))
            std::cerr << "wrote " << f << "\n";
    if (rows.size() >= 2) {
        std::vector<PlotPoint> pts;
        for (const auto& r : rows)
            pts.push_back({static_cast<double>(r.N), r.range.mean, r.range.err, r.flagged});
        LineFit fit = loglog_fit(pts);
        std::cerr << "range slope = " << fit.slope << " +- " << fit.slope_err << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& level, std::uint64_t seed, const std::string& out_path) {
    ValidationReport rep = run_validation_suite(level, seed);
    std::ofstream file;
    write_validation_json(open_out(file, out_path), rep);
    for (const auto& chk : rep.checks)
        std::cerr << (chk.pass ? "PASS " : "FAIL ") << chk.name << "  " << chk.details << "\n";
    std::cerr << (rep.all_pass ? "all checks passed" : "CHECKS FAILED") << " ("
              << rep.seconds << " s)\n";
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random walk among Bernoulli obstacles: oracles, samplers, spectra"};
    app.require_subcommand(1);

    std::string config_path, out_path, level = "quick", domain_file;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int d = 2, k = 4;
    double p = 0.5, radius = 10.0;
    long long n_max = 8;

    app.fallthrough();  // accept the global flags after a subcommand too
    app.add_option("--config", config_path, "TOML-style config file");
    app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--out", out_path, "output file ('-' for stdout)");

    auto* exact = app.add_subcommand("exact", "exact enumeration oracle");
    exact->add_option("-d", d, "dimension");
    exact->add_option("-p", p, "open-site probability");
    exact->add_option("-N", n_max, "largest horizon");

    auto* sample = app.add_subcommand("sample", "run one Metropolis chain (uses --config)");

    auto* spectral = app.add_subcommand("spectral", "Dirichlet spectrum and Faber-Krahn report");
    spectral->add_option("--domain", domain_file, "lattice-set file (default: a ball)");
    spectral->add_option("--radius", radius, "ball radius when no domain file is given");
    spectral->add_option("-d", d, "dimension");
    spectral->add_option("-k", k, "number of eigenpairs");

    auto* geometry = app.add_subcommand("geometry", "truly-open cluster and skeletal sets");
    geometry->add_option("--radius", radius, "confinement-ball radius");

    auto* scaling = app.add_subcommand("scaling", "full scaling study (requires --config)");

    auto* validate = app.add_subcommand("validate", "invariant suite");
    validate->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (seed_set) cfg.model.seed = seed;

        if (app.got_subcommand(exact)) return cmd_exact(d, p, n_max, out_path);
        if (app.got_subcommand(sample)) {
            if (config_path.empty()) throw std::runtime_error("sample requires --config");
            cfg.validate();
            return cmd_sample(cfg, out_path);
        }
        if (app.got_subcommand(spectral))
            return cmd_spectral(domain_file, radius, d, k, out_path);
        if (app.got_subcommand(geometry)) return cmd_geometry(cfg, radius, out_path);
        if (app.got_subcommand(scaling)) {
            if (config_path.empty()) throw std::runtime_error("scaling requires --config");
            return cmd_scaling(cfg);
        }
        if (app.got_subcommand(validate))
            return cmd_validate(level, seed_set ? seed : 1, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
