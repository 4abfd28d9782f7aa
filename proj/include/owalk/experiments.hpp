#ifndef OWALK_EXPERIMENTS_HPP
#define OWALK_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "owalk/geometry.hpp"
#include "owalk/mcmc.hpp"
#include "owalk/stats.hpp"

namespace owalk {

struct ExperimentConfig {
    ModelParams model;
    std::vector<long long> N_grid;
    int chains = 2;  // >= 2: cross-chain consistency is mandatory
    long long sweeps = 20000;
    long long burn_in = 5000;
    long long thin = 20;
    ChainConfig chain;  // move mix / segment length knobs; sweeps etc. filled per run
    // >0: mean segment length coeff*sqrt(N) per grid point (overrides
    // chain.segment_mean_frac); the range decorrelates fastest near this scale
    double segment_len_sqrt_coeff = 0.0;
    TrulyOpenConfig truly_open{4, 0.05};
    double crossing_inner_frac = 0.125;  // inner shell radius as a fraction of rho_N
    double crossing_outer_frac = 0.25;
    std::string output_dir = ".";
    bool emit_plots = false;

    void validate() const;
};

// Minimal TOML-style config: [section] headers, key = value lines, '#' comments.
ExperimentConfig load_config(const std::string& path);

struct ScalingRow {
    long long N = 0;
    double rho = 0.0;
    MeanErr range, boundary, covering_radius;
    MeanErr deficit07, deficit08, deficit09;  // covering deficit at {0.7,0.8,0.9} rho_N
    MeanErr crossings;                        // K at l = rho_N / 4
    double max_tau = 0.0;
    bool flagged = false;  // unreliable mixing diagnostics
};

std::vector<ScalingRow> run_scaling_experiment(const ExperimentConfig& cfg);

// CSV with the full config and seeds embedded in '#' header lines.
void write_scaling_csv(std::ostream& os, const ExperimentConfig& cfg,
                       const std::vector<ScalingRow>& rows);

// range/boundary/covering log-log SVGs; deterministic bytes given input.
std::vector<std::string> emit_plots(const std::vector<ScalingRow>& rows,
                                    const std::string& output_dir);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct ValidationReport {
    std::string level;
    std::vector<CheckResult> checks;
    bool all_pass = true;
    double seconds = 0.0;
};

// level: "quick" (domain sizes capped at R=20, N=10) or "full".
ValidationReport run_validation_suite(const std::string& level, std::uint64_t seed = 1);

void write_validation_json(std::ostream& os, const ValidationReport& report);

}  // namespace owalk

#endif
