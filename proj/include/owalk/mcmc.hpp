#ifndef OWALK_MCMC_HPP
#define OWALK_MCMC_HPP

#include <array>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "owalk/environment.hpp"
#include "owalk/stats.hpp"
#include "owalk/walk.hpp"

namespace owalk {

enum class MoveKind : int { segment_regrow = 0, endpoint_regrow = 1, local_wiggle = 2 };

struct MoveSpec {
    MoveKind kind = MoveKind::segment_regrow;
    std::size_t t0 = 0;
    std::size_t t1 = 0;  // exclusive; t1 == N means free suffix regrow
};

struct MoveStats {
    unsigned long long proposed = 0;
    unsigned long long accepted = 0;
    double accept_rate() const {
        return proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
    }
};

struct ChainConfig {
    double w_segment = 0.7;
    double w_endpoint = 0.2;
    double w_wiggle = 0.1;
    // geometric segment-length mean as a fraction of N, capped at N/2
    double segment_mean_frac = 0.1;
    long long sweeps = 0;    // one proposal per sweep
    long long burn_in = 0;
    long long thin = 1;
    bool coiled_start = false;  // start from a space-filling snake instead of a straight path
    // with coiled_start: >0 folds the snake back and forth inside a box of
    // this side length (range ~ side^d, close to the equilibrium range when
    // side ~ rho_N), 0 keeps the self-avoiding snake
    long long start_box_side = 0;
};

struct StepOutcome {
    MoveSpec spec;
    long long delta_range = 0;
    bool accepted = false;
};

// Metropolis chain targeting the path marginal of mu_N: weight p^{|range|}
// times the uniform step measure. All moves redraw a block of steps from the
// uniform step distribution, so proposal ratios are 1 and acceptance is
// min(1, p^{delta_range}).
class Chain {
public:
    Chain(const ModelParams& params, const ChainConfig& cfg);

    StepOutcome step();

    const WalkPath& path() const { return path_; }
    double log_weight() const {
        return static_cast<double>(path_.range_size()) * std::log(params_.p);
    }
    const std::array<MoveStats, 3>& move_stats() const { return stats_; }
    const ModelParams& params() const { return params_; }

    // Text checkpoint: step sequence plus rng state, resumable bit-exactly.
    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    MoveSpec draw_spec();

    ModelParams params_;
    ChainConfig cfg_;
    WalkPath path_;
    std::mt19937_64 rng_;
    std::array<MoveStats, 3> stats_;
};

struct SampleSummary {
    long long sweep = 0;
    std::size_t range_size = 0;
    std::size_t boundary_size = 0;
    double covering_radius = 0.0;
    double endpoint_r2 = 0.0;
};

struct ChainResult {
    std::vector<SampleSummary> samples;
    std::array<MoveStats, 3> move_stats;
    AutocorrResult tau_range;  // autocorrelation of |range| over the thinned samples

    std::vector<double> range_series() const {
        std::vector<double> v;
        v.reserve(samples.size());
        for (const auto& s : samples) v.push_back(static_cast<double>(s.range_size));
        return v;
    }
};

// on_sample, when set, sees the chain at every retained sample.
ChainResult run_chain(const ModelParams& params, const ChainConfig& cfg,
                      const std::function<void(const Chain&, long long)>& on_sample = {});

void write_chain_csv(std::ostream& os, const ChainResult& result);

// Exact conditional law of O given the path under mu_N: sites on the range are
// open, off-range window sites are independent Bernoulli(1-p).
Environment sample_obstacles_given_path(const WalkPath& path, const ModelParams& params,
                                        const LatticeSet& window, std::uint64_t draw_seed);

// Boustrophedon path through a box. With side == 0 the box has side
// ceil((N+1)^{1/d}) and the path is self-avoiding; with side > 0 the snake
// folds back and forth inside a box of that side, so the range stays near
// side^d regardless of N.
WalkPath snake_start(int d, long long N, long long side = 0);

}  // namespace owalk

#endif
