#include "owalk/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace owalk {

WalkPath snake_start(int d, long long N, long long side) {
    long long s = side;
    if (s <= 0) {
        s = 1;
        while (std::pow(static_cast<double>(s), d) < static_cast<double>(N + 1)) ++s;
    }
    if (s < 2) s = 2;
    long long volume = 1;
    for (int i = 0; i < d; ++i) volume *= s;
    // fold the time index back and forth through the box traversal
    const long long period = 2 * volume - 2;
    auto snake_point = [&](long long t) {
        long long r = t % period;
        if (r >= volume) r = period - r;
        Point p(d);
        // base-s digits, most significant first; boustrophedon reflection
        std::vector<long long> digits(d);
        long long rem = r;
        for (int i = 0; i < d; ++i) {
            digits[i] = rem % s;
            rem /= s;
        }
        bool flip = false;
        for (int i = d - 1; i >= 0; --i) {
            long long c = flip ? s - 1 - digits[i] : digits[i];
            p[i] = static_cast<int>(c);
            if (c % 2 == 1) flip = !flip;
        }
        return p;
    };
    WalkPath w(snake_point(0), d);
    for (long long t = 1; t <= N; ++t) {
        Point prev = snake_point(t - 1), cur = snake_point(t);
        int move = -1;
        for (int i = 0; i < d; ++i) {
            int delta = cur[i] - prev[i];
            if (delta == 1) move = 2 * i;
            if (delta == -1) move = 2 * i + 1;
        }
        if (move < 0 || prev.norm1(cur) != 1)
            throw std::logic_error("snake_start: non-unit step");
        w.push_step(static_cast<std::uint8_t>(move));
    }
    return w;
}

Chain::Chain(const ModelParams& params, const ChainConfig& cfg)
    : params_(params),
      cfg_(cfg),
      path_(cfg.coiled_start ? snake_start(params.d, params.N, cfg.start_box_side)
                             : WalkPath(origin(params.d), params.d)),
      rng_(params.seed) {
    params_.validate();
    if (!cfg.coiled_start) {
        for (long long i = 0; i < params.N; ++i) path_.push_step(0);
    }
}

MoveSpec Chain::draw_spec() {
    const auto N = static_cast<std::size_t>(params_.N);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double total = cfg_.w_segment + cfg_.w_endpoint + cfg_.w_wiggle;
    double u = unif(rng_) * total;
    MoveSpec spec;
    if (u < cfg_.w_segment) {
        spec.kind = MoveKind::segment_regrow;
        double mean = std::max(1.0, cfg_.segment_mean_frac * static_cast<double>(N));
        std::geometric_distribution<std::size_t> geo(1.0 / mean);
        std::size_t len = std::min(geo(rng_) + 1, std::max<std::size_t>(N / 2, 1));
        spec.t0 = std::uniform_int_distribution<std::size_t>(0, N - len)(rng_);
        spec.t1 = spec.t0 + len;
    } else if (u < cfg_.w_segment + cfg_.w_endpoint) {
        spec.kind = MoveKind::endpoint_regrow;
        double mean = std::max(1.0, cfg_.segment_mean_frac * static_cast<double>(N));
        std::geometric_distribution<std::size_t> geo(1.0 / mean);
        std::size_t len = std::min(geo(rng_) + 1, N);
        spec.t0 = N - len;
        spec.t1 = N;
    } else {
        // two-step block: with the bridge proposal this is a corner flip or a
        // backtrack reversal, cheap and suffix-preserving
        spec.kind = MoveKind::local_wiggle;
        std::size_t len = std::min<std::size_t>(2, N);
        spec.t0 = std::uniform_int_distribution<std::size_t>(0, N - len)(rng_);
        spec.t1 = spec.t0 + len;
    }
    return spec;
}

namespace {

double log_fact(std::size_t n) {
    thread_local std::vector<double> table{0.0, 0.0};
    while (table.size() <= n) table.push_back(table.back() + std::log(static_cast<double>(table.size())));
    return table[n];
}

// Uniform d=2 bridge: step sequence of given length with prescribed net
// displacement. Sample the number of horizontal steps k from the exact
// multinomial marginal, then place and sign the steps uniformly.
std::vector<std::uint8_t> sample_bridge_2d(std::mt19937_64& rng, std::size_t len, int vx, int vy) {
    const long long L = static_cast<long long>(len);
    const long long ax = std::llabs(vx), ay = std::llabs(vy);
    std::vector<double> logw;
    std::vector<long long> ks;
    for (long long k = ax; k <= L - ay; k += 2) {
        if ((k - ax) % 2 != 0 || (L - k - ay) % 2 != 0) continue;
        long long nxp = (k + vx) / 2, nxm = (k - vx) / 2;
        long long nyp = (L - k + vy) / 2, nym = (L - k - vy) / 2;
        logw.push_back(log_fact(len) - log_fact(nxp) - log_fact(nxm) - log_fact(nyp) -
                       log_fact(nym));
        ks.push_back(k);
    }
    double mx = logw[0];
    for (double w : logw) mx = std::max(mx, w);
    double total = 0.0;
    for (double& w : logw) total += (w = std::exp(w - mx));
    double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    std::size_t idx = 0;
    for (; idx + 1 < logw.size(); ++idx) {
        if (u < logw[idx]) break;
        u -= logw[idx];
    }
    long long k = ks[idx];
    std::vector<std::uint8_t> moves;
    moves.reserve(len);
    moves.insert(moves.end(), static_cast<std::size_t>((k + vx) / 2), 0);
    moves.insert(moves.end(), static_cast<std::size_t>((k - vx) / 2), 1);
    moves.insert(moves.end(), static_cast<std::size_t>((L - k + vy) / 2), 2);
    moves.insert(moves.end(), static_cast<std::size_t>((L - k - vy) / 2), 3);
    std::shuffle(moves.begin(), moves.end(), rng);
    return moves;
}

// scratch site -> count-delta map; reset is O(1) via an epoch stamp
class DeltaMap {
public:
    void reset(std::size_t expected) {
        // capacity only grows: shrinking would force a refill on every change
        // of move type, while the epoch stamp makes reuse free
        std::size_t cap = 64;
        while (cap < expected * 2) cap <<= 1;
        if (cap > slots_.size()) {
            slots_.assign(cap, Slot{});
            epoch_ = 0;
        }
        ++epoch_;
        used_.clear();
    }

    void add(const Point& p, int d) {
        if ((used_.size() + 1) * 2 > slots_.size()) grow();
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = p.hash() & mask;; i = (i + 1) & mask) {
            Slot& s = slots_[i];
            if (s.stamp != epoch_) {
                s.key = p;
                s.delta = d;
                s.stamp = epoch_;
                used_.push_back(i);
                return;
            }
            if (s.key == p) {
                s.delta += d;
                return;
            }
        }
    }

    template <typename F>
    void for_each(F f) const {
        for (std::size_t i : used_) f(slots_[i].key, slots_[i].delta);
    }

private:
    struct Slot {
        Point key;
        int delta = 0;
        std::uint64_t stamp = 0;
    };

    void grow() {
        std::vector<Slot> old;
        old.swap(slots_);
        slots_.assign(old.size() * 2, Slot{});
        const std::size_t mask = slots_.size() - 1;
        std::vector<std::size_t> prev;
        prev.swap(used_);
        for (std::size_t i : prev) {
            const Slot& s = old[i];
            std::size_t j = s.key.hash() & mask;
            while (slots_[j].stamp == epoch_) j = (j + 1) & mask;
            slots_[j] = s;
            used_.push_back(j);
        }
    }

    std::vector<Slot> slots_{64};
    std::vector<std::size_t> used_;
    std::uint64_t epoch_ = 0;
};

}  // namespace

StepOutcome Chain::step() {
    if (params_.N == 0) return {};
    StepOutcome out;
    out.spec = draw_spec();
    MoveStats& ms = stats_[static_cast<int>(out.spec.kind)];
    ++ms.proposed;

    const auto& steps = path_.steps();
    // Interior blocks are redrawn as displacement-preserving bridges, which
    // keeps the update cost proportional to the block length. On short chains
    // only blocks of >= 33 steps use bridges: shorter bridges are nearly
    // identity moves, and free redraws (with the O(N) suffix translation they
    // trigger) are what mix small chains. On long chains every interior block
    // is a bridge; free redraws there would cost O(N) per proposal while the
    // endpoint regrows already relocate the walk globally.
    constexpr std::size_t kBridgeMinLen = 33;
    constexpr std::size_t kBridgeAllLenN = 1024;
    std::vector<std::uint8_t> fresh;
    const std::size_t block_len = out.spec.t1 - out.spec.t0;
    if (out.spec.t1 < steps.size() && params_.d == 2 &&
        (block_len >= kBridgeMinLen || steps.size() >= kBridgeAllLenN)) {
        // interior block: redraw as a uniform bridge with the same net
        // displacement, so the suffix stays in place (symmetric proposal)
        const auto& pos = path_.positions();
        const Point& a = pos[out.spec.t0];
        const Point& b = pos[out.spec.t1];
        fresh = sample_bridge_2d(rng_, out.spec.t1 - out.spec.t0, b[0] - a[0], b[1] - a[1]);
    } else {
        fresh.resize(out.spec.t1 - out.spec.t0);
        std::uniform_int_distribution<int> move_dist(0, 2 * params_.d - 1);
        for (auto& m : fresh) m = static_cast<std::uint8_t>(move_dist(rng_));
    }

    // evaluate delta_range against a scratch delta map; the path is only
    // mutated when the move is accepted, so rejections cost no rollback
    thread_local DeltaMap touched;
    const auto& pos = path_.positions();
    const std::size_t n = steps.size();
    touched.reset(2 * fresh.size() + 4);
    Point q = pos[out.spec.t0];
    for (auto m : fresh) {
        q = q.shifted(m / 2, m % 2 == 0 ? 1 : -1);
        touched.add(q, 1);
    }
    const Point shift = q - pos[out.spec.t1];
    const bool suffix_moves = out.spec.t1 < n && !(shift == origin(path_.dim()));
    std::size_t drop_end = (out.spec.t1 < n && !suffix_moves) ? out.spec.t1 : n;
    for (std::size_t i = out.spec.t0 + 1; i <= drop_end; ++i) touched.add(pos[i], -1);
    if (suffix_moves)
        for (std::size_t i = out.spec.t1 + 1; i <= n; ++i) touched.add(pos[i] + shift, 1);

    const auto& multiset = path_.range_multiset();
    long long delta = 0;
    touched.for_each([&](const Point& site, int dcount) {
        if (dcount == 0) return;
        int before = multiset.count(site);
        delta += static_cast<long long>(before + dcount > 0) -
                 static_cast<long long>(before > 0);
    });
    out.delta_range = delta;

    bool accept = true;
    if (out.delta_range > 0) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        accept = unif(rng_) < std::pow(params_.p, static_cast<double>(out.delta_range));
    }
    if (accept) {
        ++ms.accepted;
        out.accepted = true;
        path_.rewrite_steps(out.spec.t0, out.spec.t1, fresh);
    }
    return out;
}

void Chain::save(std::ostream& os) const {
    os << "owalk-chain v1\n";
    os << params_.d << ' ' << params_.p << ' ' << params_.N << ' ' << params_.seed << '\n';
    os << path_.start().to_string() << '\n';
    for (auto m : path_.steps()) os << static_cast<int>(m) << ' ';
    os << '\n' << rng_ << '\n';
    for (const auto& s : stats_) os << s.proposed << ' ' << s.accepted << ' ';
    os << '\n';
}

void Chain::load(std::istream& is) {
    std::string magic;
    std::getline(is, magic);
    if (magic != "owalk-chain v1") throw std::runtime_error("Chain::load: bad checkpoint");
    is >> params_.d >> params_.p >> params_.N >> params_.seed;
    Point start(params_.d);
    for (int i = 0; i < params_.d; ++i) is >> start[i];
    std::vector<std::uint8_t> moves(static_cast<std::size_t>(params_.N));
    for (auto& m : moves) {
        int v;
        is >> v;
        m = static_cast<std::uint8_t>(v);
    }
    path_ = WalkPath::from_steps(start, params_.d, moves);
    is >> rng_;
    for (auto& s : stats_) is >> s.proposed >> s.accepted;
}

ChainResult run_chain(const ModelParams& params, const ChainConfig& cfg,
                      const std::function<void(const Chain&, long long)>& on_sample) {
    Chain chain(params, cfg);
    ChainResult result;
    for (long long i = 0; i < cfg.burn_in; ++i) chain.step();
    const long long thin = std::max<long long>(cfg.thin, 1);
    for (long long i = 0; i < cfg.sweeps; ++i) {
        chain.step();
        if ((i + 1) % thin == 0) {
            SampleSummary s;
            s.sweep = i + 1;
            s.range_size = chain.path().range_size();
            LatticeSet range = chain.path().range_set();
            s.boundary_size = external_boundary(range).size();
            CenterResult c = empirical_center(range);
            s.covering_radius = c.radius;
            s.endpoint_r2 =
                static_cast<double>(chain.path().end().norm2_sq(chain.path().start()));
            result.samples.push_back(s);
            if (on_sample) on_sample(chain, i + 1);
        }
    }
    result.move_stats = chain.move_stats();
    result.tau_range = integrated_autocorr_time(result.range_series());
    return result;
}

void write_chain_csv(std::ostream& os, const ChainResult& result) {
    os << "sweep,range_size,boundary_size,covering_radius,endpoint_r2,"
          "accept_segment,accept_endpoint,accept_wiggle\n";
    for (const auto& s : result.samples) {
        os << s.sweep << ',' << s.range_size << ',' << s.boundary_size << ','
           << s.covering_radius << ',' << s.endpoint_r2;
        for (const auto& m : result.move_stats) os << ',' << m.accept_rate();
        os << '\n';
    }
}

Environment sample_obstacles_given_path(const WalkPath& path, const ModelParams& params,
                                        const LatticeSet& window, std::uint64_t draw_seed) {
    for (const auto& [p, c] : path.range_multiset())
        if (!window.contains(p))
            throw std::runtime_error("sample_obstacles_given_path: range not inside window");
    Environment env;
    env.window = window;
    env.obstacles = LatticeSet(window.dim());
    std::mt19937_64 rng(draw_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const Point& x : window.sorted_points()) {
        if (path.range_multiset().count(x)) continue;
        if (unif(rng) < 1.0 - params.p) env.obstacles.insert(x);
    }
    return env;
}

}  // namespace owalk
