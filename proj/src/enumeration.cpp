#include "owalk/enumeration.hpp"

#include <cmath>
#include <stdexcept>

namespace owalk {

namespace {

void dfs(WalkPath& path, long long remaining, int n_moves,
         const std::function<void(const WalkPath&)>& visit) {
    if (remaining == 0) {
        visit(path);
        return;
    }
    for (int m = 0; m < n_moves; ++m) {
        path.push_step(static_cast<std::uint8_t>(m));
        dfs(path, remaining - 1, n_moves, visit);
        path.pop_step();
    }
}

}  // namespace

void enumerate_paths(int d, long long N,
                     const std::function<void(const WalkPath&)>& visit,
                     unsigned long long budget) {
    if (d < 2) throw std::invalid_argument("enumerate_paths: d >= 2 required");
    long double total = std::pow(static_cast<long double>(2 * d), static_cast<long double>(N));
    if (total > static_cast<long double>(budget))
        throw std::runtime_error("enumerate_paths: (2d)^N exceeds enumeration budget");
    WalkPath path(origin(d), d);
    dfs(path, N, 2 * d, visit);
}

double exact_partition_function(const ModelParams& params, unsigned long long budget) {
    params.validate();
    const double weight_per_path = std::pow(2.0 * params.d, -static_cast<double>(params.N));
    CompensatedSum z;
    enumerate_paths(params.d, params.N,
                    [&](const WalkPath& path) {
                        z.add(weight_per_path *
                              std::pow(params.p, static_cast<double>(path.range_size())));
                    },
                    budget);
    return z.value();
}

double exact_mu_expectation(const ModelParams& params,
                            const std::function<double(const WalkPath&)>& observable,
                            unsigned long long budget) {
    params.validate();
    const double weight_per_path = std::pow(2.0 * params.d, -static_cast<double>(params.N));
    CompensatedSum z, num;
    enumerate_paths(params.d, params.N,
                    [&](const WalkPath& path) {
                        double w = weight_per_path *
                                   std::pow(params.p, static_cast<double>(path.range_size()));
                        z.add(w);
                        num.add(w * observable(path));
                    },
                    budget);
    if (z.value() <= 0.0) throw std::runtime_error("exact_mu_expectation: vanishing Z");
    return num.value() / z.value();
}

}  // namespace owalk
