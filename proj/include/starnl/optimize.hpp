#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include "starnl/network.hpp"

namespace starnl {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so byte-identical runs do not depend on the standard
/// library implementation.
struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    SplitMix64 g{seed ^ (0xD2B74407B1CE6E93ull * (stream + 1))};
    return g.next();
}

struct OptimizerConfig {
    int restarts = 8;
    int max_iterations = 400;
    double tolerance = 1e-8;
    uint64_t seed = 1;
    int workers = 1;
};

struct OptimizeResult {
    MeasurementSettings settings;
    EvaluationReport report;
    int best_restart = 0;
};

namespace detail {

inline MeasurementSettings settings_from_params(int n, const std::vector<double>& p) {
    MeasurementSettings s;
    s.dirs.resize(n);
    for (int j = 0; j < n; ++j)
        for (int d = 0; d < 2; ++d)
            s.dirs[j][d] = direction_from_angles(p[4 * j + 2 * d], p[4 * j + 2 * d + 1]);
    return s;
}

/// Nelder-Mead descent on -S. Reflection/expansion/contraction/shrink
/// coefficients 1, 2, 0.5, 0.5.
inline std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
    int max_iterations, double tolerance) {
    const int dim = static_cast<int>(x0.size());
    std::vector<std::vector<double>> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back(x0);
    for (int k = 0; k < dim; ++k) {
        auto v = x0;
        v[k] += 0.35;
        simplex.push_back(std::move(v));
    }
    std::vector<double> fv(dim + 1);
    for (int k = 0; k <= dim; ++k) fv[k] = f(simplex[k]);

    std::vector<int> order(dim + 1);
    for (int it = 0; it < max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0], worst = order[dim], second = order[dim - 1];
        if (fv[worst] - fv[best] < tolerance) break;

        std::vector<double> centroid(dim, 0.0);
        for (int k = 0; k <= dim; ++k) {
            if (k == worst) continue;
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[k][d];
        }
        for (double& c : centroid) c /= dim;

        auto blend = [&](double t) {
            std::vector<double> v(dim);
            for (int d = 0; d < dim; ++d) v[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            return v;
        };
        auto reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < fv[best]) {
            auto expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = std::move(reflected);
            fv[worst] = fr;
        } else {
            auto contracted = blend(fr < fv[worst] ? -0.5 : 0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(contracted);
                fv[worst] = fc;
            } else {
                for (int k = 0; k <= dim; ++k) {
                    if (k == best) continue;
                    for (int d = 0; d < dim; ++d)
                        simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
                    fv[k] = f(simplex[k]);
                }
            }
        }
    }
    int best = 0;
    for (int k = 1; k <= dim; ++k)
        if (fv[k] < fv[best]) best = k;
    return {simplex[best], fv[best]};
}

/// Best axis-aligned start: every direction one of x/y/z.
inline std::vector<double> coarse_grid_start(
    int n, const std::function<double(const std::vector<double>&)>& f) {
    constexpr double half_pi = std::numbers::pi / 2;
    const double axis_angles[3][2] = {{half_pi, 0.0}, {half_pi, half_pi}, {0.0, 0.0}};
    const int slots = 2 * n;
    long total = 1;
    for (int k = 0; k < slots; ++k) total *= 3;
    std::vector<double> best;
    double best_val = 0.0;
    std::vector<double> p(2 * slots);
    for (long idx = 0; idx < total; ++idx) {
        long c = idx;
        for (int k = 0; k < slots; ++k) {
            const int a = static_cast<int>(c % 3);
            c /= 3;
            p[2 * k] = axis_angles[a][0];
            p[2 * k + 1] = axis_angles[a][1];
        }
        const double v = f(p);
        if (best.empty() || v < best_val) {
            best = p;
            best_val = v;
        }
    }
    return best;
}

}  // namespace detail

/// Maximize the direct n-local value S over the 4n measurement angles.
/// Restart 0 starts from the coarse axis grid; restarts 1..R-1 start from a
/// seeded uniform draw. Deterministic given the seed: restart k's start
/// depends only on (seed, k) and the best-of reduction breaks ties by
/// restart index, so worker count never changes the result.
inline OptimizeResult maximize_s(const NetworkScenario& sc, const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("optimizer: restarts must be >= 1");
    if (cfg.tolerance <= 0) throw std::invalid_argument("optimizer: tolerance must be > 0");
    const CorrelationKernel kernel(sc);
    const int n = sc.n;
    auto negS = [&](const std::vector<double>& p) {
        return -kernel.evaluate(detail::settings_from_params(n, p)).S;
    };

    const std::vector<double> grid_start = detail::coarse_grid_start(n, negS);

    struct RestartResult {
        double value = 0.0;  // -S
        std::vector<double> params;
    };
    std::vector<RestartResult> results(cfg.restarts);

    auto run_restart = [&](int k) {
        std::vector<double> x0;
        if (k == 0) {
            x0 = grid_start;
        } else {
            SplitMix64 rng{mix_seed(cfg.seed, static_cast<uint64_t>(k))};
            x0.resize(4 * n);
            for (int j = 0; j < 4 * n; j += 2) {
                x0[j] = rng.uniform() * std::numbers::pi;
                x0[j + 1] = rng.uniform() * 2.0 * std::numbers::pi;
            }
        }
        auto [params, value] = detail::nelder_mead(negS, std::move(x0), cfg.max_iterations,
                                                   cfg.tolerance);
        results[k] = {value, std::move(params)};
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1 || cfg.restarts == 1) {
        for (int k = 0; k < cfg.restarts; ++k) run_restart(k);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int nthreads = std::min(workers, cfg.restarts);
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int k = next.fetch_add(1); k < cfg.restarts; k = next.fetch_add(1))
                    run_restart(k);
            });
        for (auto& th : pool) th.join();
    }

    int best = 0;
    for (int k = 1; k < cfg.restarts; ++k)
        if (results[k].value < results[best].value) best = k;

    OptimizeResult out;
    out.best_restart = best;
    out.settings = detail::settings_from_params(n, results[best].params);
    out.report = kernel.evaluate(out.settings);
    return out;
}

}  // namespace starnl
