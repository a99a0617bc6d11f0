#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include <sns/admm.hpp>
#include <sns/jgl.hpp>
#include <sns/simulation.hpp>

namespace sns {

struct BenchRecord
{
    Index p = 0;
    Index n = 0;
    double sns_iter_seconds = 0.0;
    double jgl_iter_seconds = 0.0;
};

struct BenchOptions
{
    int warmup = 2;
    int min_iterations = 5;
    double min_seconds = 0.05;  // keep timing until at least this much wall time has accumulated
    double lambda = 0.1;
};

namespace detail {

template <class Step>
double seconds_per_step(Step&& step, const BenchOptions& opt)
{
    using clock = std::chrono::steady_clock;
    for (int i = 0; i < opt.warmup; ++i) step();
    int count = 0;
    const auto start = clock::now();
    double elapsed = 0.0;
    while (count < opt.min_iterations || elapsed < opt.min_seconds) {
        step();
        ++count;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
    }
    return elapsed / count;
}

} // namespace detail

/**
 * Wall time of one ADMM iteration for neighborhood selection (all p node
 * blocks of one subpopulation) and for the graphical lasso, on the same
 * simulated (p, n) data. Factorizations are built before timing starts.
 */
inline BenchRecord bench_iteration(Index p, Index n, int K, std::uint64_t seed, double b = 1.0,
                                   const BenchOptions& opt = {})
{
    SimulationSpec spec{p, K, n, 5e-3, 0.0, seed};
    const GroundTruth truth = simulate_truth(spec);
    const DataMatrix X = center_scale(simulate_data(spec, truth).front());

    BenchRecord rec{p, n, 0.0, 0.0};

    const WeightedLassoAdmm lasso(X, b);
    const Matrix lasso_thr = lasso.thresholds(opt.lambda, WeightMatrix::uniform(p));
    AdmmState lasso_state = AdmmState::zeros(p);
    rec.sns_iter_seconds = detail::seconds_per_step([&] { lasso.step(lasso_state, lasso_thr); }, opt);

    const GraphicalLassoAdmm glasso(sample_cov(X), b);
    const Matrix glasso_thr = glasso.thresholds(opt.lambda, unit_glasso_weights(p));
    GlassoState glasso_state = GlassoState::initial(p);
    rec.jgl_iter_seconds = detail::seconds_per_step([&] { glasso.step(glasso_state, glasso_thr); }, opt);
    return rec;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorCode::DimensionError, "slope fit needs at least two paired points");
    }
    const auto m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace sns
