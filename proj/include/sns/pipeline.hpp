#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <sns/admm.hpp>
#include <sns/graph.hpp>
#include <sns/parallel.hpp>

namespace sns {

/// K per-subpopulation p x p coefficient matrices; column j holds node j's regression.
struct CoefficientSet
{
    std::vector<Matrix> theta;

    std::size_t K() const noexcept { return theta.size(); }
    Index p() const noexcept { return theta.empty() ? 0 : theta.front().rows(); }

    bool all_zero() const
    {
        return std::all_of(theta.begin(), theta.end(), [](const Matrix& m) { return m.isZero(0.0); });
    }
};

struct SolveStats
{
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;

    static SolveStats from(const SolveReport& r)
    {
        return {r.iterations, r.primal_residual, r.dual_residual, r.kkt_residual, r.converged};
    }
};

struct FitResult
{
    CoefficientSet coefficients;
    std::vector<SolveStats> stats;  // one entry per subpopulation solve, in order

    bool converged() const
    {
        return std::all_of(stats.begin(), stats.end(), [](const SolveStats& s) { return s.converged; });
    }
};

struct SnsConfig
{
    double lambda = 0.0;        // 2 sqrt(lambda1 lambda2); only the product is identifiable
    double lambda_init = 0.05;
    int lla_steps = 1;
    EdgeRule edge_rule = EdgeRule::And;
    AdmmOptions solver;
    unsigned threads = 1;
};

/**
 * LLA weights tau_lj = 1/2 (sum_k |theta_lj^(k)|)^{-1/2}.
 * Entries whose sum is zero get an infinite weight and are excluded.
 */
inline WeightMatrix lla_weights(const CoefficientSet& init)
{
    const Index p = init.p();
    Matrix total = Matrix::Zero(p, p);
    for (const auto& th : init.theta) total += th.cwiseAbs();

    WeightMatrix w;
    w.tau = Matrix::Zero(p, p);
    w.excluded = BoolMatrix::Constant(p, p, false);
    for (Index j = 0; j < p; ++j) {
        for (Index l = 0; l < p; ++l) {
            if (l == j) continue;
            if (total(l, j) > 0.0) {
                w.tau(l, j) = 0.5 / std::sqrt(total(l, j));
            } else {
                w.excluded(l, j) = true;
            }
        }
    }
    return w;
}

/**
 * Reusable neighborhood-selection engine over K standardized subpopulations.
 *
 * Holds one factored ADMM solver per subpopulation for each loss scaling in
 * use: the individual fit scales the loss by each subpopulation's own n_k,
 * the joint fit by n = max_k n_k. Factorizations are shared across lambda.
 */
class NeighborhoodSelection
{
public:
    explicit NeighborhoodSelection(std::vector<DataMatrix> data, double b = 1.0, unsigned threads = 1)
        : threads_(threads)
    {
        if (data.empty()) {
            throw Error(ErrorCode::DimensionError, "at least one subpopulation is required");
        }
        const Index p = data.front().cols();
        Index n_max = 0;
        for (const auto& d : data) {
            if (d.cols() != p) {
                throw Error(ErrorCode::DimensionError, "subpopulations have different numbers of variables");
            }
            if (!d.standardized()) {
                throw Error(ErrorCode::DimensionError, "subpopulation data must be standardized");
            }
            n_max = std::max(n_max, d.rows());
        }
        own_.resize(data.size());
        pooled_.resize(data.size());
        parallel_for(data.size(), threads_, [&](std::size_t k) {
            own_[k] = std::make_shared<const WeightedLassoAdmm>(data[k], b);
            pooled_[k] = data[k].rows() == n_max
                             ? own_[k]
                             : std::make_shared<const WeightedLassoAdmm>(data[k], b, static_cast<double>(n_max));
        });
    }

    std::size_t K() const noexcept { return own_.size(); }
    Index p() const noexcept { return own_.front()->p(); }
    const WeightedLassoAdmm& individual_solver(std::size_t k) const { return *own_[k]; }
    const WeightedLassoAdmm& joint_solver(std::size_t k) const { return *pooled_[k]; }

    /// Unweighted lasso per node and subpopulation, loss scaled by n_k.
    FitResult individual(double lambda, const AdmmOptions& opt = {}) const
    {
        const WeightMatrix ones = WeightMatrix::uniform(p());
        return run(own_, lambda, ones, opt);
    }

    /// The K decoupled weighted problems of one LLA step, loss scaled by max_k n_k.
    FitResult weighted(double lambda, const WeightMatrix& W, const AdmmOptions& opt = {}) const
    {
        return run(pooled_, lambda, W, opt);
    }

    FitResult simultaneous(const SnsConfig& cfg, const CoefficientSet& init) const
    {
        if (cfg.lla_steps < 1) {
            throw Error(ErrorCode::DimensionError, "lla_steps must be at least 1");
        }
        if (init.K() != K() || init.p() != p()) {
            throw Error(ErrorCode::DimensionError, "initial coefficients do not match the data");
        }
        if (init.all_zero()) {
            throw Error(ErrorCode::EmptyInitializer,
                        "initial estimate is all zero; lower lambda_init");
        }
        FitResult out;
        const CoefficientSet* current = &init;
        for (int t = 0; t < cfg.lla_steps; ++t) {
            FitResult step = weighted(cfg.lambda, lla_weights(*current), cfg.solver);
            out.stats.insert(out.stats.end(), step.stats.begin(), step.stats.end());
            out.coefficients = std::move(step.coefficients);
            current = &out.coefficients;
        }
        return out;
    }

private:
    using SolverList = std::vector<std::shared_ptr<const WeightedLassoAdmm>>;

    FitResult run(const SolverList& solvers, double lambda, const WeightMatrix& W, const AdmmOptions& opt) const
    {
        FitResult out;
        out.coefficients.theta.resize(solvers.size());
        out.stats.resize(solvers.size());
        parallel_for(solvers.size(), threads_, [&](std::size_t k) {
            SolveReport rep = solvers[k]->solve(lambda, W, opt);
            out.stats[k] = SolveStats::from(rep);
            out.coefficients.theta[k] = std::move(rep.coefficients);
        });
        return out;
    }

    SolverList own_;
    SolverList pooled_;
    unsigned threads_ = 1;
};

/// Individual neighborhood selection, applied separately to each subpopulation.
inline FitResult ins_fit(const std::vector<DataMatrix>& data, double lambda_init,
                         const AdmmOptions& opt = {}, unsigned threads = 1)
{
    if (!(lambda_init >= 0.0)) {
        throw Error(ErrorCode::DimensionError, "lambda_init must be nonnegative");
    }
    return NeighborhoodSelection(data, opt.b, threads).individual(lambda_init, opt);
}

/**
 * Simultaneous neighborhood selection: cfg.lla_steps LLA iterations from
 * `init` (or from ins_fit at cfg.lambda_init when absent).
 */
inline FitResult sns_fit(const std::vector<DataMatrix>& data, const SnsConfig& cfg,
                         const std::optional<CoefficientSet>& init = std::nullopt)
{
    const NeighborhoodSelection engine(data, cfg.solver.b, cfg.threads);
    if (init) return engine.simultaneous(cfg, *init);
    const FitResult start = engine.individual(cfg.lambda_init, cfg.solver);
    FitResult out = engine.simultaneous(cfg, start.coefficients);
    out.stats.insert(out.stats.begin(), start.stats.begin(), start.stats.end());
    return out;
}

inline MultiEdgeSet assemble_edges(const CoefficientSet& theta, EdgeRule rule)
{
    MultiEdgeSet out;
    out.p = theta.p();
    for (const auto& th : theta.theta) out.sets.push_back(neighborhood_edges(th, rule));
    return out;
}

/// Grouped square-root penalty for one (l, j) entry: 2 sqrt(lambda1 lambda2 sum_k |theta_k|).
inline double penalty_factorization_value(std::span<const double> theta, double lambda1, double lambda2)
{
    const double mass = std::accumulate(theta.begin(), theta.end(), 0.0,
                                        [](double acc, double t) { return acc + std::abs(t); });
    return 2.0 * std::sqrt(lambda1 * lambda2 * mass);
}

/**
 * Product-form penalty lambda1 eta + lambda2 sum_k |gamma_k| with gamma_k = theta_k / eta,
 * i.e. the per-entry penalty of the (H, Gamma) parameterization. Its minimum over
 * eta > 0 is penalty_factorization_value, attained at eta = sqrt(lambda2 sum|theta| / lambda1).
 */
inline double factorized_penalty(double eta, std::span<const double> theta, double lambda1, double lambda2)
{
    const double mass = std::accumulate(theta.begin(), theta.end(), 0.0,
                                        [](double acc, double t) { return acc + std::abs(t); });
    if (mass == 0.0) return lambda1 * eta;
    if (eta <= 0.0) return std::numeric_limits<double>::infinity();
    return lambda1 * eta + lambda2 * mass / eta;
}

inline double optimal_common_factor(std::span<const double> theta, double lambda1, double lambda2)
{
    const double mass = std::accumulate(theta.begin(), theta.end(), 0.0,
                                        [](double acc, double t) { return acc + std::abs(t); });
    return std::sqrt(lambda1 * lambda2 * mass) / lambda1;
}

} // namespace sns
