#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <sns/admm.hpp>
#include <sns/linalg.hpp>
#include <sns/pipeline.hpp>

namespace sns {

/// S = (1/n) X^T X.
inline Matrix sample_cov(const DataMatrix& X)
{
    const Matrix& x = X.values();
    return x.transpose() * x / static_cast<double>(x.rows());
}

/// Positive root of b w^2 - mu w - 1 = 0, the eigenvalue map of the Omega-update.
inline double precision_eigen_map(double mu, double b) noexcept
{
    return (mu + std::sqrt(mu * mu + 4.0 * b)) / (2.0 * b);
}

struct GlassoState
{
    Matrix omega;
    Matrix z;
    Matrix u;
    int iterations = 0;

    static GlassoState initial(Index p)
    {
        return {Matrix::Identity(p, p), Matrix::Identity(p, p), Matrix::Zero(p, p), 0};
    }
};

struct GlassoOptions
{
    double b = 1.0;
    double tol_primal = 1e-6;
    double tol_dual = 1e-6;
    int max_iter = 10000;
};

struct GlassoReport
{
    Matrix precision;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
};

/**
 * Weighted graphical lasso by ADMM:
 *   minimize tr(S Omega) - log det Omega + lambda sum q_lj |omega_lj|.
 *
 * Each iteration eigendecomposes b (Z - U) - S, which makes it O(p^3).
 * Weights live in a symmetric Q with zero diagonal; an infinite weight
 * forces the entry to zero.
 */
class GraphicalLassoAdmm
{
public:
    GraphicalLassoAdmm(Matrix S, double b = 1.0) : S_(std::move(S)), b_(b)
    {
        if (S_.rows() != S_.cols()) {
            throw Error(ErrorCode::DimensionError, "covariance must be square");
        }
        if (!S_.allFinite()) {
            throw Error(ErrorCode::NonFiniteInput, "covariance has non-finite entries");
        }
        if (!(b_ > 0.0)) {
            throw Error(ErrorCode::DimensionError, "step size b must be positive");
        }
    }

    Index p() const noexcept { return S_.rows(); }
    double b() const noexcept { return b_; }

    Matrix thresholds(double lambda, const Matrix& Q) const
    {
        Matrix thr = Q * (lambda / b_);
        for (Index j = 0; j < p(); ++j) {
            for (Index l = 0; l < p(); ++l) {
                if (std::isinf(Q(l, j))) thr(l, j) = std::numeric_limits<double>::infinity();
            }
        }
        thr.diagonal().setZero();
        return thr;
    }

    /// One sweep; returns (||Omega - Z||_F, b ||Z_new - Z_old||_F).
    std::pair<double, double> step(GlassoState& s, const Matrix& thr) const
    {
        const Matrix target = b_ * (s.z - s.u) - S_;
        const SymmetricEigen eig = sym_eigen((target + target.transpose()) / 2.0);
        const Vector w = eig.values.unaryExpr([this](double mu) { return precision_eigen_map(mu, b_); });
        s.omega = eig.vectors * w.asDiagonal() * eig.vectors.transpose();
        s.omega = (s.omega + s.omega.transpose()) / 2.0;

        Matrix z_old = std::move(s.z);
        s.z = (s.omega + s.u).binaryExpr(thr, [](double x, double t) { return soft_threshold(x, t); });
        s.u += s.omega - s.z;
        ++s.iterations;
        return {(s.omega - s.z).norm(), b_ * (s.z - z_old).norm()};
    }

    GlassoReport solve(double lambda, const Matrix& Q, const GlassoOptions& opt = {}) const
    {
        if (!(lambda >= 0.0)) throw Error(ErrorCode::DimensionError, "lambda must be nonnegative");
        if (Q.rows() != p() || Q.cols() != p()) {
            throw Error(ErrorCode::DimensionError, "weight matrix does not match covariance");
        }
        if ((Q.array() < 0.0).any() || Q.hasNaN()) {
            throw Error(ErrorCode::InvalidWeights, "weights must be nonnegative");
        }
        const Matrix thr = thresholds(lambda, Q);
        GlassoState s = GlassoState::initial(p());
        GlassoReport rep;
        while (s.iterations < opt.max_iter) {
            const auto [primal, dual] = step(s, thr);
            rep.primal_residual = primal;
            rep.dual_residual = dual;
            if (!s.z.allFinite()) throw Error(ErrorCode::NumericalError, "graphical lasso iterate diverged");
            const double scale_p = std::max({1.0, s.omega.norm(), s.z.norm()});
            const double scale_d = std::max(1.0, s.u.norm());
            if (primal <= opt.tol_primal * scale_p && dual <= opt.tol_dual * scale_d) {
                rep.converged = true;
                break;
            }
        }
        rep.iterations = s.iterations;
        rep.precision = (s.z + s.z.transpose()) / 2.0;
        return rep;
    }

private:
    Matrix S_;
    double b_;
};

inline GlassoReport jgl_fit(const Matrix& S, double lambda, const Matrix& Q, const GlassoOptions& opt = {})
{
    return GraphicalLassoAdmm(S, opt.b).solve(lambda, Q, opt);
}

/// All-ones off-diagonal weights (the classical graphical lasso).
inline Matrix unit_glasso_weights(Index p)
{
    Matrix q = Matrix::Ones(p, p);
    q.diagonal().setZero();
    return q;
}

/**
 * Symmetric LLA weights from neighborhood coefficients:
 * q_lj = 1/2 (m_lj)^{-1/2}, m_lj = sum_k (|theta_lj| + |theta_jl|) / 2,
 * infinite where m_lj = 0.
 */
inline Matrix symmetric_lla_weights(const CoefficientSet& init)
{
    const Index p = init.p();
    Matrix mass = Matrix::Zero(p, p);
    for (const auto& th : init.theta) mass += (th.cwiseAbs() + th.transpose().cwiseAbs()) / 2.0;
    Matrix q(p, p);
    for (Index j = 0; j < p; ++j) {
        for (Index l = 0; l < p; ++l) {
            q(l, j) = l == j ? 0.0
                      : mass(l, j) > 0.0 ? 0.5 / std::sqrt(mass(l, j))
                                          : std::numeric_limits<double>::infinity();
        }
    }
    return q;
}

struct JglConfig
{
    double lambda_init = 0.05;
    bool lla_weighted = true;  // false: unit weights (individual graphical lasso)
    GlassoOptions solver;
    AdmmOptions init_solver;
    unsigned threads = 1;
};

/**
 * Graphical-lasso baseline over K subpopulations. Each subpopulation is
 * solved separately with weights shared across k: LLA weights from an
 * individual neighborhood-selection fit at lambda_init, or unit weights.
 * The returned coefficient matrices are precision estimates.
 */
class GraphicalLassoBaseline
{
public:
    GraphicalLassoBaseline(const std::vector<DataMatrix>& data, const JglConfig& cfg)
        : cfg_(cfg)
    {
        if (data.empty()) throw Error(ErrorCode::DimensionError, "at least one subpopulation is required");
        const Index p = data.front().cols();
        for (const auto& d : data) {
            if (d.cols() != p) {
                throw Error(ErrorCode::DimensionError, "subpopulations have different numbers of variables");
            }
            solvers_.emplace_back(sample_cov(d), cfg.solver.b);
        }
        if (cfg.lla_weighted) {
            const FitResult init = ins_fit(data, cfg.lambda_init, cfg.init_solver, cfg.threads);
            if (init.coefficients.all_zero()) {
                throw Error(ErrorCode::EmptyInitializer, "initial estimate is all zero; lower lambda_init");
            }
            weights_ = symmetric_lla_weights(init.coefficients);
        } else {
            weights_ = unit_glasso_weights(p);
        }
    }

    const Matrix& weights() const noexcept { return weights_; }

    FitResult fit(double lambda) const
    {
        FitResult out;
        out.coefficients.theta.resize(solvers_.size());
        out.stats.resize(solvers_.size());
        parallel_for(solvers_.size(), cfg_.threads, [&](std::size_t k) {
            GlassoReport rep = solvers_[k].solve(lambda, weights_, cfg_.solver);
            out.stats[k] = {rep.iterations, rep.primal_residual, rep.dual_residual, 0.0, rep.converged};
            out.coefficients.theta[k] = std::move(rep.precision);
        });
        return out;
    }

private:
    JglConfig cfg_;
    std::vector<GraphicalLassoAdmm> solvers_;
    Matrix weights_;
};

inline FitResult jgl_pipeline(const std::vector<DataMatrix>& data, double lambda, const JglConfig& cfg = {})
{
    return GraphicalLassoBaseline(data, cfg).fit(lambda);
}

} // namespace sns
