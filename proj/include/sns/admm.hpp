#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <sns/linalg.hpp>

namespace sns {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/**
 * Per-entry lasso weights tau_lj (row l = predictor, column j = node).
 *
 * Diagonal entries are never used. An excluded entry carries an infinite
 * weight: its coefficient is pinned to exactly zero.
 */
struct WeightMatrix
{
    Matrix tau;
    BoolMatrix excluded;

    static WeightMatrix uniform(Index p, double value = 1.0)
    {
        WeightMatrix w;
        w.tau = Matrix::Constant(p, p, value);
        w.tau.diagonal().setZero();
        w.excluded = BoolMatrix::Constant(p, p, false);
        return w;
    }

    Index p() const noexcept { return tau.rows(); }

    bool active(Index l, Index j) const noexcept { return l != j && !excluded(l, j); }
};

/// sign(z) * max(|z| - t, 0), written as the difference of two positive parts.
inline double soft_threshold(double z, double t) noexcept
{
    return std::max(z - t, 0.0) - std::max(-z - t, 0.0);
}

struct AdmmOptions
{
    double b = 1.0;
    double tol_primal = 1e-6;
    double tol_dual = 1e-6;
    int max_iter = 10000;
    // Convergence additionally requires kkt_residual <= kkt_factor * tol_primal.
    double kkt_factor = 10.0;
};

/// Stacked iterates, held as p x p matrices whose column j is theta_{j,-j} padded with a zero at j.
struct AdmmState
{
    Matrix v;
    Matrix r;
    Matrix u;
    int iterations = 0;

    static AdmmState zeros(Index p)
    {
        return {Matrix::Zero(p, p), Matrix::Zero(p, p), Matrix::Zero(p, p), 0};
    }
};

struct SolveReport
{
    Matrix coefficients;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
};

namespace detail {

inline void validate_weights(const WeightMatrix& W, Index p)
{
    if (W.tau.rows() != p || W.tau.cols() != p || W.excluded.rows() != p || W.excluded.cols() != p) {
        throw Error(ErrorCode::DimensionError, "weight matrix does not match data dimension");
    }
    for (Index j = 0; j < p; ++j) {
        for (Index l = 0; l < p; ++l) {
            if (!W.active(l, j)) continue;
            const double t = W.tau(l, j);
            if (!(t >= 0.0) || !std::isfinite(t)) {
                throw Error(ErrorCode::InvalidWeights, "weights must be finite and nonnegative");
            }
        }
    }
}

inline double resolve_loss_n(const DataMatrix& X, double loss_n)
{
    return loss_n > 0.0 ? loss_n : static_cast<double>(X.rows());
}

} // namespace detail

/// (1/2n) ||X (I - Theta)||_F^2 + lambda sum_{l != j, active} tau_lj |theta_lj|
inline double weighted_lasso_objective(const DataMatrix& X, const Matrix& theta, double lambda,
                                       const WeightMatrix& W, double loss_n = 0.0)
{
    const Matrix& x = X.values();
    const double n = detail::resolve_loss_n(X, loss_n);
    const double loss = (x - x * theta).squaredNorm() / (2.0 * n);
    double penalty = 0.0;
    for (Index j = 0; j < theta.cols(); ++j) {
        for (Index l = 0; l < theta.rows(); ++l) {
            if (W.active(l, j)) penalty += W.tau(l, j) * std::abs(theta(l, j));
        }
    }
    return loss + lambda * penalty;
}

/**
 * Largest violation of the lasso optimality conditions, unnormalized:
 * for active (l, j) with gradient g = X_l^T (X_j - X_{-j} theta_j),
 *   |g - n lambda tau_lj sign(theta_lj)|        if theta_lj != 0,
 *   max(0, |g| - n lambda tau_lj)               if theta_lj == 0.
 */
inline double kkt_residual(const DataMatrix& X, const Matrix& theta, double lambda,
                           const WeightMatrix& W, double loss_n = 0.0)
{
    const Matrix& x = X.values();
    const double n = detail::resolve_loss_n(X, loss_n);
    const Matrix grad = x.transpose() * (x - x * theta);
    double worst = 0.0;
    for (Index j = 0; j < theta.cols(); ++j) {
        for (Index l = 0; l < theta.rows(); ++l) {
            if (!W.active(l, j)) continue;
            const double bound = n * lambda * W.tau(l, j);
            const double th = theta(l, j);
            const double viol = th != 0.0 ? std::abs(grad(l, j) - bound * (th > 0.0 ? 1.0 : -1.0))
                                          : std::max(0.0, std::abs(grad(l, j)) - bound);
            worst = std::max(worst, viol);
        }
    }
    return worst;
}

/// Smallest lambda at which Theta = 0 is optimal under weights W.
inline double full_shrinkage_lambda(const DataMatrix& X, const WeightMatrix& W, double loss_n = 0.0)
{
    const Matrix& x = X.values();
    const double n = detail::resolve_loss_n(X, loss_n);
    const Matrix gram = x.transpose() * x;
    double lam = 0.0;
    for (Index j = 0; j < gram.cols(); ++j) {
        for (Index l = 0; l < gram.rows(); ++l) {
            if (!W.active(l, j)) continue;
            const double g = std::abs(gram(l, j));
            if (g == 0.0) continue;
            lam = W.tau(l, j) > 0.0 ? std::max(lam, g / (n * W.tau(l, j)))
                                    : std::numeric_limits<double>::infinity();
        }
    }
    return lam;
}

/**
 * ADMM for the weighted neighborhood-selection lasso of one subpopulation.
 *
 * All p node regressions are solved jointly. The v-update exploits the
 * block-diagonal structure of Z^T Z: every block (X_{-j}^T X_{-j} + nbI)
 * is inverted through the shared GramShiftFactor, so one iteration costs
 * O(np^2). The factorization depends only on (X, b, n) and is reused
 * across lambda values and weight matrices.
 */
class WeightedLassoAdmm
{
public:
    explicit WeightedLassoAdmm(DataMatrix X, double b = 1.0, double loss_n = 0.0)
        : X_(std::move(X))
    {
        factor_ = factor_gram_shift(X_, b, loss_n);
        gram_ = X_.values().transpose() * X_.values();
        gram_.diagonal().setZero();
    }

    const DataMatrix& data() const noexcept { return X_; }
    const GramShiftFactor& factor() const noexcept { return factor_; }
    double b() const noexcept { return factor_.b; }
    double loss_n() const noexcept { return factor_.loss_n; }
    Index p() const noexcept { return X_.cols(); }

    /// Per-entry soft-threshold levels lambda tau / b; +inf pins an entry to zero.
    Matrix thresholds(double lambda, const WeightMatrix& W) const
    {
        const Index p = this->p();
        Matrix thr(p, p);
        for (Index j = 0; j < p; ++j) {
            for (Index l = 0; l < p; ++l) {
                thr(l, j) = W.active(l, j) ? lambda * W.tau(l, j) / b()
                                           : std::numeric_limits<double>::infinity();
            }
        }
        return thr;
    }

    /// One ADMM sweep. Returns (||v - r||_F, b ||r_new - r_old||_F).
    std::pair<double, double> step(AdmmState& s, const Matrix& thr) const
    {
        Matrix rhs = gram_ + factor_.shift() * (s.r - s.u);
        s.v = woodbury_apply_all(factor_, X_, std::move(rhs));

        Matrix r_old = std::move(s.r);
        s.r = (s.v + s.u).binaryExpr(thr, [](double z, double t) { return soft_threshold(z, t); });
        s.u += s.v - s.r;
        ++s.iterations;
        return {(s.v - s.r).norm(), b() * (s.r - r_old).norm()};
    }

    SolveReport solve(double lambda, const WeightMatrix& W, const AdmmOptions& opt = {}) const
    {
        if (!(lambda >= 0.0)) {
            throw Error(ErrorCode::DimensionError, "lambda must be nonnegative");
        }
        if (std::abs(opt.b - b()) > 0.0) {
            throw Error(ErrorCode::DimensionError, "solver was factored for a different step size");
        }
        detail::validate_weights(W, p());
        const Matrix thr = thresholds(lambda, W);

        AdmmState s = AdmmState::zeros(p());
        SolveReport rep;
        const double kkt_tol = opt.kkt_factor * opt.tol_primal;
        while (s.iterations < opt.max_iter) {
            const auto [primal, dual] = step(s, thr);
            rep.primal_residual = primal;
            rep.dual_residual = dual;
            if (!s.r.allFinite()) {
                throw Error(ErrorCode::NumericalError, "ADMM iterate diverged");
            }
            const double scale_p = std::max({1.0, s.v.norm(), s.r.norm()});
            const double scale_d = std::max(1.0, s.u.norm());
            if (primal <= opt.tol_primal * scale_p && dual <= opt.tol_dual * scale_d) {
                rep.kkt_residual = kkt_residual(X_, s.r, lambda, W, loss_n());
                if (rep.kkt_residual <= kkt_tol) {
                    rep.converged = true;
                    break;
                }
            }
        }
        rep.iterations = s.iterations;
        rep.coefficients = std::move(s.r);
        if (!rep.converged) {
            rep.kkt_residual = kkt_residual(X_, rep.coefficients, lambda, W, loss_n());
        }
        return rep;
    }

private:
    DataMatrix X_;
    GramShiftFactor factor_;
    Matrix gram_;  // X^T X with zero diagonal: column j is X_{-j}^T X_j embedded in R^p
};

/// One-shot convenience wrapper; factor once and reuse WeightedLassoAdmm for lambda paths.
inline SolveReport admm_weighted_lasso(const DataMatrix& X, double lambda, const WeightMatrix& W,
                                       const AdmmOptions& opt = {}, double loss_n = 0.0)
{
    if (!X.standardized()) {
        throw Error(ErrorCode::DimensionError, "admm_weighted_lasso expects standardized data");
    }
    return WeightedLassoAdmm(X, opt.b, loss_n).solve(lambda, W, opt);
}

} // namespace sns
