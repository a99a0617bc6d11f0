#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <sns/error.hpp>

namespace sns {

using Index  = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * Observation matrix for one subpopulation (rows = observations).
 *
 * A standardized matrix has every column centered with unit mean square,
 * i.e. sum_i x_ij = 0 and (1/n) sum_i x_ij^2 = 1.
 */
class DataMatrix
{
public:
    DataMatrix() = default;
    explicit DataMatrix(Matrix values, bool standardized = false)
        : values_(std::move(values)), standardized_(standardized)
    {}

    const Matrix& values() const noexcept { return values_; }
    Index rows() const noexcept { return values_.rows(); }
    Index cols() const noexcept { return values_.cols(); }
    bool standardized() const noexcept { return standardized_; }

private:
    Matrix values_;
    bool standardized_ = false;
};

namespace detail {

inline void require_finite(const Matrix& m, const char* what)
{
    if (!m.allFinite()) {
        throw Error(ErrorCode::NumericalError, std::string(what) + " has non-finite entries");
    }
}

} // namespace detail

/// Centers each column and scales it to unit mean square (1/n convention).
inline DataMatrix center_scale(const Matrix& raw)
{
    const Index n = raw.rows();
    if (n < 2) {
        throw Error(ErrorCode::DimensionError, "center_scale needs at least 2 observations");
    }
    if (!raw.allFinite()) {
        throw Error(ErrorCode::NonFiniteInput, "data matrix has non-finite entries");
    }
    Matrix out(n, raw.cols());
    for (Index j = 0; j < raw.cols(); ++j) {
        const auto col = raw.col(j);
        const double scale = std::max(1.0, col.cwiseAbs().maxCoeff());
        Vector centered = col.array() - col.mean();
        const double ms = centered.squaredNorm() / static_cast<double>(n);
        if (!(std::sqrt(ms) > 1e-12 * scale)) {
            throw ZeroVarianceColumn(j);
        }
        out.col(j) = centered / std::sqrt(ms);
    }
    return DataMatrix(std::move(out), true);
}

/**
 * Cached factorization of M = X X^T + n b I_n and G = M^{-1} X.
 *
 * Built once per (subpopulation, step size); afterwards every
 * (X_{-j}^T X_{-j} + n b I)^{-1} application is a pair of O(np)
 * products against G. `cross` holds X^T G, whose diagonal enters the
 * Sherman-Morrison denominator and whose columns give X_{-j}^T M^{-1} X_j.
 */
struct GramShiftFactor
{
    Eigen::LLT<Matrix> chol;
    Matrix G;
    Matrix cross;
    double b = 0.0;
    double loss_n = 0.0;

    double shift() const noexcept { return loss_n * b; }
    Index n() const noexcept { return G.rows(); }
    Index p() const noexcept { return G.cols(); }

    Matrix gram_shift() const
    {
        Matrix L = chol.matrixL();
        return L * L.transpose();
    }
};

/// `loss_n` is the n appearing in the 1/(2n) loss; it defaults to the row count.
inline GramShiftFactor factor_gram_shift(const DataMatrix& X, double b, double loss_n = 0.0)
{
    if (!(b > 0.0)) {
        throw Error(ErrorCode::DimensionError, "step size b must be positive");
    }
    const Matrix& x = X.values();
    detail::require_finite(x, "data matrix");

    GramShiftFactor f;
    f.b = b;
    f.loss_n = loss_n > 0.0 ? loss_n : static_cast<double>(x.rows());

    Matrix M = x * x.transpose();
    M.diagonal().array() += f.shift();
    f.chol.compute(M);
    if (f.chol.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalError, "Cholesky factorization of X X^T + n b I failed");
    }
    f.G = f.chol.solve(x);
    f.cross = x.transpose() * f.G;
    detail::require_finite(f.G, "M^{-1} X");
    return f;
}

namespace detail {

inline double sherman_morrison_denominator(const GramShiftFactor& f, Index j)
{
    const double denom = 1.0 - f.cross(j, j);
    if (std::abs(denom) < 1e-12) {
        throw Error(ErrorCode::SingularCorrection,
                    "degenerate rank-one correction at column " + std::to_string(j));
    }
    return denom;
}

} // namespace detail

/**
 * Returns (X_{-j}^T X_{-j} + n b I_{p-1})^{-1} v for a (p-1)-vector v.
 *
 * Uses the Woodbury form
 *   (1/nb) (I - X_{-j}^T M^{-1} X_{-j} - X_{-j}^T M^{-1} X_j X_j^T M^{-1} X_{-j} / (1 - X_j^T M^{-1} X_j)),
 * i.e. Woodbury on X_{-j} followed by Sherman-Morrison for M - X_j X_j^T.
 */
inline Vector woodbury_apply(const GramShiftFactor& f, const DataMatrix& X, Index j, const Vector& v)
{
    const Index p = X.cols();
    if (j < 0 || j >= p || v.size() != p - 1) {
        throw Error(ErrorCode::DimensionError, "woodbury_apply: bad column index or vector size");
    }
    const double denom = detail::sherman_morrison_denominator(f, j);

    // Embed v into R^p with a zero at j so that X_{-j} v = X v_full.
    Vector full(p);
    full.head(j) = v.head(j);
    full(j) = 0.0;
    full.tail(p - j - 1) = v.tail(p - j - 1);

    const Vector t = X.values().transpose() * (f.G * full);
    Vector out = (full - t - f.cross.col(j) * (t(j) / denom)) / f.shift();

    Vector reduced(p - 1);
    reduced.head(j) = out.head(j);
    reduced.tail(p - j - 1) = out.tail(p - j - 1);
    return reduced;
}

/**
 * Column-batched form of woodbury_apply used by the ADMM v-update.
 *
 * Column j of `rhs` is the right-hand side for node j embedded in R^p (its
 * j-th entry is ignored). Column j of the result is the solution embedded the
 * same way, with a zero on the diagonal. Cost O(np^2) for all p nodes.
 */
inline Matrix woodbury_apply_all(const GramShiftFactor& f, const DataMatrix& X, Matrix rhs)
{
    const Index p = X.cols();
    rhs.diagonal().setZero();
    const Matrix t = X.values().transpose() * (f.G * rhs);
    Matrix out = rhs - t;
    for (Index j = 0; j < p; ++j) {
        const double denom = detail::sherman_morrison_denominator(f, j);
        out.col(j) -= f.cross.col(j) * (t(j, j) / denom);
    }
    out /= f.shift();
    out.diagonal().setZero();
    return out;
}

struct SymmetricEigen
{
    Matrix vectors;  // orthonormal columns
    Vector values;   // ascending
};

inline SymmetricEigen sym_eigen(const Matrix& A)
{
    if (A.rows() != A.cols()) {
        throw Error(ErrorCode::DimensionError, "sym_eigen needs a square matrix");
    }
    detail::require_finite(A, "sym_eigen input");
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalError, "symmetric eigendecomposition failed");
    }
    return {es.eigenvectors(), es.eigenvalues()};
}

} // namespace sns
