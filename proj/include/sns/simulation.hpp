#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <sns/graph.hpp>
#include <sns/linalg.hpp>
#include <sns/rng.hpp>

namespace sns {

/**
 * Simulation scenario: K subpopulations on p variables sharing a common edge
 * set A of size round(s * C(p,2)); each subpopulation adds round(rho |A|)
 * individual edges drawn outside A.
 */
struct SimulationSpec
{
    Index p = 0;
    int K = 2;
    Index n = 0;
    double s = 0.0;
    double rho = 0.0;
    std::uint64_t seed = 0;

    std::int64_t pair_count() const noexcept { return static_cast<std::int64_t>(p) * (p - 1) / 2; }
    std::int64_t common_count() const noexcept { return std::llround(s * static_cast<double>(pair_count())); }
    std::int64_t individual_count() const noexcept
    {
        return std::llround(rho * static_cast<double>(common_count()));
    }
};

struct EdgeDesign
{
    EdgeSet common;                  // A
    std::vector<EdgeSet> individual; // B^(k)

    /// E^(k) = A u B^(k), sorted.
    EdgeSet full(std::size_t k) const
    {
        EdgeSet out = common;
        out.insert(out.end(), individual[k].begin(), individual[k].end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct GroundTruth
{
    Index p = 0;
    EdgeDesign design;
    std::vector<EdgeSet> edges;     // E^(k)
    std::vector<Matrix> precision;  // Omega^(k)

    std::size_t K() const noexcept { return precision.size(); }
};

// Stream labels for CounterRng::derive; fixed so outputs stay reproducible.
namespace streams {
inline constexpr std::uint64_t edges = 1;
inline constexpr std::uint64_t precision = 1000;
inline constexpr std::uint64_t samples = 2000;
} // namespace streams

inline void validate(const SimulationSpec& spec)
{
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InfeasibleSpec, msg); };
    if (spec.p < 2) fail("p must be at least 2");
    if (spec.K < 1) fail("K must be at least 1");
    if (!(spec.s >= 0.0 && spec.s <= 1.0)) fail("s must lie in [0, 1]");
    if (!(spec.rho >= 0.0) || !std::isfinite(spec.rho)) fail("rho must be nonnegative");
    const std::int64_t budget = spec.common_count() + spec.K * spec.individual_count();
    if (budget > spec.pair_count()) {
        fail("edge budget " + std::to_string(budget) + " exceeds " + std::to_string(spec.pair_count()) +
             " available pairs");
    }
}

namespace detail {

inline Edge pair_from_rank(std::int64_t rank, Index p)
{
    // Row-major enumeration of (i, j), i < j.
    Index i = 0;
    std::int64_t row = p - 1;
    while (rank >= row) {
        rank -= row;
        ++i;
        --row;
    }
    return {i, i + 1 + static_cast<Index>(rank)};
}

} // namespace detail

/**
 * Draws A uniformly among all pairs, then K * round(rho |A|) further distinct
 * pairs outside A, dealt round-robin to B^(1..K). The B-sets are therefore
 * pairwise disjoint, so both their union misses A and their intersection is
 * empty.
 */
inline EdgeDesign gen_edge_sets(const SimulationSpec& spec)
{
    validate(spec);
    const std::int64_t total = spec.pair_count();
    const std::int64_t nA = spec.common_count();
    const std::int64_t nB = spec.individual_count();
    const std::int64_t draws = nA + spec.K * nB;

    CounterRng rng(CounterRng::derive(spec.seed, streams::edges));
    std::vector<std::int64_t> ranks(static_cast<std::size_t>(total));
    std::iota(ranks.begin(), ranks.end(), 0);
    for (std::int64_t i = 0; i < draws; ++i) {
        const auto pick = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total - i)));
        std::swap(ranks[static_cast<std::size_t>(i)], ranks[static_cast<std::size_t>(pick)]);
    }

    EdgeDesign d;
    d.individual.resize(static_cast<std::size_t>(spec.K));
    for (std::int64_t i = 0; i < nA; ++i) {
        d.common.push_back(detail::pair_from_rank(ranks[static_cast<std::size_t>(i)], spec.p));
    }
    for (std::int64_t i = 0; i < spec.K * nB; ++i) {
        const auto k = static_cast<std::size_t>(i % spec.K);
        d.individual[k].push_back(detail::pair_from_rank(ranks[static_cast<std::size_t>(nA + i)], spec.p));
    }
    std::sort(d.common.begin(), d.common.end());
    for (auto& b : d.individual) std::sort(b.begin(), b.end());
    return d;
}

/**
 * Gershgorin-dominant precision matrix on a given edge set.
 *
 * For each edge (j < l) draws a ~ U(0.5, 1) and a Rademacher sign into the
 * upper triangle of A; C = (A + A^T) / 2 so |c_jl| lies in [0.25, 0.5].
 * Diagonal entries are the absolute off-diagonal row sums plus one, which
 * keeps every eigenvalue at or above 1.
 */
inline Matrix gen_precision(const EdgeSet& edges, Index p, std::uint64_t seed)
{
    CounterRng rng(seed);
    Matrix A = Matrix::Zero(p, p);
    for (const auto& e : edges) {
        if (e.i == e.j || e.i < 0 || e.j >= p) {
            throw Error(ErrorCode::DimensionError, "edge outside the vertex set");
        }
        const double magnitude = rng.uniform(0.5, 1.0);
        const double sign = rng.rademacher();
        A(std::min(e.i, e.j), std::max(e.i, e.j)) = magnitude * sign;
    }
    Matrix omega = (A + A.transpose()) / 2.0;
    for (Index j = 0; j < p; ++j) {
        omega(j, j) = omega.row(j).cwiseAbs().sum() + 1.0;
    }
    return omega;
}

/// Rows i.i.d. N(0, Omega^{-1}): z ~ N(0, I), then solve L^T x = z with Omega = L L^T.
inline Matrix sample_mvn(const Matrix& omega, Index n, std::uint64_t seed)
{
    const Index p = omega.rows();
    Eigen::LLT<Matrix> llt(omega);
    if (llt.info() != Eigen::Success || !omega.allFinite()) {
        throw Error(ErrorCode::NotPositiveDefinite, "precision matrix is not positive definite");
    }
    CounterRng rng(seed);
    Matrix z(p, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < p; ++j) z(j, i) = rng.normal();
    }
    const Matrix x = llt.matrixU().solve(z);
    return x.transpose();
}

inline GroundTruth simulate_truth(const SimulationSpec& spec)
{
    GroundTruth t;
    t.p = spec.p;
    t.design = gen_edge_sets(spec);
    for (int k = 0; k < spec.K; ++k) {
        t.edges.push_back(t.design.full(static_cast<std::size_t>(k)));
        t.precision.push_back(gen_precision(t.edges.back(), spec.p,
                                            CounterRng::derive(spec.seed, streams::precision + k)));
    }
    return t;
}

/// Raw (unstandardized) samples for every subpopulation of `truth`.
inline std::vector<Matrix> simulate_data(const SimulationSpec& spec, const GroundTruth& truth)
{
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < truth.K(); ++k) {
        out.push_back(sample_mvn(truth.precision[k], spec.n,
                                 CounterRng::derive(spec.seed, streams::samples + k)));
    }
    return out;
}

} // namespace sns
