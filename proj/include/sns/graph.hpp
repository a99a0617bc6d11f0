#pragma once

#include <compare>
#include <string_view>
#include <vector>

#include <sns/linalg.hpp>

namespace sns {

/// Undirected edge in canonical form, i < j (0-based vertex indices).
struct Edge
{
    Index i = 0;
    Index j = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Sorted, duplicate-free list of canonical edges.
using EdgeSet = std::vector<Edge>;

struct MultiEdgeSet
{
    Index p = 0;
    std::vector<EdgeSet> sets;

    std::size_t K() const noexcept { return sets.size(); }
};

enum class EdgeRule { And, Or };

inline constexpr std::string_view to_string(EdgeRule rule) noexcept
{
    return rule == EdgeRule::And ? "and" : "or";
}

/// Symmetric off-diagonal support of a p x p matrix as an edge set.
inline EdgeSet support_edges(const Matrix& m)
{
    EdgeSet out;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != 0.0 || m(j, i) != 0.0) out.push_back({i, j});
        }
    }
    return out;
}

/// Edge set from neighborhood coefficients: AND needs both directions nonzero, OR either.
inline EdgeSet neighborhood_edges(const Matrix& theta, EdgeRule rule)
{
    EdgeSet out;
    const Index p = theta.rows();
    for (Index i = 0; i < p; ++i) {
        for (Index j = i + 1; j < p; ++j) {
            const bool a = theta(i, j) != 0.0;
            const bool b = theta(j, i) != 0.0;
            if (rule == EdgeRule::And ? (a && b) : (a || b)) out.push_back({i, j});
        }
    }
    return out;
}

/// Dense p x p boolean adjacency (both triangles) of an edge set.
inline Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency(const EdgeSet& edges, Index p)
{
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adj =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(p, p, false);
    for (const auto& e : edges) {
        adj(e.i, e.j) = true;
        adj(e.j, e.i) = true;
    }
    return adj;
}

} // namespace sns
