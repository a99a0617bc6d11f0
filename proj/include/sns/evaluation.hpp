#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include <sns/graph.hpp>
#include <sns/simulation.hpp>

namespace sns {

struct RocPoint
{
    double afpr = 0.0;
    double atpr = 0.0;
};

struct RocCurve
{
    std::vector<double> lambdas;  // ascending
    std::vector<RocPoint> points; // one per lambda
    double auc = 0.0;
};

/**
 * Average true/false positive rates of estimated edge sets over the K
 * subpopulations; true support is the off-diagonal support of each Omega^(k).
 */
inline RocPoint edge_rates(const GroundTruth& truth, const MultiEdgeSet& estimate)
{
    if (estimate.K() != truth.K() || estimate.p != truth.p) {
        throw Error(ErrorCode::DimensionError, "estimate does not match the ground truth");
    }
    const Index p = truth.p;
    RocPoint out;
    for (std::size_t k = 0; k < truth.K(); ++k) {
        const auto est = adjacency(estimate.sets[k], p);
        const Matrix& omega = truth.precision[k];
        long pos = 0, neg = 0, tp = 0, fp = 0;
        for (Index j = 0; j < p; ++j) {
            for (Index l = j + 1; l < p; ++l) {
                if (omega(j, l) != 0.0) {
                    ++pos;
                    tp += est(j, l);
                } else {
                    ++neg;
                    fp += est(j, l);
                }
            }
        }
        if (pos == 0 || neg == 0) {
            throw Error(ErrorCode::DegenerateTruth,
                        "subpopulation " + std::to_string(k) + " has no true edges or no true non-edges");
        }
        out.atpr += static_cast<double>(tp) / static_cast<double>(pos);
        out.afpr += static_cast<double>(fp) / static_cast<double>(neg);
    }
    out.atpr /= static_cast<double>(truth.K());
    out.afpr /= static_cast<double>(truth.K());
    return out;
}

/// Trapezoid area under (AFPR, ATPR) points sorted by AFPR, with (0,0) and (1,1) appended.
inline double roc_auc(std::vector<RocPoint> points)
{
    points.push_back({0.0, 0.0});
    points.push_back({1.0, 1.0});
    std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
        return a.afpr != b.afpr ? a.afpr < b.afpr : a.atpr < b.atpr;
    });
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].afpr - points[i - 1].afpr) * (points[i].atpr + points[i - 1].atpr) / 2.0;
    }
    return area;
}

using EdgeEstimator = std::function<MultiEdgeSet(double lambda)>;

inline RocCurve roc_curve(const GroundTruth& truth, const EdgeEstimator& fit, const std::vector<double>& grid)
{
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) {
        throw Error(ErrorCode::DimensionError, "lambda grid must be non-empty and ascending");
    }
    RocCurve c;
    c.lambdas = grid;
    for (double lambda : grid) c.points.push_back(edge_rates(truth, fit(lambda)));
    c.auc = roc_auc(c.points);
    return c;
}

/// Pointwise average of replicate curves on a shared grid; AUC of the averaged curve.
inline RocCurve average_roc(const std::vector<RocCurve>& curves)
{
    if (curves.empty()) throw Error(ErrorCode::DimensionError, "no ROC curves to average");
    RocCurve out;
    out.lambdas = curves.front().lambdas;
    out.points.assign(out.lambdas.size(), {});
    for (const auto& c : curves) {
        if (c.lambdas != out.lambdas) {
            throw Error(ErrorCode::DimensionError, "ROC curves use different lambda grids");
        }
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            out.points[i].afpr += c.points[i].afpr;
            out.points[i].atpr += c.points[i].atpr;
        }
    }
    for (auto& pt : out.points) {
        pt.afpr /= static_cast<double>(curves.size());
        pt.atpr /= static_cast<double>(curves.size());
    }
    out.auc = roc_auc(out.points);
    return out;
}

/// `count` equally spaced values from `start` to `end` inclusive.
inline std::vector<double> linear_grid(double start, double end, int count)
{
    if (count < 1) throw Error(ErrorCode::DimensionError, "grid needs at least one point");
    std::vector<double> g(static_cast<std::size_t>(count));
    if (count == 1) {
        g[0] = start;
        return g;
    }
    const double step = (end - start) / static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + step * i;
    g.back() = end;
    return g;
}

} // namespace sns
