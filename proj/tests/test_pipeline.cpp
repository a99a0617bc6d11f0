#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <sns/pipeline.hpp>
#include <sns/simulation.hpp>

#include "support/cd_oracle.hpp"
#include "support/checks.hpp"

using namespace sns;
using sns::testing::coordinate_descent_oracle;
using sns::testing::expect_certified;

namespace {

std::vector<DataMatrix> simulated(Index p, Index n, double s, double rho, std::uint64_t seed, int K = 2)
{
    const SimulationSpec spec{p, K, n, s, rho, seed};
    const GroundTruth truth = simulate_truth(spec);
    std::vector<DataMatrix> out;
    for (const auto& x : simulate_data(spec, truth)) out.push_back(center_scale(x));
    return out;
}

// Scalar minimum of f over (0, inf): log-grid scan, then golden-section refinement.
template <class F>
double brute_minimum(F f, double lo = 1e-8, double hi = 1e8)
{
    const int steps = 200000;
    double best_x = lo, best = f(lo);
    const double ratio = std::pow(hi / lo, 1.0 / steps);
    double x = lo;
    for (int i = 0; i <= steps; ++i, x *= ratio) {
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    double a = best_x / ratio, b = best_x * ratio;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double c = b - g * (b - a), d = a + g * (b - a);
        if (f(c) < f(d)) b = d;
        else a = c;
    }
    return std::min(best, f((a + b) / 2.0));
}

} // namespace

TEST(LlaWeights, FormulaExamples)
{
    CoefficientSet one{{Matrix::Zero(2, 2)}};
    one.theta[0](0, 1) = 0.25;
    EXPECT_NEAR(lla_weights(one).tau(0, 1), 1.0, 1e-15);

    CoefficientSet two{{Matrix::Zero(2, 2), Matrix::Zero(2, 2)}};
    two.theta[0](0, 1) = 0.08;
    two.theta[1](0, 1) = -0.08;
    const WeightMatrix w = lla_weights(two);
    EXPECT_NEAR(w.tau(0, 1), 1.25, 1e-12);
    EXPECT_FALSE(w.excluded(0, 1));
    EXPECT_TRUE(w.excluded(1, 0));
}

TEST(LlaWeights, ScaleEquivariant)
{
    std::mt19937_64 gen(1);
    CoefficientSet init{{sns::testing::random_matrix(5, 5, gen), sns::testing::random_matrix(5, 5, gen)}};
    for (auto& t : init.theta) t.diagonal().setZero();
    CoefficientSet scaled = init;
    const double c = 9.0;
    for (auto& t : scaled.theta) t *= c;
    const WeightMatrix a = lla_weights(init), b = lla_weights(scaled);
    for (Index j = 0; j < 5; ++j) {
        for (Index l = 0; l < 5; ++l) {
            if (l != j) EXPECT_NEAR(b.tau(l, j), a.tau(l, j) / std::sqrt(c), 1e-12);
        }
    }
}

TEST(InsFit, AboveFullShrinkageIsAllZero)
{
    const auto data = simulated(6, 80, 0.3, 0.0, 2);
    const FitResult fit = ins_fit(data, 10.0);
    EXPECT_TRUE(fit.coefficients.all_zero());
    EXPECT_TRUE(fit.converged());
    expect_certified(fit);
}

TEST(InsFit, SingleSubpopulationIsNeighborhoodSelection)
{
    const auto data = simulated(6, 80, 0.3, 0.0, 3, 1);
    const FitResult fit = ins_fit(data, 0.1);
    const SolveReport direct = admm_weighted_lasso(data[0], 0.1, WeightMatrix::uniform(6));
    ASSERT_EQ(fit.coefficients.K(), 1u);
    EXPECT_EQ(fit.coefficients.theta[0], direct.coefficients);
    expect_certified(fit);
}

TEST(InsFit, SupportMatchesCoordinateDescent)
{
    const auto data = simulated(4, 100, 0.5, 0.0, 4);
    const FitResult fit = ins_fit(data, 0.05);
    ASSERT_TRUE(fit.converged());
    expect_certified(fit);
    for (std::size_t k = 0; k < data.size(); ++k) {
        const Matrix ref = coordinate_descent_oracle(data[k], 0.05, WeightMatrix::uniform(4));
        EXPECT_EQ((fit.coefficients.theta[k].array() != 0.0).matrix(), (ref.array() != 0.0).matrix());
        EXPECT_LT((fit.coefficients.theta[k] - ref).cwiseAbs().maxCoeff(), 1e-4);
    }
}

TEST(SnsFit, OneStepWithUnitWeightsAndOneSubpopulationIsIndividualLasso)
{
    const auto data = simulated(7, 60, 0.2, 0.0, 5, 1);
    const NeighborhoodSelection engine(data);
    const FitResult weighted = engine.weighted(0.08, WeightMatrix::uniform(7));
    const SolveReport direct = admm_weighted_lasso(data[0], 0.08, WeightMatrix::uniform(7));
    EXPECT_LE((weighted.coefficients.theta[0] - direct.coefficients).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SnsFit, LambdaZeroGivesOrdinaryLeastSquares)
{
    const auto data = simulated(5, 60, 0.3, 0.0, 6);
    SnsConfig cfg;
    cfg.lambda = 0.0;
    cfg.lambda_init = 0.0;  // dense initializer, so no entry is excluded
    const FitResult fit = sns_fit(data, cfg);
    ASSERT_TRUE(fit.converged());
    expect_certified(fit);
    ASSERT_EQ(fit.stats.size(), 4u);
    for (std::size_t k = 0; k < 2; ++k) {
        const Matrix& v = data[k].values();
        for (Index j = 0; j < 5; ++j) {
            Matrix xm(60, 4);
            xm << v.leftCols(j), v.rightCols(4 - j);
            const Vector ols = (xm.transpose() * xm).ldlt().solve(xm.transpose() * v.col(j));
            Vector got(4);
            got << fit.coefficients.theta[k].col(j).head(j), fit.coefficients.theta[k].col(j).tail(4 - j);
            EXPECT_LT((got - ols).cwiseAbs().maxCoeff(), 1e-4);
        }
    }
}

TEST(SnsFit, AllZeroInitializerRejected)
{
    const auto data = simulated(5, 60, 0.3, 0.0, 7);
    SnsConfig cfg;
    cfg.lambda = 0.1;
    const CoefficientSet zero{{Matrix::Zero(5, 5), Matrix::Zero(5, 5)}};
    try {
        sns_fit(data, cfg, zero);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInitializer);
    }
    cfg.lambda_init = 100.0;
    EXPECT_THROW(sns_fit(data, cfg), Error);
}

TEST(SnsFit, SupportMatchesCoordinateDescentPipeline)
{
    // p = 8: 28 pairs, 3 common edges plus one individual edge per subpopulation.
    const auto data = simulated(8, 200, 3.0 / 28.0, 1.0 / 3.0, 8);
    SnsConfig cfg;
    cfg.lambda = 0.12;
    const FitResult fit = sns_fit(data, cfg);
    ASSERT_TRUE(fit.converged());
    expect_certified(fit);

    // Oracle pipeline: CD initializer, weights by the formula, CD weighted solves.
    const Index p = 8;
    std::vector<Matrix> init;
    for (const auto& d : data) init.push_back(coordinate_descent_oracle(d, cfg.lambda_init, WeightMatrix::uniform(p)));
    WeightMatrix w = WeightMatrix::uniform(p);
    for (Index j = 0; j < p; ++j) {
        for (Index l = 0; l < p; ++l) {
            if (l == j) continue;
            const double mass = std::abs(init[0](l, j)) + std::abs(init[1](l, j));
            if (mass == 0.0) w.excluded(l, j) = true;
            else w.tau(l, j) = 1.0 / (2.0 * std::sqrt(mass));
        }
    }
    for (std::size_t k = 0; k < 2; ++k) {
        const Matrix ref = coordinate_descent_oracle(data[k], cfg.lambda, w, 200.0);
        EXPECT_EQ((fit.coefficients.theta[k].array() != 0.0).matrix(), (ref.array() != 0.0).matrix())
            << "subpopulation " << k;
        EXPECT_LT((fit.coefficients.theta[k] - ref).cwiseAbs().maxCoeff(), 1e-4);
        EXPECT_EQ(fit.coefficients.theta[k].diagonal().norm(), 0.0);
    }
}

TEST(SnsFit, UnequalSampleSizesUseLargestN)
{
    auto data = simulated(5, 120, 0.3, 0.0, 9);
    data[1] = center_scale(data[1].values().topRows(70));
    const NeighborhoodSelection engine(data);
    EXPECT_EQ(engine.joint_solver(0).loss_n(), 120.0);
    EXPECT_EQ(engine.joint_solver(1).loss_n(), 120.0);
    EXPECT_EQ(engine.individual_solver(1).loss_n(), 70.0);
    SnsConfig cfg;
    cfg.lambda = 0.05;
    const FitResult fit = sns_fit(data, cfg);
    ASSERT_TRUE(fit.converged());
    expect_certified(fit);
    const WeightMatrix w = lla_weights(ins_fit(data, cfg.lambda_init).coefficients);
    const Matrix ref = coordinate_descent_oracle(data[1], cfg.lambda, w, 120.0);
    EXPECT_LT((fit.coefficients.theta[1] - ref).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(SnsFit, MultiStepRunsRequestedIterations)
{
    const auto data = simulated(6, 100, 0.3, 0.0, 10);
    SnsConfig cfg;
    cfg.lambda = 0.1;
    cfg.lla_steps = 3;
    const FitResult fit = sns_fit(data, cfg);
    EXPECT_EQ(fit.stats.size(), 2u + 3u * 2u);
    expect_certified(fit);
    cfg.lla_steps = 0;
    EXPECT_THROW(sns_fit(data, cfg), Error);
}

TEST(SnsFit, EdgeCountNonIncreasingInLambda)
{
    const auto data = simulated(12, 100, 0.15, 0.2, 11);
    const NeighborhoodSelection engine(data);
    const FitResult init = engine.individual(0.05);
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (int i = 0; i < 10; ++i) {
        SnsConfig cfg;
        cfg.lambda = 0.02 + 0.04 * i;
        const FitResult fit = engine.simultaneous(cfg, init.coefficients);
        expect_certified(fit);
        std::size_t count = 0;
        for (const auto& s : assemble_edges(fit.coefficients, EdgeRule::And).sets) count += s.size();
        EXPECT_LE(count, previous) << "lambda " << cfg.lambda;
        previous = count;
    }
}

TEST(AssembleEdges, Rules)
{
    Matrix sym = Matrix::Zero(3, 3);
    sym(0, 1) = sym(1, 0) = 0.4;
    sym(1, 2) = 0.1;
    sym(2, 1) = -0.3;
    const CoefficientSet s{{sym}};
    EXPECT_EQ(assemble_edges(s, EdgeRule::And).sets, assemble_edges(s, EdgeRule::Or).sets);

    Matrix one_way = Matrix::Zero(3, 3);
    one_way(0, 1) = 0.5;
    const CoefficientSet o{{one_way}};
    EXPECT_TRUE(assemble_edges(o, EdgeRule::And).sets[0].empty());
    const EdgeSet expect{{0, 1}};
    EXPECT_EQ(assemble_edges(o, EdgeRule::Or).sets[0], expect);

    const CoefficientSet z{{Matrix::Zero(4, 4), Matrix::Zero(4, 4)}};
    const MultiEdgeSet e = assemble_edges(z, EdgeRule::Or);
    EXPECT_EQ(e.p, 4);
    EXPECT_TRUE(e.sets[0].empty() && e.sets[1].empty());
}

TEST(PenaltyFactorization, Examples)
{
    const std::array<double, 2> zero{0.0, 0.0};
    EXPECT_EQ(penalty_factorization_value(zero, 1.0, 1.0), 0.0);
    const std::array<double, 2> four{1.5, -2.5};
    EXPECT_NEAR(penalty_factorization_value(four, 1.0, 1.0), 4.0, 1e-15);
}

TEST(PenaltyFactorization, MatchesScalarMinimumOfProductForm)
{
    const std::array<double, 2> theta{0.3, -0.7};
    const double l1 = 2.0, l2 = 0.5;
    const double brute = brute_minimum([&](double eta) { return factorized_penalty(eta, theta, l1, l2); });
    EXPECT_NEAR(penalty_factorization_value(theta, l1, l2), brute, 1e-6);
    // Rescaled form eta + lambda1 lambda2 sum|theta| / eta has the same minimum.
    const double mass = 1.0;
    const double rescaled = brute_minimum([&](double eta) { return eta + l1 * l2 * mass / eta; });
    EXPECT_NEAR(penalty_factorization_value(theta, l1, l2), rescaled, 1e-6);
    EXPECT_NEAR(factorized_penalty(optimal_common_factor(theta, l1, l2), theta, l1, l2), brute, 1e-9);
}

TEST(PenaltyFactorization, HundredRandomDraws)
{
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), lam(0.05, 3.0);
    std::uniform_int_distribution<int> kdist(1, 4);
    for (int c = 0; c < 100; ++c) {
        std::vector<double> theta(static_cast<std::size_t>(kdist(gen)));
        for (auto& t : theta) t = coef(gen);
        const double l1 = lam(gen), l2 = lam(gen);
        const double brute = brute_minimum([&](double eta) { return factorized_penalty(eta, theta, l1, l2); });
        EXPECT_NEAR(penalty_factorization_value(theta, l1, l2), brute, 1e-6) << "draw " << c;
    }
}
