#include "fredholm/solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fredholm/grid.hpp"
#include "fredholm/kernel.hpp"
#include "fredholm/product_integration.hpp"

using namespace fredholm;

namespace {

SystemMatrix zero_system(int n) {
    const Grid g(1.0, n);
    return assemble(g, SingularKernel(0.5, Numerator::constant(1.0, 1.0), 0.0));
}

SystemMatrix sample_system(int n, double hurst) {
    const Grid g(1.0, n);
    const HurstParams hp = hurst_params(hurst);
    const Numerator num = hurst < 0.5
                              ? regularize(Numerator::hurst_lower(hurst, 1.0), g.h)
                              : Numerator::constant(1.0, 1.0);
    const double lambda = hurst < 0.5 ? -hp.c2 : -*hp.c3;
    return assemble(g, SingularKernel(hp.nu, num, lambda));
}

TEST(SolveSystem, ZeroKernelReturnsRhs) {
    const SystemMatrix m = zero_system(20);
    Eigen::VectorXd g(20);
    for (int i = 0; i < 20; ++i) g(i) = std::sin(0.3 * i);
    const SolveReport r = solve_system(m, g);
    EXPECT_TRUE((r.x.array() == g.array()).all());
    EXPECT_EQ(r.residual_inf, 0.0);
}

TEST(SolveSystem, ResidualInvariant) {
    for (double hurst : {0.25, 0.75}) {
        const SystemMatrix m = sample_system(80, hurst);
        Eigen::VectorXd g(80);
        for (int i = 0; i < 80; ++i) g(i) = 1.0 + 0.5 * std::cos(0.2 * i);
        const SolveReport r = solve_system(m, g);
        EXPECT_LE(r.residual_inf, 1e-10 * (1.0 + g.cwiseAbs().maxCoeff()));
        EXPECT_FALSE(r.ill_conditioned);
        EXPECT_GT(r.cond_estimate, 0.0);
    }
}

TEST(SolveSystem, PowerOfTwoScalingIsExact) {
    const SystemMatrix m = sample_system(50, 0.75);
    Eigen::VectorXd g(50);
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) g(i) = dist(rng);
    const SolveReport a = solve_system(m, g);
    const SolveReport b = solve_system(m, (4.0 * g).eval());
    for (int i = 0; i < 50; ++i) EXPECT_EQ(b.x(i), 4.0 * a.x(i));
}

TEST(SolveSystem, GeneralScalingIsLinearToRoundoff) {
    const SystemMatrix m = sample_system(50, 0.3);
    Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(50, 0.0, 1.0);
    const double c = 3.7;
    const SolveReport a = solve_system(m, g);
    const SolveReport b = solve_system(m, (c * g).eval());
    EXPECT_LE((b.x - c * a.x).cwiseAbs().maxCoeff(), 1e-12 * a.x.cwiseAbs().maxCoeff() * c);
}

TEST(SolveSystem, SingularMatrixReportsPivot) {
    // I - K = 0 when K = I
    SystemMatrix m = zero_system(5);
    m.entries = DenseMatrix::Identity(5, 5);
    Eigen::VectorXd g = Eigen::VectorXd::Ones(5);
    try {
        solve_system(m, g);
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_GE(e.pivot_index(), 0);
        EXPECT_LT(e.pivot_index(), 5);
    }
}

TEST(SolveSystem, IllConditionedFlag) {
    SystemMatrix m = zero_system(4);
    m.entries = DenseMatrix::Zero(4, 4);
    m.entries(3, 3) = 1.0 - 1e-14;  // (I-K) has a 1e-14 pivot
    Eigen::VectorXd g = Eigen::VectorXd::Ones(4);
    const SolveReport r = solve_system(m, g);
    EXPECT_TRUE(r.ill_conditioned);
    EXPECT_GT(r.cond_estimate, 1e12);
}

TEST(SolveSystem, RhsLengthMismatch) {
    const SystemMatrix m = zero_system(10);
    EXPECT_THROW(solve_system(m, Eigen::VectorXd::Ones(9)), std::invalid_argument);
}

TEST(ErrorReport, ExactSolutionGivesZero) {
    const Grid g(1.0, 30);
    Eigen::VectorXd x(30);
    for (int i = 0; i < 30; ++i) x(i) = g.node(i) * g.node(i);
    const ErrorReport r = error_report(x, [](double t) { return t * t; }, g);
    EXPECT_EQ(r.max_err, 0.0);
    EXPECT_EQ(r.l2_err, 0.0);
    EXPECT_EQ(r.n, 30);
}

TEST(ErrorReport, ConstantError) {
    const Grid g(1.0, 30);
    const double c = -0.37;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(30, c);
    const ErrorReport r = error_report(x, [](double) { return 0.0; }, g, 0.75);
    EXPECT_DOUBLE_EQ(r.max_err, std::abs(c));
    EXPECT_NEAR(r.l2_err, std::abs(c), 1e-14);
    EXPECT_DOUBLE_EQ(r.hurst, 0.75);
}

TEST(ErrorReport, L2BoundedByMaxNorm) {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (double t_max : {1.0, 2.5}) {
        const Grid g(t_max, 41);
        Eigen::VectorXd x(41);
        for (int i = 0; i < 41; ++i) x(i) = dist(rng);
        const ErrorReport r = error_report(x, [](double t) { return std::sin(t); }, g);
        EXPECT_LE(r.l2_err, std::sqrt(t_max) * r.max_err * (1.0 + 1e-14));
    }
}

TEST(ConvergenceRate, PureSecondOrder) {
    std::vector<std::pair<int, double>> errs;
    for (int n : {50, 100, 200, 400}) errs.emplace_back(n, 3.0 / (double(n) * n));
    EXPECT_NEAR(convergence_rate(errs), 2.0, 1e-12);
}

TEST(ConvergenceRate, ConstantErrors) {
    std::vector<std::pair<int, double>> errs = {{50, 0.3}, {100, 0.3}, {200, 0.3}};
    EXPECT_NEAR(convergence_rate(errs), 0.0, 1e-12);
}

TEST(ConvergenceRate, ReferenceTableColumn) {
    // fit of the H = 0.6 max-error column over N in {100,...,500}; the slope
    // 1.9558113479892985 was computed with an independent least-squares fit
    std::vector<std::pair<int, double>> errs = {
        {100, 62.43e-7}, {200, 16.12e-7}, {300, 7.30e-7}, {500, 2.68e-7}};
    EXPECT_NEAR(convergence_rate(errs), 1.9558113479892985, 1e-12);
}

TEST(ConvergenceRate, Validation) {
    EXPECT_THROW(convergence_rate({{10, 1.0}, {20, 0.5}}), std::invalid_argument);
    EXPECT_THROW(convergence_rate({{10, 1.0}, {20, 0.5}, {15, 0.2}}), std::invalid_argument);
    EXPECT_THROW(convergence_rate({{10, 1.0}, {20, -0.5}, {30, 0.2}}), std::invalid_argument);
    EXPECT_THROW(convergence_rate({{10, 1.0}, {20, 0.0}, {30, 0.2}}), std::invalid_argument);
}

TEST(TrapezoidInner, MatchesClosedForms) {
    const Grid g(1.0, 101);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(101);
    EXPECT_NEAR(trapezoid_inner(ones, ones, g.h), 1.0, 1e-14);
    Eigen::VectorXd lin(101);
    for (int i = 0; i < 101; ++i) lin(i) = g.node(i);
    // trapezoid rule is exact for t^2 up to its O(h^2) bias: int t^2 = 1/3
    EXPECT_NEAR(trapezoid_inner(lin, lin, g.h), 1.0 / 3.0, 1e-4);
    EXPECT_NEAR(trapezoid_norm(ones, g.h), 1.0, 1e-14);
}

} // namespace
