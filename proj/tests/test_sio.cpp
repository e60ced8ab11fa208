#include <gtest/gtest.h>

#include <thermocrack/checks.hpp>
#include <thermocrack/sio.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace thermocrack;

namespace {
constexpr double pi = std::numbers::pi;

// <theta> of the delta-flux family: -(theta_s / 4 pi) log pair.
Profile log_theta(double theta_s, double a1, double a2) { return Profile(LogPair{a1, a2, -theta_s / (4 * pi)}); }
}  // namespace

TEST(Grid, GradedNodes) {
    const auto g = HalfLineGrid::graded(Side::negative, 50.0, 3.0, 128);
    EXPECT_EQ(g.size(), 128);
    EXPECT_DOUBLE_EQ(g.distance(127), 50.0);
    EXPECT_LT(g.coordinate(0), 0.0);
    for (int i = 1; i < g.size(); ++i) EXPECT_GT(g.distance(i), g.distance(i - 1));
    EXPECT_THROW(HalfLineGrid::graded(Side::negative, 1.0, 3.0, 8), std::invalid_argument);
    const auto e = g.extended(2.0);
    EXPECT_DOUBLE_EQ(e.truncation(), 100.0);
    for (int i = 0; i < g.size(); ++i) EXPECT_EQ(e.distance(i), g.distance(i));
}

TEST(Sio, PvOracleReturnsPlusMinusPiSquared) {
    for (double h : {-1e-3, -1.0, -1e3}) EXPECT_NEAR(pv_log_oracle(h), pi * pi, 1e-4 * pi * pi);
    for (double h : {1e-3, 2.0, 1e3}) EXPECT_NEAR(pv_log_oracle(h), -pi * pi, 1e-4 * pi * pi);
    EXPECT_THROW(pv_log_oracle(0.0), std::invalid_argument);
}

TEST(Sio, CauchyOfLogPairIsStep) {
    const double theta = 1.7, a1 = 4.0, a2 = 2.0;
    const Profile p = log_theta(theta, a1, a2);
    for (double x : {-10.0, -1.0, -1e-3}) EXPECT_NEAR(cauchy_S(p, x), 0.0, 1e-14);
    for (double x : {2.5, 3.0, 3.9}) EXPECT_NEAR(cauchy_S(p, x), -theta / 2, 1e-14);
    for (double x : {0.5, 1.9, 4.1, 40.0}) EXPECT_NEAR(cauchy_S(p, x), 0.0, 1e-14);
}

TEST(Sio, CauchyOfDiracAndRejection) {
    const Profile p(Dirac{1.0, 2.0});
    EXPECT_NEAR(cauchy_S(p, 3.0), 2.0 / (pi * 2.0), 1e-15);
    EXPECT_THROW(cauchy_S(p, 1.0), std::domain_error);
}

TEST(Sio, KernelParityOnSampledData) {
    std::vector<double> x, v;
    for (int i = -400; i <= 400; ++i) {
        const double t = i * 0.02;
        x.push_back(t);
        v.push_back(std::exp(-t * t));
    }
    const Profile even(Sampled(x, v));
    for (double s : {0.31, 1.17, 2.5}) EXPECT_NEAR(cauchy_S(even, s), -cauchy_S(even, -s), 1e-12);
    // Compare with the Dawson closed form S e^{-t^2} = (2/sqrt(pi)) D(x).
    EXPECT_NEAR(cauchy_S(even, 1.17), 2.0 / std::sqrt(pi) * special::dawson(1.17), 2e-4);
}

TEST(Sio, SignKernel) {
    const Profile f = Profile(Dirac{3.0, 1.0}).add(Dirac{1.0, -1.0});
    EXPECT_EQ(op_K(f, 0.0), 0.0);
    EXPECT_EQ(op_K(f, 5.0), 0.0);
    EXPECT_EQ(op_K(f, 2.0), -2.0);
    EXPECT_THROW(op_K(Profile(Dirac{1.0, 1.0}), 0.0), std::domain_error);
}

TEST(Sio, SignKernelDecaysForBalancedGaussianFlux) {
    const Profile f(ErfiFlux{1.0, 1.0});
    EXPECT_LT(std::abs(op_K(f, 30.0)), 1e-2 * std::abs(op_K(f, 0.5)));
    EXPECT_LT(std::abs(op_K(f, -30.0)), 1e-2 * std::abs(op_K(f, 0.5)));
}

TEST(Sio, LogKernel) {
    const auto r = checks::op_J_suite();
    EXPECT_TRUE(r.pass) << r.detail;
    const auto bad = checks::op_J_suite(0.5772);
    EXPECT_FALSE(bad.pass);
    // Euler constant cancels against balanced pairs.
    const Profile f = Profile(Dirac{3.0, 1.0}).add(Dirac{1.0, -1.0});
    EXPECT_NEAR(op_J(f, 0.0), -2.0 / pi * (std::log(3.0) - std::log(1.0)), 1e-15);
}

TEST(Sio, LogKernelOnGaussianFluxPair) {
    // (h/2) J <q2> + (l/4) J [[q2]] = (theta_s Upsilon / 2L) x exp(-x^2/L^2).
    const double theta = 0.9, L = 1.4, kp = 1.6, km = 0.7, h = 0.3, l = 1.1;
    const Profile avg(ErfiFlux{-(kp - km) * theta / (2 * L), L});
    const Profile jump(ErfiFlux{-(kp + km) * theta / L, L});
    const double ups = l * (kp + km) + h * (kp - km);
    for (double x : {-2.0, -0.4, 0.7, 3.0}) {
        const double lhs = 0.5 * h * op_J(avg, x) + 0.25 * l * op_J(jump, x);
        const double rhs = theta * ups / (2 * L) * x * std::exp(-x * x / (L * L));
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(Sio, Linearity) {
    const Profile a = log_theta(1.0, 3.0, 1.0), b(GaussianMoment{0.5, 2.0});
    for (double x : {-3.0, 0.4, 2.0}) {
        EXPECT_NEAR(cauchy_S(a + 2.0 * b, x), cauchy_S(a, x) + 2.0 * cauchy_S(b, x), 1e-14);
    }
}

TEST(Sio, ProjectorsAreIdempotent) {
    const auto neg = HalfLineGrid::graded(Side::negative, 20.0, 2.0, 64);
    const auto pos = HalfLineGrid::graded(Side::positive, 20.0, 2.0, 64);
    const Profile f(GaussianMoment{1.0, 1.0});
    const GridFunction p = project(f, neg);
    for (int i = 0; i < neg.size(); ++i) EXPECT_EQ(p.values[i], f(neg.coordinate(i)));
    const GridFunction pp = project(p, neg);
    for (int i = 0; i < neg.size(); ++i) EXPECT_NEAR(pp.values[i], p.values[i], 1e-15);
    const GridFunction z = project(p, pos);
    for (double v : z.values) EXPECT_EQ(v, 0.0);
}

TEST(Sio, InversionReproducesLogPairSolution) {
    const double theta = 1.0, a1 = 4.0, a2 = 2.0, c = 0.35;
    const auto g = HalfLineGrid::graded(Side::negative, 400.0, 3.0, 2048);
    const auto rhs = [&](double x) { return c * theta / (4 * pi) * 2.0 * (std::log(std::abs(x - a1)) - std::log(std::abs(x - a2))); };
    const auto inv = invert_S_s(GridFunction::sample(g, rhs));
    EXPECT_LE(inv.residual, 1e-3);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.coordinate(i);
        if (x < -20.0 || x > -0.01) continue;
        const double r1 = std::sqrt(-a1 / x), r2 = std::sqrt(-a2 / x);
        const double exact = c * theta / pi * (-r1 + r2 + std::atan(r1) - std::atan(r2));
        worst = std::max(worst, std::abs(inv.derivative.values[i] / exact - 1.0));
    }
    EXPECT_LE(worst, 1e-3);
}

TEST(Sio, InversionOfZeroAndRoundtrip) {
    const auto g = HalfLineGrid::graded(Side::negative, 10.0, 3.0, 256);
    const auto z = invert_S_s(GridFunction(g, std::vector<double>(256, 0.0)));
    for (double v : z.derivative.values) EXPECT_EQ(v, 0.0);
    const auto r = checks::roundtrip_suite();
    EXPECT_TRUE(r.pass && !r.warning) << r.detail;
    EXPECT_THROW(invert_S_s(GridFunction(HalfLineGrid::graded(Side::positive, 1.0, 1.0, 32),
                                         std::vector<double>(32, 1.0))),
                 std::invalid_argument);
}

TEST(Sio, CheckedInversionReportsResidual) {
    const auto g = HalfLineGrid::graded(Side::negative, 10.0, 3.0, 64);
    // Non-decaying rhs cannot be matched; the achieved residual is reported.
    const GridFunction rhs(g, std::vector<double>(64, 1.0));
    try {
        invert_S_s_checked(rhs, 1e-12);
        FAIL() << "expected NonConvergence";
    } catch (const NonConvergence& e) {
        EXPECT_GT(e.achieved, 1e-12);
    }
}

TEST(Sio, IntegrateFromTip) {
    const auto g = HalfLineGrid::graded(Side::negative, 30.0, 3.0, 512);
    const GridFunction f = GridFunction::sample(g, [](double x) { return 1.0 / std::sqrt(-x); }, TipBehavior::inverse_sqrt);
    const GridFunction u = integrate_from_tip(f);
    for (int i = 0; i < g.size(); i += 50) EXPECT_NEAR(u.values[i], -2.0 * std::sqrt(g.distance(i)), 1e-10);
}
