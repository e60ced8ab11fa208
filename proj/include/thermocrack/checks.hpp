#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fourier_symbols.hpp"
#include "materials.hpp"
#include "profiles.hpp"
#include "sio.hpp"
#include "solver.hpp"
#include "special.hpp"

// Self-check suites shared by `thermocrack check` and the test programs.

namespace thermocrack::checks {

struct SuiteResult {
    std::string name;
    bool pass = true;
    bool warning = false;
    std::string detail;
};

namespace detail {
inline std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

inline Material random_material(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.2, 3.0), G(-2.0, 2.0);
    Material m;
    m.mu = U(rng);
    m.lambda = U(rng) - 0.15;
    m.gamma_t = G(rng);
    m.gamma_c = G(rng);
    m.k_t = U(rng);
    m.D_c = U(rng);
    return m;
}

// An error above tolerance that at least halves when N doubles marks an
// under-resolved but converging run: a warning rather than a failure.
inline void resolution_verdict(SuiteResult& r, double err, double tol, const std::function<double()>& err_doubled) {
    if (err <= tol) return;
    const double e2 = err_doubled();
    r.pass = e2 < 0.5 * err && err < 0.1;
    r.warning = r.pass;
    r.detail += fmt(" (error %.3g at doubled N: ", e2);
    r.detail += r.pass ? "resolution-limited)" : "not converging)";
}

inline double random_xi(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> E(-2.0, 2.0);
    std::bernoulli_distribution sign(0.5);
    const double v = std::pow(10.0, E(rng));
    return sign(rng) ? v : -v;
}
}  // namespace detail

// Principal-value oracle for ln(w^2)/(h - w).
inline SuiteResult pv_oracle_suite(double tol = 1e-4) {
    SuiteResult r{"pv_log_oracle"};
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double worst = 0.0;
    for (double h : {-1e-2, -1.0, -1e2, 1e-2, 1.0, 1e2}) {
        const double expect = h < 0 ? pi2 : -pi2;
        worst = std::max(worst, std::abs(pv_log_oracle(h) - expect) / pi2);
    }
    r.pass = worst <= tol;
    r.detail = detail::fmt("max relative error %.3g", worst);
    return r;
}

// Explicit versus definitional A, B, M, g/d and coupling vectors.
inline SuiteResult dual_path_suite(int samples = 100, double tol = 1e-12, unsigned seed = 20240601u) {
    SuiteResult r{"dual_path_algebra"};
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Material p = detail::random_material(rng), m = detail::random_material(rng);
        const double xi = detail::random_xi(rng);
        const auto bp = compute_bimaterial_params(p, m);
        const auto e = matrices_ABM_explicit(xi, bp), d = matrices_ABM_definitional(xi, bp);
        worst = std::max({worst, relative_difference(e.A, d.A), relative_difference(e.B, d.B),
                          relative_difference(e.M, d.M)});
        const auto ge = gd_vectors_explicit(xi, bp), gd = gd_vectors_definitional(xi, bp);
        const ComplexVector2* a[] = {&ge.jump_g_t, &ge.avg_g_t, &ge.jump_d_t, &ge.avg_d_t,
                                     &ge.jump_g_c, &ge.avg_g_c, &ge.jump_d_c, &ge.avg_d_c};
        const ComplexVector2* b[] = {&gd.jump_g_t, &gd.avg_g_t, &gd.jump_d_t, &gd.avg_d_t,
                                     &gd.jump_g_c, &gd.avg_g_c, &gd.jump_d_c, &gd.avg_d_c};
        for (int i = 0; i < 8; ++i) worst = std::max(worst, relative_difference(*a[i], *b[i]));
        const auto ce = coupling_vectors(xi, bp), cd = coupling_vectors_definitional(xi, p, m);
        const ComplexVector2* c1[] = {&ce.jump_eta_t, &ce.avg_eta_t, &ce.jump_eta_c, &ce.avg_eta_c,
                                      &ce.jump_zeta_t, &ce.avg_zeta_t, &ce.jump_zeta_c, &ce.avg_zeta_c};
        const ComplexVector2* c2[] = {&cd.jump_eta_t, &cd.avg_eta_t, &cd.jump_eta_c, &cd.avg_eta_c,
                                      &cd.jump_zeta_t, &cd.avg_zeta_t, &cd.jump_zeta_c, &cd.avg_zeta_c};
        for (int i = 0; i < 8; ++i) worst = std::max(worst, relative_difference(*c1[i], *c2[i]));
    }
    r.pass = worst <= tol;
    r.detail = detail::fmt("max relative difference %.3g", worst);
    return r;
}

// Residual of Psi' - i xi Phi = U1, Phi' + i xi Psi = U2 with x2-derivatives
// taken by central differences of step h.
inline double ode_residual(double xi, double x2, const Material& mat, cdouble s21, cdouble s22, HalfPlane hp,
                           double h = 1e-5) {
    const auto P = [&](double y) { return potentials(xi, y, mat, s21, s22, hp); };
    const auto pp = P(x2 + h), pm = P(x2 - h), p0 = P(x2);
    const cdouble dPhi = (pp.first - pm.first) / (2 * h), dPsi = (pp.second - pm.second) / (2 * h);
    const auto U = weight_displacements(xi, x2, mat, s21, s22, hp);
    const cdouble r1 = dPsi - I_unit * xi * p0.first - U.first;
    const cdouble r2 = dPhi + I_unit * xi * p0.second - U.second;
    const double scale = std::max({std::abs(U.first), std::abs(U.second), std::abs(xi * p0.first),
                                   std::abs(xi * p0.second), 1e-300});
    return std::max(std::abs(r1), std::abs(r2)) / scale;
}

// xi in [-10, 10] \ {0}, |x2| in (0, 5), alternating half-planes.
inline SuiteResult ode_suite(int samples = 100, double tol = 1e-6, unsigned seed = 7u) {
    SuiteResult r{"potential_ode_residual"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wavenumber(-10.0, 10.0), depth(1e-3, 5.0), part(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Material mat = detail::random_material(rng);
        double xi = 0.0;
        while (std::abs(xi) < 1e-3) xi = wavenumber(rng);
        const HalfPlane hp = k % 2 ? HalfPlane::lower : HalfPlane::upper;
        const double y = hp == HalfPlane::upper ? depth(rng) : -depth(rng);
        const cdouble s21(part(rng), part(rng)), s22(part(rng), part(rng));
        worst = std::max(worst, ode_residual(xi, y, mat, s21, s22, hp));
    }
    r.pass = worst <= tol;
    r.detail = detail::fmt("max scaled residual %.3g", worst);
    return r;
}

// The stored Euler constant against -int_0^inf e^{-t} ln t dt, plus the J
// identity on the delta-flux family.
inline SuiteResult op_J_suite(double euler_gamma = special::euler_gamma) {
    SuiteResult r{"op_J"};
    boost::math::quadrature::exp_sinh<double> es;
    const double g = -es.integrate([](double t) { return std::exp(-t) * std::log(t); }, 0.0,
                                   std::numeric_limits<double>::infinity());
    const double const_err = std::abs(g - euler_gamma) / g;

    // (h/2) J<q> + (l/4) J[[q]] = -(theta_s/8pi) Upsilon log-pair for k+ = k- = 1.
    const double theta = 1.3, a1 = 4.0, a2 = 2.0, h = 0.7, l = 1.9, kp = 1.4, km = 0.6;
    const auto fam = make_delta_flux_family(theta, 1.0, a1, a2, kp, km);
    const double Ups = l * (kp + km) + h * (kp - km);
    double worst = 0.0;
    for (double x : {-7.5, -1.0, 0.5, 3.0, 9.0}) {
        const double lhs = 0.5 * h * op_J(fam.avg_q2, x) + 0.25 * l * op_J(fam.jump_q2, x);
        const double rhs = -theta / (8 * std::numbers::pi) * Ups * 2.0 *
                           (std::log(std::abs(x - a1)) - std::log(std::abs(x - a2)));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12));
    }
    // Euler-constant sensitivity: J of a unit Dirac at the origin evaluated at
    // x = 1 must equal -(2/pi) gamma.
    const double jd = -2.0 / std::numbers::pi * (euler_gamma + std::log(1.0));
    const double jq = op_J_atom(Dirac{0.0, 1.0}, 1.0);
    const double dirac_err = std::abs(jd - jq) / std::abs(jq);
    r.pass = const_err <= 1e-12 && worst <= 1e-12 && dirac_err <= 1e-12;
    r.detail = detail::fmt("Euler constant error %.3g, J identity error %.3g", std::max(const_err, dirac_err), worst);
    return r;
}

struct RoundtripError {
    double derivative = 0.0;  // relative to the peak of f
    double residual = 0.0;
};

// invert_S_s(S^(s) f) = f for f = sqrt(-x) e^x, compared on 0.01 <= -x <= 20.
// The forward map uses a longer grid so every rhs node lies inside it; beyond
// the rhs grid the asymptotic series -(1/pi) sum Gamma(k+3/2) s^-(k+1) is used.
inline RoundtripError roundtrip_error(int N) {
    const auto g = HalfLineGrid::graded(Side::negative, 60.0, 3.0, N);
    const auto fx = [](double x) { return std::sqrt(-x) * std::exp(x); };
    const GridFunction f = GridFunction::sample(HalfLineGrid::graded(Side::negative, 120.0, 3.0, N), fx,
                                                TipBehavior::sqrt);
    const GridFunction exact = GridFunction::sample(g, fx, TipBehavior::sqrt);
    const GridFunction rhs(g, apply_S(f, g).values, TipBehavior::bounded, [](double s) {
        double t = 0.0;
        for (int k = 0; k < 12; ++k) t += std::tgamma(k + 1.5) / std::pow(s, k + 1);
        return -t / std::numbers::pi;
    });
    const auto inv = invert_S_s(rhs, true);
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i < N; ++i) {
        const double s = g.distance(i);
        if (s > 20.0) break;
        peak = std::max(peak, std::abs(exact.values[i]));
        if (s >= 0.01) worst = std::max(worst, std::abs(inv.derivative.values[i] - exact.values[i]));
    }
    return {worst / peak, inv.residual};
}

inline SuiteResult roundtrip_suite(int N = 2048, double tol = 1e-3) {
    SuiteResult r{"inversion_roundtrip"};
    const auto e = roundtrip_error(N);
    r.detail = detail::fmt("max error %.3g of peak, forward residual %.3g", e.derivative, e.residual);
    const double err = std::max(e.derivative, e.residual);
    detail::resolution_verdict(r, err, tol, [N] {
        const auto e2 = roundtrip_error(2 * N);
        return std::max(e2.derivative, e2.residual);
    });
    return r;
}

struct Example1Error {
    double opening = 0.0;
    double truncation_sensitivity = 0.0;
};

// Delta-flux example through the full pipeline against the closed-form opening
// on 0.01 <= -x <= 20.
inline Example1Error example1_error(int N) {
    Material p{1.0, 1.0, 1.0, 0.0, 1.0, 1.0}, m{1.0, 1.0, 0.8, 0.0, 1.0, 1.0};
    SolveOptions opt;
    opt.N = N;
    const auto sol =
        solve(compute_bimaterial_params(p, m), LoadSet{}, make_delta_flux_family(1.0, 1.0, 4.0, 2.0, 1.0, 1.0), opt);
    const auto cf = closed_form_example1(p, m, 1.0, 1.0, 4.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < sol.crack_grid.size(); ++i) {
        const double x = sol.crack_grid.coordinate(i);
        if (x < -20.0 || x > -0.01) continue;
        worst = std::max(worst, std::abs(sol.jump_u2.values[i] / cf.jump_u2(x) - 1.0));
    }
    return {worst, sol.truncation_sensitivity};
}

inline SuiteResult example1_suite(int N = 2048, double tol = 1e-3) {
    SuiteResult r{"example1_pipeline"};
    const auto e = example1_error(N);
    r.detail = detail::fmt("opening error %.3g, truncation sensitivity %.3g", e.opening, e.truncation_sensitivity);
    detail::resolution_verdict(r, e.opening, tol, [N] { return example1_error(2 * N).opening; });
    if (e.truncation_sensitivity > 1e-4) {
        r.warning = true;
        r.detail += " (truncation sensitivity above 1e-4)";
    }
    return r;
}

inline std::vector<SuiteResult> run_all(int N = 2048) {
    return {pv_oracle_suite(), dual_path_suite(), ode_suite(), op_J_suite(), roundtrip_suite(N), example1_suite(N)};
}

}  // namespace thermocrack::checks
