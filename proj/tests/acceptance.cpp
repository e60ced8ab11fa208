// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <thermocrack/checks.hpp>
#include <thermocrack/solver.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace thermocrack;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAILED]");
    }
};

std::string f(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Material matched(double gamma_t) { return Material{1.0, 1.0, gamma_t, 0.0, 1.0, 1.0}; }

SolveOptions production(bool truncation_check = true) {
    SolveOptions o;  // N = 2048, grading 3, X = 100 max(a1, L)
    o.check_truncation = truncation_check;
    return o;
}

double max_abs(const GridFunction& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
}

// Normalization scale theta_s Xi+ with unit L.
double xi_base(const Material& plus) { return xi_scale(plus, TransportField::thermal); }

bool within_cells(const HalfLineGrid& g, int i, double x, int cells) {
    const int k = g.locate(std::abs(x));
    return std::abs(i - k) <= cells || std::abs(i - (k + 1)) <= cells;
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = checks::pv_oracle_suite(1e-4);
    const double t = seconds_since(t0);
    v.require(r.pass, r.detail + " over h in {+-0.01, +-1, +-100}");
    v.require(t < 5.0, f("runtime %.2f s", t));
    return v;
}

Verdict criterion2() {
    Verdict v;
    const double theta = 1.0, a1 = 4.0, a2 = 2.0;
    const Profile avg_theta = make_delta_flux_family(theta, 1.0, a1, a2, 1.0, 1.0).avg_theta;
    const auto gp = HalfLineGrid::graded(Side::positive, 400.0, 3.0, 2048);
    const auto gn = HalfLineGrid::graded(Side::negative, 400.0, 3.0, 2048);
    const auto step = [&](double x) { return -0.5 * theta * ((x < a1 ? 1.0 : 0.0) - (x < a2 ? 1.0 : 0.0)); };
    const auto excluded = [&](int i) {
        return i < 3 || within_cells(gp, i, a1, 3) || within_cells(gp, i, a2, 3);
    };

    // Operator as used by the solver (closed-form action on the log-pair atom).
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i < gp.size(); ++i) {
        if (excluded(i)) continue;
        const double x = gp.coordinate(i);
        plus = std::max(plus, std::abs(cauchy_S(avg_theta, x) - step(x)));
    }
    for (int i = 0; i < gn.size(); ++i) minus = std::max(minus, std::abs(cauchy_S(avg_theta, gn.coordinate(i))));
    v.require(plus <= 1e-12 * theta, f("S(s+)<theta> - step = %.3g theta_s off the excluded cells", plus));
    v.require(minus <= 1e-4 * theta, f("max |S(s-)<theta>| = %.3g theta_s", minus));

    // Same operator by PV quadrature of the sampled profile, for reference.
    const quad::HalfLineKernel kp(project(avg_theta, gp)), kn(project(avg_theta, gn));
    const auto Sq = [&](double x) { return cauchy_S(kp, Side::positive, x) + cauchy_S(kn, Side::negative, x); };
    double qplus = 0.0, qminus = 0.0;
    for (int i = 0; i + 1 < gp.size(); ++i)
        if (!excluded(i)) qplus = std::max(qplus, std::abs(Sq(gp.coordinate(i)) - step(gp.coordinate(i))));
    for (int i = 0; i + 1 < gn.size(); ++i) qminus = std::max(qminus, std::abs(Sq(gn.coordinate(i))));
    v.detail += f("; sampled-quadrature path: step error %.3g, S(s-) %.3g (reference only)", qplus, qminus);
    return v;
}

Verdict criterion3() {
    Verdict v;
    const Material p = matched(1.0), m = matched(0.8);
    const auto cf = closed_form_example1(p, m, 1.0, 1.0, 4.0, 2.0);
    const auto g = HalfLineGrid::graded(Side::negative, 400.0, 3.0, 2048);
    const auto inv = invert_S_s(GridFunction::sample(g, cf.rhs_u2), true);
    double worst = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.coordinate(i);
        if (x < -20.0 || x > -0.01) continue;
        worst = std::max(worst, std::abs(inv.derivative.values[i] / cf.du2(x) - 1.0));
    }
    v.require(worst <= 1e-3, f("max relative error of the derivative on [-20L, -0.01L] = %.3g", worst));
    v.require(inv.residual <= 1e-3, f("forward residual %.3g", inv.residual));
    const auto rt = checks::roundtrip_error(2048);
    v.require(rt.derivative <= 1e-3 && rt.residual <= 1e-3,
              f("synthetic roundtrip error %.3g, residual %.3g", rt.derivative, rt.residual));
    return v;
}

Verdict criterion4() {
    Verdict v;
    const double cases[3][3] = {{4.0, 2.0, 0.8}, {4.0, 2.0, 1.2}, {2.5, 2.0, 1.0}};
    for (const auto& c : cases) {
        const Material p = matched(1.0), m = matched(c[2]);
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = solve(compute_bimaterial_params(p, m), LoadSet{},
                             make_delta_flux_family(1.0, 1.0, c[0], c[1], 1.0, 1.0), production());
        const double t = seconds_since(t0);
        const auto cf = closed_form_example1(p, m, 1.0, 1.0, c[0], c[1]);
        double worst = 0.0;
        for (int i = 0; i < s.crack_grid.size(); ++i) {
            const double x = s.crack_grid.coordinate(i);
            if (x < -20.0 || x > -0.01) continue;
            worst = std::max(worst, std::abs(s.jump_u2.values[i] / cf.jump_u2(x) - 1.0));
        }
        const double scale = xi_base(p);
        const std::string tag = f("(%g,%g,%g)", c[0], c[1], c[2]);
        v.require(worst <= 1e-3, tag + f(" jump_u2 error %.3g", worst));
        v.require(max_abs(s.jump_u1) <= 1e-6 * scale, tag + f(" |jump_u1| %.3g scale", max_abs(s.jump_u1) / scale));
        v.require(t <= 10.0, tag + f(" %.2f s", t));
    }
    return v;
}

Verdict criterion5() {
    Verdict v;
    const Material p = matched(1.0), m = matched(0.8);
    const double sif_scale = xi_base(p) / compute_bimaterial_params(p, m).b;  // theta_s Xi sqrt(L) / b

    const auto s2 = solve(compute_bimaterial_params(p, m), LoadSet{}, make_gaussian_temperature_family(1.0, 1.0, 1.0, 1.0),
                          production(false));
    const auto c2 = closed_form_example2(p, m, 1.0, 1.0);
    const double eI = std::abs(s2.K_I.value / c2.K_I_published - 1.0);
    const double eII = std::abs(s2.K_II.value / c2.K_II_published - 1.0);
    v.require(eI <= 0.02, f("example 2 K_I %.6g vs published %.6g (rel %.3g)", s2.K_I.value, c2.K_I_published, eI));
    v.require(eII <= 0.02,
              f("example 2 K_II %.6g vs published %.6g (rel %.3g)", s2.K_II.value, c2.K_II_published, eII));
    v.detail += f("; example 2 pipeline/rederived closed form: K_I %.6f, K_II %.6f", s2.K_I.value / c2.K_I,
                  s2.K_II.value / c2.K_II);

    const auto s1 = solve(compute_bimaterial_params(p, m), LoadSet{}, make_delta_flux_family(1.0, 1.0, 4.0, 2.0, 1.0, 1.0),
                          production(false));
    const auto c1 = closed_form_example1(p, m, 1.0, 1.0, 4.0, 2.0);
    const double e1 = std::abs(s1.K_I.value / c1.K_I_published - 1.0);
    if (e1 <= 0.02) {
        v.require(true, f("example 1 K_I within %.3g of published", e1));
    } else {
        // Discrepancy report: the pipeline must agree with the limit of the
        // closed-form traction for the report to stand.
        const double consistent = std::abs(s1.K_I.value / c1.K_I - 1.0);
        v.require(consistent <= 0.02,
                  f("example 1 K_I discrepancy: published/pipeline = %.6g (3 pi / sqrt(L) = %.6g), "
                    "pipeline vs traction limit %.3g",
                    c1.K_I_published / s1.K_I.value, 3.0 * pi, consistent));
    }
    v.require(std::abs(s1.K_II.value) <= 1e-6 * sif_scale, f("example 1 |K_II| %.3g scale", std::abs(s1.K_II.value) / sif_scale));
    return v;
}

Verdict criterion6() {
    Verdict v;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.2, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Material a{U(rng), U(rng), U(rng), U(rng), U(rng), U(rng)};
        const auto bp = compute_bimaterial_params(a, a);
        for (double x : {bp.d, bp.alpha, bp.h_t, bp.m_t, bp.q_t}) worst = std::max(worst, std::abs(x) / bp.b);
    }
    v.require(worst <= 1e-14, f("identical pairs: max |d, alpha, h_t, m_t, q_t| / b = %.3g", worst));

    const Material p = matched(1.0);
    const auto bp = compute_bimaterial_params(p, p);
    const double scale = xi_base(p);
    const auto s1 = solve(bp, LoadSet{}, make_delta_flux_family(1.0, 1.0, 4.0, 2.0, 1.0, 1.0), production(false));
    double s21 = 0.0;
    for (double x : s1.sigma21.values)
        if (std::isfinite(x)) s21 = std::max(s21, std::abs(x));
    v.require(s21 <= 1e-10 * scale / bp.b, f("example 1 |sigma21| %.3g scale", s21 * bp.b / scale));
    const auto s2 = solve(bp, LoadSet{}, make_gaussian_temperature_family(1.0, 1.0, 1.0, 1.0), production(false));
    v.require(max_abs(s2.jump_u1) <= 1e-10 * scale, f("example 2 |jump_u1| %.3g scale", max_abs(s2.jump_u1) / scale));
    return v;
}

Verdict criterion7() {
    Verdict v;
    const auto r = checks::dual_path_suite(100, 1e-12);
    v.require(r.pass, r.detail + " over 100 samples");
    return v;
}

Verdict criterion8() {
    Verdict v;
    const auto r = checks::ode_suite(100, 1e-6);
    v.require(r.pass, r.detail + " over 100 samples");
    return v;
}

Verdict criterion9() {
    Verdict v;
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const auto line_integral = [&](const Profile& q) {
        const double inf = std::numeric_limits<double>::infinity();
        return es.integrate([&](double t) { return q(-t); }, 0.0, inf) + es.integrate([&](double t) { return q(t); }, 0.0, inf);
    };
    double worst_closed = 0.0, worst_quad = 0.0, worst_ratio = 0.0;
    const double ks[][2] = {{1.0, 1.0}, {2.0, 0.5}, {0.3, 1.7}, {5.0, 4.0}};
    for (const auto& k : ks) {
        for (const auto& fam : {make_delta_flux_family(1.3, 1.0, 4.0, 2.0, k[0], k[1]),
                                make_delta_flux_family(0.7, 2.0, 3.0, 1.0, k[0], k[1], TransportField::diffusive),
                                make_gaussian_temperature_family(1.3, 0.8, k[0], k[1])}) {
            for (const auto& e : check_self_balance(fam).entries)
                if (e.scale > 0.0) worst_closed = std::max(worst_closed, std::abs(e.integral) / e.scale);
        }
        const auto g = make_gaussian_temperature_family(1.3, 0.8, k[0], k[1]);
        for (const Profile* q : {&g.avg_q2, &g.jump_q2}) {
            if (q->empty()) continue;
            const double scale = ts.integrate([&](double t) { return std::abs((*q)(t)); }, -40.0, 40.0);
            worst_quad = std::max(worst_quad, std::abs(line_integral(*q)) / scale);
        }
        if (k[0] == k[1]) continue;
        const double ratio = 2.0 * (k[0] + k[1]) / (k[0] - k[1]);
        for (int i = -200; i <= 200; ++i) {
            const double x = 0.05 * i;
            if (g.avg_q2(x) == 0.0) continue;
            worst_ratio = std::max(worst_ratio, std::abs(g.jump_q2(x) / g.avg_q2(x) / ratio - 1.0));
        }
    }
    v.require(worst_closed <= 1e-8, f("closed-form balance %.3g of natural scale", worst_closed));
    v.require(worst_quad <= 1e-8, f("quadrature balance of Gaussian fluxes %.3g", worst_quad));
    v.require(worst_ratio <= 1e-10, f("jump_q2/avg_q2 ratio error %.3g", worst_ratio));
    return v;
}

double solve_KI(double a1, double a2, double ratio) {
    const Material p = matched(1.0), m = matched(ratio);
    return solve(compute_bimaterial_params(p, m), LoadSet{}, make_delta_flux_family(1.0, 1.0, a1, a2, 1.0, 1.0),
                 production(false))
        .K_I.value;
}

Verdict criterion10() {
    Verdict v;
    std::vector<double> a2s = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}, KI;
    for (double a2 : a2s) KI.push_back(solve_KI(4.0, a2, 0.8));
    bool dec = true;
    for (std::size_t i = 1; i < KI.size(); ++i) dec = dec && KI[i] < KI[i - 1];
    v.require(dec, f("K_I decreasing in a2/L over [1, 4] (%.4g ... %.4g)", KI.front(), KI[KI.size() - 2]));
    v.require(KI.back() == 0.0, f("K_I at a1 = a2: %.3g", KI.back()));

    std::vector<double> ratios = {0.5, 0.8, 1.0, 1.2, 1.5}, KR;
    for (double r : ratios) KR.push_back(solve_KI(4.0, 2.0, r));
    bool inc = true;
    for (std::size_t i = 1; i < KR.size(); ++i) inc = inc && KR[i] > KR[i - 1];
    v.require(inc, f("K_I increasing in gamma ratio over [0.5, 1.5] (%.4g ... %.4g)", KR.front(), KR.back()));

    int idx[2];
    double where[2];
    const double rs[2] = {0.8, 1.2};
    for (int k = 0; k < 2; ++k) {
        const Material p = matched(1.0), m = matched(rs[k]);
        const auto s = solve(compute_bimaterial_params(p, m), LoadSet{},
                             make_gaussian_temperature_family(1.0, 1.0, 1.0, 1.0), production(false));
        idx[k] = -1;
        for (int i = 1; i < s.crack_grid.size(); ++i) {
            if ((s.jump_u1.values[i] > 0) != (s.jump_u1.values[i - 1] > 0) && s.jump_u1.values[i] != 0.0) {
                idx[k] = i;
                break;
            }
        }
        where[k] = idx[k] >= 0 ? s.crack_grid.coordinate(idx[k]) : std::nan("");
    }
    v.require(idx[0] >= 0 && idx[1] >= 0 && std::abs(idx[0] - idx[1]) <= 1,
              f("example 2 jump_u1 zero crossing at x/L = %.6g and %.6g", where[0], where[1]));
    return v;
}

Verdict criterion11() {
    Verdict v;
    const Material p = matched(1.0), m = matched(0.8);
    const auto bp = compute_bimaterial_params(p, m);
    const SolveOptions o = production(false);
    const std::pair<const char*, InterfaceProfileSet> cases[] = {
        {"example 1", make_delta_flux_family(1.0, 1.0, 4.0, 2.0, 1.0, 1.0)},
        {"example 2", make_gaussian_temperature_family(1.0, 1.0, 1.0, 1.0)}};
    for (const auto& [name, prof] : cases) {
        const auto s = solve(bp, LoadSet{}, prof, o);
        const IdentityAssembly a(bp, LoadSet{}, prof);
        const TractionEvaluator ev(a, s.du1, s.du2);
        const double lo = o.sif_x_min * prof.L;
        const double slope = tip_exponent_fit([&](double x) { return ev(x)[1]; }, lo, 10.0 * lo);
        v.require(std::abs(slope + 0.5) <= 0.02, std::string(name) + f(" slope %.4f", slope));
    }
    return v;
}

}  // namespace

int main() {
    const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                                 criterion5, criterion6, criterion7, criterion8,
                                                 criterion9, criterion10, criterion11};
    int failed = 0;
    for (int i = 0; i < 11; ++i) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        if (!v.pass) ++failed;
        std::printf("criterion %2d: %s  (%.1f s)  %s\n", i + 1, v.pass ? "PASS" : "FAIL", seconds_since(t0),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 11 criteria passed\n", 11 - failed);
    return failed ? 1 : 0;
}
