#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "materials.hpp"
#include "profiles.hpp"
#include "sio.hpp"

namespace thermocrack {

// Symmetric and skew-symmetric mechanical loads on the crack faces, x < 0.
struct LoadSet {
    std::array<Profile, 2> avg_p, jump_p;

    bool empty() const { return avg_p[0].empty() && avg_p[1].empty() && jump_p[0].empty() && jump_p[1].empty(); }
    bool has_sampled() const {
        for (const auto* p : {&avg_p[0], &avg_p[1], &jump_p[0], &jump_p[1]})
            if (p->has_sampled()) return true;
        return false;
    }
};

inline void validate(const LoadSet& loads) {
    for (const auto* p : {&loads.avg_p[0], &loads.avg_p[1], &loads.jump_p[0], &loads.jump_p[1]}) {
        for (const auto& a : p->atoms()) {
            const auto* s = std::get_if<Sampled>(&a);
            if (!s) throw std::invalid_argument("LoadSet: loads must be sampled data");
            if (s->x.back() > 0.0) throw std::invalid_argument("LoadSet: loads must be supported on x1 <= 0");
        }
    }
}

using Vec2 = Eigen::Vector2d;

// Right-hand side vector T(x) of the integral identities:
//   x < 0:  B u' = T,        x > 0:  sigma + T = B u'.
// T collects <p> + A [[p]] and the G/D terms of both transport fields.
class IdentityAssembly {
public:
    IdentityAssembly(const BimaterialParams& bp, LoadSet loads, InterfaceProfileSet profiles)
        : bp_(bp), loads_(std::move(loads)), prof_(std::move(profiles)) {
        validate(loads_);
        if (!(bp_.b > std::abs(bp_.d))) throw std::invalid_argument("IdentityAssembly: need b > |d|");
    }

    const BimaterialParams& params() const { return bp_; }
    const InterfaceProfileSet& profiles() const { return prof_; }
    const LoadSet& loads() const { return loads_; }
    double D() const { return bp_.b * bp_.b - bp_.d * bp_.d; }

    bool decoupled(double rel = 1e-12) const { return std::abs(bp_.d) <= rel * bp_.b; }

    // True when any input needs sampled quadrature (no analytic far field).
    bool has_sampled() const {
        for (auto f : {TransportField::thermal, TransportField::diffusive})
            for (const auto* p : {&prof_.avg_field(f), &prof_.jump_field(f), &prof_.avg_flux(f), &prof_.jump_flux(f)})
                if (p->has_sampled()) return true;
        return loads_.has_sampled();
    }

    Vec2 T(double x) const {
        const double b = bp_.b, d = bp_.d, D = this->D();
        Vec2 t = Vec2::Zero();

        for (int k = 0; k < 2; ++k)
            if (!loads_.avg_p[k].empty()) t[k] += loads_.avg_p[k](x);
        if (!loads_.jump_p[0].empty() || !loads_.jump_p[1].empty()) {
            const double c1 = b * (bp_.alpha * b - bp_.gamma * d) / (2 * D);
            const double c2 = b * (bp_.alpha * d - bp_.gamma * b) / (2 * D);
            const Vec2 jp(loads_.jump_p[0](x), loads_.jump_p[1](x));
            const Vec2 Sjp(cauchy_S(loads_.jump_p[0], x), cauchy_S(loads_.jump_p[1], x));
            t += c1 * jp + c2 * Vec2(Sjp[1], -Sjp[0]);
        }

        for (auto f : {TransportField::thermal, TransportField::diffusive}) {
            const FieldCoefficients c = f == TransportField::thermal ? thermal_coefficients(bp_)
                                                                     : diffusive_coefficients(bp_);
            const Profile& av = prof_.avg_field(f);
            const Profile& jm = prof_.jump_field(f);
            const Profile& avq = prof_.avg_flux(f);
            const Profile& jmq = prof_.jump_flux(f);
            if (!jm.empty()) {
                t[0] += (d * c.q - b * c.p) / (2 * D) * cauchy_S(jm, x);
                t[1] += (b * c.q - d * c.p) / (2 * D) * jm(x);
            }
            if (!av.empty()) {
                t[0] += (d * c.n - b * c.m) / D * cauchy_S(av, x);
                t[1] += (b * c.n - d * c.m) / D * av(x);
            }
            if (!jmq.empty()) {
                if (d != 0.0) t[0] -= c.l / (4 * D) * d * op_K(jmq, x);
                t[1] -= c.l / (4 * D) * b * op_J(jmq, x);
            }
            if (!avq.empty()) {
                if (d != 0.0) t[0] -= c.h / (2 * D) * d * op_K(avq, x);
                t[1] -= c.h / (2 * D) * b * op_J(avq, x);
            }
        }
        return t;
    }

    // B u' at x from prepared kernels of u1', u2' (both on x < 0).
    Vec2 Bu(const quad::HalfLineKernel& k1, const quad::HalfLineKernel& k2, const GridFunction& du1,
            const GridFunction& du2, double x) const {
        const double b = bp_.b, d = bp_.d, D = this->D();
        const Vec2 S(cauchy_S(k1, Side::negative, x), cauchy_S(k2, Side::negative, x));
        if (x > 0.0) return -(b / D) * S;
        const Vec2 Eu(du2(x), -du1(x));
        return -(1.0 / D) * (b * S - d * Eu);
    }

private:
    BimaterialParams bp_;
    LoadSet loads_;
    InterfaceProfileSet prof_;
};

inline void require_decoupled(const IdentityAssembly& a) {
    if (!a.decoupled())
        throw UnsupportedCase(
            "d != 0: the identities do not decouple and the coupled inversion of the matrix operator B^(s) is "
            "not implemented; use the residual evaluator to check externally supplied solutions");
}

// ---------------------------------------------------------------------------
// Decoupled (d = 0) path.

struct DecoupledRhs {
    std::function<double(double)> u1, u2;  // S^(s) [[u_k]]' on x < 0
    bool analytic_tail = true;

    std::pair<GridFunction, GridFunction> sample(const HalfLineGrid& g) const {
        return {GridFunction::sample(g, u1, TipBehavior::bounded, analytic_tail),
                GridFunction::sample(g, u2, TipBehavior::bounded, analytic_tail)};
    }
};

inline DecoupledRhs assemble_decoupled_rhs(const IdentityAssembly& a) {
    require_decoupled(a);
    const double b = a.params().b;
    auto shared = std::make_shared<IdentityAssembly>(a);
    DecoupledRhs r;
    r.u1 = [shared, b](double x) { return -b * shared->T(x)[0]; };
    r.u2 = [shared, b](double x) { return -b * shared->T(x)[1]; };
    r.analytic_tail = !a.has_sampled();
    return r;
}

inline DecoupledRhs assemble_decoupled_rhs(const BimaterialParams& bp, const LoadSet& loads,
                                           const InterfaceProfileSet& profiles) {
    return assemble_decoupled_rhs(IdentityAssembly(bp, loads, profiles));
}

struct OpeningSolution {
    GridFunction du1, du2;          // derivatives of the openings
    GridFunction jump_u1, jump_u2;  // openings, zero at the tip
    double residual_u1 = 0.0, residual_u2 = 0.0;
};

namespace solver_detail {
inline bool all_zero(const GridFunction& f) {
    for (double v : f.values)
        if (v != 0.0) return false;
    return true;
}

inline InversionResult invert_or_zero(const GridFunction& rhs) {
    if (all_zero(rhs))
        return {GridFunction(rhs.grid, std::vector<double>(rhs.size(), 0.0), TipBehavior::inverse_sqrt), 0.0};
    return invert_S_s(rhs, true);
}
}  // namespace solver_detail

inline OpeningSolution solve_crack_opening(const GridFunction& rhs_u1, const GridFunction& rhs_u2) {
    auto r1 = solver_detail::invert_or_zero(rhs_u1);
    auto r2 = solver_detail::invert_or_zero(rhs_u2);
    OpeningSolution s;
    s.jump_u1 = integrate_from_tip(r1.derivative);
    s.jump_u2 = integrate_from_tip(r2.derivative);
    s.du1 = std::move(r1.derivative);
    s.du2 = std::move(r2.derivative);
    s.residual_u1 = r1.residual;
    s.residual_u2 = r2.residual;
    return s;
}

// Tractions ahead of the tip: sigma_k = -(1/b) S^(c) [[u_k]]' - T_k.
// Points where a profile is singular evaluate to NaN.
class TractionEvaluator {
public:
    TractionEvaluator(const IdentityAssembly& a, const GridFunction& du1, const GridFunction& du2)
        : a_(a), k1_(du1), k2_(du2) {
        require_decoupled(a);
    }

    Vec2 operator()(double x) const {
        if (!(x > 0.0)) throw std::domain_error("tractions are evaluated ahead of the tip (x > 0)");
        try {
            const double b = a_.params().b;
            const Vec2 t = a_.T(x);
            return Vec2(-cauchy_S(k1_, Side::negative, x) / b - t[0], -cauchy_S(k2_, Side::negative, x) / b - t[1]);
        } catch (const std::domain_error&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return Vec2(nan, nan);
        }
    }

private:
    const IdentityAssembly& a_;
    quad::HalfLineKernel k1_, k2_;
};

inline std::pair<GridFunction, GridFunction> tractions_ahead(const IdentityAssembly& a, const GridFunction& du1,
                                                             const GridFunction& du2, const HalfLineGrid& ahead) {
    const TractionEvaluator ev(a, du1, du2);
    std::vector<double> s1(ahead.size()), s2(ahead.size());
    for (int i = 0; i < ahead.size(); ++i) {
        const Vec2 v = ev(ahead.coordinate(i));
        s1[i] = v[0];
        s2[i] = v[1];
    }
    return {GridFunction(ahead, std::move(s1), TipBehavior::inverse_sqrt),
            GridFunction(ahead, std::move(s2), TipBehavior::inverse_sqrt)};
}

// ---------------------------------------------------------------------------
// Stress intensity factors.

struct SifEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
};

namespace solver_detail {
// Least squares of y = sigma sqrt(2 pi x) against {1, sqrt x, x}; returns the constant.
inline double fit_sif(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 4) throw std::invalid_argument("extract_sif: need at least 4 samples in the fit window");
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    const double x0 = x.front();
    for (int i = 0; i < n; ++i) {
        const double r = x[i] / x0;
        A(i, 0) = 1.0;
        A(i, 1) = std::sqrt(r);
        A(i, 2) = r;
        b(i) = y[i];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

inline std::vector<double> log_spaced(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a * std::pow(b / a, double(i) / (n - 1));
    return x;
}
}  // namespace solver_detail

// K = lim sqrt(2 pi x) sigma(x), fitted on [x_min, 10 x_min] and compared with
// the fit on [4 x_min, 40 x_min] for the uncertainty.
inline SifEstimate extract_sif(const std::function<double(double)>& sigma, double x_min, int samples = 24) {
    if (!(x_min > 0.0)) throw std::invalid_argument("extract_sif: x_min must be positive");
    const auto fit = [&](double lo) {
        auto x = solver_detail::log_spaced(lo, 10.0 * lo, samples);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = sigma(x[i]) * std::sqrt(2.0 * std::numbers::pi * x[i]);
        return solver_detail::fit_sif(x, y);
    };
    const double k0 = fit(x_min), k1 = fit(4.0 * x_min);
    if (!std::isfinite(k0) || !std::isfinite(k1)) throw NonConvergence("extract_sif: non-finite fit", INFINITY);
    return {k0, std::abs(k0 - k1)};
}

// Same on tabulated tractions, using the nodes inside [x_min, 10 x_min].
inline SifEstimate extract_sif(const GridFunction& sigma, double x_min) {
    const auto window = [&](double lo) {
        std::vector<double> x, y;
        for (int i = 0; i < sigma.size(); ++i) {
            const double s = sigma.grid.distance(i);
            if (s < lo || s > 10.0 * lo || !std::isfinite(sigma.values[i])) continue;
            x.push_back(s);
            y.push_back(sigma.values[i] * std::sqrt(2.0 * std::numbers::pi * s));
        }
        return solver_detail::fit_sif(x, y);
    };
    const double k0 = window(x_min), k1 = window(4.0 * x_min);
    return {k0, std::abs(k0 - k1)};
}

// Least-squares slope of log|sigma| against log x on [x_min, x_max].
inline double tip_exponent_fit(const std::function<double(double)>& sigma, double x_min, double x_max,
                               int samples = 24) {
    const auto x = solver_detail::log_spaced(x_min, x_max, samples);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double xi : x) {
        const double lx = std::log(xi), ly = std::log(std::abs(sigma(xi)));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(samples);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// K from the rhs alone: K_k = sqrt(2/pi) (1/b) int_0^inf rhs_k(-s) s^{-1/2} ds.
inline double sif_from_rhs(const std::function<double(double)>& rhs, double b, double scale) {
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const auto g = [&](double s) { return rhs(-s) / std::sqrt(s); };
    const double I = ts.integrate(g, 0.0, scale) + es.integrate(g, scale, std::numeric_limits<double>::infinity());
    return std::sqrt(2.0 / std::numbers::pi) * I / b;
}

// ---------------------------------------------------------------------------
// Full pipeline.

struct SolveOptions {
    int N = 2048;
    double grading = 3.0;
    double truncation_factor = 100.0;  // X = factor * max(a1, L)
    double sif_x_min = 1e-4;           // in units of L
    bool check_truncation = true;
};

inline void validate(const SolveOptions& o) {
    if (o.N < 64 || o.N > 65536) throw std::invalid_argument("numerics.N must lie in [64, 65536]");
    if (!(o.grading >= 1.0 && o.grading <= 5.0)) throw std::invalid_argument("numerics.grading must lie in [1, 5]");
    if (!(o.truncation_factor > 1.0)) throw std::invalid_argument("numerics.truncation_factor must exceed 1");
    if (!(o.sif_x_min > 0.0 && o.sif_x_min < 1.0)) throw std::invalid_argument("numerics.sif_fit_window must lie in (0, 1)");
}

struct CrackSolution {
    HalfLineGrid crack_grid, ahead_grid;
    GridFunction du1, du2, jump_u1, jump_u2;
    GridFunction sigma21, sigma22;
    SifEstimate K_I, K_II;
    double residual_u1 = 0.0, residual_u2 = 0.0;
    double truncation_sensitivity = 0.0;  // relative change of the openings when X doubles
    double truncation = 0.0;
    double L = 1.0;
};

inline double length_scale(const InterfaceProfileSet& p) { return std::max(p.a1, p.L); }

inline CrackSolution solve(const BimaterialParams& bp, const LoadSet& loads, const InterfaceProfileSet& profiles,
                           const SolveOptions& opt = {}) {
    validate(opt);
    const IdentityAssembly a(bp, loads, profiles);
    const DecoupledRhs rhs = assemble_decoupled_rhs(a);

    CrackSolution out;
    out.L = profiles.L;
    out.truncation = opt.truncation_factor * length_scale(profiles);
    out.crack_grid = HalfLineGrid::graded(Side::negative, out.truncation, opt.grading, opt.N);
    out.ahead_grid = HalfLineGrid::graded(Side::positive, out.truncation, opt.grading, opt.N);

    auto [g1, g2] = rhs.sample(out.crack_grid);
    OpeningSolution os = solve_crack_opening(g1, g2);
    out.residual_u1 = os.residual_u1;
    out.residual_u2 = os.residual_u2;

    auto [s21, s22] = tractions_ahead(a, os.du1, os.du2, out.ahead_grid);
    const TractionEvaluator ev(a, os.du1, os.du2);
    const double xmin = opt.sif_x_min * profiles.L;
    out.K_I = extract_sif([&](double x) { return ev(x)[1]; }, xmin);
    out.K_II = extract_sif([&](double x) { return ev(x)[0]; }, xmin);

    if (opt.check_truncation) {
        const HalfLineGrid big = out.crack_grid.extended(2.0);
        auto [h1, h2] = rhs.sample(big);
        const OpeningSolution ob = solve_crack_opening(h1, h2);
        double diff = 0.0, ref = 0.0;
        for (int i = 0; i < out.crack_grid.size(); ++i) {
            if (out.crack_grid.distance(i) > 0.5 * out.truncation) break;
            for (const auto& [u, v] : {std::pair{&os.jump_u1, &ob.jump_u1}, std::pair{&os.jump_u2, &ob.jump_u2}}) {
                diff = std::max(diff, std::abs(u->values[i] - v->values[i]));
                ref = std::max(ref, std::abs(u->values[i]));
            }
        }
        out.truncation_sensitivity = ref > 0.0 ? diff / ref : diff;
    }

    out.du1 = std::move(os.du1);
    out.du2 = std::move(os.du2);
    out.jump_u1 = std::move(os.jump_u1);
    out.jump_u2 = std::move(os.jump_u2);
    out.sigma21 = std::move(s21);
    out.sigma22 = std::move(s22);
    return out;
}

// ---------------------------------------------------------------------------
// Residuals of the general (any d) identities for candidate fields.

struct IdentityResidual {
    double identity1 = 0.0;  // sup |B u' - T| on x < 0
    double identity2 = 0.0;  // sup |sigma + T - B u'| on x > 0
    double scale = 0.0;      // sup |T| over the same points
    double relative() const { return scale > 0.0 ? std::max(identity1, identity2) / scale : std::max(identity1, identity2); }
};

class GeneralIdentities {
public:
    GeneralIdentities(const BimaterialParams& bp, const LoadSet& loads, const InterfaceProfileSet& profiles)
        : a_(bp, loads, profiles) {}

    const IdentityAssembly& assembly() const { return a_; }

    // Candidate derivatives du1, du2 on x < 0 and tractions on x > 0. Points
    // with |x| above `inner` times the truncation, or where a profile is
    // singular, are skipped.
    IdentityResidual evaluate(const GridFunction& du1, const GridFunction& du2,
                              const std::function<Vec2(double)>& sigma, double inner = 0.9) const {
        const quad::HalfLineKernel k1(du1), k2(du2);
        IdentityResidual r;
        const HalfLineGrid& g = du1.grid;
        const double lim = inner * g.truncation();
        for (int i = 0; i < g.size(); ++i) {
            const double s = g.distance(i);
            if (s > lim) break;
            for (double x : {-s, s}) {
                Vec2 t;
                try {
                    t = a_.T(x);
                } catch (const std::domain_error&) {
                    continue;
                }
                const Vec2 bu = a_.Bu(k1, k2, du1, du2, x);
                if (x < 0.0) {
                    r.identity1 = std::max(r.identity1, (bu - t).cwiseAbs().maxCoeff());
                } else {
                    const Vec2 sg = sigma(x);
                    if (!sg.allFinite()) continue;
                    r.identity2 = std::max(r.identity2, (sg + t - bu).cwiseAbs().maxCoeff());
                }
                r.scale = std::max(r.scale, t.cwiseAbs().maxCoeff());
            }
        }
        return r;
    }

private:
    IdentityAssembly a_;
};

// ---------------------------------------------------------------------------
// Closed forms of the two worked examples (matched moduli and conductivities,
// gamma ratio r = gamma-/gamma+). C = Xi+(1 + r), Cm = Xi+(1 - r).

struct ExampleClosedForm {
    std::function<double(double)> du1, du2, jump_u1, jump_u2;  // x < 0 (may be empty)
    std::function<double(double)> sigma21, sigma22;           // x > 0 (may be empty)
    std::function<double(double)> rhs_u1, rhs_u2;             // S^(s) [[u]]' on x < 0
    double K_I = 0.0, K_II = 0.0;                               // limits of the closed-form tractions
    double K_I_published = 0.0, K_II_published = 0.0;           // as printed in the source derivation
    double Xi = 0.0, ratio = 1.0, b = 1.0;
};

namespace solver_detail {
inline void require_matched(const Material& plus, const Material& minus, TransportField f) {
    if (plus.lambda != minus.lambda || plus.mu != minus.mu)
        throw std::invalid_argument("closed form requires matched elastic moduli");
    const bool k_eq = f == TransportField::thermal ? plus.k_t == minus.k_t : plus.D_c == minus.D_c;
    if (!k_eq) throw std::invalid_argument("closed form requires matched conductivities");
}
}  // namespace solver_detail

inline ExampleClosedForm closed_form_example1(const Material& plus, const Material& minus, double theta_s, double L,
                                              double a1, double a2,
                                              TransportField f = TransportField::thermal) {
    solver_detail::require_matched(plus, minus, f);
    if (!(a1 >= a2) || !(a2 > 0.0) || !(L > 0.0)) throw std::invalid_argument("closed_form_example1: need a1 >= a2 > 0, L > 0");
    const BimaterialParams bp = compute_bimaterial_params(plus, minus);
    const AuxParams aux = thermal_aux_params(bp, plus, minus, f);
    const double gp = f == TransportField::thermal ? plus.gamma_t : plus.gamma_c;
    const double gm = f == TransportField::thermal ? minus.gamma_t : minus.gamma_c;
    if (gp == 0.0) throw std::invalid_argument("closed_form_example1: gamma+ must be nonzero");

    ExampleClosedForm c;
    c.Xi = aux.Xi_plus;
    c.ratio = gm / gp;
    c.b = bp.b;
    const double pi = std::numbers::pi;
    const double C = theta_s * c.Xi * (1.0 + c.ratio);
    const double Cm = theta_s * c.Xi * (1.0 - c.ratio);
    const double b = bp.b;
    const double sa1 = std::sqrt(a1), sa2 = std::sqrt(a2);

    c.du1 = [](double) { return 0.0; };
    c.jump_u1 = [](double) { return 0.0; };
    c.du2 = [=](double x) {
        const double r1 = std::sqrt(-a1 / x), r2 = std::sqrt(-a2 / x);
        return C / pi * (-r1 + r2 + std::atan(r1) - std::atan(r2));
    };
    c.jump_u2 = [=](double x) {
        return C / pi *
               (0.5 * pi * (a1 - a2) + (std::sqrt(-a1 * x) - std::sqrt(-a2 * x)) +
                (x - a1) * std::atan(std::sqrt(-a1 / x)) - (x - a2) * std::atan(std::sqrt(-a2 / x)));
    };
    c.sigma21 = [=](double x) {
        const double H = (x < a1 ? 1.0 : 0.0) - (x < a2 ? 1.0 : 0.0);
        return -Cm / (2.0 * b) * H;
    };
    c.sigma22 = [=](double x) {
        if (a1 == a2) return 0.0;
        const double r = std::sqrt(x);
        return C / (pi * b) *
               ((sa1 - sa2) / r + 0.5 * std::log(std::abs((r - sa1) / (r - sa2))) -
                0.5 * std::log((r + sa1) / (r + sa2)));
    };
    c.rhs_u1 = [](double) { return 0.0; };
    c.rhs_u2 = [=](double x) {
        if (a1 == a2) return 0.0;
        return C / (4.0 * pi) * 2.0 * (std::log(std::abs(x - a1)) - std::log(std::abs(x - a2)));
    };
    c.K_I = std::sqrt(2.0 * pi) * C * (sa1 - sa2) / (pi * b);
    c.K_II = 0.0;
    c.K_I_published = 3.0 * std::sqrt(2.0 * pi) * C / b * (std::sqrt(a1 / L) - std::sqrt(a2 / L));
    c.K_II_published = 0.0;
    return c;
}

inline ExampleClosedForm closed_form_example2(const Material& plus, const Material& minus, double theta_s, double L,
                                              TransportField f = TransportField::thermal) {
    solver_detail::require_matched(plus, minus, f);
    if (!(L > 0.0)) throw std::invalid_argument("closed_form_example2: need L > 0");
    const BimaterialParams bp = compute_bimaterial_params(plus, minus);
    const AuxParams aux = thermal_aux_params(bp, plus, minus, f);
    const double gp = f == TransportField::thermal ? plus.gamma_t : plus.gamma_c;
    const double gm = f == TransportField::thermal ? minus.gamma_t : minus.gamma_c;
    if (gp == 0.0) throw std::invalid_argument("closed_form_example2: gamma+ must be nonzero");

    ExampleClosedForm c;
    c.Xi = aux.Xi_plus;
    c.ratio = gm / gp;
    c.b = bp.b;
    const double pi = std::numbers::pi;
    const double C = theta_s * c.Xi * (1.0 + c.ratio);
    const double Cm = theta_s * c.Xi * (1.0 - c.ratio);
    const double b = bp.b;
    using boost::math::tgamma;

    c.rhs_u1 = [=](double x) { return Cm * 2.0 / std::sqrt(pi) * special::dawson_moment(x / L); };
    c.rhs_u2 = [=](double x) {
        const double z = x / L;
        return -C * z * std::exp(-z * z);
    };
    c.K_I = std::sqrt(pi) / tgamma(0.25) * C * std::sqrt(L) / b;
    c.K_II = -std::sqrt(pi) / tgamma(0.25) * Cm * std::sqrt(L) / b;
    c.K_I_published = 3.0 * std::pow(pi, 1.5) * std::sqrt(L) * C / (4.0 * b) * tgamma(0.75) /
                      (tgamma(0.25) * tgamma(1.75));
    c.K_II_published = -std::pow(pi, 1.5) * std::sqrt(L) * Cm / (b * tgamma(0.25));
    return c;
}

}  // namespace thermocrack
