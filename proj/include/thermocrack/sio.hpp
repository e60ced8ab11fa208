#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <limits>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace thermocrack {

namespace sio_detail {
inline constexpr double pi = std::numbers::pi;
inline constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
}  // namespace sio_detail

// ---------------------------------------------------------------------------
// Profile atoms. Each admits closed-form actions of S, K and J except sampled
// data, which goes through piecewise-linear quadrature.

struct Dirac {
    double at;
    double weight;
};

// scale * [ln (x - a1)^2 - ln (x - a2)^2]
struct LogPair {
    double a1, a2, scale;
};

// scale * (x/L) exp(-x^2/L^2)
struct GaussianMoment {
    double scale, L;
};

// scale * [(2z^2 - 1) exp(-z^2) erfi(z) - 2z/sqrt(pi)], z = x/L
struct ErfiFlux {
    double scale, L;
};

// Piecewise-linear data on [x_0, x_n], zero outside.
struct Sampled {
    std::vector<double> x, v;

    Sampled() = default;
    Sampled(std::vector<double> xs, std::vector<double> vs) : x(std::move(xs)), v(std::move(vs)) {
        if (x.size() != v.size() || x.size() < 2)
            throw std::invalid_argument("Sampled: need matching abscissae and values (at least two)");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
                throw std::invalid_argument("Sampled: non-finite entry");
            if (i > 0 && !(x[i] > x[i - 1]))
                throw std::invalid_argument("Sampled: abscissae must be strictly increasing");
        }
    }

    // Half-line samples extended by zero across the tip.
    static Sampled from(const GridFunction& f) {
        if (f.tip != TipBehavior::bounded)
            throw std::invalid_argument("Sampled::from: only bounded grid functions can be embedded");
        std::vector<std::pair<double, double>> pts;
        pts.reserve(f.size() + 1);
        for (int i = 0; i < f.size(); ++i) pts.emplace_back(f.grid.coordinate(i), f.values[i]);
        pts.emplace_back(0.0, f(f.grid.sign() * 1e-300));
        std::sort(pts.begin(), pts.end());
        std::vector<double> xs, vs;
        for (const auto& [x, y] : pts) {
            xs.push_back(x);
            vs.push_back(y);
        }
        return Sampled(std::move(xs), std::move(vs));
    }

    double operator()(double t) const {
        if (t < x.front() || t > x.back()) return 0.0;
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        if (it == x.end()) return v.back();
        const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
        return v[i] + (t - x[i]) * (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
    }

    double integral() const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) acc += 0.5 * (v[i] + v[i + 1]) * (x[i + 1] - x[i]);
        return acc;
    }

    double abs_integral() const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            acc += 0.5 * (std::abs(v[i]) + std::abs(v[i + 1])) * (x[i + 1] - x[i]);
        return acc;
    }
};

using ProfileAtom = std::variant<Dirac, LogPair, GaussianMoment, ErfiFlux, Sampled>;

inline void validate(const ProfileAtom& a) {
    std::visit([](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) {
            if (!std::isfinite(v.at) || !std::isfinite(v.weight)) throw std::invalid_argument("Dirac: non-finite");
        } else if constexpr (std::is_same_v<T, LogPair>) {
            if (!std::isfinite(v.scale) || !(v.a1 > v.a2) || !(v.a2 > 0.0))
                throw std::invalid_argument("LogPair: need a1 > a2 > 0 and a finite scale");
        } else if constexpr (std::is_same_v<T, GaussianMoment> || std::is_same_v<T, ErfiFlux>) {
            if (!std::isfinite(v.scale) || !(v.L > 0.0)) throw std::invalid_argument("Gaussian atom: need L > 0");
        }
    }, a);
}

inline ProfileAtom scaled(const ProfileAtom& a, double k) {
    return std::visit([k](auto v) -> ProfileAtom {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) v.weight *= k;
        else if constexpr (std::is_same_v<T, Sampled>) { for (double& y : v.v) y *= k; }
        else v.scale *= k;
        return v;
    }, a);
}

namespace sio_detail {

inline void reject_at(double x, double a, const char* what) {
    if (x == a) throw std::domain_error(std::string(what) + ": evaluation at a singular point");
}

// int ln|u| (A + B u) du over [ua, ub]
inline double log_linear_integral(double ua, double ub, double A, double B) {
    const auto L0 = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
    const auto L1 = [](double u) { return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::abs(u)) - 0.25 * u * u; };
    return A * (L0(ub) - L0(ua)) + B * (L1(ub) - L1(ua));
}

inline double sampled_S(const Sampled& f, double x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i)
        sum += quad::cell_pv(f.x[i], f.x[i + 1], f.v[i], f.v[i + 1], 0.0, x);
    // Jumps to zero at the ends give log singularities there.
    if ((x == f.x.front() && f.v.front() != 0.0) || (x == f.x.back() && f.v.back() != 0.0))
        throw std::domain_error("cauchy_S: evaluation at a jump of sampled data");
    return sum / pi;
}

inline double sampled_K(const Sampled& f, double x) {
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i) {
        const double ta = f.x[i], tb = f.x[i + 1], va = f.v[i], vb = f.v[i + 1];
        if (tb <= x) left += 0.5 * (va + vb) * (tb - ta);
        else if (ta >= x) right += 0.5 * (va + vb) * (tb - ta);
        else {
            const double vx = va + (x - ta) * (vb - va) / (tb - ta);
            left += 0.5 * (va + vx) * (x - ta);
            right += 0.5 * (vx + vb) * (tb - x);
        }
    }
    return left - right;
}

inline double sampled_log_convolution(const Sampled& f, double x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i) {
        const double ta = f.x[i], tb = f.x[i + 1], va = f.v[i], vb = f.v[i + 1];
        const double slope = (vb - va) / (tb - ta), width = tb - ta;
        const double dist = x < ta ? ta - x : (x > tb ? x - tb : 0.0);
        if (dist < 2.0 * width) {
            sum += log_linear_integral(ta - x, tb - x, va + slope * (x - ta), slope);
        } else {
            sum += quad::integrate(quad::gauss_legendre<8>(), ta, tb, [&](double t) {
                return std::log(std::abs(x - t)) * (va + slope * (t - ta));
            });
        }
    }
    return sum;
}

}  // namespace sio_detail

// Value of an atom at x. Dirac atoms are never sampled and contribute zero.
inline double value(const ProfileAtom& a, double x) {
    using namespace sio_detail;
    return std::visit([x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) return 0.0;
        else if constexpr (std::is_same_v<T, LogPair>) {
            reject_at(x, v.a1, "log_pair");
            reject_at(x, v.a2, "log_pair");
            return v.scale * 2.0 * (std::log(std::abs(x - v.a1)) - std::log(std::abs(x - v.a2)));
        } else if constexpr (std::is_same_v<T, GaussianMoment>) {
            const double z = x / v.L;
            return v.scale * z * std::exp(-z * z);
        } else if constexpr (std::is_same_v<T, ErfiFlux>) {
            return v.scale * special::flux_bracket(x / v.L);
        } else {
            return v(x);
        }
    }, a);
}

// S f(x) = (1/pi) PV int f(t) / (x - t) dt
inline double cauchy_S(const ProfileAtom& a, double x) {
    using namespace sio_detail;
    return std::visit([x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) {
            reject_at(x, v.at, "cauchy_S(dirac)");
            return v.weight / (pi * (x - v.at));
        } else if constexpr (std::is_same_v<T, LogPair>) {
            reject_at(x, v.a1, "cauchy_S(log_pair)");
            reject_at(x, v.a2, "cauchy_S(log_pair)");
            const auto sg = [](double u) { return u > 0 ? 1.0 : -1.0; };
            return -pi * v.scale * (sg(x - v.a1) - sg(x - v.a2));
        } else if constexpr (std::is_same_v<T, GaussianMoment>) {
            return v.scale * 2.0 * inv_sqrt_pi * special::dawson_moment(x / v.L);
        } else if constexpr (std::is_same_v<T, ErfiFlux>) {
            const double z = x / v.L;
            return v.scale * (1.0 - 2.0 * z * z) * std::exp(-z * z);
        } else {
            return sampled_S(v, x);
        }
    }, a);
}

// int sign(x - t) f(t) dt
inline double op_K_atom(const ProfileAtom& a, double x) {
    using namespace sio_detail;
    return std::visit([x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) {
            reject_at(x, v.at, "op_K(dirac)");
            return v.weight * (x > v.at ? 1.0 : -1.0);
        } else if constexpr (std::is_same_v<T, LogPair>) {
            throw std::domain_error("op_K: log_pair is not integrable");
        } else if constexpr (std::is_same_v<T, GaussianMoment>) {
            const double z = x / v.L;
            return -v.scale * v.L * std::exp(-z * z);
        } else if constexpr (std::is_same_v<T, ErfiFlux>) {
            return -2.0 * v.L * v.scale * 2.0 * inv_sqrt_pi * special::dawson_moment(x / v.L);
        } else {
            return sampled_K(v, x);
        }
    }, a);
}

// -(2/pi) int (gamma_eul + ln|x - t|) f(t) dt
inline double op_J_atom(const ProfileAtom& a, double x) {
    using namespace sio_detail;
    return std::visit([x](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) {
            reject_at(x, v.at, "op_J(dirac)");
            return -2.0 / pi * v.weight * (special::euler_gamma + std::log(std::abs(x - v.at)));
        } else if constexpr (std::is_same_v<T, LogPair>) {
            throw std::domain_error("op_J: log_pair is not integrable");
        } else if constexpr (std::is_same_v<T, GaussianMoment>) {
            return v.scale * v.L * 2.0 * inv_sqrt_pi * special::dawson(x / v.L);
        } else if constexpr (std::is_same_v<T, ErfiFlux>) {
            const double z = x / v.L;
            return -2.0 * v.L * v.scale * z * std::exp(-z * z);
        } else {
            return -2.0 / pi * (special::euler_gamma * v.integral() + sampled_log_convolution(v, x));
        }
    }, a);
}

// Exact integral over the line; NaN when the atom is not integrable.
inline double integral(const ProfileAtom& a) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) return v.weight;
        else if constexpr (std::is_same_v<T, LogPair>) return std::numeric_limits<double>::quiet_NaN();
        else if constexpr (std::is_same_v<T, Sampled>) return v.integral();
        else return 0.0;  // both Gaussian atoms are odd
    }, a);
}

// Size of the atom against which balance residuals are judged.
inline double natural_scale(const ProfileAtom& a) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dirac>) return std::abs(v.weight);
        else if constexpr (std::is_same_v<T, LogPair>) return std::abs(v.scale) * (v.a1 - v.a2);
        else if constexpr (std::is_same_v<T, Sampled>) return v.abs_integral();
        else return std::abs(v.scale) * v.L;
    }, a);
}

// ---------------------------------------------------------------------------
// A profile is a sum of atoms.

class Profile {
public:
    Profile() = default;
    Profile(ProfileAtom a) { add(std::move(a)); }

    Profile& add(ProfileAtom a) {
        validate(a);
        atoms_.push_back(std::move(a));
        return *this;
    }

    const std::vector<ProfileAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    bool has_sampled() const {
        return std::any_of(atoms_.begin(), atoms_.end(),
                           [](const ProfileAtom& a) { return std::holds_alternative<Sampled>(a); });
    }

    Profile& operator+=(const Profile& o) {
        atoms_.insert(atoms_.end(), o.atoms_.begin(), o.atoms_.end());
        return *this;
    }
    friend Profile operator+(Profile a, const Profile& b) { return a += b; }
    friend Profile operator*(double k, const Profile& p) {
        Profile out;
        if (k == 0.0) return out;
        for (const auto& a : p.atoms_) out.atoms_.push_back(scaled(a, k));
        return out;
    }

    double operator()(double x) const {
        double s = 0.0;
        for (const auto& a : atoms_) s += value(a, x);
        return s;
    }

    double integral() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += thermocrack::integral(a);
        return s;
    }

    double natural_scale() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += thermocrack::natural_scale(a);
        return s;
    }

    // K and J are only meaningful for self-balanced data.
    bool self_balanced(double rel = 1e-8) const {
        const double I = integral();
        return std::isfinite(I) && std::abs(I) <= rel * std::max(natural_scale(), 1e-300);
    }

private:
    std::vector<ProfileAtom> atoms_;
};

inline double cauchy_S(const Profile& p, double x) {
    double s = 0.0;
    for (const auto& a : p.atoms()) s += cauchy_S(a, x);
    return s;
}

inline double op_K(const Profile& p, double x) {
    if (p.empty()) return 0.0;
    if (!p.self_balanced())
        throw std::domain_error("op_K: profile is not self-balanced; the result would depend on truncation");
    double s = 0.0;
    for (const auto& a : p.atoms()) s += op_K_atom(a, x);
    return s;
}

inline double op_J(const Profile& p, double x) {
    if (p.empty()) return 0.0;
    if (!p.self_balanced())
        throw std::domain_error("op_J: profile is not self-balanced; the result would depend on truncation");
    double s = 0.0;
    for (const auto& a : p.atoms()) s += op_J_atom(a, x);
    return s;
}

// ---------------------------------------------------------------------------
// Half-line operators on grid functions.

// S f(x) for f living on one half-line, x anywhere except the tip and except
// same-side points beyond the truncation length.
inline double cauchy_S(const quad::HalfLineKernel& k, Side side, double x) {
    const double sg = side_sign(side);
    return sg / sio_detail::pi * k.pv(sg * x);
}

inline double cauchy_S(const GridFunction& f, double x) {
    return cauchy_S(quad::HalfLineKernel(f), f.grid.side(), x);
}

// S f evaluated at every node of `where`.
inline GridFunction apply_S(const GridFunction& f, const HalfLineGrid& where,
                            TipBehavior out_tip = TipBehavior::bounded) {
    const quad::HalfLineKernel k(f);
    std::vector<double> v(where.size());
    for (int i = 0; i < where.size(); ++i) v[i] = cauchy_S(k, f.grid.side(), where.coordinate(i));
    return GridFunction(where, std::move(v), out_tip);
}

// P+- f: restriction of a full-line profile to one half-line grid.
inline GridFunction project(const Profile& f, const HalfLineGrid& g) {
    return GridFunction::sample(g, [f](double x) { return f(x); }, TipBehavior::bounded, !f.has_sampled());
}

// Restriction of a grid function to another half-line grid: identity on the
// matching side, zero on the opposite side.
inline GridFunction project(const GridFunction& f, const HalfLineGrid& g) {
    if (f.grid.side() != g.side()) return GridFunction(g, std::vector<double>(g.size(), 0.0), f.tip);
    std::vector<double> v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = f(g.coordinate(i));
    return GridFunction(g, std::move(v), f.tip, f.far_field);
}

// PV int ln(w^2) / (h - w) dw over the whole line, by direct quadrature.
// Folding w -> -w gives 2h PV int_0^inf ln(w^2) / (h^2 - w^2) dw; the pole at
// |h| is removed by subtracting ln(h^2), whose PV integral against
// 1/(h^2 - w^2) over the half-line vanishes.
inline double pv_log_oracle(double h) {
    if (h == 0.0 || !std::isfinite(h)) throw std::invalid_argument("pv_log_oracle: need finite h != 0");
    const double a = std::abs(h);
    // (ln w^2 - ln a^2) / (a^2 - w^2) written in t = w/a - 1 to avoid cancellation.
    const auto g = [a](double w) {
        const double t = w / a - 1.0;
        double r;
        if (std::abs(t) < 1e-8) r = 1.0 - 0.5 * t;
        else if (std::abs(t) < 0.5) r = std::log1p(t) / t;
        else r = std::log(w / a) / t;
        return -2.0 * r / (a * (a + w));
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const double inner = ts.integrate(g, 0.0, a);
    const double outer = es.integrate(g, a, std::numeric_limits<double>::infinity());
    return 2.0 * h * (inner + outer);
}

// ---------------------------------------------------------------------------
// Inversion of S^(s) on x < 0.

struct InversionResult {
    GridFunction derivative;  // tip behaviour inverse_sqrt
    double residual = 0.0;    // sup |S^(s) f - rhs| / sup |rhs| on the inner 90%
};

// Forward residual of S^(s) f = rhs over nodes with |x| <= 0.9 X.
inline double forward_residual(const GridFunction& f, const GridFunction& rhs) {
    const quad::HalfLineKernel k(f);
    double num = 0.0, den = 0.0;
    const double lim = 0.9 * rhs.grid.truncation();
    for (int i = 0; i < rhs.size(); ++i) {
        if (rhs.grid.distance(i) > lim) break;
        const double Sf = cauchy_S(k, f.grid.side(), rhs.grid.coordinate(i));
        num = std::max(num, std::abs(Sf - rhs.values[i]));
        den = std::max(den, std::abs(rhs.values[i]));
    }
    return den > 0.0 ? num / den : num;
}

// Solves S^(s) f = g on x < 0 in the class of f integrable at the tip and
// decaying at -inf:
//   f(x) = -(1/sqrt(-x)) S^(s)[sqrt(-t) g(t)](x).
// The rhs must decay faster than |x|^(-1/2 - eps).
inline InversionResult invert_S_s(const GridFunction& rhs, bool compute_residual = true) {
    if (rhs.grid.side() != Side::negative) throw std::invalid_argument("invert_S_s: rhs must live on x < 0");
    if (rhs.tip != TipBehavior::bounded) throw std::invalid_argument("invert_S_s: rhs must be bounded at the tip");
    const HalfLineGrid& g = rhs.grid;
    const int n = g.size();

    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = std::sqrt(g.distance(i)) * rhs.values[i];
    std::function<double(double)> far;
    if (rhs.far_field) {
        auto ff = rhs.far_field;
        far = [ff](double s) { return std::sqrt(s) * ff(s); };
    }
    const GridFunction hf(g, std::move(h), TipBehavior::sqrt, far);
    const quad::HalfLineKernel k(hf);

    // phi = sqrt(s) f = P_h(s) / pi; the outermost node sits on the
    // truncation point and is extrapolated.
    std::vector<double> phi(n);
    for (int i = 0; i + 1 < n; ++i) phi[i] = k.pv(g.distance(i)) / sio_detail::pi;
    {
        const double s1 = g.distance(n - 3), s2 = g.distance(n - 2), s3 = g.distance(n - 1);
        const double p1 = phi[n - 3], p2 = phi[n - 2];
        if (p1 != 0.0 && p2 != 0.0 && (p1 > 0) == (p2 > 0))
            phi[n - 1] = p2 * std::pow(s3 / s2, std::log(p2 / p1) / std::log(s2 / s1));
        else
            phi[n - 1] = p2 + (s3 - s2) * (p2 - p1) / (s2 - s1);
    }
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        f[i] = phi[i] / std::sqrt(g.distance(i));
        if (!std::isfinite(f[i])) throw NonConvergence("invert_S_s: non-finite solution value", INFINITY);
    }
    InversionResult out{GridFunction(g, std::move(f), TipBehavior::inverse_sqrt), 0.0};
    if (compute_residual) out.residual = forward_residual(out.derivative, rhs);
    return out;
}

// Variant that enforces a residual tolerance.
inline GridFunction invert_S_s_checked(const GridFunction& rhs, double tol = 1e-3) {
    auto r = invert_S_s(rhs, true);
    if (!(r.residual <= tol))
        throw NonConvergence("invert_S_s: forward residual " + std::to_string(r.residual) +
                                 " exceeds tolerance " + std::to_string(tol),
                             r.residual);
    return std::move(r.derivative);
}

// Antiderivative from the tip: U(x) = int_0^x f(t) dt evaluated at the nodes,
// so U(0) = 0. On x < 0 this is minus the integral over the tip distance.
inline GridFunction integrate_from_tip(const GridFunction& f) {
    const quad::HalfLineKernel k(f);
    auto c = k.cumulative();
    const double sg = f.grid.sign();
    for (double& v : c) v *= sg;
    TipBehavior t = f.tip == TipBehavior::inverse_sqrt ? TipBehavior::sqrt : TipBehavior::bounded;
    return GridFunction(f.grid, std::move(c), t);
}

}  // namespace thermocrack
