#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace thermocrack::quad {

// Full Gauss-Legendre rule on [-1, 1].
struct Rule {
    std::vector<double> x, w;
};

template <unsigned N>
const Rule& gauss_legendre() {
    static const Rule rule = [] {
        using G = boost::math::quadrature::gauss<double, N>;
        Rule r;
        const auto& a = G::abscissa();
        const auto& w = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) {
                r.x.push_back(0.0);
                r.w.push_back(w[i]);
            } else {
                r.x.push_back(-a[i]); r.w.push_back(w[i]);
                r.x.push_back(a[i]);  r.w.push_back(w[i]);
            }
        }
        return r;
    }();
    return rule;
}

template <class F>
double integrate(const Rule& r, double a, double b, F&& f) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < r.x.size(); ++k) sum += r.w[k] * f(m + h * r.x[k]);
    return h * sum;
}

namespace detail {

inline double log_abs_or_zero(double v) { return v == 0.0 ? 0.0 : std::log(std::abs(v)); }

// int_{sa}^{sb} s^beta ds
inline double power_moment(double sa, double sb, double beta) {
    if (beta == 0.0) return sb - sa;
    if (beta == -0.5) return 2.0 * (std::sqrt(sb) - std::sqrt(sa));
    if (beta == 0.5) return (2.0 / 3.0) * (sb * std::sqrt(sb) - sa * std::sqrt(sa));
    if (beta == 1.5) return 0.4 * (sb * sb * std::sqrt(sb) - sa * sa * std::sqrt(sa));
    return (std::pow(sb, beta + 1) - std::pow(sa, beta + 1)) / (beta + 1);
}

// PV int_{sa}^{sb} s^beta / (c - s) ds for beta in {0, -1/2, 1/2}. Logarithms
// of exact zeros are dropped; they cancel between neighbouring cells when c
// sits on a node.
inline double pv_moment(double sa, double sb, double beta, double c) {
    if (beta == 0.0) return log_abs_or_zero(c - sa) - log_abs_or_zero(c - sb);
    if (beta == 0.5) return c * pv_moment(sa, sb, -0.5, c) - power_moment(sa, sb, -0.5);
    if (beta != -0.5) throw std::invalid_argument("pv_moment: unsupported exponent");
    const double ra = std::sqrt(sa), rb = std::sqrt(sb);
    if (c > 0.0) {
        const double q = std::sqrt(c);
        const auto F = [&](double r) { return std::log(q + r) - log_abs_or_zero(q - r); };
        return (F(rb) - F(ra)) / q;
    }
    if (c < 0.0) {
        const double q = std::sqrt(-c);
        return -2.0 / q * (std::atan(rb / q) - std::atan(ra / q));
    }
    if (ra == 0.0) throw std::domain_error("pv_moment: evaluation at the tip");
    return 2.0 * (1.0 / rb - 1.0 / ra);
}

}  // namespace detail

// PV int_{sa}^{sb} s^beta phi(s) / (c - s) ds with phi linear through
// (sa, pa) and (sb, pb).
inline double cell_pv(double sa, double sb, double pa, double pb, double beta, double c) {
    const double slope = (pb - pa) / (sb - sa);
    double dist, width;
    if (beta == 0.0) {
        width = sb - sa;
        dist = c < sa ? sa - c : (c > sb ? c - sb : 0.0);
    } else {
        const double ra = std::sqrt(sa), rb = std::sqrt(sb);
        width = rb - ra;
        if (c >= 0.0) {
            const double q = std::sqrt(c);
            dist = q < ra ? ra - q : (q > rb ? q - rb : 0.0);
        } else {
            dist = std::sqrt(sa - c);
        }
    }
    if (dist < 2.0 * width) {
        const double phic = pa + slope * (c - sa);
        return phic * detail::pv_moment(sa, sb, beta, c) - slope * detail::power_moment(sa, sb, beta);
    }
    const Rule& rule = dist < 8.0 * width ? gauss_legendre<8>() : gauss_legendre<4>();
    if (beta == 0.0)
        return integrate(rule, sa, sb, [&](double s) { return (pa + slope * (s - sa)) / (c - s); });
    const double e = 2.0 * beta + 1.0;
    return integrate(rule, std::sqrt(sa), std::sqrt(sb), [&](double r) {
        const double s = r * r;
        const double wr = e == 0.0 ? 1.0 : r * r;
        return 2.0 * wr * (pa + slope * (s - sa)) / (c - s);
    });
}

// int_{sa}^{sb} s^beta phi(s) ds, phi linear as above.
inline double cell_integral(double sa, double sb, double pa, double pb, double beta) {
    const double slope = (pb - pa) / (sb - sa);
    return (pa - slope * sa) * detail::power_moment(sa, sb, beta) +
           slope * detail::power_moment(sa, sb, beta + 1.0);
}

// A GridFunction prepared for repeated PV evaluation in the tip-distance
// variable: F(s) = s^beta phi(s), s in (0, X], plus a tail on (X, inf).
class HalfLineKernel {
public:
    explicit HalfLineKernel(const GridFunction& f) : beta_(f.beta()), X_(f.grid.truncation()) {
        const auto& s = f.grid.distances();
        const auto phi = f.weighted();
        const int n = f.size();
        s_.reserve(n + 1);
        phi_.reserve(n + 1);
        s_.push_back(0.0);
        phi_.push_back(phi[0] - s[0] * (phi[1] - phi[0]) / (s[1] - s[0]));
        for (int i = 0; i < n; ++i) {
            s_.push_back(s[i]);
            phi_.push_back(phi[i]);
        }
        build_tail(f.tail());
    }

    double truncation() const { return X_; }

    // PV int_0^inf F(s) / (c - s) ds for c < X.
    double pv(double c) const {
        if (c >= X_) throw std::domain_error("HalfLineKernel::pv: point beyond the truncation length");
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < s_.size(); ++i)
            sum += cell_pv(s_[i], s_[i + 1], phi_[i], phi_[i + 1], beta_, c);
        for (std::size_t k = 0; k < tu_.size(); ++k) {
            const double u = tu_[k];
            sum += tw_[k] / (c * u * u - X_);
        }
        return sum;
    }

    // int_0^{s_i} F at each node, s_i from the grid (index 0 is the first node).
    std::vector<double> cumulative() const {
        std::vector<double> out(s_.size() - 1);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < s_.size(); ++i) {
            acc += cell_integral(s_[i], s_[i + 1], phi_[i], phi_[i + 1], beta_);
            out[i] = acc;
        }
        return out;
    }

    // int_0^inf F, including the tail.
    double total() const {
        return cumulative().back() + tail_integral_;
    }

private:
    // Tail nodes in u = sqrt(X / s): int_X^inf F(s)/(c-s) ds
    //   = int_0^1 2 X F(X/u^2) / (u (c u^2 - X)) du.
    // Panels are refined geometrically toward both u = 0 and u = 1.
    void build_tail(const std::function<double(double)>& F) {
        std::vector<double> edges{0.0};
        for (int k = 14; k >= 1; --k) edges.push_back(std::ldexp(1.0, -k));
        for (int k = 2; k <= 24; ++k) edges.push_back(1.0 - std::ldexp(1.0, -k));
        edges.push_back(1.0);
        const Rule& rule = gauss_legendre<16>();
        tail_integral_ = 0.0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double a = edges[p], b = edges[p + 1];
            const double h = 0.5 * (b - a), m = 0.5 * (a + b);
            for (std::size_t k = 0; k < rule.x.size(); ++k) {
                const double u = m + h * rule.x[k];
                const double s = X_ / (u * u);
                const double w = h * rule.w[k] * 2.0 * X_ * F(s) / u;
                tu_.push_back(u);
                tw_.push_back(w);
                tail_integral_ += w / (u * u);
            }
        }
    }

    double beta_;
    double X_;
    std::vector<double> s_, phi_;
    std::vector<double> tu_, tw_;
    double tail_integral_ = 0.0;
};

}  // namespace thermocrack::quad
