#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourier_symbols.hpp"
#include "materials.hpp"
#include "sio.hpp"
#include "special.hpp"

namespace thermocrack {

// Average and jump of temperature, concentration and their normal fluxes on
// the plane x2 = 0.
struct InterfaceProfileSet {
    Profile avg_theta, jump_theta, avg_chi, jump_chi;
    Profile avg_q2, jump_q2, avg_j2, jump_j2;
    double theta_s = 0.0;
    double L = 1.0;
    double a1 = 0.0, a2 = 0.0;

    const Profile& avg_field(TransportField f) const { return f == TransportField::thermal ? avg_theta : avg_chi; }
    const Profile& jump_field(TransportField f) const { return f == TransportField::thermal ? jump_theta : jump_chi; }
    const Profile& avg_flux(TransportField f) const { return f == TransportField::thermal ? avg_q2 : avg_j2; }
    const Profile& jump_flux(TransportField f) const { return f == TransportField::thermal ? jump_q2 : jump_j2; }
};

namespace profiles_detail {

inline void assign(InterfaceProfileSet& s, TransportField f, Profile avg, Profile jump, Profile avg_flux,
                   Profile jump_flux) {
    if (f == TransportField::thermal) {
        s.avg_theta = std::move(avg); s.jump_theta = std::move(jump);
        s.avg_q2 = std::move(avg_flux); s.jump_q2 = std::move(jump_flux);
    } else {
        s.avg_chi = std::move(avg); s.jump_chi = std::move(jump);
        s.avg_j2 = std::move(avg_flux); s.jump_j2 = std::move(jump_flux);
    }
}

inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace profiles_detail

// Point sources of flux at x = a1 and x = a2 on the interface, with the
// conducting half-planes in steady state. For the diffusive field pass the
// diffusivities as k_plus, k_minus and theta_s as the concentration scale.
inline InterfaceProfileSet make_delta_flux_family(double theta_s, double L, double a1, double a2, double k_plus,
                                                  double k_minus,
                                                  TransportField field = TransportField::thermal) {
    profiles_detail::require_positive(L, "L");
    profiles_detail::require_positive(a2, "a2");
    profiles_detail::require_positive(k_plus, "k_plus");
    profiles_detail::require_positive(k_minus, "k_minus");
    if (!std::isfinite(theta_s)) throw std::invalid_argument("theta_s must be finite");
    if (a1 < a2) throw std::invalid_argument("delta flux family requires a1 > a2");
    InterfaceProfileSet s;
    s.theta_s = theta_s;
    s.L = L;
    s.a1 = a1;
    s.a2 = a2;
    if (a1 == a2 || theta_s == 0.0) return s;

    const auto pair = [&](double w) {
        Profile p;
        if (w != 0.0) p.add(Dirac{a1, w}).add(Dirac{a2, -w});
        return p;
    };
    Profile avg(LogPair{a1, a2, -theta_s / (4.0 * std::numbers::pi)});
    profiles_detail::assign(s, field, std::move(avg), Profile{}, pair(0.25 * theta_s * (k_plus - k_minus)),
                            pair(0.5 * theta_s * (k_plus + k_minus)));
    return s;
}

// Interface temperature theta_s (x/L) exp(-x^2/L^2) with its conducted fluxes.
// Both fluxes carry the bracket B(z) = (2z^2-1) e^{-z^2} erfi z - 2z/sqrt(pi):
//   <q2> = -(k+ - k-) theta_s/(2L) B,   [[q2]] = -(k+ + k-) theta_s/L B.
inline InterfaceProfileSet make_gaussian_temperature_family(double theta_s, double L, double k_plus,
                                                            double k_minus,
                                                            TransportField field = TransportField::thermal) {
    profiles_detail::require_positive(L, "L");
    profiles_detail::require_positive(k_plus, "k_plus");
    profiles_detail::require_positive(k_minus, "k_minus");
    if (!std::isfinite(theta_s)) throw std::invalid_argument("theta_s must be finite");
    InterfaceProfileSet s;
    s.theta_s = theta_s;
    s.L = L;
    if (theta_s == 0.0) return s;
    Profile avg_flux;
    if (k_plus != k_minus) avg_flux.add(ErfiFlux{-(k_plus - k_minus) * theta_s / (2.0 * L), L});
    profiles_detail::assign(s, field, Profile(GaussianMoment{theta_s, L}), Profile{}, std::move(avg_flux),
                            Profile(ErfiFlux{-(k_plus + k_minus) * theta_s / L, L}));
    return s;
}

// ---------------------------------------------------------------------------
// Half-plane temperature fields.

struct HalfPlaneField {
    std::function<double(double, double)> evaluator;
    HalfPlane side = HalfPlane::upper;

    double operator()(double x1, double x2) const {
        if ((side == HalfPlane::upper && x2 < 0.0) || (side == HalfPlane::lower && x2 > 0.0))
            throw std::domain_error("HalfPlaneField: point outside the half-plane");
        return evaluator(x1, x2);
    }
};

inline HalfPlaneField halfplane_field_delta(double theta_s, double L, double a1, double a2,
                                            HalfPlane side = HalfPlane::upper) {
    profiles_detail::require_positive(L, "L");
    profiles_detail::require_positive(a2, "a2");
    if (a1 < a2) throw std::invalid_argument("halfplane_field_delta requires a1 > a2");
    const double c = -theta_s / (4.0 * std::numbers::pi);
    return {[=](double x1, double x2) {
                const double r1 = (x1 - a1) * (x1 - a1) + x2 * x2;
                const double r2 = (x1 - a2) * (x1 - a2) + x2 * x2;
                if (r1 == 0.0 || r2 == 0.0) throw std::domain_error("halfplane_field_delta: evaluation at a source");
                return c * (std::log(r1) - std::log(r2));
            },
            side};
}

// theta = theta_s Re[zeta w(zeta)], zeta = (x1 + i|x2|)/L, with w the Faddeeva
// function. Equivalent to the exp/erfi form
//   (theta_s/L) e^{-(x1^2-x2^2)/L^2} [x1 cos(2x1x2/L^2) + x2 sin(2x1x2/L^2)
//     - x1 Im G - x2 Re G],  G = e^{-2i x1 x2/L^2} erfi((x1 + i x2)/L),
// which overflows away from the boundary.
inline HalfPlaneField halfplane_field_gaussian(double theta_s, double L, HalfPlane side = HalfPlane::upper) {
    profiles_detail::require_positive(L, "L");
    return {[=](double x1, double x2) {
                const std::complex<double> z(x1 / L, std::abs(x2) / L);
                return theta_s * std::real(z * special::faddeeva(z));
            },
            side};
}

// Literal exp/erfi form of the upper-half Gaussian field; only usable for
// moderate arguments. Kept as an independent cross-check.
inline double gaussian_field_erfi_form(double theta_s, double L, double x1, double x2) {
    const double ph = 2.0 * x1 * x2 / (L * L);
    const std::complex<double> G = std::exp(std::complex<double>(0.0, -ph)) *
                                   special::erfi(std::complex<double>(x1 / L, x2 / L));
    return theta_s / L * std::exp(-(x1 * x1 - x2 * x2) / (L * L)) *
           (x1 * std::cos(ph) + x2 * std::sin(ph) - x1 * G.imag() - x2 * G.real());
}

// ---------------------------------------------------------------------------
// Dirichlet-to-Neumann map for a decaying harmonic extension: q2 = k F^-1[|xi| F theta].
// Input: uniform samples theta_j at x_0 + j dx. Output: q2 at the same points
// for the upper half-plane (q2 = -k d theta / d x2 at 0+).
inline std::vector<double> dirichlet_to_neumann(const std::vector<double>& theta, double dx, double k) {
    if (theta.size() < 8) throw std::invalid_argument("dirichlet_to_neumann: need at least 8 samples");
    profiles_detail::require_positive(dx, "dx");
    profiles_detail::require_positive(k, "k");
    double peak = 0.0;
    for (double v : theta) {
        if (!std::isfinite(v)) throw std::invalid_argument("dirichlet_to_neumann: non-finite sample");
        peak = std::max(peak, std::abs(v));
    }
    const double edge = std::max(std::abs(theta.front()), std::abs(theta.back()));
    if (peak == 0.0) return std::vector<double>(theta.size(), 0.0);
    if (edge > 1e-2 * peak)
        throw std::invalid_argument("dirichlet_to_neumann: boundary data does not decay within the sampled window");

    std::size_t P = 1;
    while (P < 4 * theta.size()) P <<= 1;
    std::vector<std::complex<double>> in(P, 0.0), spec, out;
    for (std::size_t j = 0; j < theta.size(); ++j) in[j] = theta[j];
    Eigen::FFT<double> fft;
    fft.fwd(spec, in);
    const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(P) * dx);
    for (std::size_t m = 0; m < P; ++m) {
        const double kk = m <= P / 2 ? double(m) : double(P - m);
        spec[m] *= kk * dxi;
    }
    fft.inv(out, spec);
    std::vector<double> q(theta.size());
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = k * out[j].real();
    return q;
}

// ---------------------------------------------------------------------------
// Self-balance of the flux members.

struct BalanceEntry {
    std::string member;
    double integral = 0.0;
    double scale = 0.0;
    bool pass = true;
};

struct BalanceReport {
    std::vector<BalanceEntry> entries;
    bool pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

inline BalanceReport check_self_balance(const InterfaceProfileSet& s, double rel = 1e-8) {
    BalanceReport r;
    const std::pair<const char*, const Profile*> members[] = {
        {"avg_q2", &s.avg_q2}, {"jump_q2", &s.jump_q2}, {"avg_j2", &s.avg_j2}, {"jump_j2", &s.jump_j2}};
    for (const auto& [name, p] : members) {
        BalanceEntry e;
        e.member = name;
        e.integral = p->integral();
        e.scale = p->natural_scale();
        e.pass = std::isfinite(e.integral) && std::abs(e.integral) <= rel * e.scale;
        r.entries.push_back(e);
    }
    return r;
}

}  // namespace thermocrack
