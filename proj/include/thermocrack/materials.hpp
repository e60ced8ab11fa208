#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace thermocrack {

// Isotropic thermodiffusive elastic constants of one half-plane.
struct Material {
    double lambda = 0.0;   // Lame first parameter
    double mu = 0.0;       // shear modulus
    double gamma_t = 0.0;  // thermal stress modulus (3 lambda + 2 mu) alpha_t
    double gamma_c = 0.0;  // diffusive stress modulus (3 lambda + 2 mu) alpha_c
    double k_t = 1.0;      // thermal conductivity
    double D_c = 1.0;      // mass diffusivity

    // Plane-strain Lame constants from Young's modulus, Poisson ratio and
    // expansion coefficients.
    static Material from_engineering(double E, double nu, double alpha_t, double alpha_c,
                                     double k_t, double D_c) {
        if (!(E > 0.0) || !(nu > -1.0 && nu < 0.5))
            throw std::invalid_argument("from_engineering: need E > 0 and -1 < nu < 0.5");
        Material m;
        m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
        m.mu = E / (2.0 * (1.0 + nu));
        m.gamma_t = (3.0 * m.lambda + 2.0 * m.mu) * alpha_t;
        m.gamma_c = (3.0 * m.lambda + 2.0 * m.mu) * alpha_c;
        m.k_t = k_t;
        m.D_c = D_c;
        return m;
    }
};

inline void validate(const Material& m, const std::string& which = "material") {
    const double v[] = {m.lambda, m.mu, m.gamma_t, m.gamma_c, m.k_t, m.D_c};
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(which + ": non-finite constant");
    if (!(m.mu > 0.0)) throw std::invalid_argument(which + ": mu must be positive");
    if (!(m.lambda + m.mu > 0.0)) throw std::invalid_argument(which + ": lambda + mu must be positive");
    if (!(m.k_t > 0.0)) throw std::invalid_argument(which + ": k_t must be positive");
    if (!(m.D_c > 0.0)) throw std::invalid_argument(which + ": D_c must be positive");
}

struct BimaterialParams {
    double b = 0, d = 0, alpha = 0, gamma = 0;
    double h_t = 0, l_t = 0, m_t = 0, n_t = 0, p_t = 0, q_t = 0;
    double h_c = 0, l_c = 0, m_c = 0, n_c = 0, p_c = 0, q_c = 0;
};

// Coupling constants of one transport field (thermal or diffusive) in a form
// the operator code can consume without caring which field it is.
struct FieldCoefficients {
    double h, l, m, n, p, q;
};

inline FieldCoefficients thermal_coefficients(const BimaterialParams& bp) {
    return {bp.h_t, bp.l_t, bp.m_t, bp.n_t, bp.p_t, bp.q_t};
}
inline FieldCoefficients diffusive_coefficients(const BimaterialParams& bp) {
    return {bp.h_c, bp.l_c, bp.m_c, bp.n_c, bp.p_c, bp.q_c};
}

inline BimaterialParams compute_bimaterial_params(const Material& plus, const Material& minus) {
    validate(plus, "material_plus");
    validate(minus, "material_minus");
    const double lp = plus.lambda, mp = plus.mu, lm = minus.lambda, mm = minus.mu;
    const double sp = lp + mp, sm = lm + mm;

    BimaterialParams r;
    r.b = (lp + 2 * mp) / (2 * mp * sp) + (lm + 2 * mm) / (2 * mm * sm);
    r.d = 1.0 / (2 * sp) - 1.0 / (2 * sm);

    const double A = mm * sm * (lp + 2 * mp);
    const double B = mp * sp * (lm + 2 * mm);
    r.alpha = (A - B) / (A + B);
    r.gamma = (mp * mm * sm + mp * mm * sp) / (mm * (lp + 2 * mp) * sm + mp * (lm + 2 * mm) * sp);

    auto fill = [&](double gp, double gm, double kp, double km, double& h, double& l, double& m,
                    double& n, double& p, double& q) {
        const double hp = gp / (4 * kp * mp), hm = gm / (4 * km * mm);
        h = hp - hm;
        l = hp + hm;
        const double mpv = gp / (2 * sp), mmv = gm / (2 * sm);
        m = mpv - mmv;
        p = mpv + mmv;
        const double np = gp * (lp + 3 * mp) / (4 * mp * sp);
        const double nm = gm * (lm + 3 * mm) / (4 * mm * sm);
        n = np + nm;
        q = np - nm;
    };
    fill(plus.gamma_t, minus.gamma_t, plus.k_t, minus.k_t, r.h_t, r.l_t, r.m_t, r.n_t, r.p_t, r.q_t);
    fill(plus.gamma_c, minus.gamma_c, plus.D_c, minus.D_c, r.h_c, r.l_c, r.m_c, r.n_c, r.p_c, r.q_c);
    return r;
}

enum class TransportField { thermal, diffusive };

struct AuxParams {
    double Upsilon;  // l (k+ + k-) + h (k+ - k-)
    double Xi_plus;  // gamma+ / (2 (lambda + mu))
};

// Upsilon is defined for any pair; Xi_plus only for matched elastic moduli.
inline double upsilon(const BimaterialParams& bp, const Material& plus, const Material& minus,
                      TransportField f = TransportField::thermal) {
    if (f == TransportField::thermal)
        return bp.l_t * (plus.k_t + minus.k_t) + bp.h_t * (plus.k_t - minus.k_t);
    return bp.l_c * (plus.D_c + minus.D_c) + bp.h_c * (plus.D_c - minus.D_c);
}

inline AuxParams thermal_aux_params(const BimaterialParams& bp, const Material& plus,
                                    const Material& minus,
                                    TransportField f = TransportField::thermal) {
    if (plus.lambda != minus.lambda || plus.mu != minus.mu)
        throw std::invalid_argument("Xi_plus requires matched elastic moduli in both half-planes");
    const double g = (f == TransportField::thermal) ? plus.gamma_t : plus.gamma_c;
    return {upsilon(bp, plus, minus, f), g / (2.0 * (plus.lambda + plus.mu))};
}

// Normalisation scale gamma+/(2(lambda+ + mu+)); coincides with Xi_plus for
// matched moduli and stays well defined whenever d = 0.
inline double xi_scale(const Material& plus, TransportField f = TransportField::thermal) {
    const double g = (f == TransportField::thermal) ? plus.gamma_t : plus.gamma_c;
    return g / (2.0 * (plus.lambda + plus.mu));
}

}  // namespace thermocrack
