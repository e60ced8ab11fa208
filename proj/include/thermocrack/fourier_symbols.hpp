#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "materials.hpp"

namespace thermocrack {

using cdouble = std::complex<double>;
using ComplexMatrix2 = Eigen::Matrix2cd;
using ComplexVector2 = Eigen::Vector2cd;

inline constexpr cdouble I_unit{0.0, 1.0};

namespace detail {

inline void require_nonzero_xi(double xi) {
    if (xi == 0.0 || !std::isfinite(xi))
        throw std::invalid_argument("Fourier symbol evaluated at xi = 0 or non-finite xi");
}
inline double sgn(double xi) { return xi > 0 ? 1.0 : -1.0; }

}  // namespace detail

// R = diag(-1, 1), E = [[0, 1], [-1, 0]], F = [[0, 1], [1, 0]].
inline ComplexMatrix2 matrix_R() {
    ComplexMatrix2 m;
    m << -1.0, 0.0, 0.0, 1.0;
    return m;
}
inline ComplexMatrix2 matrix_E() {
    ComplexMatrix2 m;
    m << 0.0, 1.0, -1.0, 0.0;
    return m;
}
inline ComplexMatrix2 matrix_F() {
    ComplexMatrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

enum class HalfPlane { upper, lower };

// Formulas are written once for the upper half-plane in terms of a = |xi| and
// s = sign(xi); the lower half-plane uses a -> -|xi|, s -> -sign(xi).
struct SymbolFrame {
    double xi, a, s;
    static SymbolFrame make(double xi, HalfPlane hp) {
        detail::require_nonzero_xi(xi);
        const double flip = hp == HalfPlane::upper ? 1.0 : -1.0;
        return {xi, flip * std::abs(xi), flip * detail::sgn(xi)};
    }
};

struct SymbolPair {
    cdouble first, second;
};

// Singular weight-function displacements (U1, U2) for traction transforms
// (sigma21, sigma22) at depth x2 (x2 >= 0 upper, x2 <= 0 lower).
inline SymbolPair weight_displacements(double xi, double x2, const Material& mat, cdouble sigma21,
                                       cdouble sigma22, HalfPlane hp = HalfPlane::upper) {
    if ((hp == HalfPlane::upper && x2 < 0) || (hp == HalfPlane::lower && x2 > 0))
        throw std::invalid_argument("weight_displacements: x2 on the wrong side");
    const auto f = SymbolFrame::make(xi, hp);
    const double l = mat.lambda, m = mat.mu;
    const double e = std::exp(-f.a * x2) / (2 * m);
    const cdouble U1 = ((x2 - (l + 2 * m) / (f.a * (l + m))) * sigma21 +
                        I_unit * (m / (xi * (l + m)) - f.s * x2) * sigma22) * e;
    const cdouble U2 = (-I_unit * (f.s * x2 + m / (xi * (l + m))) * sigma21 -
                        (x2 + (l + 2 * m) / (f.a * (l + m))) * sigma22) * e;
    return {U1, U2};
}

// Transformed Lame potentials (Phi, Psi), integration constants set to zero.
inline SymbolPair potentials(double xi, double x2, const Material& mat, cdouble sigma21,
                             cdouble sigma22, HalfPlane hp = HalfPlane::upper) {
    if ((hp == HalfPlane::upper && x2 < 0) || (hp == HalfPlane::lower && x2 > 0))
        throw std::invalid_argument("potentials: x2 on the wrong side");
    const auto f = SymbolFrame::make(xi, hp);
    const double l = mat.lambda, m = mat.mu;
    const double e = std::exp(-f.a * x2) / (2 * m);
    const cdouble Phi = (-I_unit * x2 * m / (xi * (l + m)) * sigma21 +
                         (1.0 / (2 * xi * xi) - x2 * m / (f.a * (l + m))) * sigma22) * e;
    const cdouble Psi = (-x2 * (l + 2 * m) / (f.a * (l + m)) * sigma21 +
                         I_unit * (f.s / (2 * xi * xi) + x2 * (l + 2 * m) / (xi * (l + m))) * sigma22) * e;
    return {Phi, Psi};
}

// Closed-form x2-derivatives of the potentials.
inline SymbolPair potentials_derivative(double xi, double x2, const Material& mat, cdouble sigma21,
                                        cdouble sigma22, HalfPlane hp = HalfPlane::upper) {
    const auto f = SymbolFrame::make(xi, hp);
    const double l = mat.lambda, m = mat.mu;
    const double e = std::exp(-f.a * x2) / (2 * m);
    const cdouble dPhi = (I_unit * (x2 * m * f.s / (l + m) - m / (xi * (l + m))) * sigma21 +
                          (x2 * m / (l + m) - (l + 3 * m) / (2 * f.a * (l + m))) * sigma22) * e;
    const cdouble dPsi = ((x2 * (l + 2 * m) / (l + m) - (l + 2 * m) / (f.a * (l + m))) * sigma21 -
                          I_unit * (x2 * (l + 2 * m) * f.s / (l + m) - (l + 3 * m) / (2 * xi * (l + m))) *
                              sigma22) * e;
    return {dPhi, dPsi};
}

// Row vectors mapping (sigma21, sigma22) to the interface traces of Phi and Phi'.
struct PotentialTraces {
    ComplexVector2 eta_plus, eta_minus, zeta_plus, zeta_minus;
};

inline PotentialTraces potential_derivative_traces(double xi, const Material& plus,
                                                   const Material& minus) {
    PotentialTraces t;
    auto trace = [&](const Material& mat, HalfPlane hp, ComplexVector2& eta, ComplexVector2& zeta) {
        const double x2 = 0.0;
        const auto p1 = potentials(xi, x2, mat, 1.0, 0.0, hp);
        const auto p2 = potentials(xi, x2, mat, 0.0, 1.0, hp);
        eta << p1.first, p2.first;
        const auto d1 = potentials_derivative(xi, x2, mat, 1.0, 0.0, hp);
        const auto d2 = potentials_derivative(xi, x2, mat, 0.0, 1.0, hp);
        zeta << d1.first, d2.first;
    };
    trace(plus, HalfPlane::upper, t.eta_plus, t.zeta_plus);
    trace(minus, HalfPlane::lower, t.eta_minus, t.zeta_minus);
    return t;
}

struct CouplingVectors {
    ComplexVector2 jump_eta_t, avg_eta_t, jump_eta_c, avg_eta_c;
    ComplexVector2 jump_zeta_t, avg_zeta_t, jump_zeta_c, avg_zeta_c;
};

inline CouplingVectors coupling_vectors(double xi, const BimaterialParams& bp) {
    detail::require_nonzero_xi(xi);
    const double s = detail::sgn(xi), x2 = xi * xi;
    CouplingVectors c;
    c.jump_eta_t << 0.0, bp.h_t / x2;
    c.avg_eta_t << 0.0, bp.l_t / (2 * x2);
    c.jump_eta_c << 0.0, bp.h_c / x2;
    c.avg_eta_c << 0.0, bp.l_c / (2 * x2);
    c.jump_zeta_t << -I_unit * bp.m_t / xi, -bp.n_t * s / xi;
    c.avg_zeta_t << -I_unit * bp.p_t / (2 * xi), -bp.q_t * s / (2 * xi);
    c.jump_zeta_c << -I_unit * bp.m_c / xi, -bp.n_c * s / xi;
    c.avg_zeta_c << -I_unit * bp.p_c / (2 * xi), -bp.q_c * s / (2 * xi);
    return c;
}

// Same vectors assembled from the potential traces and the material moduli.
inline CouplingVectors coupling_vectors_definitional(double xi, const Material& plus,
                                                     const Material& minus) {
    const auto t = potential_derivative_traces(xi, plus, minus);
    CouplingVectors c;
    const double bt_p = plus.gamma_t / plus.k_t, bt_m = minus.gamma_t / minus.k_t;
    const double bc_p = plus.gamma_c / plus.D_c, bc_m = minus.gamma_c / minus.D_c;
    c.jump_eta_t = bt_p * t.eta_plus - bt_m * t.eta_minus;
    c.avg_eta_t = 0.5 * (bt_p * t.eta_plus + bt_m * t.eta_minus);
    c.jump_eta_c = bc_p * t.eta_plus - bc_m * t.eta_minus;
    c.avg_eta_c = 0.5 * (bc_p * t.eta_plus + bc_m * t.eta_minus);
    c.jump_zeta_t = plus.gamma_t * t.zeta_plus - minus.gamma_t * t.zeta_minus;
    c.avg_zeta_t = 0.5 * (plus.gamma_t * t.zeta_plus + minus.gamma_t * t.zeta_minus);
    c.jump_zeta_c = plus.gamma_c * t.zeta_plus - minus.gamma_c * t.zeta_minus;
    c.avg_zeta_c = 0.5 * (plus.gamma_c * t.zeta_plus + minus.gamma_c * t.zeta_minus);
    return c;
}

struct WeightMatrices {
    ComplexMatrix2 jump, avg;
};

inline WeightMatrices weight_matrices(double xi, const BimaterialParams& bp) {
    detail::require_nonzero_xi(xi);
    const double a = std::abs(xi), s = detail::sgn(xi);
    const ComplexMatrix2 I2 = ComplexMatrix2::Identity(), E = matrix_E();
    return {-(1.0 / a) * (bp.b * I2 - I_unit * bp.d * s * E),
            -(bp.b / (2 * a)) * (bp.alpha * I2 - I_unit * bp.gamma * s * E)};
}

struct MatricesABM {
    ComplexMatrix2 A, B, M;
};

inline MatricesABM matrices_ABM_explicit(double xi, const BimaterialParams& bp) {
    detail::require_nonzero_xi(xi);
    const double a = std::abs(xi), s = detail::sgn(xi);
    const double D = bp.b * bp.b - bp.d * bp.d;
    const ComplexMatrix2 I2 = ComplexMatrix2::Identity();
    MatricesABM r;
    r.A = (bp.b / (2 * D)) * ((bp.alpha * bp.b - bp.gamma * bp.d) * I2 +
                              I_unit * (bp.alpha * bp.d - bp.gamma * bp.b) * s * matrix_E());
    r.B = -(a / D) * (bp.b * I2 + I_unit * bp.d * s * matrix_E());
    r.M = -(a / D) * (bp.b * matrix_R() + I_unit * bp.d * s * matrix_F());
    return r;
}

// Products R^-1 W_jump^-T W_avg^T R, R^-1 W_jump^-T R and R^-1 W_jump^-T. The
// traction matrix cancels between the inverse and the transpose and is
// therefore omitted.
inline MatricesABM matrices_ABM_definitional(double xi, const BimaterialParams& bp) {
    const auto W = weight_matrices(xi, bp);
    if (std::abs(W.jump.determinant()) == 0.0)
        throw std::logic_error("singular jump weight matrix");
    const ComplexMatrix2 R = matrix_R(), Rinv = R.inverse();
    const ComplexMatrix2 JinvT = W.jump.transpose().inverse();
    MatricesABM r;
    r.M = Rinv * JinvT;
    r.B = r.M * R;
    r.A = r.M * W.avg.transpose() * R;
    return r;
}

inline double relative_difference(const ComplexMatrix2& x, const ComplexMatrix2& y) {
    const double scale = std::max(x.norm(), y.norm());
    return scale == 0.0 ? 0.0 : (x - y).norm() / scale;
}
inline double relative_difference(const ComplexVector2& x, const ComplexVector2& y) {
    const double scale = std::max(x.norm(), y.norm());
    return scale == 0.0 ? 0.0 : (x - y).norm() / scale;
}

inline MatricesABM matrices_ABM(double xi, const BimaterialParams& bp, bool verify = false) {
    if (!(bp.b > std::abs(bp.d))) throw std::invalid_argument("matrices_ABM: need b > |d|");
    auto r = matrices_ABM_explicit(xi, bp);
    if (verify) {
        const auto def = matrices_ABM_definitional(xi, bp);
        const double e = std::max({relative_difference(r.A, def.A), relative_difference(r.B, def.B),
                                   relative_difference(r.M, def.M)});
        if (e > 1e-12) throw std::logic_error("matrices_ABM: explicit and definitional forms disagree");
    }
    return r;
}

struct GDVectors {
    ComplexVector2 jump_g_t, avg_g_t, jump_d_t, avg_d_t;
    ComplexVector2 jump_g_c, avg_g_c, jump_d_c, avg_d_c;
};

inline GDVectors gd_vectors_explicit(double xi, const BimaterialParams& bp) {
    detail::require_nonzero_xi(xi);
    const double a = std::abs(xi), s = detail::sgn(xi);
    const double b = bp.b, d = bp.d, D = b * b - d * d;
    GDVectors v;
    auto g_jump = [&](double m, double n) {
        ComplexVector2 r;
        r << I_unit * s * (d * n - b * m) / D, (b * n - d * m) / D;
        return r;
    };
    auto g_avg = [&](double p, double q) {
        ComplexVector2 r;
        r << I_unit * s * (d * q - b * p) / (2 * D), (b * q - d * p) / (2 * D);
        return r;
    };
    auto d_vec = [&](double coef) {
        ComplexVector2 r;
        r << -coef * I_unit * d * s / (D * a), -coef * b / (D * a);
        return r;
    };
    v.jump_g_t = g_jump(bp.m_t, bp.n_t);
    v.avg_g_t = g_avg(bp.p_t, bp.q_t);
    v.jump_d_t = d_vec(bp.h_t);
    v.avg_d_t = d_vec(bp.l_t / 2);
    v.jump_g_c = g_jump(bp.m_c, bp.n_c);
    v.avg_g_c = g_avg(bp.p_c, bp.q_c);
    v.jump_d_c = d_vec(bp.h_c);
    v.avg_d_c = d_vec(bp.l_c / 2);
    return v;
}

inline GDVectors gd_vectors_definitional(double xi, const BimaterialParams& bp) {
    const ComplexMatrix2 M = matrices_ABM_definitional(xi, bp).M;
    const auto c = coupling_vectors(xi, bp);
    return {M * c.jump_zeta_t, M * c.avg_zeta_t, M * c.jump_eta_t, M * c.avg_eta_t,
            M * c.jump_zeta_c, M * c.avg_zeta_c, M * c.jump_eta_c, M * c.avg_eta_c};
}

}  // namespace thermocrack
