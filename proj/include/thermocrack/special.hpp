#pragma once

#include <cmath>
#include <complex>
#include <numbers>

// Imaginary error function and relatives. Real arguments use the Maclaurin
// series of erfi below |x| = 6 and the asymptotic series of the Dawson
// function above. Complex arguments go through the Faddeeva function
// w(z) = exp(-z^2) erfc(-iz), with a Laplace continued fraction for |z| >= 6
// or Im z >= 2 and the scaled series elsewhere.

namespace thermocrack::special {

inline constexpr double switch_radius = 6.0;
inline constexpr double euler_gamma = 0.57721566490153286061;

namespace detail {

// sum_{k>=0} z^(2k+1) / (k! (2k+1)), so erfi(z) = 2/sqrt(pi) * series.
template <class T>
T erfi_series(T z) {
    T term = z, sum = z;
    const T z2 = z * z;
    for (int k = 1; k < 400; ++k) {
        term *= z2 / static_cast<double>(k);
        const T add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// D(x) ~ sum c_n x^-(2n+1), c_n = (2n-1)!!/2^(n+1), truncated at the smallest term.
inline double dawson_asymptotic(double x) {
    const double inv2 = 1.0 / (x * x);
    double term = 0.5 / x, sum = term, prev = std::abs(term);
    for (int n = 1; n < 200; ++n) {
        const double next = term * (2 * n - 1) * 0.5 * inv2;
        if (std::abs(next) >= prev) break;
        term = next;
        sum += term;
        prev = std::abs(term);
        if (prev <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

// Dawson function D(x) = exp(-x^2) int_0^x exp(t^2) dt.
inline double dawson(double x) {
    if (std::abs(x) < switch_radius)
        return std::exp(-x * x) * detail::erfi_series(x);
    return detail::dawson_asymptotic(x);
}

// exp(-x^2) erfi(x), bounded for all real x.
inline double erfi_scaled(double x) { return 2.0 / std::sqrt(std::numbers::pi) * dawson(x); }

// erfi(x) for real x; overflows to +-inf beyond |x| ~ 26.
inline double erfi(double x) {
    if (std::abs(x) < switch_radius)
        return 2.0 / std::sqrt(std::numbers::pi) * detail::erfi_series(x);
    return erfi_scaled(x) * std::exp(x * x);
}

// x D(x) - 1/2 without cancellation for large |x|.
inline double dawson_moment(double x) {
    if (std::abs(x) < 8.0) return x * dawson(x) - 0.5;
    const double inv2 = 1.0 / (x * x);
    double c = 0.25, sum = 0.0, pw = inv2, prev = 1e300;
    for (int n = 1; n < 200; ++n) {
        const double term = c * pw;
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev <= 1e-17 * std::abs(sum)) break;
        c *= (2 * n + 1) * 0.5;
        pw *= inv2;
    }
    return sum;
}

// (2x^2 - 1) exp(-x^2) erfi(x) - 2x/sqrt(pi), the Gaussian-family flux bracket.
inline double flux_bracket(double x) {
    const double k = 2.0 / std::sqrt(std::numbers::pi);
    if (std::abs(x) < 8.0) return (2 * x * x - 1) * erfi_scaled(x) - k * x;
    // (2x^2-1) D - x = sum_{n>=2} (2n-3)!! (2n-2) / 2^n x^(1-2n)
    const double inv2 = 1.0 / (x * x);
    double dfact = 1.0;  // (2n-3)!!
    double pw = 1.0 / (x * x * x);
    double sum = 0.0, prev = 1e300;
    for (int n = 2; n < 200; ++n) {
        const double term = dfact * (2 * n - 2) / std::ldexp(1.0, n) * pw;
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev <= 1e-17 * std::abs(sum)) break;
        dfact *= (2 * n - 1);
        pw *= inv2;
    }
    return k * sum;
}

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
inline std::complex<double> faddeeva(std::complex<double> z) {
    using C = std::complex<double>;
    if (z.imag() < 0) return 2.0 * std::exp(-z * z) - faddeeva(-z);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    if (std::abs(z) >= switch_radius || z.imag() >= 2.0) {
        C t = 0.0;
        for (int k = 200; k >= 1; --k) t = (0.5 * k) / (z - t);
        return C(0.0, inv_sqrt_pi) / (z - t);
    }
    return std::exp(-z * z) + C(0.0, 2.0 * inv_sqrt_pi) * std::exp(-z * z) * detail::erfi_series(z);
}

// erfi of a complex argument, from w(z) = exp(-z^2)(1 + i erfi z) outside the
// switch radius.
inline std::complex<double> erfi(std::complex<double> z) {
    using C = std::complex<double>;
    if (std::abs(z) < switch_radius) return 2.0 / std::sqrt(std::numbers::pi) * detail::erfi_series(z);
    return (std::exp(z * z) * faddeeva(z) - 1.0) / C(0.0, 1.0);
}

}  // namespace thermocrack::special
