// Independent references for the impedance integrals: sine/cosine integrals,
// the classical induced-EMF closed forms for parallel half-wave dipoles, and
// the spherical-component field of an infinitesimal dipole. Everything here
// is computed without touching the library's quadrature path.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace emf_reference {

using Complex = std::complex<double>;

inline constexpr double kEta0 = 376.730313668;
inline constexpr double kEulerGamma = 0.5772156649015328606;

/// E1(z) for Re(z) >= 0, z != 0: power series for small |z|, modified Lentz
/// continued fraction otherwise.
inline Complex expint_e1(Complex z) {
    const double az = std::abs(z);
    if (az == 0.0) throw std::invalid_argument("expint_e1: z = 0");
    if (az <= 4.0) {
        Complex sum = 0.0;
        Complex term = 1.0;
        for (int n = 1; n <= 80; ++n) {
            term *= -z / static_cast<double>(n);
            sum += term / static_cast<double>(n);
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return -kEulerGamma - std::log(z) - sum;
    }
    // e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
    const Complex tiny(1e-300, 0.0);
    Complex f = tiny;
    Complex c = f;
    Complex d = 0.0;
    for (int n = 0; n < 200; ++n) {
        const Complex a_n = n == 0 ? Complex(1.0) : Complex(-static_cast<double>(n * n));
        const Complex b_n = z + static_cast<double>(2 * n + 1);
        d = b_n + a_n * d;
        if (d == Complex(0.0)) d = tiny;
        c = b_n + a_n / c;
        if (c == Complex(0.0)) c = tiny;
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-z) * f;
}

inline double cosine_integral(double x) {
    return -expint_e1(Complex(0.0, x)).real();
}

inline double sine_integral(double x) {
    return std::numbers::pi / 2.0 + expint_e1(Complex(0.0, x)).imag();
}

/// Mutual impedance of two parallel side-by-side half-wave dipoles with
/// sinusoidal currents, center separation d, wavelength lambda.
inline Complex mutual_halfwave_sidebyside(double d, double lambda) {
    const double k = 2.0 * std::numbers::pi / lambda;
    const double l = lambda / 2.0;
    const double u0 = k * d;
    const double u1 = k * (std::sqrt(d * d + l * l) + l);
    const double u2 = k * (std::sqrt(d * d + l * l) - l);
    const double r = kEta0 / (4.0 * std::numbers::pi) *
                     (2.0 * cosine_integral(u0) - cosine_integral(u1) - cosine_integral(u2));
    const double x = -kEta0 / (4.0 * std::numbers::pi) *
                     (2.0 * sine_integral(u0) - sine_integral(u1) - sine_integral(u2));
    return {r, x};
}

/// Self impedance of a half-wave dipole of radius a: the same closed form
/// with the separation regularized to the radius.
inline Complex self_halfwave(double a, double lambda) {
    return mutual_halfwave_sidebyside(a, lambda);
}

/// E_z of an infinitesimal z-directed dipole of unit current moment, built
/// from the textbook spherical components E_r and E_theta.
inline Complex dipole_ez_spherical(double delta_rho, double delta_z, double k) {
    const double r = std::hypot(delta_rho, delta_z);
    const double ct = delta_z / r;
    const double st = delta_rho / r;
    const Complex jkr(0.0, k * r);
    const Complex phase = std::exp(-jkr);
    const Complex e_r =
        kEta0 * ct / (2.0 * std::numbers::pi * r * r) * (1.0 + 1.0 / jkr) * phase;
    const Complex e_theta = Complex(0.0, 1.0) * kEta0 * k * st /
                            (4.0 * std::numbers::pi * r) *
                            (1.0 + 1.0 / jkr - 1.0 / ((k * r) * (k * r))) * phase;
    return e_r * ct - e_theta * st;
}

}  // namespace emf_reference
