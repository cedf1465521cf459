#pragma once

// Test-only oracles, derived independently of the library implementation.

#include <cmath>
#include <complex>

namespace oracles {

using Complex = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// Hyperbolic density of the upper half plane (curvature -1): 1/Im.
inline double half_plane_density(Complex zeta) { return 1.0 / zeta.imag(); }

// Annulus density at z via the explicit covering chain
//   half-plane --exp/log--> strip --exp--> annulus,
// with the derivative of the chart map taken by central differences, so the
// only analytic input is the half-plane density.
inline double annulus_density_via_cover(double r, double R, Complex z) {
    const double L = std::log(R / r);
    const Complex w = std::log(z); // strip coordinate, Re in (log r, log R)
    auto zeta_of = [&](Complex ww) {
        return std::exp(Complex(0, 1) * kPi * (ww - std::log(r)) / L);
    };
    const double eps = 1e-6;
    const Complex dz = (zeta_of(w + eps) - zeta_of(w - eps)) / (2.0 * eps);
    const double lam_strip = half_plane_density(zeta_of(w)) * std::abs(dz);
    return lam_strip / std::abs(z); // |d(e^w)/dw| = |z|
}

// Disc density via the Cayley transform from the half plane, derivative by
// central differences.
inline double disc_density_via_cover(Complex z) {
    // zeta in H with phi(zeta) = (zeta - i)/(zeta + i) = z  =>  zeta = i(1+z)/(1-z)
    const Complex i(0, 1);
    const Complex zeta = i * (1.0 + z) / (1.0 - z);
    auto phi = [&](Complex zz) { return (zz - i) / (zz + i); };
    const double eps = 1e-6;
    const Complex d = (phi(zeta + eps) - phi(zeta - eps)) / (2.0 * eps);
    return half_plane_density(zeta) / std::abs(d);
}

// Hyperbolic distance from 0 to t in the unit disc: 2 artanh(t).
inline double disc_radial_distance(double t) { return 2.0 * std::atanh(t); }

// Radial hyperbolic distance in A(0, r, R) from |z| = a to |z| = b, by
// Simpson quadrature of the closed-form density (the geodesic between the
// circles is radial by symmetry).
inline double annulus_radial_distance(double r, double R, double a, double b) {
    const double L = std::log(R / r);
    auto lam = [&](double rho) { return (kPi / L) / (rho * std::sin(kPi * std::log(rho / r) / L)); };
    const int n = 2000;
    double s = lam(a) + lam(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * lam(a + (b - a) * k / n);
    return s * (b - a) / (3.0 * n);
}

// Modulus parameter lambda^1 of the eccentric annulus D(0,1) minus the closed
// disc about c (real, c >= 0) of radius rho, via the Moebius map that makes
// the two circles concentric.
inline double eccentric_annulus_lambda1(double c, double rho) {
    if (c == 0.0) return std::log(1.0 / rho);
    const double q = 1.0 + c * c - rho * rho;
    const double a = (q - std::sqrt(q * q - 4.0 * c * c)) / (2.0 * c);
    const double rstar = std::abs((c + rho - a) / (1.0 - a * (c + rho)));
    return std::log(1.0 / rstar);
}

} // namespace oracles
