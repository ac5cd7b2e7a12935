#pragma once

// Bessel functions J0, J1, Struve functions H0, H1 and the primitive
// integrals of J0, J1, t*J0 and t*J1, for real non-negative arguments.
//
// Small arguments use the ascending power series. Large arguments use the
// Hankel asymptotic expansion for J and Y together with H_nu = Y_nu + K_nu,
// where K_nu is obtained from its Laplace-integral representation.

namespace hankelwave::specfun {

struct SpecFunConfig {
    // Arguments at or below this use power series.
    double series_cutoff = 12.0;
    double target_rel_err = 1e-10;

    // Throws std::invalid_argument if a field is out of range.
    void validate() const;
};

double bessel_j0(double x, const SpecFunConfig& cfg = {});
double bessel_j1(double x, const SpecFunConfig& cfg = {});

double struve_h0(double x, const SpecFunConfig& cfg = {});
double struve_h1(double x, const SpecFunConfig& cfg = {});

/// D(x) = H0(x) J1(x) - H1(x) J0(x).
///
/// Above the series cutoff this is evaluated as
/// K0 J1 - K1 J0 + 2/(pi x), which avoids subtracting two O(x^-1/2)
/// oscillating products to obtain an O(1/x) result.
double struve_bessel_d(double x, const SpecFunConfig& cfg = {});

/// Integral of J0(t) over [0, z]: z J0(z) + (pi z / 2) D(z).
double integral_j0(double z, const SpecFunConfig& cfg = {});

/// Integral of t J1(t) over [0, z]: (pi z / 2) D(z).
double integral_t_j1(double z, const SpecFunConfig& cfg = {});

/// Integral of t J0(t) over [0, z]: z J1(z).
double integral_t_j0(double z, const SpecFunConfig& cfg = {});

/// Integral of J1(t) over [0, z]: 1 - J0(z), without cancellation for small z.
double integral_j1(double z, const SpecFunConfig& cfg = {});

}  // namespace hankelwave::specfun
