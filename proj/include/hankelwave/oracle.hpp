#pragma once

// Reference implementations used to check the fast path: adaptive
// Gauss-Kronrod quadrature for Hankel-type integrals, Bessel kernels from
// Miller's downward recurrence, and extended-precision power series for
// J0, J1, H0, H1. Nothing here calls into hankelwave::specfun.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace hankelwave::oracle {

struct QuadratureConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_subdivisions = 200000;
    int panels_per_oscillation = 4;

    void validate() const;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound)
    {}

    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive G7/K15 quadrature of f over [a, b]. The interval is
/// first cut into initial_panels equal pieces and at every split point.
/// Throws ConvergenceError when max(abs_tol, rel_tol |I|) is not reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg, int initial_panels = 1,
                           std::span<const double> splits = {});

/// int_0^R g(r) J_order(p r) dr, with panels no wider than
/// (2 pi / p) / panels_per_oscillation. Points in splits (within (0, R))
/// become panel boundaries.
double quadrature_hankel(const std::function<double(double)>& g, double domain_scale, int order,
                         double p, const QuadratureConfig& cfg = {},
                         std::span<const double> splits = {});

/// (J0(x), J1(x)) by Miller's backward recurrence, for any x >= 0.
std::pair<double, double> bessel_j01_recurrence(double x);

enum class Function { j0, j1, h0, h1 };

/// 60-term ascending series in 50-digit arithmetic, rounded to double.
/// x must lie in [0, 30].
double reference_specfun(Function name, double x);

/// Quadrature of the Poisson/Struve integral representations, any x >= 0.
double reference_specfun_integral(Function name, double x);

}  // namespace hankelwave::oracle
