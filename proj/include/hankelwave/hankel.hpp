#pragma once

// Hankel transforms of order 0 and 1,
//
//   F_n(p) = int_0^R g(r) J_n(p r) dr,   g(r) = f(r) r,
//
// for g piecewise linear on [0, R]. Every linear piece alpha + beta r is
// integrated exactly against J_n using the primitives of J0, J1, t J0 and
// t J1, so the transform of a piecewise-linear function is a finite sum.
// Functions are held in unit coordinates r* = r / R, and
// F_n(p) = R F*_n(R p).

#include <cstddef>
#include <utility>
#include <vector>

#include "hankelwave/specfun.hpp"
#include "hankelwave/wavelet.hpp"

namespace hankelwave::hankel {

enum class Order { zero = 0, one = 1 };

/// Parses 0 or 1; anything else throws std::invalid_argument.
Order order_from_int(int n);

struct TransformRequest {
    Order order = Order::zero;
    std::vector<double> p_grid;  // physical units, non-negative, strictly increasing
    double domain_scale = 1.0;

    void validate() const;
};

struct TransformMetadata {
    int levels = 0;
    double epsilon = 0.0;
    std::size_t discarded_count = 0;
};

struct TransformResult {
    std::vector<double> p_grid;
    std::vector<double> values;
    Order order = Order::zero;
    TransformMetadata metadata;
};

/// int_{r1}^{r2} L(r) J_order(p r) dr for the line L through (r1, v1), (r2, v2).
double segment_integral(Order order, double r1, double r2, double v1, double v2, double p,
                        const specfun::SpecFunConfig& cfg = {});

TransformResult transform_piecewise_linear(const wavelet::PiecewiseLinearFunction& pl,
                                           const TransformRequest& req,
                                           const specfun::SpecFunConfig& cfg = {});

/// Sums d_jk times the transform of each basis function. Agrees with
/// transform_piecewise_linear(to_piecewise_linear(dec), req).
TransformResult transform_decomposition(const wavelet::WaveletDecomposition& dec,
                                        const TransformRequest& req,
                                        const specfun::SpecFunConfig& cfg = {});

struct RescaledTransform {
    std::vector<double> p_grid;
    std::vector<double> values;
};

/// Maps a transform of g*(r*) = g(R r*) back to the physical variable:
/// p = p* / R, F(p) = R F*(p*).
RescaledTransform rescale_transform(const std::vector<double>& unit_values,
                                    const std::vector<double>& p_grid_unit, double domain_scale);

}  // namespace hankelwave::hankel
