#pragma once

// Piecewise-linear lifting wavelets on the unit interval.
//
// Scaling functions are hats phi_0k(x) = Lambda(x - k), k = 0, 1, and the
// wavelet is psi(x) = Lambda(2x - 1) - Lambda(x)/4 - Lambda(x - 1)/4, with
// Lambda(x) = max(0, 1 - |x|). A decomposition with J detail levels
// represents
//
//   g(x) = l0 Lambda(x) + l1 Lambda(x - 1) + sum_{j<J} sum_k d_jk psi(2^j x - k)
//
// and is exactly the piecewise-linear interpolant of g on the grid k 2^-J.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace hankelwave::wavelet {

double hat(double x);
double mother_wavelet(double x);

/// Samples of g on the uniform grid of [0, 1] with 2^max_level + 1 points.
/// domain_scale is the length R of the original interval [0, R].
class SampledFunction {
public:
    SampledFunction(std::vector<double> values, double domain_scale = 1.0);

    /// Samples g at 2^level + 1 uniform points of [0, 1].
    static SampledFunction from_function(const std::function<double(double)>& g, int level,
                                         double domain_scale = 1.0);

    const std::vector<double>& values() const { return values_; }
    int max_level() const { return max_level_; }
    double domain_scale() const { return domain_scale_; }

private:
    std::vector<double> values_;
    int max_level_ = 0;
    double domain_scale_ = 1.0;
};

class PiecewiseLinearFunction {
public:
    PiecewiseLinearFunction(std::vector<double> breakpoints, std::vector<double> values,
                            double domain_scale = 1.0);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    double domain_scale() const { return domain_scale_; }
    std::size_t size() const { return values_.size(); }

    /// Linear interpolation; x must lie in [0, 1].
    double operator()(double x) const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    double domain_scale_ = 1.0;
};

/// Coarse coefficients (l0, l1) plus details[j][k] for j = 0..levels()-1,
/// with details[j].size() == 2^j.
class WaveletDecomposition {
public:
    WaveletDecomposition(double coarse0, double coarse1, std::vector<std::vector<double>> details,
                         double domain_scale = 1.0);

    /// All-zero decomposition with the given number of detail levels.
    static WaveletDecomposition zeros(int levels, double domain_scale = 1.0);

    double coarse(int k) const { return coarse_[static_cast<std::size_t>(k)]; }
    const std::vector<std::vector<double>>& details() const { return details_; }
    std::span<const double> level(int j) const { return details_[static_cast<std::size_t>(j)]; }
    int levels() const { return static_cast<int>(details_.size()); }
    double domain_scale() const { return domain_scale_; }

    /// Number of detail coefficients, sum of 2^j.
    std::size_t detail_count() const;

    /// Keeps detail levels 0..finest_level and drops the rest.
    WaveletDecomposition truncated(int finest_level) const;

    /// a * this + b * other; both must have the same shape.
    WaveletDecomposition combined(double a, const WaveletDecomposition& other, double b) const;

private:
    double coarse_[2];
    std::vector<std::vector<double>> details_;
    double domain_scale_ = 1.0;
};

struct ThresholdReport {
    double epsilon = 0.0;
    std::size_t discarded_count = 0;
    std::size_t kept_count = 0;
    double discarded_sq_sum = 0.0;
    double delta_bound = 0.0;  // epsilon * sqrt(discarded_count)
};

struct ThresholdResult {
    WaveletDecomposition decomposition;
    ThresholdReport report;
};

/// Forward lifting transform, finest level first.
WaveletDecomposition decompose(const SampledFunction& samples);

/// Inverse lifting transform back to grid values (2^levels + 1 of them).
std::vector<double> reconstruct_samples(const WaveletDecomposition& dec);

/// Adds whole levels, sampling g at the new midpoints, while any detail at
/// the newest level exceeds tol in magnitude. max_level is the finest detail
/// level allowed, so at most 2^(max_level+1) + 1 samples are taken.
WaveletDecomposition decompose_adaptive(const std::function<double(double)>& g, int max_level,
                                        double tol, double domain_scale = 1.0);

/// Direct evaluation of the series at x in [0, 1].
double synthesize(const WaveletDecomposition& dec, double x);

/// Zeroes every detail with |d| <= epsilon. Coarse coefficients are kept.
ThresholdResult threshold(const WaveletDecomposition& dec, double epsilon);

PiecewiseLinearFunction to_piecewise_linear(const WaveletDecomposition& dec);

/// L2 norm over [0, 1] of the difference of two decompositions' synthesis.
double l2_distance(const WaveletDecomposition& a, const WaveletDecomposition& b);

/// L2 norm over [0, 1] of a piecewise-linear function (exact).
double l2_norm(const PiecewiseLinearFunction& f);

// Coefficient dump: CSV "kind,level,index,value", 17 significant digits.
// Coarse rows use level 0 and index 0 or 1.
void write_coefficients(std::ostream& out, const WaveletDecomposition& dec);
WaveletDecomposition read_coefficients(std::istream& in, double domain_scale = 1.0);

}  // namespace hankelwave::wavelet
