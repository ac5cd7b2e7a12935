#include "hankelwave/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hankelwave::wavelet {

namespace {

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Returns J if n == 2^J + 1, otherwise -1.
int dyadic_level(std::size_t n)
{
    if (n < 2) return -1;
    const std::size_t m = n - 1;
    if ((m & (m - 1)) != 0) return -1;
    int j = 0;
    while ((std::size_t{1} << j) < m) ++j;
    return j;
}

// One analysis step: fine grid values (2^(j+1) + 1) -> coarse values
// (2^j + 1) and level-j details (2^j).
void lift_forward(const std::vector<double>& fine, std::vector<double>& coarse,
                  std::vector<double>& detail)
{
    const std::size_t n = (fine.size() - 1) / 2;
    detail.assign(n, 0.0);
    coarse.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        detail[k] = fine[2 * k + 1] - 0.5 * (fine[2 * k] + fine[2 * k + 2]);
    }
    for (std::size_t k = 0; k <= n; ++k) {
        double update = 0.0;
        if (k > 0) update += detail[k - 1];
        if (k < n) update += detail[k];
        coarse[k] = fine[2 * k] + 0.25 * update;
    }
}

void lift_inverse(const std::vector<double>& coarse, std::span<const double> detail,
                  std::vector<double>& fine)
{
    const std::size_t n = detail.size();
    fine.assign(2 * n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        double update = 0.0;
        if (k > 0) update += detail[k - 1];
        if (k < n) update += detail[k];
        fine[2 * k] = coarse[k] - 0.25 * update;
    }
    for (std::size_t k = 0; k < n; ++k) {
        fine[2 * k + 1] = detail[k] + 0.5 * (fine[2 * k] + fine[2 * k + 2]);
    }
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

WaveletDecomposition padded(const WaveletDecomposition& dec, int levels)
{
    auto details = dec.details();
    for (int j = dec.levels(); j < levels; ++j) details.emplace_back(std::size_t{1} << j, 0.0);
    return {dec.coarse(0), dec.coarse(1), std::move(details), dec.domain_scale()};
}

}  // namespace

double hat(double x) { return std::max(0.0, 1.0 - std::abs(x)); }

double mother_wavelet(double x) { return hat(2.0 * x - 1.0) - 0.25 * hat(x) - 0.25 * hat(x - 1.0); }

SampledFunction::SampledFunction(std::vector<double> values, double domain_scale)
    : values_(std::move(values)), domain_scale_(domain_scale)
{
    max_level_ = dyadic_level(values_.size());
    if (max_level_ < 0) {
        throw std::invalid_argument("SampledFunction: expected 2^J + 1 samples, got "
                                    + std::to_string(values_.size()));
    }
    if (!all_finite(values_)) throw std::invalid_argument("SampledFunction: non-finite sample");
    if (!(domain_scale_ > 0.0) || !std::isfinite(domain_scale_)) {
        throw std::invalid_argument("SampledFunction: domain_scale must be positive");
    }
}

SampledFunction SampledFunction::from_function(const std::function<double(double)>& g, int level,
                                               double domain_scale)
{
    if (level < 0 || level > 30) throw std::invalid_argument("SampledFunction: bad level");
    const std::size_t n = std::size_t{1} << level;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = g(static_cast<double>(i) / static_cast<double>(n));
    return {std::move(values), domain_scale};
}

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<double> breakpoints,
                                                 std::vector<double> values, double domain_scale)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)), domain_scale_(domain_scale)
{
    if (breakpoints_.size() < 2 || breakpoints_.size() != values_.size()) {
        throw std::invalid_argument("PiecewiseLinearFunction: need matching breakpoints and values");
    }
    if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw std::invalid_argument("PiecewiseLinearFunction: breakpoints must span [0, 1]");
    }
    if (std::adjacent_find(breakpoints_.begin(), breakpoints_.end(), std::greater_equal<>())
        != breakpoints_.end()) {
        throw std::invalid_argument("PiecewiseLinearFunction: breakpoints must be strictly increasing");
    }
    if (!all_finite(values_)) throw std::invalid_argument("PiecewiseLinearFunction: non-finite value");
    if (!(domain_scale_ > 0.0) || !std::isfinite(domain_scale_)) {
        throw std::invalid_argument("PiecewiseLinearFunction: domain_scale must be positive");
    }
}

double PiecewiseLinearFunction::operator()(double x) const
{
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("PiecewiseLinearFunction: x outside [0, 1]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.end()) return values_.back();
    const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    const double t = (x - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

WaveletDecomposition::WaveletDecomposition(double coarse0, double coarse1,
                                           std::vector<std::vector<double>> details,
                                           double domain_scale)
    : coarse_{coarse0, coarse1}, details_(std::move(details)), domain_scale_(domain_scale)
{
    if (!std::isfinite(coarse0) || !std::isfinite(coarse1)) {
        throw std::invalid_argument("WaveletDecomposition: non-finite coarse coefficient");
    }
    for (std::size_t j = 0; j < details_.size(); ++j) {
        if (details_[j].size() != (std::size_t{1} << j)) {
            throw std::invalid_argument("WaveletDecomposition: level " + std::to_string(j)
                                        + " must hold 2^" + std::to_string(j) + " coefficients");
        }
        if (!all_finite(details_[j])) {
            throw std::invalid_argument("WaveletDecomposition: non-finite detail coefficient");
        }
    }
    if (!(domain_scale_ > 0.0) || !std::isfinite(domain_scale_)) {
        throw std::invalid_argument("WaveletDecomposition: domain_scale must be positive");
    }
}

WaveletDecomposition WaveletDecomposition::zeros(int levels, double domain_scale)
{
    return padded(WaveletDecomposition(0.0, 0.0, {}, domain_scale), levels);
}

std::size_t WaveletDecomposition::detail_count() const
{
    return (std::size_t{1} << details_.size()) - 1;
}

WaveletDecomposition WaveletDecomposition::truncated(int finest_level) const
{
    const auto keep = static_cast<std::size_t>(std::clamp(finest_level + 1, 0, levels()));
    std::vector<std::vector<double>> kept(details_.begin(), details_.begin() + static_cast<std::ptrdiff_t>(keep));
    return {coarse_[0], coarse_[1], std::move(kept), domain_scale_};
}

WaveletDecomposition WaveletDecomposition::combined(double a, const WaveletDecomposition& other,
                                                    double b) const
{
    if (other.levels() != levels()) {
        throw std::invalid_argument("WaveletDecomposition::combined: level mismatch");
    }
    auto details = details_;
    for (std::size_t j = 0; j < details.size(); ++j) {
        for (std::size_t k = 0; k < details[j].size(); ++k) {
            details[j][k] = a * details[j][k] + b * other.details_[j][k];
        }
    }
    return {a * coarse_[0] + b * other.coarse_[0], a * coarse_[1] + b * other.coarse_[1],
            std::move(details), domain_scale_};
}

WaveletDecomposition decompose(const SampledFunction& samples)
{
    const int levels = samples.max_level();
    std::vector<std::vector<double>> details(static_cast<std::size_t>(levels));
    std::vector<double> current = samples.values();
    std::vector<double> coarse;
    for (int j = levels - 1; j >= 0; --j) {
        lift_forward(current, coarse, details[static_cast<std::size_t>(j)]);
        current.swap(coarse);
    }
    return {current[0], current[1], std::move(details), samples.domain_scale()};
}

std::vector<double> reconstruct_samples(const WaveletDecomposition& dec)
{
    std::vector<double> current{dec.coarse(0), dec.coarse(1)};
    std::vector<double> fine;
    for (int j = 0; j < dec.levels(); ++j) {
        lift_inverse(current, dec.level(j), fine);
        current.swap(fine);
    }
    return current;
}

WaveletDecomposition decompose_adaptive(const std::function<double(double)>& g, int max_level,
                                        double tol, double domain_scale)
{
    if (max_level < 0 || max_level > 29) {
        throw std::invalid_argument("decompose_adaptive: max_level out of range");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("decompose_adaptive: tol must be positive");

    auto eval = [&g](double x) {
        const double v = g(x);
        if (!std::isfinite(v)) {
            throw std::runtime_error("decompose_adaptive: non-finite function value at x = "
                                     + std::to_string(x));
        }
        return v;
    };

    std::vector<double> values{eval(0.0), eval(0.5), eval(1.0)};
    for (;;) {
        auto dec = decompose(SampledFunction(values, domain_scale));
        const int newest = dec.levels() - 1;
        const auto level = dec.level(newest);
        const bool resolved = std::all_of(level.begin(), level.end(),
                                          [tol](double d) { return std::abs(d) <= tol; });
        if (resolved || newest >= max_level) return dec;

        // Insert samples at the midpoints of the current grid.
        const std::size_t n = values.size() - 1;
        std::vector<double> refined(2 * n + 1);
        for (std::size_t i = 0; i <= n; ++i) refined[2 * i] = values[i];
        for (std::size_t i = 0; i < n; ++i) {
            refined[2 * i + 1] = eval((2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
        }
        values.swap(refined);
    }
}

double synthesize(const WaveletDecomposition& dec, double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("synthesize: x outside [0, 1]");
    double sum = dec.coarse(0) * hat(x) + dec.coarse(1) * hat(x - 1.0);
    for (int j = 0; j < dec.levels(); ++j) {
        const auto level = dec.level(j);
        const double y = std::ldexp(x, j);
        // psi is supported on [-1, 2].
        const auto last = static_cast<long>(level.size()) - 1;
        const long lo = std::max(0L, static_cast<long>(std::floor(y)) - 2);
        const long hi = std::min(last, static_cast<long>(std::floor(y)) + 1);
        for (long k = lo; k <= hi; ++k) {
            sum += level[static_cast<std::size_t>(k)] * mother_wavelet(y - static_cast<double>(k));
        }
    }
    return sum;
}

ThresholdResult threshold(const WaveletDecomposition& dec, double epsilon)
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw std::domain_error("threshold: epsilon must be finite and non-negative");
    }
    ThresholdReport report;
    report.epsilon = epsilon;
    auto details = dec.details();
    for (auto& level : details) {
        for (double& d : level) {
            if (std::abs(d) <= epsilon) {
                ++report.discarded_count;
                report.discarded_sq_sum += d * d;
                d = 0.0;
            } else {
                ++report.kept_count;
            }
        }
    }
    report.delta_bound = epsilon * std::sqrt(static_cast<double>(report.discarded_count));
    return {WaveletDecomposition(dec.coarse(0), dec.coarse(1), std::move(details), dec.domain_scale()),
            report};
}

PiecewiseLinearFunction to_piecewise_linear(const WaveletDecomposition& dec)
{
    auto values = reconstruct_samples(dec);
    const std::size_t n = values.size() - 1;
    std::vector<double> breakpoints(n + 1);
    for (std::size_t i = 0; i <= n; ++i) breakpoints[i] = static_cast<double>(i) / static_cast<double>(n);
    return {std::move(breakpoints), std::move(values), dec.domain_scale()};
}

double l2_norm(const PiecewiseLinearFunction& f)
{
    const auto& x = f.breakpoints();
    const auto& v = f.values();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = v[i];
        const double b = v[i + 1];
        sum += (x[i + 1] - x[i]) * (a * a + a * b + b * b) / 3.0;
    }
    return std::sqrt(sum);
}

double l2_distance(const WaveletDecomposition& a, const WaveletDecomposition& b)
{
    const int levels = std::max(a.levels(), b.levels());
    const auto diff = padded(a, levels).combined(1.0, padded(b, levels), -1.0);
    return l2_norm(to_piecewise_linear(diff));
}

void write_coefficients(std::ostream& out, const WaveletDecomposition& dec)
{
    out << "kind,level,index,value\n";
    for (int k = 0; k < 2; ++k) out << "coarse,0," << k << ',' << format_double(dec.coarse(k)) << '\n';
    for (int j = 0; j < dec.levels(); ++j) {
        const auto level = dec.level(j);
        for (std::size_t k = 0; k < level.size(); ++k) {
            out << "detail," << j << ',' << k << ',' << format_double(level[k]) << '\n';
        }
    }
}

WaveletDecomposition read_coefficients(std::istream& in, double domain_scale)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("kind,level,index,value", 0) != 0) {
        throw std::runtime_error("coefficient dump: missing header 'kind,level,index,value'");
    }
    double coarse[2] = {0.0, 0.0};
    bool have_coarse[2] = {false, false};
    std::vector<std::vector<double>> details;
    std::vector<std::vector<bool>> seen;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string kind, level_s, index_s, value_s;
        if (!std::getline(fields, kind, ',') || !std::getline(fields, level_s, ',')
            || !std::getline(fields, index_s, ',') || !std::getline(fields, value_s)) {
            throw std::runtime_error("coefficient dump: malformed row " + std::to_string(row));
        }
        long level = 0;
        long index = 0;
        double value = 0.0;
        try {
            std::size_t used = 0;
            level = std::stol(level_s, &used);
            if (used != level_s.size()) throw std::invalid_argument("level");
            index = std::stol(index_s, &used);
            if (used != index_s.size()) throw std::invalid_argument("index");
            value = std::stod(value_s, &used);
            if (used != value_s.size()) throw std::invalid_argument("value");
        } catch (const std::exception&) {
            throw std::runtime_error("coefficient dump: bad number on row " + std::to_string(row));
        }
        if (kind == "coarse") {
            if (level != 0 || index < 0 || index > 1) {
                throw std::runtime_error("coefficient dump: bad coarse entry on row " + std::to_string(row));
            }
            coarse[index] = value;
            have_coarse[index] = true;
        } else if (kind == "detail") {
            if (level < 0 || level > 30 || index < 0 || index >= (1L << level)) {
                throw std::runtime_error("coefficient dump: bad detail entry on row " + std::to_string(row));
            }
            while (details.size() <= static_cast<std::size_t>(level)) {
                details.emplace_back(std::size_t{1} << details.size(), 0.0);
                seen.emplace_back(details.back().size(), false);
            }
            details[static_cast<std::size_t>(level)][static_cast<std::size_t>(index)] = value;
            seen[static_cast<std::size_t>(level)][static_cast<std::size_t>(index)] = true;
        } else {
            throw std::runtime_error("coefficient dump: unknown kind '" + kind + "' on row "
                                     + std::to_string(row));
        }
    }
    if (!have_coarse[0] || !have_coarse[1]) {
        throw std::runtime_error("coefficient dump: missing coarse coefficients");
    }
    for (const auto& level : seen) {
        if (std::find(level.begin(), level.end(), false) != level.end()) {
            throw std::runtime_error("coefficient dump: incomplete detail level");
        }
    }
    return {coarse[0], coarse[1], std::move(details), domain_scale};
}

}  // namespace hankelwave::wavelet
