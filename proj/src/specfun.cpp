#include "hankelwave/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hankelwave::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_over_pi = 2.0 / std::numbers::pi;
constexpr int max_series_terms = 60;

void check_argument(double x, const char* who)
{
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error(std::string(who) + ": argument must be finite and non-negative, got "
                                + std::to_string(x));
    }
}

// Sums term_0 + term_1 + ... where term_{k+1} = term_k * ratio(k).
// Stops once the next term drops below target * |partial sum|, after the
// terms have started to decrease, or after max_series_terms terms.
template <typename Ratio>
double power_series(double first, Ratio ratio, double target)
{
    double sum = first;
    double term = first;
    for (int k = 0; k + 1 < max_series_terms; ++k) {
        const double r = ratio(k);
        term *= r;
        sum += term;
        if (std::abs(r) < 1.0 && std::abs(term) <= target * std::abs(sum)) break;
    }
    return sum;
}

double j0_series(double x, double target)
{
    const double q = 0.25 * x * x;
    return power_series(1.0, [q](int k) { return -q / ((k + 1.0) * (k + 1.0)); }, target);
}

double j1_series(double x, double target)
{
    const double q = 0.25 * x * x;
    return power_series(0.5 * x, [q](int k) { return -q / ((k + 1.0) * (k + 2.0)); }, target);
}

// 1 - J0(x), summed from the k = 1 term so small x loses nothing.
double one_minus_j0_series(double x, double target)
{
    const double q = 0.25 * x * x;
    return power_series(q, [q](int k) { return -q / ((k + 2.0) * (k + 2.0)); }, target);
}

double h0_series(double x, double target)
{
    const double q = 0.25 * x * x;
    return power_series(two_over_pi * x, [q](int k) { return -q / ((k + 1.5) * (k + 1.5)); },
                        target);
}

double h1_series(double x, double target)
{
    const double q = 0.25 * x * x;
    return power_series(2.0 * x * x / (3.0 * pi), [q](int k) { return -q / ((k + 1.5) * (k + 2.5)); },
                        target);
}

struct BesselPair {
    double j;
    double y;
};

// Hankel asymptotic expansion of J_nu and Y_nu (nu = 0 or 1), truncated at
// the smallest term.
BesselPair bessel_asymptotic(int nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double b = 1.0;
    for (int k = 1; k < 2 * max_series_terms; ++k) {
        const double next = b * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(b)) break;
        b = next;
        // b_k enters P for even k and Q for odd k, with alternating signs
        // inside each.
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * b;
        } else {
            q += sign * b;
        }
        if (std::abs(b) < 1e-17) break;
    }

    // chi = x - (2 nu + 1) pi / 4, expanded to avoid rounding in x - pi/4.
    const double c = std::cos(x);
    const double s = std::sin(x);
    double cos_chi, sin_chi;
    if (nu == 0) {
        cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
        sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
    } else {
        cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
        sin_chi = -(s + c) * std::numbers::sqrt2 * 0.5;
    }
    const double amp = std::sqrt(two_over_pi / x);
    return {amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)};
}

// Nodes of the exp-exp rule for integrals of e^{-u} f(u) over [0, inf):
// u = exp(t - exp(-t)), trapezoid in t with step 1/8 on [-4.5, 4].
struct LaplaceRule {
    static constexpr int size = 69;
    std::array<double, size> u{};
    std::array<double, size> w{};  // includes e^{-u}, du/dt and the step

    LaplaceRule()
    {
        constexpr double h = 0.125;
        for (int i = 0; i < size; ++i) {
            const double t = -4.5 + h * i;
            const double et = std::exp(-t);
            u[i] = std::exp(t - et);
            w[i] = h * std::exp(-u[i]) * u[i] * (1.0 + et);
        }
    }
};

const LaplaceRule& laplace_rule()
{
    static const LaplaceRule rule;
    return rule;
}

// K_nu = H_nu - Y_nu for x > 0 from
//   K0(x) = 2/(pi x) int_0^inf e^{-u} (1 + (u/x)^2)^{-1/2} du
//   K1(x) = 2/pi     int_0^inf e^{-u} (1 + (u/x)^2)^{1/2}  du.
// k1_excess is K1 - 2/pi, summed directly.
struct StruveK {
    double k0;
    double k1_excess;
};

StruveK struve_k(double x)
{
    const auto& rule = laplace_rule();
    double s0 = 0.0;
    double s1 = 0.0;
    for (int i = 0; i < LaplaceRule::size; ++i) {
        const double v = rule.u[i] / x;
        const double root = std::sqrt(1.0 + v * v);
        s0 += rule.w[i] / root;
        s1 += rule.w[i] * (v * v / (root + 1.0));
    }
    return {two_over_pi * s0 / x, two_over_pi * s1};
}

bool use_series(double x, const SpecFunConfig& cfg) { return x <= cfg.series_cutoff; }

}  // namespace

void SpecFunConfig::validate() const
{
    if (!(series_cutoff > 0.0) || !std::isfinite(series_cutoff)) {
        throw std::invalid_argument("SpecFunConfig: series_cutoff must be positive");
    }
    if (!(target_rel_err > 0.0 && target_rel_err < 1e-6)) {
        throw std::invalid_argument("SpecFunConfig: target_rel_err must lie in (0, 1e-6)");
    }
}

double bessel_j0(double x, const SpecFunConfig& cfg)
{
    check_argument(x, "bessel_j0");
    cfg.validate();
    if (use_series(x, cfg)) return j0_series(x, cfg.target_rel_err);
    return bessel_asymptotic(0, x).j;
}

double bessel_j1(double x, const SpecFunConfig& cfg)
{
    check_argument(x, "bessel_j1");
    cfg.validate();
    if (use_series(x, cfg)) return j1_series(x, cfg.target_rel_err);
    return bessel_asymptotic(1, x).j;
}

double struve_h0(double x, const SpecFunConfig& cfg)
{
    check_argument(x, "struve_h0");
    cfg.validate();
    if (use_series(x, cfg)) return h0_series(x, cfg.target_rel_err);
    return bessel_asymptotic(0, x).y + struve_k(x).k0;
}

double struve_h1(double x, const SpecFunConfig& cfg)
{
    check_argument(x, "struve_h1");
    cfg.validate();
    if (use_series(x, cfg)) return h1_series(x, cfg.target_rel_err);
    return bessel_asymptotic(1, x).y + two_over_pi + struve_k(x).k1_excess;
}

double struve_bessel_d(double x, const SpecFunConfig& cfg)
{
    check_argument(x, "struve_bessel_d");
    cfg.validate();
    if (use_series(x, cfg)) {
        const double t = cfg.target_rel_err;
        return h0_series(x, t) * j1_series(x, t) - h1_series(x, t) * j0_series(x, t);
    }
    const BesselPair b0 = bessel_asymptotic(0, x);
    const BesselPair b1 = bessel_asymptotic(1, x);
    const StruveK k = struve_k(x);
    // Wronskian: J1 Y0 - J0 Y1 = 2 / (pi x).
    return k.k0 * b1.j - (two_over_pi + k.k1_excess) * b0.j + two_over_pi / x;
}

double integral_j0(double z, const SpecFunConfig& cfg)
{
    check_argument(z, "integral_j0");
    cfg.validate();
    if (use_series(z, cfg)) {
        return z * bessel_j0(z, cfg) + 0.5 * pi * z * struve_bessel_d(z, cfg);
    }
    // z J0 + (pi z/2)(K0 J1 - K1 J0) + 1 with the z J0 terms cancelled
    // analytically through K1 = 2/pi + k1_excess.
    const BesselPair b0 = bessel_asymptotic(0, z);
    const BesselPair b1 = bessel_asymptotic(1, z);
    const StruveK k = struve_k(z);
    return 1.0 + 0.5 * pi * z * (k.k0 * b1.j - k.k1_excess * b0.j);
}

double integral_t_j1(double z, const SpecFunConfig& cfg)
{
    check_argument(z, "integral_t_j1");
    return 0.5 * pi * z * struve_bessel_d(z, cfg);
}

double integral_t_j0(double z, const SpecFunConfig& cfg)
{
    check_argument(z, "integral_t_j0");
    return z * bessel_j1(z, cfg);
}

double integral_j1(double z, const SpecFunConfig& cfg)
{
    check_argument(z, "integral_j1");
    cfg.validate();
    if (use_series(z, cfg)) return one_minus_j0_series(z, cfg.target_rel_err);
    return 1.0 - bessel_asymptotic(0, z).j;
}

}  // namespace hankelwave::specfun
