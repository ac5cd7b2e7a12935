#include "hankelwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hankelwave::oracle {

namespace {

constexpr double pi = std::numbers::pi;

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Piece {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += wgk[i] * pair;
        if (i % 2 == 1) gauss += wg[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

void check_order(int order)
{
    if (order != 0 && order != 1) {
        throw std::invalid_argument("oracle: order must be 0 or 1, got " + std::to_string(order));
    }
}

}  // namespace

void QuadratureConfig::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    }
    if (max_subdivisions <= 0) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be positive");
    if (panels_per_oscillation < 4) {
        throw std::invalid_argument("QuadratureConfig: panels_per_oscillation must be at least 4");
    }
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg, int initial_panels,
                           std::span<const double> splits)
{
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw std::invalid_argument("integrate: need finite a < b");
    }
    initial_panels = std::max(1, initial_panels);

    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(initial_panels) + splits.size() + 1);
    for (int i = 0; i <= initial_panels; ++i) cuts.push_back(a + (b - a) * i / initial_panels);
    cuts.back() = b;
    for (double s : splits) {
        if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Piece> pieces;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Piece piece = gauss_kronrod(f, cuts[i], cuts[i + 1]);
        total += piece.value;
        total_error += piece.error;
        pieces.push(piece);
    }

    int subdivisions = 0;
    while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (subdivisions >= cfg.max_subdivisions) {
            throw ConvergenceError("integrate: tolerance not reached after "
                                       + std::to_string(subdivisions) + " subdivisions",
                                   total, total_error);
        }
        const Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Piece left = gauss_kronrod(f, worst.a, mid);
        const Piece right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        pieces.push(left);
        pieces.push(right);
        ++subdivisions;
    }

    // Re-add from scratch to drop the drift of the running sums.
    QuadratureResult result;
    result.subdivisions = subdivisions;
    while (!pieces.empty()) {
        result.value += pieces.top().value;
        result.error += pieces.top().error;
        pieces.pop();
    }
    return result;
}

double quadrature_hankel(const std::function<double(double)>& g, double domain_scale, int order,
                         double p, const QuadratureConfig& cfg, std::span<const double> splits)
{
    check_order(order);
    if (!(domain_scale > 0.0) || !std::isfinite(domain_scale)) {
        throw std::invalid_argument("quadrature_hankel: domain scale must be positive");
    }
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("quadrature_hankel: p must be >= 0");

    int panels = 1;
    if (p > 0.0) {
        const double width = 2.0 * pi / p / cfg.panels_per_oscillation;
        panels = static_cast<int>(std::ceil(domain_scale / width));
    }
    auto integrand = [&](double r) {
        const auto [j0, j1] = bessel_j01_recurrence(p * r);
        return g(r) * (order == 0 ? j0 : j1);
    };
    return integrate(integrand, 0.0, domain_scale, cfg, panels, splits).value;
}

std::pair<double, double> bessel_j01_recurrence(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_j01_recurrence: bad argument");
    if (x == 0.0) return {1.0, 0.0};

    // Start well beyond the turning point n = x, where J_n decays fast.
    const int start = 2 * static_cast<int>((x + 30.0 + 6.0 * std::cbrt(x)) / 2.0) + 2;
    double above = 0.0;   // J_{n+1}
    double current = 1e-30;  // J_n
    double norm = 0.0;    // J_0 + 2 sum J_2k
    double j1 = 0.0;
    for (int n = start; n > 0; --n) {
        const double below = 2.0 * n / x * current - above;
        above = current;
        current = below;
        if (n - 1 > 0 && (n - 1) % 2 == 0) norm += 2.0 * current;
        if (n - 1 == 1) j1 = current;
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += current;
    return {current / norm, j1 / norm};
}

double reference_specfun(Function name, double x)
{
    using Real = boost::multiprecision::cpp_bin_float_50;
    if (!(x >= 0.0) || !(x <= 30.0)) {
        throw std::domain_error("reference_specfun: x must lie in [0, 30], got " + std::to_string(x));
    }
    const Real xr = x;
    const Real q = xr * xr / 4;
    const Real mp_pi = boost::math::constants::pi<Real>();

    Real term;
    // Ratio of consecutive terms is -q / (k + a)(k + b).
    double a = 0.0;
    double b = 0.0;
    switch (name) {
    case Function::j0: term = 1; a = 1.0; b = 1.0; break;
    case Function::j1: term = xr / 2; a = 1.0; b = 2.0; break;
    case Function::h0: term = 2 * xr / mp_pi; a = 1.5; b = 1.5; break;
    case Function::h1: term = 2 * xr * xr / (3 * mp_pi); a = 1.5; b = 2.5; break;
    }
    Real sum = 0;
    for (int k = 0; k < 60; ++k) {
        sum += term;
        term *= -q / ((k + Real(a)) * (k + Real(b)));
    }
    return static_cast<double>(sum);
}

double reference_specfun_integral(Function name, double x)
{
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("reference_specfun_integral: x must be finite and non-negative");
    }
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-14;
    const int panels = 2 + static_cast<int>(x);
    switch (name) {
    case Function::j0:
        return integrate([x](double t) { return std::cos(x * std::sin(t)); }, 0.0, pi, cfg, panels).value / pi;
    case Function::j1:
        return integrate([x](double t) { return std::cos(t - x * std::sin(t)); }, 0.0, pi, cfg, panels).value
               / pi;
    case Function::h0:
        return 2.0 / pi
               * integrate([x](double t) { return std::sin(x * std::cos(t)); }, 0.0, 0.5 * pi, cfg, panels)
                     .value;
    case Function::h1:
        return 2.0 * x / pi
               * integrate([x](double t) { return std::sin(x * std::cos(t)) * std::sin(t) * std::sin(t); },
                           0.0, 0.5 * pi, cfg, panels)
                     .value;
    }
    throw std::invalid_argument("reference_specfun_integral: unknown function");
}

}  // namespace hankelwave::oracle
