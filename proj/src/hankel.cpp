#include "hankelwave/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hankelwave::hankel {

namespace {

using specfun::SpecFunConfig;

// Primitives from 0 of J_n(t) and t J_n(t).
struct Primitives {
    double plain;     // int_0^z J_n
    double weighted;  // int_0^z t J_n
};

Primitives primitives(Order order, double z, const SpecFunConfig& cfg)
{
    if (order == Order::zero) return {specfun::integral_j0(z, cfg), specfun::integral_t_j0(z, cfg)};
    return {specfun::integral_j1(z, cfg), specfun::integral_t_j1(z, cfg)};
}

// Exact integral of the line through (x1, v1), (x2, v2) against J_n(q x),
// given the primitives at q x1 and q x2. q == 0 is handled separately by
// callers.
double line_integral(double x1, double x2, double v1, double v2, double q, const Primitives& a,
                     const Primitives& b)
{
    const double slope = (v2 - v1) / (x2 - x1);
    const double intercept = v1 - slope * x1;
    return intercept / q * (b.plain - a.plain) + slope / (q * q) * (b.weighted - a.weighted);
}

double line_integral_at_zero(Order order, double x1, double x2, double v1, double v2)
{
    if (order == Order::one) return 0.0;
    return 0.5 * (v1 + v2) * (x2 - x1);
}

// Primitive values on a fixed set of nodes for one value of q, so adjacent
// pieces share endpoint evaluations.
class GridPrimitives {
public:
    GridPrimitives(Order order, const std::vector<double>& nodes, double q, const SpecFunConfig& cfg)
        : order_(order), nodes_(nodes), q_(q)
    {
        if (q_ == 0.0) return;
        table_.reserve(nodes_.size());
        for (double x : nodes_) table_.push_back(primitives(order_, q_ * x, cfg));
    }

    // Integral of the line between nodes[i] (value vi) and nodes[k] (value vk).
    double integral(std::size_t i, std::size_t k, double vi, double vk) const
    {
        if (q_ == 0.0) return line_integral_at_zero(order_, nodes_[i], nodes_[k], vi, vk);
        return line_integral(nodes_[i], nodes_[k], vi, vk, q_, table_[i], table_[k]);
    }

private:
    Order order_;
    const std::vector<double>& nodes_;
    double q_;
    std::vector<Primitives> table_;
};

void check_scale(double a, double b)
{
    if (a != b) {
        throw std::invalid_argument("hankel: domain_scale of the function (" + std::to_string(a)
                                    + ") does not match the request (" + std::to_string(b) + ")");
    }
}

// Breakpoints (in units of the level-j cell, relative to k) and values of
// psi(y) = Lambda(2y - 1) - Lambda(y)/4 - Lambda(y - 1)/4.
constexpr double psi_knots[5] = {-1.0, 0.0, 0.5, 1.0, 2.0};
constexpr double psi_values[5] = {0.0, -0.25, 0.75, -0.25, 0.0};

}  // namespace

Order order_from_int(int n)
{
    if (n == 0) return Order::zero;
    if (n == 1) return Order::one;
    throw std::invalid_argument("Hankel order must be 0 or 1, got " + std::to_string(n));
}

void TransformRequest::validate() const
{
    if (order != Order::zero && order != Order::one) {
        throw std::invalid_argument("TransformRequest: order must be 0 or 1");
    }
    if (!(domain_scale > 0.0) || !std::isfinite(domain_scale)) {
        throw std::invalid_argument("TransformRequest: domain_scale must be positive");
    }
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        if (!std::isfinite(p_grid[i]) || p_grid[i] < 0.0) {
            throw std::invalid_argument("TransformRequest: p values must be finite and non-negative");
        }
        if (i > 0 && !(p_grid[i] > p_grid[i - 1])) {
            throw std::invalid_argument("TransformRequest: p grid must be strictly increasing");
        }
    }
}

double segment_integral(Order order, double r1, double r2, double v1, double v2, double p,
                        const SpecFunConfig& cfg)
{
    if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(v1) || !std::isfinite(v2)
        || !std::isfinite(p)) {
        throw std::domain_error("segment_integral: non-finite input");
    }
    if (r1 < 0.0 || !(r2 > r1)) throw std::domain_error("segment_integral: need 0 <= r1 < r2");
    if (!(p > 0.0)) throw std::domain_error("segment_integral: p must be positive");
    const Primitives a = primitives(order, p * r1, cfg);
    const Primitives b = primitives(order, p * r2, cfg);
    return line_integral(r1, r2, v1, v2, p, a, b);
}

RescaledTransform rescale_transform(const std::vector<double>& unit_values,
                                    const std::vector<double>& p_grid_unit, double domain_scale)
{
    if (!(domain_scale > 0.0) || !std::isfinite(domain_scale)) {
        throw std::domain_error("rescale_transform: domain scale must be positive");
    }
    if (unit_values.size() != p_grid_unit.size()) {
        throw std::invalid_argument("rescale_transform: grid and values differ in length");
    }
    RescaledTransform out;
    out.p_grid.reserve(p_grid_unit.size());
    out.values.reserve(unit_values.size());
    for (double p : p_grid_unit) out.p_grid.push_back(p / domain_scale);
    for (double v : unit_values) out.values.push_back(domain_scale * v);
    return out;
}

TransformResult transform_piecewise_linear(const wavelet::PiecewiseLinearFunction& pl,
                                           const TransformRequest& req, const SpecFunConfig& cfg)
{
    req.validate();
    check_scale(pl.domain_scale(), req.domain_scale);
    const double scale = req.domain_scale;
    const auto& x = pl.breakpoints();
    const auto& v = pl.values();

    std::vector<double> unit_p;
    unit_p.reserve(req.p_grid.size());
    for (double p : req.p_grid) unit_p.push_back(p * scale);

    std::vector<double> unit_values(unit_p.size(), 0.0);
    for (std::size_t ip = 0; ip < unit_p.size(); ++ip) {
        const GridPrimitives grid(req.order, x, unit_p[ip], cfg);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) sum += grid.integral(i, i + 1, v[i], v[i + 1]);
        unit_values[ip] = sum;
    }

    TransformResult result;
    result.p_grid = req.p_grid;
    result.values = rescale_transform(unit_values, unit_p, scale).values;
    result.order = req.order;
    return result;
}

TransformResult transform_decomposition(const wavelet::WaveletDecomposition& dec,
                                        const TransformRequest& req, const SpecFunConfig& cfg)
{
    req.validate();
    check_scale(dec.domain_scale(), req.domain_scale);
    const double scale = req.domain_scale;
    const int levels = dec.levels();

    // Every basis breakpoint is a node of the finest dyadic grid.
    const std::size_t cells = std::size_t{1} << levels;
    std::vector<double> nodes(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) nodes[i] = static_cast<double>(i) / static_cast<double>(cells);

    std::vector<double> unit_p;
    unit_p.reserve(req.p_grid.size());
    for (double p : req.p_grid) unit_p.push_back(p * scale);

    std::vector<double> unit_values(unit_p.size(), 0.0);
    for (std::size_t ip = 0; ip < unit_p.size(); ++ip) {
        const GridPrimitives grid(req.order, nodes, unit_p[ip], cfg);

        // Coarse hats: Lambda(x) falls from 1 to 0, Lambda(x - 1) rises.
        double sum = dec.coarse(0) * grid.integral(0, cells, 1.0, 0.0)
                     + dec.coarse(1) * grid.integral(0, cells, 0.0, 1.0);

        for (int j = 0; j < levels; ++j) {
            const auto level = dec.level(j);
            // Grid nodes per half cell of level j.
            const std::size_t stride = cells >> (j + 1);
            for (std::size_t k = 0; k < level.size(); ++k) {
                if (level[k] == 0.0) continue;
                double basis = 0.0;
                for (int s = 0; s < 4; ++s) {
                    const double y0 = static_cast<double>(k) + psi_knots[s];
                    const double y1 = static_cast<double>(k) + psi_knots[s + 1];
                    if (y0 < 0.0 || y1 > static_cast<double>(level.size())) continue;
                    const auto i0 = static_cast<std::size_t>(std::lround(2.0 * y0)) * stride;
                    const auto i1 = static_cast<std::size_t>(std::lround(2.0 * y1)) * stride;
                    basis += grid.integral(i0, i1, psi_values[s], psi_values[s + 1]);
                }
                sum += level[k] * basis;
            }
        }
        unit_values[ip] = sum;
    }

    TransformResult result;
    result.p_grid = req.p_grid;
    result.values = rescale_transform(unit_values, unit_p, scale).values;
    result.order = req.order;
    result.metadata.levels = levels;
    return result;
}

}  // namespace hankelwave::hankel
