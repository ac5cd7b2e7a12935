#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hankelwave/oracle.hpp"

namespace hankelwave::cli {

namespace {

constexpr double default_p_max = 10.0;
constexpr int default_p_count = 101;

// Demo grid: 128 points with p* = R p in [0, 40].
constexpr double demo_p_max = 5.0;
constexpr int demo_p_count = 128;
constexpr int demo_levels = 3;
constexpr int demo_fig1_points = 257;

std::vector<double> p_grid_for(const RunConfig& cfg, double default_max, int default_count)
{
    return linear_grid(cfg.p_min.value_or(0.0), cfg.p_max.value_or(default_max),
                       cfg.p_count.value_or(default_count));
}

double parse_field(const std::string& text, int row, const char* column)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < text.size() && (text[used] == ' ' || text[used] == '\t')) ++used;
    if (used == 0 || used != text.size()) {
        throw FormatError("row " + std::to_string(row) + ": cannot parse " + column + " value '" + text + "'");
    }
    if (!std::isfinite(v)) {
        throw FormatError("row " + std::to_string(row) + ": non-finite " + column + " value");
    }
    return v;
}

std::string trimmed(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void write_summary(std::ostream& err, int levels, const wavelet::ThresholdReport& report)
{
    err << "J=" << levels << " n0=" << report.discarded_count << " kept=" << report.kept_count
        << " delta_bound=" << format_number(report.delta_bound) << '\n';
}

double l2_over_grid(const std::vector<double>& a, const std::vector<double>& b)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum / static_cast<double>(a.size()));
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << text;
    if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

Command command_from_string(const std::string& name)
{
    if (name == "decompose") return Command::decompose;
    if (name == "transform") return Command::transform;
    if (name == "demo") return Command::demo;
    if (name == "verify") return Command::verify;
    throw std::invalid_argument("unknown command '" + name + "'");
}

void RunConfig::validate() const
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("--epsilon must be >= 0");
    if (max_level < 0 || max_level > 24) throw std::invalid_argument("--max-level must lie in [0, 24]");
    if (!(domain_scale > 0.0) || !std::isfinite(domain_scale)) {
        throw std::invalid_argument("--scale must be positive");
    }
    if (p_min && !(*p_min >= 0.0)) throw std::invalid_argument("--p-min must be >= 0");
    if (p_min && p_max && !(*p_max > *p_min)) throw std::invalid_argument("--p-max must exceed --p-min");
    if (p_count && *p_count < 2) throw std::invalid_argument("--p-count must be at least 2");
    if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
    if ((command == Command::decompose || command == Command::transform) && !input_path) {
        throw std::invalid_argument("this command needs --input");
    }
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linear_grid(double lo, double hi, int count)
{
    if (count < 2 || !(hi > lo) || !(lo >= 0.0)) throw std::invalid_argument("linear_grid: bad grid");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    grid.back() = hi;
    return grid;
}

double GaussianExample::g(double r) { return r * r * std::exp(-a * r * r); }

double GaussianExample::g_unit(double u) { return g(domain_scale * u); }

TabulatedInput ingest_csv(std::istream& in, double r_scale)
{
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty input");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (trimmed(line) != "r,g") throw FormatError("expected header 'r,g', got '" + trimmed(line) + "'");

    std::vector<double> r, g;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string content = trimmed(line);
        if (content.empty()) continue;
        const auto comma = content.find(',');
        if (comma == std::string::npos || content.find(',', comma + 1) != std::string::npos) {
            throw FormatError("row " + std::to_string(row) + ": expected two comma-separated fields");
        }
        r.push_back(r_scale * parse_field(trimmed(content.substr(0, comma)), row, "r"));
        g.push_back(parse_field(trimmed(content.substr(comma + 1)), row, "g"));
    }
    if (r.size() < 3) throw FormatError("need at least 3 rows, got " + std::to_string(r.size()));

    const std::size_t n = r.size() - 1;
    const double scale = r.back();
    if (!(scale > 0.0)) throw FormatError("r must increase from 0");
    const double step = scale / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (std::abs(r[i] - step * static_cast<double>(i)) > 1e-9 * scale) {
            throw FormatError("r column must be uniform and start at 0 (row " + std::to_string(i + 2) + ")");
        }
    }

    int level = 0;
    while ((std::size_t{1} << level) < n) ++level;
    const std::size_t cells = std::size_t{1} << level;
    std::vector<double> values(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        // Position in units of the input spacing; exact on shared nodes.
        const std::size_t num = i * n;
        const std::size_t idx = num / cells;
        const std::size_t rem = num % cells;
        if (rem == 0) {
            values[i] = g[idx];
        } else {
            const double t = static_cast<double>(rem) / static_cast<double>(cells);
            values[i] = g[idx] + t * (g[idx + 1] - g[idx]);
        }
    }
    return {std::move(r), std::move(g), wavelet::SampledFunction(std::move(values), scale)};
}

TabulatedInput ingest_csv(const std::filesystem::path& path, double r_scale)
{
    std::ifstream file(path);
    if (!file) throw FormatError("cannot open " + path.string());
    return ingest_csv(file, r_scale);
}

PipelineOutput run_pipeline(const wavelet::WaveletDecomposition& dec, const RunConfig& cfg,
                            const std::vector<double>& p_grid)
{
    auto [kept, report] = wavelet::threshold(dec.truncated(cfg.max_level), cfg.epsilon);
    hankel::TransformRequest req{cfg.order, p_grid, dec.domain_scale()};
    auto result = hankel::transform_decomposition(kept, req);
    result.metadata.epsilon = cfg.epsilon;
    result.metadata.discarded_count = report.discarded_count;
    return {report, std::move(result)};
}

int run_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto input = ingest_csv(*cfg.input_path, cfg.domain_scale);
    const auto dec = wavelet::decompose(input.samples).truncated(cfg.max_level);
    const auto [kept, report] = wavelet::threshold(dec, cfg.epsilon);
    wavelet::write_coefficients(out, kept);
    write_summary(err, kept.levels(), report);
    return exit_ok;
}

int run_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto input = ingest_csv(*cfg.input_path, cfg.domain_scale);
    const auto grid = p_grid_for(cfg, default_p_max, default_p_count);
    const auto output = run_pipeline(wavelet::decompose(input.samples), cfg, grid);
    out << "p,F\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_number(output.transform.p_grid[i]) << ',' << format_number(output.transform.values[i])
            << '\n';
    }
    write_summary(err, output.transform.metadata.levels, output.report);
    return exit_ok;
}

int run_demo(const RunConfig& cfg, std::ostream& err)
{
    using Example = GaussianExample;
    const std::filesystem::path dir = cfg.output_path.value_or(".");
    std::filesystem::create_directories(dir);

    RunConfig demo_cfg = cfg;
    demo_cfg.order = hankel::Order::one;
    const auto grid = p_grid_for(cfg, demo_p_max, demo_p_count);

    std::vector<wavelet::WaveletDecomposition> decs;
    std::vector<std::vector<double>> transforms;
    for (int level = 0; level < demo_levels; ++level) {
        decs.push_back(wavelet::decompose_adaptive(Example::g_unit, level, 1e-12, Example::domain_scale));
        demo_cfg.max_level = level;
        transforms.push_back(run_pipeline(decs.back(), demo_cfg, grid).transform.values);
    }

    std::vector<double> exact;
    exact.reserve(grid.size());
    for (double p : grid) exact.push_back(oracle::quadrature_hankel(Example::g, Example::domain_scale, 1, p));

    std::ostringstream fig1;
    fig1 << "r_star,g,level0,level1,level2\n";
    for (int i = 0; i < demo_fig1_points; ++i) {
        const double u = static_cast<double>(i) / (demo_fig1_points - 1);
        fig1 << format_number(u) << ',' << format_number(Example::g_unit(u));
        for (const auto& dec : decs) fig1 << ',' << format_number(wavelet::synthesize(dec, u));
        fig1 << '\n';
    }

    std::ostringstream fig2;
    std::ostringstream fig3;
    fig2 << "p_star,p,oracle,level0,level1,level2\n";
    fig3 << "p_star,p,oracle,level2,abs_error\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string p_cols =
            format_number(grid[i] * Example::domain_scale) + ',' + format_number(grid[i]) + ',';
        fig2 << p_cols << format_number(exact[i]);
        for (const auto& t : transforms) fig2 << ',' << format_number(t[i]);
        fig2 << '\n';
        fig3 << p_cols << format_number(exact[i]) << ',' << format_number(transforms.back()[i]) << ','
             << format_number(std::abs(transforms.back()[i] - exact[i])) << '\n';
    }

    const auto full = wavelet::decompose_adaptive(Example::g_unit, cfg.max_level, 1e-12, Example::domain_scale);
    const auto [kept, report] = wavelet::threshold(full, cfg.epsilon);
    std::ostringstream coeffs;
    wavelet::write_coefficients(coeffs, kept);

    write_file(dir / "fig1.csv", fig1.str());
    write_file(dir / "fig2.csv", fig2.str());
    write_file(dir / "fig3.csv", fig3.str());
    write_file(dir / "coeffs.csv", coeffs.str());

    for (int level = 0; level < demo_levels; ++level) {
        err << "level " << level << ": rms transform error " << format_number(l2_over_grid(transforms[level], exact))
            << '\n';
    }
    write_summary(err, kept.levels(), report);
    return exit_ok;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto grid = p_grid_for(cfg, default_p_max, default_p_count);
    oracle::QuadratureConfig qcfg;

    PipelineOutput output;
    std::vector<double> exact;
    exact.reserve(grid.size());
    double scale = 1.0;
    if (cfg.input_path) {
        const auto input = ingest_csv(*cfg.input_path, cfg.domain_scale);
        scale = input.samples.domain_scale();
        output = run_pipeline(wavelet::decompose(input.samples), cfg, grid);
        const wavelet::PiecewiseLinearFunction raw = [&] {
            std::vector<double> u(input.r.size());
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = input.r[i] / scale;
            u.front() = 0.0;
            u.back() = 1.0;
            return wavelet::PiecewiseLinearFunction(std::move(u), input.g, scale);
        }();
        const auto interpolant = [&](double r) { return raw(std::clamp(r / scale, 0.0, 1.0)); };
        for (double p : grid) {
            exact.push_back(oracle::quadrature_hankel(interpolant, scale, static_cast<int>(cfg.order), p, qcfg,
                                                      input.r));
        }
    } else {
        using Example = GaussianExample;
        scale = Example::domain_scale;
        const auto samples = wavelet::SampledFunction::from_function(Example::g_unit, cfg.max_level + 1, scale);
        output = run_pipeline(wavelet::decompose(samples), cfg, grid);
        for (double p : grid) {
            exact.push_back(oracle::quadrature_hankel(Example::g, scale, static_cast<int>(cfg.order), p, qcfg));
        }
    }

    double max_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(output.transform.values[i] - exact[i]));
    }
    const double rms_dev = l2_over_grid(output.transform.values, exact);
    const double tolerance = cfg.tolerance.value_or(std::max(1e-8, 10.0 * output.report.delta_bound * scale));
    const bool pass = max_dev <= tolerance;

    out << "max_abs_deviation=" << format_number(max_dev) << '\n'
        << "rms_deviation=" << format_number(rms_dev) << '\n'
        << "tolerance=" << format_number(tolerance) << '\n'
        << (pass ? "PASS" : "FAIL") << '\n';
    write_summary(err, output.transform.metadata.levels, output.report);
    return pass ? exit_ok : exit_verify_failed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        cfg.validate();
        if (cfg.command == Command::demo) return run_demo(cfg, err);

        std::ofstream file;
        std::ostream* target = &out;
        if (cfg.output_path) {
            file.open(*cfg.output_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + cfg.output_path->string() + " for writing");
            target = &file;
        }
        switch (cfg.command) {
        case Command::decompose: return run_decompose(cfg, *target, err);
        case Command::transform: return run_transform(cfg, *target, err);
        case Command::verify: return run_verify(cfg, *target, err);
        case Command::demo: break;
        }
        return exit_error;
    } catch (const oracle::ConvergenceError& e) {
        err << "error: " << e.what() << " (best estimate " << format_number(e.estimate()) << ", error bound "
            << format_number(e.error_bound()) << ")\n";
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_error;
}

}  // namespace hankelwave::cli
