#pragma once

// Command implementations behind the hankelwave executable. Each run_*
// writes its primary output to `out` (or files, for demo), diagnostics to
// `err`, and returns the process exit status.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankelwave/hankel.hpp"
#include "hankelwave/wavelet.hpp"

namespace hankelwave::cli {

enum class Command { decompose, transform, demo, verify };

Command command_from_string(const std::string& name);

struct RunConfig {
    Command command = Command::transform;
    std::optional<std::filesystem::path> input_path;
    hankel::Order order = hankel::Order::zero;
    double epsilon = 0.0;
    int max_level = 8;         // finest detail level used
    double domain_scale = 1.0; // multiplies the r column of tabulated input
    std::optional<double> p_min;
    std::optional<double> p_max;
    std::optional<int> p_count;
    std::optional<std::filesystem::path> output_path;
    std::optional<double> tolerance;  // verify only

    void validate() const;
};

// Exit statuses.
constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_error = 2;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw rows of an `r,g` table plus their resampling onto a dyadic grid.
struct TabulatedInput {
    std::vector<double> r;
    std::vector<double> g;
    wavelet::SampledFunction samples;
};

/// Reads `r,g` rows with uniform r starting at 0 and resamples them
/// linearly onto the smallest grid of 2^J + 1 points holding all rows.
/// r is multiplied by r_scale first. Throws FormatError.
TabulatedInput ingest_csv(std::istream& in, double r_scale = 1.0);
TabulatedInput ingest_csv(const std::filesystem::path& path, double r_scale = 1.0);

/// Uniform p grid, inclusive of both ends.
std::vector<double> linear_grid(double lo, double hi, int count);

/// The worked example: g(r) = r f(r) with f(r) = r exp(-a r^2), a = 0.4,
/// on [0, 8], transformed with order 1.
struct GaussianExample {
    static constexpr double a = 0.4;
    static constexpr double domain_scale = 8.0;

    static double g(double r);
    /// g in unit coordinates, g(R u).
    static double g_unit(double u);
};

struct PipelineOutput {
    wavelet::ThresholdReport report;
    hankel::TransformResult transform;
};

/// truncate to max_level -> threshold(epsilon) -> transform_decomposition.
PipelineOutput run_pipeline(const wavelet::WaveletDecomposition& dec, const RunConfig& cfg,
                            const std::vector<double>& p_grid);

int run_decompose(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// Writes fig1.csv, fig2.csv, fig3.csv and coeffs.csv into the output
/// directory (default: current directory).
int run_demo(const RunConfig& cfg, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command and maps exceptions to exit_error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string format_number(double v);

}  // namespace hankelwave::cli
