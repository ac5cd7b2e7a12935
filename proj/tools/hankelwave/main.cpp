#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pipeline.hpp"

int main(int argc, char** argv)
{
    using namespace hankelwave;

    CLI::App app{"Hankel transforms of order 0 and 1 through piecewise-linear lifting wavelets"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command;
    std::string input;
    std::string output;
    int order = 0;
    double p_min = 0.0;
    double p_max = 0.0;
    int p_count = 0;
    double tolerance = 0.0;
    cli::RunConfig cfg;

    app.add_option("command", command, "decompose | transform | demo | verify")
        ->required()
        ->check(CLI::IsMember({"decompose", "transform", "demo", "verify"}));
    auto* input_opt = app.add_option("--input", input, "CSV with header r,g (uniform r from 0)");
    app.add_option("--order", order, "Hankel order, 0 or 1 (demo always uses 1)")->check(CLI::IsMember({0, 1}));
    app.add_option("--epsilon", cfg.epsilon, "Discard detail coefficients with |d| <= epsilon")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--max-level", cfg.max_level, "Finest detail level used")->check(CLI::Range(0, 24));
    app.add_option("--scale", cfg.domain_scale, "Multiplier applied to the r column of the input")
        ->check(CLI::PositiveNumber);
    auto* p_min_opt = app.add_option("--p-min", p_min, "First transform point")->check(CLI::NonNegativeNumber);
    auto* p_max_opt = app.add_option("--p-max", p_max, "Last transform point");
    auto* p_count_opt = app.add_option("--p-count", p_count, "Number of transform points")->check(CLI::Range(2, 1 << 20));
    auto* output_opt = app.add_option("--output", output, "Output file (demo: output directory)");
    auto* tol_opt = app.add_option("--tolerance", tolerance, "verify: override the pass tolerance")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    cfg.command = cli::command_from_string(command);
    cfg.order = order == 0 ? hankel::Order::zero : hankel::Order::one;
    if (*input_opt) cfg.input_path = input;
    if (*output_opt) cfg.output_path = output;
    if (*p_min_opt) cfg.p_min = p_min;
    if (*p_max_opt) cfg.p_max = p_max;
    if (*p_count_opt) cfg.p_count = p_count;
    if (*tol_opt) cfg.tolerance = tolerance;

    return cli::run(cfg, std::cout, std::cerr);
}
