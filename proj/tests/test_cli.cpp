#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pipeline.hpp"

using namespace hankelwave;
using namespace hankelwave::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("hankelwave_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_table(const fs::path& path, const std::vector<double>& r, const std::vector<double>& g)
{
    std::ofstream out(path);
    out << "r,g\n";
    for (std::size_t i = 0; i < r.size(); ++i) out << format_number(r[i]) << ',' << format_number(g[i]) << '\n';
    return path;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Parses "p,F" (or any two-column numeric CSV with a header).
std::vector<std::vector<double>> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) row.push_back(std::stod(f));
        rows.push_back(row);
    }
    return rows;
}

int run_exe(const std::string& args)
{
    const std::string cmd = std::string(HANKELWAVE_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("ingest_csv")
{
    SUBCASE("three rows")
    {
        std::istringstream in("r,g\n0,0\n0.5,1\n1,0\n");
        const auto t = ingest_csv(in);
        CHECK(t.samples.max_level() == 1);
        CHECK(t.samples.values() == std::vector<double>{0.0, 1.0, 0.0});
        CHECK(t.samples.domain_scale() == 1.0);
    }
    SUBCASE("five rows on [0, 8]")
    {
        std::istringstream in("r,g\n0,1\n2,2\n4,3\n6,4\n8,5\n");
        const auto t = ingest_csv(in);
        CHECK(t.samples.max_level() == 2);
        CHECK(t.samples.domain_scale() == 8.0);
    }
    SUBCASE("six rows resample onto nine points")
    {
        std::istringstream in("r,g\n0,1\n1,3\n2,-2\n3,0.5\n4,4\n5,2\n");
        const auto t = ingest_csv(in);
        REQUIRE(t.samples.max_level() == 3);
        const auto& v = t.samples.values();
        REQUIRE(v.size() == 9);
        // Shared nodes r = 0 and r = 5 keep their values.
        CHECK(v.front() == 1.0);
        CHECK(v.back() == 2.0);
        // Every resampled value lies on the input's linear interpolant.
        const wavelet::PiecewiseLinearFunction interp({0.0, 0.2, 0.4, 0.6, 0.8, 1.0}, {1, 3, -2, 0.5, 4, 2});
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(interp(i / 8.0)).epsilon(1e-14));
    }
    SUBCASE("r scale multiplies the r column")
    {
        std::istringstream in("r,g\n0,0\n0.5,1\n1,0\n");
        CHECK(ingest_csv(in, 8.0).samples.domain_scale() == 8.0);
    }
    SUBCASE("format errors")
    {
        for (const char* text : {"", "x,y\n0,0\n1,1\n2,2\n", "r,g\n0,0\n1,1\n", "r,g\n0,0\n1,1\n2.5,2\n",
                                 "r,g\n0.1,0\n1,1\n2,2\n", "r,g\n0,0\n1,nan\n2,2\n", "r,g\n0,0\n1,abc\n2,2\n",
                                 "r,g\n0,0\n1,1,1\n2,2\n", "r,g\n0,0\n1,inf\n2,2\n"}) {
            std::istringstream in(text);
            CHECK_THROWS_AS(ingest_csv(in), FormatError);
        }
        CHECK_THROWS_AS(ingest_csv(fs::path("/nonexistent/input.csv")), FormatError);
    }
    SUBCASE("tolerates jitter below 1e-9 relative")
    {
        std::istringstream in("r,g\n0,0\n1.0000000001,1\n2,0\n");
        CHECK_NOTHROW(ingest_csv(in));
    }
}

TEST_CASE("transform: zero input gives zeros")
{
    const auto dir = scratch_dir("zero");
    RunConfig cfg;
    cfg.command = Command::transform;
    cfg.input_path = write_table(dir / "zero.csv", {0, 1, 2, 3, 4}, {0, 0, 0, 0, 0});
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == exit_ok);
    const auto rows = parse_csv(out.str());
    CHECK(rows.size() == 101);
    for (const auto& row : rows) CHECK(row[1] == 0.0);
    CHECK(out.str().rfind("p,F\n", 0) == 0);
    CHECK(err.str().find("J=2 ") != std::string::npos);
}

TEST_CASE("transform matches the demo's level-2 curve")
{
    const auto dir = scratch_dir("demo_route");
    std::vector<double> r, g;
    for (int i = 0; i <= 8; ++i) {
        r.push_back(i);
        g.push_back(GaussianExample::g(i));
    }
    RunConfig tcfg;
    tcfg.command = Command::transform;
    tcfg.input_path = write_table(dir / "gauss.csv", r, g);
    tcfg.order = hankel::Order::one;
    tcfg.p_max = 5.0;
    tcfg.p_count = 128;
    std::ostringstream out, err;
    REQUIRE(run(tcfg, out, err) == exit_ok);

    RunConfig dcfg;
    dcfg.command = Command::demo;
    dcfg.output_path = dir / "demo";
    REQUIRE(run(dcfg, out, err) == exit_ok);

    const auto transformed = parse_csv(out.str());
    const auto fig2 = parse_csv(slurp(dir / "demo" / "fig2.csv"));
    REQUIRE(transformed.size() == fig2.size());
    for (std::size_t i = 0; i < fig2.size(); ++i) {
        CHECK(transformed[i][0] == fig2[i][1]);
        CHECK(transformed[i][1] == fig2[i][5]);
    }
}

TEST_CASE("epsilon above every detail leaves the coarse interpolant")
{
    const auto dir = scratch_dir("coarse");
    RunConfig cfg;
    cfg.command = Command::transform;
    cfg.input_path = write_table(dir / "in.csv", {0, 0.25, 0.5, 0.75, 1.0}, {0.0, 1.0, -1.0, 2.0, 0.5});
    cfg.epsilon = 100.0;
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == exit_ok);

    const auto dec = wavelet::decompose(ingest_csv(*cfg.input_path).samples);
    const wavelet::PiecewiseLinearFunction coarse({0.0, 1.0}, {dec.coarse(0), dec.coarse(1)});
    const auto grid = linear_grid(0.0, 10.0, 101);
    const auto expected = hankel::transform_piecewise_linear(coarse, {hankel::Order::zero, grid, 1.0});
    const auto rows = parse_csv(out.str());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i][1] == doctest::Approx(expected.values[i]).epsilon(1e-12));
    CHECK(err.str().find("n0=3 kept=0") != std::string::npos);
}

TEST_CASE("decompose writes a dump that reads back")
{
    const auto dir = scratch_dir("dump");
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-1, 1);
    std::vector<double> r, g;
    for (int i = 0; i <= 32; ++i) {
        r.push_back(i * 0.125);
        g.push_back(dist(rng));
    }
    RunConfig cfg;
    cfg.command = Command::decompose;
    cfg.input_path = write_table(dir / "in.csv", r, g);
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == exit_ok);
    std::istringstream text(out.str());
    const auto back = wavelet::read_coefficients(text, 4.0);
    const auto direct = wavelet::decompose(ingest_csv(*cfg.input_path).samples);
    CHECK(back.details() == direct.details());
    CHECK(back.coarse(0) == direct.coarse(0));

    cfg.max_level = 2;
    std::ostringstream capped;
    REQUIRE(run(cfg, capped, err) == exit_ok);
    std::istringstream capped_text(capped.str());
    CHECK(wavelet::read_coefficients(capped_text).levels() == 3);
}

TEST_CASE("demo output")
{
    const auto dir = scratch_dir("demo");
    RunConfig cfg;
    cfg.command = Command::demo;
    cfg.output_path = dir;
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == exit_ok);
    for (const char* name : {"fig1.csv", "fig2.csv", "fig3.csv", "coeffs.csv"}) CHECK(fs::exists(dir / name));

    const auto fig1 = parse_csv(slurp(dir / "fig1.csv"));
    REQUIRE(fig1.size() == 257);
    for (double v : fig1.front()) CHECK(std::abs(v) <= 1e-15);

    const auto fig2 = parse_csv(slurp(dir / "fig2.csv"));
    REQUIRE(fig2.size() == 128);
    CHECK(fig2.back()[0] == doctest::Approx(40.0));
    CHECK(fig2.back()[1] == doctest::Approx(5.0));
    double l2[3] = {0, 0, 0};
    for (const auto& row : fig2) {
        for (int level = 0; level < 3; ++level) l2[level] += std::pow(row[3 + level] - row[2], 2);
    }
    CHECK(l2[2] < l2[1]);
    CHECK(l2[1] < l2[0]);

    const auto fig3 = parse_csv(slurp(dir / "fig3.csv"));
    double early = 0.0, overall = 0.0;
    for (std::size_t i = 0; i < fig3.size(); ++i) {
        CHECK(fig3[i][4] == doctest::Approx(std::abs(fig3[i][3] - fig3[i][2])));
        if (i < fig3.size() / 4) early = std::max(early, fig3[i][4]);
        overall = std::max(overall, fig3[i][4]);
    }
    CHECK(overall <= 1.5 * early);

    std::ifstream coeffs(dir / "coeffs.csv");
    CHECK(wavelet::read_coefficients(coeffs).levels() == 9);
}

TEST_CASE("verify")
{
    const auto dir = scratch_dir("verify");
    SUBCASE("piecewise-linear input passes at 1e-8")
    {
        RunConfig cfg;
        cfg.command = Command::verify;
        cfg.input_path = write_table(dir / "pl.csv", {0, 0.5, 1, 1.5, 2}, {0.0, 1.0, 0.25, -0.5, 0.0});
        cfg.order = hankel::Order::one;
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == exit_ok);
        CHECK(out.str().find("tolerance=1e-08\nPASS\n") != std::string::npos);
    }
    SUBCASE("Gaussian at level 2 deviates by the interpolation error")
    {
        RunConfig cfg;
        cfg.command = Command::verify;
        cfg.order = hankel::Order::one;
        cfg.max_level = 2;
        cfg.p_max = 5.0;
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == exit_verify_failed);
        CHECK(out.str().find("FAIL") != std::string::npos);

        // The deviation is the one of the exact level-2 interpolant.
        RunConfig same = cfg;
        same.tolerance = 1.0;
        std::ostringstream out2;
        CHECK(run(same, out2, err) == exit_ok);
    }
    SUBCASE("thresholding fails tight and passes the adjusted tolerance")
    {
        RunConfig cfg;
        cfg.command = Command::verify;
        cfg.order = hankel::Order::one;
        cfg.max_level = 2;
        cfg.epsilon = 0.1;
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == exit_ok);
        cfg.tolerance = 1e-8;
        std::ostringstream tight;
        CHECK(run(cfg, tight, err) == exit_verify_failed);
    }
}

TEST_CASE("config and exit status")
{
    RunConfig cfg;
    cfg.command = Command::transform;
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == exit_error);  // no input
    cfg.input_path = "/nonexistent.csv";
    CHECK(run(cfg, out, err) == exit_error);
    CHECK(err.str().find("input error") != std::string::npos);

    RunConfig bad;
    bad.command = Command::demo;
    bad.p_min = 3.0;
    bad.p_max = 1.0;
    CHECK(run(bad, out, err) == exit_error);
    CHECK_THROWS_AS(command_from_string("plot"), std::invalid_argument);
}

TEST_CASE("executable")
{
    const auto dir = scratch_dir("exe");
    const auto input = write_table(dir / "in.csv", {0, 1, 2, 3, 4}, {0.0, 1.0, 0.5, 0.25, 0.0});
    CHECK(run_exe("transform --input " + input.string() + " --output " + (dir / "a.csv").string()) == 0);
    CHECK(run_exe("transform --input " + input.string() + " --output " + (dir / "b.csv").string()) == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(run_exe("verify --input " + input.string() + " --order 1") == 0);
    CHECK(run_exe("transform --input " + (dir / "missing.csv").string()) == exit_error);
    CHECK(run_exe("transform --order 3 --input " + input.string()) != 0);
    CHECK(run_exe("bogus") != 0);
}
