#include <doctest.h>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hankelwave/oracle.hpp"

using namespace hankelwave::oracle;

TEST_CASE("Gauss-Kronrod integrates smooth functions")
{
    CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0, {}).value == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, {}).value
          == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    // Kink at 1/3: split makes it converge immediately.
    const std::vector<double> splits{1.0 / 3.0};
    const auto with_split = integrate([](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0, 1.0, {}, 1, splits);
    CHECK(with_split.subdivisions == 0);
    CHECK(with_split.value == doctest::Approx(5.0 / 18.0).epsilon(1e-14));
}

TEST_CASE("convergence failure reports the best estimate")
{
    QuadratureConfig cfg;
    cfg.max_subdivisions = 3;
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("config validation")
{
    QuadratureConfig cfg;
    cfg.panels_per_oscillation = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.max_subdivisions = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(quadrature_hankel([](double) { return 1.0; }, 1.0, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quadrature_hankel([](double) { return 1.0; }, 1.0, 0, -1.0), std::invalid_argument);
}

TEST_CASE("Miller recurrence kernel")
{
    CHECK(bessel_j01_recurrence(0.0).first == 1.0);
    CHECK(bessel_j01_recurrence(0.0).second == 0.0);
    // mpmath, 30 digits
    CHECK(bessel_j01_recurrence(1.0).first == doctest::Approx(0.76519768655796655145).epsilon(1e-14));
    CHECK(bessel_j01_recurrence(1.0).second == doctest::Approx(0.44005058574493351596).epsilon(1e-14));
    CHECK(std::abs(bessel_j01_recurrence(10.0).first - -0.2459357644513483352) <= 1e-14);
    for (double x : {0.3, 7.0, 25.0}) {
        CHECK(std::abs(bessel_j01_recurrence(x).first - reference_specfun(Function::j0, x)) <= 1e-13);
        CHECK(std::abs(bessel_j01_recurrence(x).second - reference_specfun(Function::j1, x)) <= 1e-13);
    }
}

TEST_CASE("quadrature_hankel")
{
    CHECK(quadrature_hankel([](double) { return 0.0; }, 3.0, 0, 2.0) == 0.0);
    // int_0^1 r J0(r) dr = J1(1)
    CHECK(std::abs(quadrature_hankel([](double r) { return r; }, 1.0, 0, 1.0) - 0.44005058574493351596) <= 1e-11);

    auto gauss = [](double r) { return r * r * std::exp(-0.4 * r * r); };
    QuadratureConfig loose;
    loose.abs_tol = loose.rel_tol = 1e-8;
    QuadratureConfig tight;
    tight.abs_tol = tight.rel_tol = 1e-10;
    const double a = quadrature_hankel(gauss, 8.0, 1, 2.0, loose);
    const double b = quadrature_hankel(gauss, 8.0, 1, 2.0, tight);
    CHECK(std::abs(a - b) <= 1e-8);
    // mpmath, 30 digits
    CHECK(std::abs(b - 0.25651562069720691184) <= 1e-10);
}

TEST_CASE("halving the tolerance moves results by less than the looser tolerance")
{
    const std::vector<std::function<double(double)>> functions{
        [](double r) { return r * r * std::exp(-0.4 * r * r); },
        [](double r) { return std::sin(3.0 * r) + 0.5; },
        [](double r) { return 1.0 / (1.0 + r * r); },
        [](double r) { return r * std::exp(-r); },
        [](double r) { return std::cos(r) * r * r; },
    };
    const double ps[] = {0.0, 1.0, 7.5, 40.0};
    for (const auto& g : functions) {
        for (int order : {0, 1}) {
            for (double p : ps) {
                if (p == 0.0 && order == 1) continue;
                QuadratureConfig a;
                a.abs_tol = a.rel_tol = 1e-9;
                QuadratureConfig b;
                b.abs_tol = b.rel_tol = 0.5e-9;
                const double va = quadrature_hankel(g, 4.0, order, p, a);
                const double vb = quadrature_hankel(g, 4.0, order, p, b);
                CHECK(std::abs(va - vb) <= std::max(1e-9, 1e-9 * std::abs(va)));
            }
        }
    }
}

TEST_CASE("reference_specfun")
{
    CHECK(reference_specfun(Function::j0, 0.0) == 1.0);
    CHECK(reference_specfun(Function::h1, 0.0) == 0.0);
    CHECK(reference_specfun(Function::h0, 1.0) == doctest::Approx(0.56865662704828795099).epsilon(1e-15));
    CHECK(reference_specfun(Function::h1, 2.0) == doctest::Approx(0.64676372828356211712).epsilon(1e-15));
    CHECK(std::abs(reference_specfun(Function::j0, 10.0) - -0.2459357644513483352) <= 1e-15);
    CHECK_THROWS_AS(reference_specfun(Function::j0, 30.5), std::domain_error);
    CHECK_THROWS_AS(reference_specfun(Function::j0, -1.0), std::domain_error);
}

TEST_CASE("integral representations agree with the series")
{
    for (double x : {0.0, 0.5, 3.0, 12.0, 29.0}) {
        for (Function f : {Function::j0, Function::j1, Function::h0, Function::h1}) {
            CHECK(std::abs(reference_specfun_integral(f, x) - reference_specfun(f, x)) <= 1e-12);
        }
    }
}
