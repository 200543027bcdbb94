#include <doctest.h>

#include <cmath>

#include "wolffpot/errors.hpp"
#include "wolffpot/quadrature.hpp"

using namespace wolffpot;

TEST_CASE("polynomials are integrated to machine precision") {
    quad::Options opt;
    auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0, opt);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("exponential over a long range") {
    quad::Options opt;
    auto r = quad::integrate([](double x) { return std::exp(-x); }, 0.0, 60.0, opt);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity x^{-1/2}") {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.max_segments = 4000;
    auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-30, 1.0, opt);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("breakpoints: piecewise integrand") {
    quad::Options opt;
    auto f = [](double x) { return x < 1.0 ? 1.0 : 2.0; };
    auto r = quad::integrate_segments(f, {0.0, 1.0, 2.0}, opt);
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("estimated error bounds the true error") {
    quad::Options opt;
    opt.rel_tol = 1e-6;
    auto r = quad::integrate([](double x) { return std::sin(3.0 * x) * std::exp(x); },
                             0.0, 3.0, opt);
    const double exact = (std::exp(3.0) * (std::sin(9.0) - 3.0 * std::cos(9.0)) + 3.0) / 10.0;
    CHECK(std::abs(r.value - exact) <= std::max(r.error, 1e-12));
}

TEST_CASE("panel budget exhaustion is reported, not hidden") {
    quad::Options opt;
    opt.rel_tol = 1e-14;
    opt.max_segments = 3;
    auto needle = [](double x) { return std::exp(-1e6 * (x - 0.37) * (x - 0.37)); };
    auto r = quad::integrate(needle, 0.0, 1.0, opt);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(quad::integrate_or_throw(needle, {0.0, 1.0}, opt, "test"),
                    AccuracyError);
}

TEST_CASE("relative termination makes results scale exactly") {
    quad::Options opt;
    auto f = [](double x) { return std::exp(-x * x) * (2.0 + std::sin(5 * x)); };
    const double base = quad::integrate(f, 0.0, 4.0, opt).value;
    const double scaled =
        quad::integrate([&](double x) { return 1e12 * f(x); }, 0.0, 4.0, opt).value;
    CHECK(scaled == doctest::Approx(1e12 * base).epsilon(1e-14));
}
