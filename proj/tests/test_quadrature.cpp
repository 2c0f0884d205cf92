#include <doctest.h>

#include "oracles.hpp"
#include "qrabi/quadrature.hpp"

#include <cmath>
#include <stdexcept>

using qrabi::quadrature::integrate;

TEST_CASE("polynomials are exact") {
    auto r = integrate([](double x) { return x * x * x; }, 0.0, 1.0, 1e-14, 0.0);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.evaluations >= 15);
}

TEST_CASE("empty and reversed intervals") {
    auto r = integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12, 0.0);
    CHECK(r.value == 0.0);
    CHECK_THROWS_AS(
        (void)integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-12, 0.0),
        std::invalid_argument);
}

TEST_CASE("oscillatory integrand with forced panel width") {
    // Integral_0^{20 pi} sin^2 = 10 pi
    auto r = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0,
                       20.0 * oracle::pi, 1e-11, 0.0, oracle::pi);
    CHECK(r.value == doctest::Approx(10.0 * oracle::pi).epsilon(1e-12));
}

TEST_CASE("integrable endpoint behavior converges") {
    // sqrt has unbounded derivatives at 0 but adaptivity copes
    auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12, 0.0);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("depth exhaustion raises a diagnostic error") {
    try {
        (void)integrate([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0,
                        1.0, 1e-14, 0.0, 0.0, 3);
        FAIL("expected a runtime error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("depth") != std::string::npos);
    }
}

TEST_CASE("relative tolerance uses the rough whole-interval scale") {
    auto f = [](double x) { return 1e6 * std::exp(-x); };
    auto r = integrate(f, 0.0, 10.0, 0.0, 1e-10);
    CHECK(r.value == doctest::Approx(1e6 * (1.0 - std::exp(-10.0))).epsilon(1e-9));
}
