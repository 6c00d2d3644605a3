#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dqlab/special.hpp"

using namespace dqlab;
using std::numbers::pi;

TEST_CASE("gamma function hits exact values") {
    CHECK(gamma_fn(1.0) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == Catch::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == Catch::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(1.5) == Catch::Approx(0.5 * std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("sphere areas are exact") {
    CHECK(std::abs(sphere_area(1) - 2.0) < 1e-12);
    CHECK(std::abs(sphere_area(2) - 2.0 * pi) < 1e-12);
    CHECK(std::abs(sphere_area(3) - 4.0 * pi) < 1e-12);
}

TEST_CASE("k(p,n) closed form matches the anchor values") {
    CHECK(k_constant(1.0, 1) == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(k_constant(1.0, 2) == Catch::Approx(4.0).epsilon(1e-13));
    CHECK(k_constant(2.0, 2) == Catch::Approx(pi).epsilon(1e-13));
}

TEST_CASE("k(p,n) closed form vs sphere quadrature to 1e-10") {
    for (int n : {1, 2, 3})
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            INFO("n=" << n << " p=" << p);
            CHECK(std::abs(k_constant(p, n) - k_constant_quadrature(p, n)) < 1e-10);
        }
}

TEST_CASE("power weight integral") {
    CHECK(power_weight_integral(0.0, 1.0, std::exp(1.0)) == Catch::Approx(1.0));
    CHECK(power_weight_integral(2.0, 1.0, 2.0) == Catch::Approx(1.5));
    CHECK(power_weight_integral(-1.0, 2.0, std::numeric_limits<double>::infinity()) ==
          Catch::Approx(0.5));
}

TEST_CASE("quadrature engines agree on a smooth integrand") {
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    double exact = 3.0 / 10.0 - std::exp(-1.0) * (std::sin(3.0) * 1.0 + 3.0 * std::cos(3.0)) / 10.0;
    CHECK(adaptive_quad(f, 0.0, 1.0) == Catch::Approx(exact).epsilon(1e-11));
    CHECK(gauss20(f, 0.0, 1.0) == Catch::Approx(exact).epsilon(1e-11));
}
