#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dqlab/interpolation.hpp"

using namespace dqlab;

TEST_CASE("Lorentz-Hoelder bound: indicator curve saturates up to the constant") {
    DistributionCurve c;
    c.lambda = log_grid(1e-3, 10.0, 16);
    for (double l : c.lambda) c.mu.push_back(l < 1.0 ? 0.7 : 0.0);
    double q = 2.0, theta = 0.5;
    double p = 1.0 / ((1.0 - theta) / q + theta);
    auto b = lorentz_holder_bound(c, p, q, theta);
    CHECK(b.lhs <= b.rhs);
    CHECK(b.lhs > 0.0);
    // for the flat curve all three norms are powers of the same mass, so
    // lhs/rhs equals 1/C up to quadrature error
    CHECK(b.rhs / b.lhs == Catch::Approx(b.constant).epsilon(0.05));
}

TEST_CASE("Lorentz-Hoelder bound on a measured difference-quotient curve") {
    auto hat = make_hat();
    double t = 0.4, q = 2.0, theta = 0.5;
    double g0 = -(1.0 - t) / (1.0 - 1.0 / q);  // -1.2
    double p = 1.0 / ((1.0 - theta) / q + theta);
    auto c = oracle_distribution_1d(hat, MeasureSpec{1, g0}, QuotientSpec{1.0 + g0},
                                    log_grid(1e-4, 1e4, 16));
    auto b = lorentz_holder_bound(c, p, q, theta);
    CHECK(b.lhs <= b.rhs);
    CHECK(b.lhs > 0.0);
}

TEST_CASE("Lorentz-Hoelder bound: zero curve maps to (0, 0)") {
    DistributionCurve c;
    c.lambda = log_grid(1e-2, 1e2, 8);
    c.mu.assign(c.lambda.size(), 0.0);
    double p = 4.0 / 3.0;
    auto b = lorentz_holder_bound(c, p, 2.0, 0.5);
    CHECK(b.lhs == 0.0);
    CHECK(b.rhs == 0.0);
}

TEST_CASE("GN inequality data: ratios bounded over the compact Cantor family") {
    double prev_ratio = 0.0;
    for (int j = 2; j <= 6; ++j) {
        auto g = make_cantor_bump(j, 0.25);
        auto rep = gn_inequality_check(g, 0.25, 2.0, 0.5);
        CHECK(rep.verdict == Verdict::Ok);
        CHECK(rep.ratio > 0.0);
        CHECK(rep.ratio < 5.0);  // bounded: this is the t < 1/q regime
        CHECK(rep.weak_over_tv > 0.0);
        if (prev_ratio > 0.0) CHECK(std::abs(rep.ratio - prev_ratio) < 0.2);
        prev_ratio = rep.ratio;
    }
}

TEST_CASE("GN ratio is invariant under value scaling") {
    auto g = make_cantor_bump(3, 0.25);
    auto r1 = gn_inequality_check(g, 0.25, 2.0, 0.5);
    auto r3 = gn_inequality_check(scale_value(g, 3.0), 0.25, 2.0, 0.5);
    CHECK(r1.ratio == Catch::Approx(r3.ratio).epsilon(1e-9));
}

TEST_CASE("Theorem 7(i): pointwise factorization is exact") {
    auto ip = InterpolationParams::make(0.75, 2.0, 0.5);
    auto hat = make_hat();
    auto rep = thm7_inequality_check(hat, 0.75, 2.0, 0.5, 2.0);
    CHECK(rep.max_factorization_defect < 1e-12);
    CHECK(rep.lhs <= rep.constant * std::pow(rep.factor_q, 0.5) *
                         std::pow(rep.factor_weak, 0.5) * (1.0 + 1e-12));
    auto g = make_cantor_g(3, ip.eps);
    auto repg = thm7_inequality_check(g, 0.75, 2.0, 0.5, 1.0);
    CHECK(repg.max_factorization_defect < 1e-12);
}

TEST_CASE("Theorem 7(i): measured constant stable across j = 2..6") {
    auto ip = InterpolationParams::make(0.75, 2.0, 0.5);
    double cmin = 1e300, cmax = 0.0;
    for (int j = 2; j <= 6; ++j) {
        auto g = make_cantor_g(j, ip.eps);
        auto rep = thm7_inequality_check(g, 0.75, 2.0, 0.5, 1.0);
        REQUIRE(rep.verdict == Verdict::Ok);
        cmin = std::min(cmin, rep.constant);
        cmax = std::max(cmax, rep.constant);
    }
    CHECK(cmax <= 1.2 * cmin);
}

TEST_CASE("gamma-reweighting identity for the W^{t,q} factor") {
    // ||u||_{W^{t,q}}^q = ||Q_{t+gamma/q} u||_{L^q(nu_gamma)}^q for any gamma
    auto hat = make_hat();
    double t = 0.6, q = 2.0;
    double direct = fractional_seminorm_pow(hat, t, q).value_pow;
    for (double gamma : {1.0, 2.0}) {
        auto c = oracle_distribution_1d(hat, MeasureSpec{1, gamma},
                                        QuotientSpec{t + gamma / q}, log_grid(1e-4, 1e4, 64));
        auto lc = layer_cake_norm(c, q);
        CHECK(std::pow(lc.value, q) == Catch::Approx(direct).epsilon(0.01));
    }
}
