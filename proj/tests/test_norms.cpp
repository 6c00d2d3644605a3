#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dqlab/corpus.hpp"
#include "dqlab/norms.hpp"
#include "dqlab/oracle.hpp"

using namespace dqlab;

namespace {

/// Synthetic exact power-law curve mu = C lambda^{-a} truncated to a window.
DistributionCurve power_curve(double C, double a, double lo, double hi) {
    DistributionCurve c;
    c.lambda = log_grid(lo, hi, 16);
    for (double l : c.lambda) c.mu.push_back(C * std::pow(l, -a));
    return c;
}

}  // namespace

TEST_CASE("weak norm of an exact power-law a = p curve") {
    // mu = C lambda^{-p}: lambda mu^{1/p} = C^{1/p} everywhere
    auto c = power_curve(2.0, 1.5, 1e-3, 1e3);
    auto wk = weak_norm(c, 1.5);
    CHECK(wk.value == Catch::Approx(std::pow(2.0, 1.0 / 1.5)).epsilon(1e-12));
}

TEST_CASE("lorentz norm on an exact power-law curve matches the closed form") {
    // mu = C lambda^{-a} with a > p over [lo, hi], extended by the fitted
    // head/tail: [F]^r = r C^{r/p} int lambda^{r - ar/p - 1} = closed form
    double C = 3.0, a = 3.0, p = 2.0, r = 2.0;
    auto c = power_curve(C, a, 1e-2, 1e2);
    double q = r - a * r / p;  // = -1
    // integral over (0, inf) diverges at 0 for q < 0... here head q<0 means
    // the small-lambda side converges: total = r C^{r/p} [lambda^q/q] from 0?
    // q = -1: int_0^inf lambda^{-2} d lambda diverges at 0; the estimator
    // must flag it. Use a < p for a finite head instead.
    (void)q;
    a = 1.0;  // q = r - ar/p = 1 > 0: converges at 0, diverges at inf
    c = power_curve(C, a, 1e-2, 1e2);
    auto lz = lorentz_norm(c, LorentzSpec{p, r});
    CHECK(lz.verdict == Verdict::Divergent);
}

TEST_CASE("layer cake equals lorentz at r = p within 1 percent") {
    auto g = make_cantor_g(2, 0.25);
    double p = 4.0 / 3.0;
    // b = s + gamma/p with s = 7/8: both head and tail closures converge
    auto c = oracle_distribution_1d(g, MeasureSpec{1, 1.0}, QuotientSpec{1.625},
                                    log_grid(1e-3, 1e8, 16));
    auto lz = lorentz_norm(c, LorentzSpec{p, p});
    auto lc = layer_cake_norm(c, p);
    CHECK(lz.verdict == Verdict::Ok);
    CHECK(lz.value == Catch::Approx(lc.value).epsilon(0.01));
}

TEST_CASE("weak quasi-norm is dominated by the Lorentz L^{p,r} norm") {
    auto g = make_cantor_g(3, 0.25);
    double p = 4.0 / 3.0;
    auto c = oracle_distribution_1d(g, MeasureSpec{1, 1.0}, QuotientSpec{1.625},
                                    log_grid(1e-3, 1e8, 16));
    auto wk = weak_norm(c, p);
    auto lz = lorentz_norm(c, LorentzSpec{p, 2.0});
    CHECK(wk.value <= lz.value * (1.0 + 1e-9));
}

TEST_CASE("genuinely weak-type curves get a divergent strong verdict") {
    // hat, gamma = 1, sobolev b = 2, p = 1: lambda mu -> 4, so the L^1(nu_1)
    // norm is log-divergent while the weak norm is finite
    auto hat = make_hat();
    auto c = oracle_distribution_1d(hat, MeasureSpec{1, 1.0}, QuotientSpec{2.0},
                                    default_lambda_grid());
    CHECK(weak_norm(c, 1.0).value > 0.0);
    CHECK(layer_cake_norm(c, 1.0).verdict == Verdict::Divergent);
    CHECK(lorentz_norm(c, LorentzSpec{1.0, 1.0}).verdict == Verdict::Divergent);
}

TEST_CASE("Tao lift: weak norm of the lift equals the strong norm") {
    for (double p : {1.0, 2.0, 3.0}) {
        auto [strong_hat, weak_hat] = tao_identity_check(make_hat(), p);
        CHECK(weak_hat == Catch::Approx(strong_hat).epsilon(0.01));
        auto [strong_ind, weak_ind] = tao_identity_check(make_indicator_interval(0.0, 1.0), p);
        CHECK(weak_ind == Catch::Approx(strong_ind).epsilon(0.01));
        auto [strong_b, weak_b] = tao_identity_check(make_smooth_bump(1), p);
        CHECK(weak_b == Catch::Approx(strong_b).epsilon(0.01));
    }
}

TEST_CASE("weak norm reports endpoint attainment") {
    DistributionCurve c;
    c.lambda = {1.0, 10.0, 100.0};
    c.mu = {1.0, 0.2, 0.04};  // lambda mu grows: sup at the right endpoint
    auto wk = weak_norm(c, 1.0);
    CHECK(wk.endpoint_attained);
}
