#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dqlab/corpus.hpp"
#include "dqlab/fractional.hpp"
#include "dqlab/limits.hpp"

using namespace dqlab;

TEST_CASE("Sobolev-family plateaus: hat, p = 1, both directions") {
    auto hat = make_hat();
    for (double gamma : {0.5, 1.0, 2.0, -2.0, -3.0}) {
        INFO("gamma=" << gamma);
        auto est = sobolev_limit(hat, gamma, 1.0);
        CHECK(est.verdict == Verdict::Ok);
        CHECK(est.value ==
              Catch::Approx(sobolev_limit_predicted(hat, gamma, 1.0)).epsilon(0.02));
    }
}

TEST_CASE("consistency chain: plateau * |gamma| / k(1,1) recovers TV = 2") {
    auto hat = make_hat();
    for (double gamma : {0.5, 1.0, 2.0, -2.0, -3.0}) {
        auto est = sobolev_limit(hat, gamma, 1.0);
        CHECK(est.value * std::abs(gamma) / k_constant(1.0, 1) ==
              Catch::Approx(2.0).epsilon(0.02));
    }
}

TEST_CASE("indicator anomaly: constant |gamma+1| instead of |gamma|") {
    auto ind = make_indicator_interval(0.0, 1.0);
    for (double gamma : {1.0, 2.0}) {
        auto est = indicator_anomaly(ind, gamma);
        double anomaly = indicator_anomaly_predicted(1.0, gamma);  // TV of 1_{[0,1]} jumps = 2
        // 1_{[0,1]} has TV 2: predicted k TV/|gamma+1| with TV = 2
        anomaly = k_constant(1.0, 1) * 2.0 / std::abs(gamma + 1.0);
        CHECK(est.verdict == Verdict::Ok);
        CHECK(est.value == Catch::Approx(anomaly).epsilon(0.02));
        double w11 = k_constant(1.0, 1) * 2.0 / std::abs(gamma);
        CHECK(est.value / w11 ==
              Catch::Approx(std::abs(gamma) / std::abs(gamma + 1.0)).epsilon(0.03));
    }
}

TEST_CASE("Theorem 6 exact case: hat, gamma = -1, p = 1, lambda mu = 4") {
    auto hat = make_hat();
    std::vector<double> probes{5.0, 8.0, 20.0, 100.0};
    auto c = oracle_distribution_1d(hat, MeasureSpec{1, -1.0}, QuotientSpec::lp(-1.0, 1.0),
                                    probes);
    for (std::size_t i = 0; i < probes.size(); ++i)
        CHECK(probes[i] * c.mu[i] == Catch::Approx(4.0).epsilon(0.01));
}

TEST_CASE("L^p family: reversed directions, hat gamma = 2 p = 2") {
    auto hat = make_hat();
    auto est = lp_limit(hat, 2.0, 2.0);
    CHECK(est.direction == Side::LambdaToZero);
    CHECK(est.verdict == Verdict::Ok);
    CHECK(est.value == Catch::Approx(lp_limit_predicted(hat, 2.0, 2.0)).epsilon(0.02));
}

TEST_CASE("liminf probe in gamma in [-1,0): plateau still k/|gamma| ||u'||_1") {
    auto hat = make_hat();
    auto est = liminf_lowerbound_probe(hat, -0.5);
    CHECK(est.verdict == Verdict::Ok);
    CHECK(est.value == Catch::Approx(2.0 * 2.0 / 0.5).epsilon(0.02));
}

TEST_CASE("BBM and MSh limits for the hat at p = 1 both equal 4") {
    auto hat = make_hat();
    auto bbm = bbm_limit(hat, 1.0);
    auto msh = msh_limit(hat, 1.0);
    CHECK(bbm.verdict == Verdict::Ok);
    CHECK(msh.verdict == Verdict::Ok);
    CHECK(bbm.value == Catch::Approx(4.0).epsilon(0.02));
    CHECK(msh.value == Catch::Approx(4.0).epsilon(0.02));
}

TEST_CASE("fractional seminorm: divergence verdicts") {
    auto ind = make_indicator_interval(0.0, 1.0);
    CHECK(fractional_seminorm_pow(ind, 0.6, 2.0).verdict == Verdict::Divergent);  // sp > 1
    CHECK(fractional_seminorm_pow(ind, 0.5, 1.0).verdict == Verdict::Ok);
    auto g = make_cantor_g(2, 0.25);  // monotone, jump at infinity
    CHECK(fractional_seminorm_pow(g, 0.4, 2.0).verdict == Verdict::Divergent);  // sp < 1
    CHECK(fractional_seminorm_pow(g, 0.75, 2.0).verdict == Verdict::Ok);
}

TEST_CASE("gamma-reweighting path independence of the W^{s,p} seminorm") {
    auto hat = make_hat();
    double s = 0.6, p = 2.0;
    double direct = fractional_seminorm_pow(hat, s, p).value_pow;
    for (double gamma : {-0.5, 1.0, 2.0}) {
        auto rw = fractional_via_reweighting(hat, s, p, gamma);
        CHECK(std::pow(rw.value, p) == Catch::Approx(direct).epsilon(0.01));
    }
}

TEST_CASE("2D BBM via MC: bump, p = 2, limit (k(2,2)/2) ||grad u||_2^2") {
    auto u = make_smooth_bump(2);
    double grad = radial_grad_lp_pow(*u.radial, 2.0);
    double lp = radial_lp_pow(*u.radial, 2.0);
    std::vector<double> svals{0.9, 0.95}, eps, raw;
    for (double s : svals) {
        auto r = fractional_seminorm_mc_2d(u, s, 2.0, grad, lp);
        eps.push_back(1.0 - s);
        raw.push_back((1.0 - s) * r.value_pow);
    }
    double extrap = (eps[0] * raw[1] - eps[1] * raw[0]) / (eps[0] - eps[1]);
    CHECK(extrap == Catch::Approx(k_constant(2.0, 2) / 2.0 * grad).epsilon(0.05));
}

TEST_CASE("2D lift of a 1D profile has finite fractional seminorm by MC") {
    auto g = make_cantor_g(2, 0.25);
    auto u = lift_to_dim(g, 2);
    // reference norms by coarse 2D quadrature through the lift structure
    double grad = 10.0, lp = 10.0;  // generous Lipschitz-style bounds
    auto r = fractional_seminorm_mc_2d(u, 0.5, 2.0, grad, lp, 24, 1024);
    CHECK(std::isfinite(r.value_pow));
    CHECK(r.value_pow > 0.0);
}
