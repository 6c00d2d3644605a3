#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dqlab/corpus.hpp"
#include "dqlab/mc.hpp"
#include "dqlab/oracle.hpp"

using namespace dqlab;

TEST_CASE("difference quotient is symmetric under (x,h) -> (x+h,-h)") {
    auto hat = make_hat();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uh(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng), h = uh(rng);
        if (h == 0.0) continue;
        double a[1] = {x}, hh[1] = {h};
        double b2[1] = {x + h}, nh[1] = {-h};
        CHECK(diff_quotient(hat, a, hh, 1.7) ==
              Catch::Approx(diff_quotient(hat, b2, nh, 1.7)).margin(1e-14));
    }
}

TEST_CASE("survival curves are non-increasing in lambda") {
    auto hat = make_hat();
    for (double gamma : {1.0, -0.5}) {
        auto c = oracle_distribution_1d(hat, MeasureSpec{1, gamma},
                                        QuotientSpec::sobolev(gamma, 1.0),
                                        default_lambda_grid());
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (std::isfinite(c.mu[i]) && std::isfinite(c.mu[i + 1]))
                CHECK(c.mu[i + 1] <= c.mu[i] + 1e-12);
        CHECK_FALSE(c.monotonicity_flagged);
    }
}

TEST_CASE("indicator oracle: lambda mu = k(1,1) TV / |gamma+1| exactly") {
    auto ind = make_indicator_interval(0.0, 1.0);
    // gamma = 1, b = 2: closed form plateau 2*2/2 = 2 at large lambda
    auto c = oracle_distribution_1d(ind, MeasureSpec{1, 1.0}, QuotientSpec{2.0},
                                    log_grid(1e2, 1e6, 4));
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(c.lambda[i] * c.mu[i] == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("homogeneity: scaling u by c shifts the curve in lambda") {
    auto hat = make_hat();
    auto grid = log_grid(1e-2, 1e2, 8);
    auto base = oracle_distribution_1d(hat, MeasureSpec{1, 1.0}, QuotientSpec{1.5}, grid);
    for (double c : {0.5, 3.0}) {
        auto scaled_fn = scale_value(hat, c);
        std::vector<double> shifted;
        for (double l : grid) shifted.push_back(l * c);
        auto sc = oracle_distribution_1d(scaled_fn, MeasureSpec{1, 1.0}, QuotientSpec{1.5},
                                         shifted);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(sc.mu[i] == Catch::Approx(base.mu[i]).epsilon(1e-8).margin(1e-12));
    }
}

TEST_CASE("oracle refinement self-check certifies its own resolution") {
    auto hat = make_hat();
    auto res = oracle_distribution_1d_checked(hat, MeasureSpec{1, 1.0}, QuotientSpec{2.0},
                                              log_grid(1e-2, 1e4, 8));
    CHECK(res.resolution_ok);
    CHECK(res.max_rel_change < 0.01);
}

TEST_CASE("Monte-Carlo agrees with the oracle within certified error") {
    struct Combo {
        const char* fn;
        double gamma, b;
    };
    const Combo combos[] = {
        {"hat", 1.0, 2.0},  {"hat", -1.0, -1.0}, {"hat", 2.0, 1.0},
        {"bump", 0.5, 1.5}, {"indicator", 1.0, 2.0}, {"cantor", 1.0, 1.25},
    };
    auto grid = log_grid(1e-2, 1e4, 6);
    for (const auto& cb : combos) {
        TestFunction u = cb.fn == std::string("hat")   ? make_hat()
                         : cb.fn == std::string("bump") ? make_smooth_bump(1)
                         : cb.fn == std::string("indicator")
                             ? make_indicator_interval(0.0, 1.0)
                             : make_cantor_g(2, 0.25);
        INFO(cb.fn << " gamma=" << cb.gamma << " b=" << cb.b);
        auto oracle = oracle_distribution_1d_checked(u, MeasureSpec{1, cb.gamma},
                                                     QuotientSpec{cb.b}, grid);
        SamplingPlan plan = SamplingPlan::for_support(std::max(u.support_radius, 1.0));
        plan.samples_per_shell = 8192;
        auto mc = estimate_distribution(u, MeasureSpec{1, cb.gamma}, QuotientSpec{cb.b}, grid,
                                        plan);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!std::isfinite(oracle.curve.mu[i])) continue;
            // 4 sigma: ~200 nodes are checked, a 3 sigma budget is too tight
            double err = 4.0 * mc.stderr_[i] + oracle.curve.stderr_[i] +
                         oracle.curve.truncation_bound[i] + mc.truncation_bound[i] +
                         1e-4 * std::abs(oracle.curve.mu[i]);
            CHECK(std::abs(oracle.curve.mu[i] - mc.mu[i]) <= err + 1e-9);
        }
    }
}

TEST_CASE("MC determinism: identical seed reproduces the curve exactly") {
    auto hat = make_hat();
    auto grid = log_grid(1e-1, 1e2, 4);
    SamplingPlan plan = SamplingPlan::for_support(1.0);
    plan.samples_per_shell = 512;
    auto a = estimate_distribution(hat, MeasureSpec{1, 1.0}, QuotientSpec{2.0}, grid, plan);
    auto b = estimate_distribution(hat, MeasureSpec{1, 1.0}, QuotientSpec{2.0}, grid, plan);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a.mu[i] == b.mu[i]);
}

TEST_CASE("gamma = 0 threshold verdict flips at the Lipschitz constant") {
    auto hat = make_hat();  // ||hat'||_inf = 1
    auto below = gamma_zero_threshold(hat, 0.5, log_grid(1e-6, 1e-1, 2));
    auto above = gamma_zero_threshold(hat, 1.5, log_grid(1e-6, 1e-1, 2));
    CHECK(below.verdict == Verdict::Divergent);
    CHECK(above.verdict == Verdict::Ok);
}

TEST_CASE("2D MC: disc indicator anomaly plateau k(1,2) TV / |gamma+1|") {
    auto disc = make_disc_indicator(1.0);
    // gamma = 2, b = 3, p = 1: predicted 4 * 2pi / 3 = 8pi/3
    auto grid = log_grid(1e2, 1e4, 4);
    SamplingPlan plan = SamplingPlan::for_support(1.0, 1e-8, 1e2);
    plan.samples_per_shell = 16384;
    plan.shells = 96;
    auto mc = estimate_distribution(disc, MeasureSpec{2, 2.0}, QuotientSpec{3.0}, grid, plan);
    double pred = 8.0 * std::numbers::pi / 3.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(grid[i] * mc.mu[i] == Catch::Approx(pred).epsilon(0.05));
}
