#ifndef DQLAB_MC_HPP
#define DQLAB_MC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "dqlab/measure.hpp"
#include "dqlab/special.hpp"

namespace dqlab {

namespace detail {

/// Inverse-CDF draw from density proportional to r^{gamma-1} on [r0, r1].
inline double sample_radius(double r0, double r1, double gamma, double unif) {
    if (gamma == 0.0) return r0 * std::pow(r1 / r0, unif);
    double a = std::pow(r0, gamma), b = std::pow(r1, gamma);
    return std::pow(a + unif * (b - a), 1.0 / gamma);
}

struct Sample {
    double q;  // difference-quotient value
    double g;  // importance weight (inverse x-density)
};

}  // namespace detail

/// Stratified importance-sampled estimate of lambda -> nu_gamma(E_{lambda,b}[u])
/// for n in {1,2}. Radial shells are log-spaced; |h| is drawn from the exact
/// r^{gamma-1} profile per shell so the radial weight is handled without
/// variance. x is drawn from the union supp(u) and supp(u) - h with balanced
/// multiple-importance weights.
inline DistributionCurve estimate_distribution(const TestFunction& u, const MeasureSpec& m,
                                               const QuotientSpec& q,
                                               const std::vector<double>& lambda,
                                               const SamplingPlan& plan) {
    if (u.dim != m.n) throw std::invalid_argument("estimate_distribution: dim mismatch");
    if (m.n != 1 && m.n != 2)
        throw std::invalid_argument("estimate_distribution: n in {1,2} supported");
    const double gamma = m.gamma, b = q.b;
    const double pi = std::numbers::pi;

    DistributionCurve curve;
    curve.lambda = lambda;
    curve.mu.assign(lambda.size(), 0.0);
    curve.stderr_.assign(lambda.size(), 0.0);
    curve.truncation_bound.assign(lambda.size(), 0.0);

    // degenerate constant input: zero curve without sampling
    if (u.sup_bound == 0.0 ||
        (u.dim == 1 && u.poly && u.poly->piece_count() == 1 && u.poly->coeffs[0].size() == 1 &&
         u.poly->coeffs[0][0] == u.poly->left_value && u.poly->left_value == u.poly->right_value))
        return curve;

    const double R = u.support_radius > 0 ? u.support_radius : 1.0;
    const double angular = (m.n == 1) ? 2.0 : 2.0 * pi;  // both signs / full circle

    std::vector<double> var(lambda.size(), 0.0);
    std::vector<double> pt(2), pth(2);

    for (int k = 0; k < plan.shells; ++k) {
        const double r0 = plan.r_min * std::pow(plan.r_max / plan.r_min,
                                                static_cast<double>(k) / plan.shells);
        const double r1 = plan.r_min * std::pow(plan.r_max / plan.r_min,
                                                static_cast<double>(k + 1) / plan.shells);
        const double Ck = angular * power_weight_integral(gamma, r0, r1);
        std::mt19937_64 rng(plan.seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        const int N = plan.samples_per_shell;
        std::vector<detail::Sample> samples;
        samples.reserve(N);
        for (int s = 0; s < N; ++s) {
            const double r = detail::sample_radius(r0, r1, gamma, unif(rng));
            double h1, h2 = 0.0;
            if (m.n == 1) {
                h1 = (unif(rng) < 0.5) ? r : -r;
            } else {
                double th = 2.0 * pi * unif(rng);
                h1 = r * std::cos(th);
                h2 = r * std::sin(th);
            }
            double x1, x2 = 0.0, g;
            if (u.constant_at_infinity) {
                // 1D monotone profile: hull interval where Delta_h can be nonzero
                double lo = u.poly->lo() - std::max(h1, 0.0);
                double hi = u.poly->hi() - std::min(h1, 0.0);
                x1 = lo + unif(rng) * (hi - lo);
                g = hi - lo;
            } else if (m.n == 1) {
                double lo = u.poly ? u.poly->lo() : u.indicator->a;
                double hi = u.poly ? u.poly->hi() : u.indicator->b;
                double len = hi - lo;
                bool second = unif(rng) < 0.5;
                x1 = lo + unif(rng) * len - (second ? h1 : 0.0);
                int c = (x1 >= lo && x1 <= hi) ? 1 : 0;
                if (x1 + h1 >= lo && x1 + h1 <= hi) ++c;
                g = 2.0 * len / c;
            } else {
                // union of two discs of radius R centered at 0 and -h
                bool second = unif(rng) < 0.5;
                double rr = R * std::sqrt(unif(rng));
                double th = 2.0 * pi * unif(rng);
                x1 = rr * std::cos(th) - (second ? h1 : 0.0);
                x2 = rr * std::sin(th) - (second ? h2 : 0.0);
                int c = (x1 * x1 + x2 * x2 <= R * R) ? 1 : 0;
                double y1 = x1 + h1, y2 = x2 + h2;
                if (y1 * y1 + y2 * y2 <= R * R) ++c;
                g = 2.0 * pi * R * R / c;
            }
            double du;
            if (m.n == 1) {
                du = u(x1 + h1) - u(x1);
            } else {
                pt[0] = x1;
                pt[1] = x2;
                pth[0] = x1 + h1;
                pth[1] = x2 + h2;
                du = u.eval(pth) - u.eval(pt);
            }
            if (du == 0.0) continue;
            samples.push_back({std::abs(du) / std::pow(r, b), g});
        }

        // suffix sums over samples sorted by quotient value
        std::sort(samples.begin(), samples.end(),
                  [](const detail::Sample& a, const detail::Sample& c) { return a.q < c.q; });
        std::vector<double> sg(samples.size() + 1, 0.0), sg2(samples.size() + 1, 0.0);
        for (std::size_t s = samples.size(); s-- > 0;) {
            sg[s] = sg[s + 1] + samples[s].g;
            sg2[s] = sg2[s + 1] + samples[s].g * samples[s].g;
        }
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            auto it = std::upper_bound(samples.begin(), samples.end(), lambda[i],
                                       [](double lam, const detail::Sample& a) { return lam < a.q; });
            std::size_t idx = static_cast<std::size_t>(it - samples.begin());
            double mean = sg[idx] / N;
            double mean2 = sg2[idx] / N;
            curve.mu[i] += Ck * mean;
            var[i] += Ck * Ck * std::max(0.0, mean2 - mean * mean) / N;
        }
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) curve.stderr_[i] = std::sqrt(var[i]);

    // certified truncation bounds outside [r_min, r_max]
    const double M = u.sup_bound;
    const double L = u.lipschitz.value_or(std::numeric_limits<double>::infinity());
    const double xmass = (m.n == 1) ? ((u.poly ? u.poly->hi() - u.poly->lo()
                                              : u.indicator->b - u.indicator->a) +
                                       plan.r_min)
                                    : pi * R * R;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double lam = lambda[i];
        double bd = 0.0;
        // interior: only radii with min(2M, L r) > lam r^b can contribute
        double rstar = 0.0;
        if (std::isinf(L))
            rstar = plan.r_min;
        else if (b > 1.0)
            rstar = std::min(plan.r_min, std::pow(L / lam, 1.0 / (b - 1.0)));
        else if (b < 1.0)
            rstar = (std::pow(lam / L, 1.0 / (1.0 - b)) >= plan.r_min) ? 0.0 : plan.r_min;
        else
            rstar = (L > lam) ? plan.r_min : 0.0;
        if (rstar > 0.0)
            bd += (gamma > 0.0) ? 2.0 * xmass * angular * std::pow(rstar, gamma) / gamma
                                : std::numeric_limits<double>::infinity();
        // exterior: |Delta| <= 2M, so empty once lam r_max^b >= 2M (b > 0)
        bool ext_empty = (b > 0.0) && lam * std::pow(plan.r_max, b) >= 2.0 * M;
        if (!ext_empty)
            bd += (gamma < 0.0)
                      ? 2.0 * xmass * angular * std::pow(plan.r_max, gamma) / (-gamma)
                      : std::numeric_limits<double>::infinity();
        curve.truncation_bound[i] = bd;
    }
    double peak = 0.0;
    for (double v : curve.mu) peak = std::max(peak, v);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (curve.truncation_bound[i] > 0.05 * std::max(curve.mu[i], 1e-3 * peak))
            curve.truncation_inconclusive = true;

    enforce_monotone(curve);
    return curve;
}

}  // namespace dqlab

#endif
