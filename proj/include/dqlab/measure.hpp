#ifndef DQLAB_MEASURE_HPP
#define DQLAB_MEASURE_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dqlab/test_function.hpp"

namespace dqlab {

enum class Verdict { Ok, Divergent, NotConverged, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Ok: return "ok";
        case Verdict::Divergent: return "divergent";
        case Verdict::NotConverged: return "not-converged";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// The weighted measure nu_gamma = |h|^{gamma-n} dx dh on R^{2n}.
struct MeasureSpec {
    int n = 1;
    double gamma = 1.0;

    double weight(std::span<const double> h) const {
        double r = 0.0;
        for (double hi : h) r += hi * hi;
        r = std::sqrt(r);
        return std::pow(r, gamma - n);
    }
};

/// Denominator exponent b of the difference quotient |Delta_h u| / |h|^b.
struct QuotientSpec {
    double b = 2.0;

    /// Sobolev family: b = 1 + gamma/p.
    static QuotientSpec sobolev(double gamma, double p) { return {1.0 + gamma / p}; }
    /// L^p family: b = gamma/p.
    static QuotientSpec lp(double gamma, double p) { return {gamma / p}; }
};

/// |u(x+h) - u(x)| / |h|^b.
inline double diff_quotient(const TestFunction& u, std::span<const double> x,
                            std::span<const double> h, double b) {
    double r2 = 0.0;
    for (double hi : h) r2 += hi * hi;
    if (r2 == 0.0) throw std::invalid_argument("diff_quotient: h != 0 required");
    std::vector<double> xph(x.begin(), x.end());
    for (std::size_t i = 0; i < xph.size(); ++i) xph[i] += h[i];
    return std::abs(u.eval(xph) - u.eval(x)) / std::pow(std::sqrt(r2), b);
}

inline double diff_quotient(const TestFunction& u, double x, double h, double b) {
    return diff_quotient(u, std::span<const double>(&x, 1), std::span<const double>(&h, 1), b);
}

/// Log-spaced grid, points_per_decade entries per decade, inclusive of lo.
inline std::vector<double> log_grid(double lo, double hi, int points_per_decade = 16) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("log_grid: 0 < lo < hi required");
    std::vector<double> g;
    double l0 = std::log10(lo), l1 = std::log10(hi);
    int m = static_cast<int>(std::ceil((l1 - l0) * points_per_decade));
    g.reserve(m + 1);
    for (int i = 0; i <= m; ++i) g.push_back(std::pow(10.0, l0 + (l1 - l0) * i / m));
    return g;
}

/// Default lambda grid of the experiments: [1e-3, 1e6], 16 points per decade.
inline std::vector<double> default_lambda_grid() { return log_grid(1e-3, 1e6, 16); }

/// Monte Carlo sampling layout: log-spaced radial shells for |h| with the
/// proposal density proportional to r^{gamma-1} on each shell.
struct SamplingPlan {
    double r_min = 1e-6;
    double r_max = 1e3;
    int shells = 64;
    int samples_per_shell = 4096;
    std::uint64_t seed = 0x5eed;

    static SamplingPlan for_support(double support_radius, double r_min_scale = 1e-6,
                                    double r_max_scale = 1e3) {
        SamplingPlan p;
        p.r_min = r_min_scale * support_radius;
        p.r_max = r_max_scale * support_radius;
        return p;
    }
};

/// Sampled survival function lambda -> nu_gamma(E_{lambda,b}[u]).
struct DistributionCurve {
    std::vector<double> lambda;
    std::vector<double> mu;
    std::vector<double> stderr_;         // zero for deterministic oracle curves
    std::vector<double> truncation_bound;  // certified mass outside the window
    bool truncation_inconclusive = false;  // bound exceeded 5% somewhere
    bool monotonicity_flagged = false;     // raw violation beyond 3 stderr

    std::size_t size() const { return lambda.size(); }

    /// mu interpolated at lam (log-linear); 0 beyond the last node.
    double mu_at(double lam) const {
        if (lambda.empty()) return 0.0;
        if (lam <= lambda.front()) return mu.front();
        if (lam >= lambda.back()) return mu.back();
        auto it = std::upper_bound(lambda.begin(), lambda.end(), lam);
        std::size_t i = static_cast<std::size_t>(it - lambda.begin()) - 1;
        double t = std::log(lam / lambda[i]) / std::log(lambda[i + 1] / lambda[i]);
        if (mu[i] <= 0.0 || mu[i + 1] <= 0.0)
            return mu[i] + t * (mu[i + 1] - mu[i]);
        return std::exp((1.0 - t) * std::log(mu[i]) + t * std::log(mu[i + 1]));
    }
};

/// Pool-adjacent-violators pass enforcing a nonincreasing mu. Raw violations
/// beyond 3 stderr are flagged rather than silently averaged away.
inline void enforce_monotone(DistributionCurve& c) {
    const std::size_t n = c.mu.size();
    if (n == 0) return;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double tol = 3.0 * (c.stderr_.empty() ? 0.0 : std::hypot(c.stderr_[i], c.stderr_[i + 1]));
        if (c.mu[i + 1] > c.mu[i] + tol) c.monotonicity_flagged = true;
    }
    // isotonic (antitonic) regression by PAVA on the reversed sequence
    std::vector<double> level(n), weight(n);
    std::vector<std::size_t> count(n);
    std::size_t blocks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = c.mu[n - 1 - i];
        level[blocks] = v;
        weight[blocks] = 1.0;
        count[blocks] = 1;
        ++blocks;
        while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
            double w = weight[blocks - 2] + weight[blocks - 1];
            level[blocks - 2] =
                (level[blocks - 2] * weight[blocks - 2] + level[blocks - 1] * weight[blocks - 1]) /
                w;
            weight[blocks - 2] = w;
            count[blocks - 2] += count[blocks - 1];
            --blocks;
        }
    }
    std::size_t pos = 0;
    for (std::size_t bidx = 0; bidx < blocks; ++bidx)
        for (std::size_t k = 0; k < count[bidx]; ++k) c.mu[n - 1 - pos++] = level[bidx];
}

}  // namespace dqlab

#endif
