#ifndef DQLAB_LIMITS_HPP
#define DQLAB_LIMITS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqlab/fractional.hpp"
#include "dqlab/measure.hpp"
#include "dqlab/norms.hpp"
#include "dqlab/oracle.hpp"
#include "dqlab/special.hpp"

namespace dqlab {

enum class Side { LambdaToInfinity, LambdaToZero };

inline const char* to_string(Side s) {
    return s == Side::LambdaToInfinity ? "lambda->inf" : "lambda->0+";
}

struct LimitEstimate {
    Side direction = Side::LambdaToInfinity;
    double value = 0.0;
    double slope = 0.0;   // fitted log-log slope of lambda^p mu over the window
    double error = 0.0;   // spread over the window + slope drift
    double window_lo = 0.0, window_hi = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

/// Plateau of lambda^p mu(lambda) over the last (resp. first) `points` usable
/// grid nodes. A node is usable when mu is finite and the certified truncation
/// bound is below 5% of mu. Converged requires |slope| < 0.05.
inline LimitEstimate plateau_limit(const DistributionCurve& c, double p, Side side,
                                   int points = 8) {
    LimitEstimate est;
    est.direction = side;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!std::isfinite(c.mu[i]) || c.mu[i] <= 0.0) continue;
        if (!c.truncation_bound.empty() && std::isfinite(c.mu[i]) &&
            c.truncation_bound[i] > 0.05 * c.mu[i])
            continue;
        idx.push_back(i);
    }
    if (idx.size() < static_cast<std::size_t>(points)) {
        est.verdict = Verdict::Inconclusive;
        return est;
    }
    std::vector<std::size_t> win;
    if (side == Side::LambdaToInfinity)
        win.assign(idx.end() - points, idx.end());
    else
        win.assign(idx.begin(), idx.begin() + points);

    double sx = 0, sy = 0, sxx = 0, sxy = 0, mean = 0;
    for (std::size_t i : win) {
        double y = std::pow(c.lambda[i], p) * c.mu[i];
        double lx = std::log(c.lambda[i]), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        mean += y;
    }
    const double n = static_cast<double>(win.size());
    mean /= n;
    est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.value = mean;
    est.window_lo = c.lambda[win.front()];
    est.window_hi = c.lambda[win.back()];
    double dev = 0.0;
    for (std::size_t i : win)
        dev = std::max(dev, std::abs(std::pow(c.lambda[i], p) * c.mu[i] - mean));
    est.error = dev + std::abs(est.slope) * mean;
    est.verdict = std::abs(est.slope) < 0.05 ? Verdict::Ok : Verdict::NotConverged;
    return est;
}

/// Theorem 1/3: plateau of lambda^p nu_gamma(E_{lambda, 1+gamma/p}) as
/// lambda -> inf (gamma > 0) or lambda -> 0+ (gamma < 0); to be compared with
/// (k(p,n)/|gamma|) ||grad u||_p^p.
inline LimitEstimate sobolev_limit(const TestFunction& u, double gamma, double p,
                                   OracleOptions opts = {}) {
    if (gamma == 0.0) throw std::invalid_argument("sobolev_limit: gamma != 0");
    auto grid = gamma > 0.0 ? default_lambda_grid() : log_grid(1e-6, 1e3, 16);
    auto curve = oracle_distribution_1d(u, MeasureSpec{1, gamma}, QuotientSpec::sobolev(gamma, p),
                                        grid, opts);
    return plateau_limit(curve, p,
                         gamma > 0.0 ? Side::LambdaToInfinity : Side::LambdaToZero);
}

inline double sobolev_limit_predicted(const TestFunction& u, double gamma, double p, int n = 1) {
    if (!u.exact_grad_lp_norm) throw std::invalid_argument("predicted: exact gradient norm needed");
    return k_constant(p, n) / std::abs(gamma) * std::pow((*u.exact_grad_lp_norm)(p), p);
}

/// Theorem 4 anomaly: for indicators the same plateau equals
/// k(1,n) TV / |gamma+1| instead of k(1,n) TV / |gamma|.
inline LimitEstimate indicator_anomaly(const TestFunction& u, double gamma,
                                       OracleOptions opts = {}) {
    if (!u.indicator) throw std::invalid_argument("indicator_anomaly: indicator input required");
    if (gamma >= -1.0 && gamma <= 0.0)
        throw std::invalid_argument("indicator_anomaly: gamma outside [-1, 0]");
    auto curve = oracle_distribution_1d(u, MeasureSpec{1, gamma},
                                        QuotientSpec::sobolev(gamma, 1.0),
                                        default_lambda_grid(), opts);
    return plateau_limit(curve, 1.0,
                         gamma > 0.0 ? Side::LambdaToInfinity : Side::LambdaToZero);
}

inline double indicator_anomaly_predicted(double tv, double gamma, int n = 1) {
    return k_constant(1.0, n) * tv / std::abs(gamma + 1.0);
}

/// Theorem 6: plateau of lambda^p nu_gamma(E_{lambda, gamma/p}); directions
/// REVERSED relative to the Sobolev family (lambda -> 0+ for gamma > 0).
/// Compare with (2 sigma_{n-1}/|gamma|) ||u||_p^p.
inline LimitEstimate lp_limit(const TestFunction& u, double gamma, double p,
                              OracleOptions opts = {}) {
    if (gamma == 0.0) throw std::invalid_argument("lp_limit: gamma != 0");
    auto curve = oracle_distribution_1d(u, MeasureSpec{1, gamma}, QuotientSpec::lp(gamma, p),
                                        default_lambda_grid(), opts);
    return plateau_limit(curve, p,
                         gamma > 0.0 ? Side::LambdaToZero : Side::LambdaToInfinity);
}

inline double lp_limit_predicted(const TestFunction& u, double gamma, double p, int n = 1) {
    if (!u.exact_lp_norm) throw std::invalid_argument("predicted: exact L^p norm needed");
    return 2.0 * sphere_area(n) / std::abs(gamma) * std::pow((*u.exact_lp_norm)(p), p);
}

/// eq:upperbdd_by_liminf probe, gamma in [-1, 0): the lambda -> 0+ plateau for
/// C^1-type u still equals (k(1,n)/|gamma|) ||u'||_1 even though the sup over
/// the unit ball is infinite.
inline LimitEstimate liminf_lowerbound_probe(const TestFunction& u, double gamma,
                                             OracleOptions opts = {}) {
    if (!(gamma >= -1.0 && gamma < 0.0))
        throw std::invalid_argument("liminf_lowerbound_probe: gamma in [-1, 0)");
    auto curve = oracle_distribution_1d(u, MeasureSpec{1, gamma},
                                        QuotientSpec::sobolev(gamma, 1.0),
                                        default_lambda_grid(), opts);
    return plateau_limit(curve, 1.0, Side::LambdaToZero);
}

/// Richardson-extrapolated s-limits.
struct SLimitEstimate {
    double value = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> eps;           // 1-s (BBM) or s (MSh)
    std::vector<double> raw;           // eps * ||u||^p at each eps
    std::vector<double> extrapolated;  // successive linear extrapolants to eps = 0
};

namespace detail {

inline SLimitEstimate richardson_s_limit(const std::vector<double>& eps,
                                         const std::vector<double>& raw, double rel_tol) {
    SLimitEstimate est;
    est.eps = eps;
    est.raw = raw;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        double e0 = eps[i], e1 = eps[i + 1];
        est.extrapolated.push_back((e0 * raw[i + 1] - e1 * raw[i]) / (e0 - e1));
    }
    if (est.extrapolated.size() >= 2) {
        double last = est.extrapolated.back();
        double prev = est.extrapolated[est.extrapolated.size() - 2];
        est.value = last;
        est.verdict = std::abs(last - prev) <= rel_tol * std::abs(last) ? Verdict::Ok
                                                                        : Verdict::NotConverged;
    }
    return est;
}

}  // namespace detail

/// BBM: lim_{s->1-} (1-s) ||u||_{W^{s,p}}^p = (k(p,n)/p) ||grad u||_p^p,
/// evaluated at s in {0.9, 0.95, 0.975, 0.99} and extrapolated in 1-s.
inline SLimitEstimate bbm_limit(const TestFunction& u, double p, double rel_tol = 0.02) {
    std::vector<double> svals{0.9, 0.95, 0.975, 0.99}, eps, raw;
    for (double s : svals) {
        auto r = fractional_seminorm_pow(u, s, p);
        if (r.verdict != Verdict::Ok) {
            SLimitEstimate bad;
            bad.verdict = r.verdict;
            return bad;
        }
        eps.push_back(1.0 - s);
        raw.push_back((1.0 - s) * r.value_pow);
    }
    return detail::richardson_s_limit(eps, raw, rel_tol);
}

/// Maz'ya-Shaposhnikova: lim_{s->0+} s ||u||_{W^{s,p}}^p =
/// (2 sigma_{n-1}/p) ||u||_p^p, at s in {0.1, 0.05, 0.025, 0.01}.
inline SLimitEstimate msh_limit(const TestFunction& u, double p, double rel_tol = 0.02) {
    std::vector<double> svals{0.1, 0.05, 0.025, 0.01}, eps, raw;
    for (double s : svals) {
        auto r = fractional_seminorm_pow(u, s, p);
        if (r.verdict != Verdict::Ok) {
            SLimitEstimate bad;
            bad.verdict = r.verdict;
            return bad;
        }
        eps.push_back(s);
        raw.push_back(s * r.value_pow);
    }
    return detail::richardson_s_limit(eps, raw, rel_tol);
}

}  // namespace dqlab

#endif
