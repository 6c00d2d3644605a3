#ifndef DQLAB_COUNTEREXAMPLES_HPP
#define DQLAB_COUNTEREXAMPLES_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqlab/corpus.hpp"
#include "dqlab/fractional.hpp"
#include "dqlab/norms.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

/// Parameters of the interpolation line (1/p, s) = (1-theta)(1/q, t) + theta(1, 1)
/// together with the derived slope gamma0 and the Cantor contraction ratio eps.
struct InterpolationParams {
    double t, q, theta;
    double s, p, r;       // r = q/(1-theta), the critical Lorentz index
    double gamma0;        // -(1-t)/(1-1/q)
    double alpha;         // 1 + gamma0 = s + gamma0/p = t + gamma0/q
    double eps;           // 2^{-1/alpha} when alpha > 0, else NaN

    static InterpolationParams make(double t, double q, double theta) {
        if (!(t > 0.0 && t < 1.0 && q > 1.0 && theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("InterpolationParams: t, theta in (0,1), q > 1");
        InterpolationParams ip;
        ip.t = t;
        ip.q = q;
        ip.theta = theta;
        ip.s = (1.0 - theta) * t + theta;
        ip.p = 1.0 / ((1.0 - theta) / q + theta);
        ip.r = q / (1.0 - theta);
        ip.gamma0 = -(1.0 - t) / (1.0 - 1.0 / q);
        ip.alpha = 1.0 + ip.gamma0;
        ip.eps = ip.alpha > 0.0 ? std::pow(2.0, -1.0 / ip.alpha)
                                : std::numeric_limits<double>::quiet_NaN();
        return ip;
    }

    /// The affine identity s + gamma/p = (1-theta)(t + gamma/q) + theta(1+gamma),
    /// valid for every gamma; returns the two sides' difference.
    double affine_identity_defect(double gamma) const {
        return (s + gamma / p) -
               ((1.0 - theta) * (t + gamma / q) + theta * (1.0 + gamma));
    }
};

struct GrowthRow {
    int j = 0;
    double tv = 0.0;
    double frac_pow = 0.0;  // ||g_j||_{W^{t,q}}^q
    double lorentz = 0.0;   // [Q_{s+gamma/p} g_j]_{L^{p,r}(nu_gamma)}
    Verdict lorentz_verdict = Verdict::Ok;
    bool endpoint_limited = false;
};

struct GrowthTable {
    InterpolationParams params;
    double gamma = 0.0, r = 0.0;
    std::vector<GrowthRow> rows;
    double frac_exponent = 0.0;     // fitted d log(frac_pow)/d log j, expect ~1
    double lorentz_exponent = 0.0;  // fitted d log(lorentz)/d log j, expect ~1/r
};

namespace detail {

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) return 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Theorem 7(ii) growth study of the Cantor family: TV stays 1, the W^{t,q}
/// seminorm^q grows like j, and the Lorentz L^{p,r'} quasi-norm of the
/// difference quotient grows like j^{1/r'} for r' below the critical index.
/// Fits exclude j in {0, 1} (pre-asymptotic).
inline GrowthTable growth_table(const InterpolationParams& ip, int j_max, double gamma, double r) {
    if (j_max > 10) throw std::invalid_argument("growth_table: j_max <= 10");
    if (gamma == ip.gamma0) throw std::invalid_argument("growth_table: gamma != gamma0 required");
    GrowthTable tab;
    tab.params = ip;
    tab.gamma = gamma;
    tab.r = r;
    const double b = ip.s + gamma / ip.p;
    // the g_j curves decay slowly (near-critical exponent); the window must
    // reach past the rolloff at lambda ~ Lip(g_j)^b or the tail fit under-
    // resolves for large j
    auto grid = log_grid(1e-3, 1e8, 16);
    std::vector<double> js, fracs, lors;
    for (int j = 0; j <= j_max; ++j) {
        GrowthRow row;
        row.j = j;
        auto g = make_cantor_g(j, ip.eps);
        row.tv = g.poly->total_variation();
        auto fr = fractional_seminorm_pow(g, ip.t, ip.q);
        row.frac_pow = fr.value_pow;
        auto curve = oracle_distribution_1d(g, MeasureSpec{1, gamma}, QuotientSpec{b}, grid);
        auto lz = lorentz_norm(curve, LorentzSpec{ip.p, r});
        row.lorentz = lz.value;
        row.lorentz_verdict = lz.verdict;
        auto wk = weak_norm(curve, ip.p);
        row.endpoint_limited = wk.endpoint_attained;
        tab.rows.push_back(row);
        // the j = 0 row is the j-independent g_0 background; the theorem's
        // asymptotic growth lives in the excess above it (on the power scale)
        if (j >= 2 && lz.verdict == Verdict::Ok && fr.verdict == Verdict::Ok) {
            double f0 = tab.rows.front().frac_pow;
            double l0 = std::pow(tab.rows.front().lorentz, r);
            double fex = row.frac_pow - f0;
            double lex = std::pow(row.lorentz, r) - l0;
            if (fex > 0.0 && lex > 0.0) {
                js.push_back(j);
                fracs.push_back(fex);
                lors.push_back(std::pow(lex, 1.0 / r));
            }
        }
    }
    tab.frac_exponent = detail::loglog_slope(js, fracs);
    tab.lorentz_exponent = detail::loglog_slope(js, lors);
    return tab;
}

/// Restricted-domain superlevel mass A_{j,lambda} = nu_gamma(E_{lambda, s+gamma/p}[g_j]
/// intersected with {(x,h) in [0,1] x (0,1] : x + h <= 1}), exactly as the
/// Theorem 7(ii) proof defines it.
inline DistributionCurve staircase_curve(const InterpolationParams& ip, int j, double gamma,
                                         const std::vector<double>& lambda) {
    OracleOptions opts;
    opts.restricted_triangle = true;
    auto g = make_cantor_g(j, ip.eps);
    return oracle_distribution_1d(g, MeasureSpec{1, gamma}, QuotientSpec{ip.s + gamma / ip.p},
                                  lambda, opts);
}

struct StaircaseRow {
    int level = 0;       // ell: compares A_ell against A_{ell-1}
    double lambda = 0.0;
    double lhs = 0.0;    // A_{ell, lambda}
    double rhs = 0.0;    // eps^{gamma-gamma0} A_{ell-1, lambda eps^{(gamma-gamma0)/p}}
    bool ok = false;
};

struct StaircaseReport {
    double B = 1.0;  // eps^{-(gamma-gamma0)}
    std::vector<StaircaseRow> rows;
    std::vector<double> anchors;  // A_{ell, 1/2} for each level
    bool all_ok = true;
};

/// Verifies eq:A_est, A_{j,lambda} >= eps^{gamma-gamma0} A_{j-1, lambda eps^{(gamma-gamma0)/p}},
/// for ell = 1..j at the sampled lambdas. Violations beyond integration slack
/// are hard failures.
inline StaircaseReport staircase_check(const InterpolationParams& ip, int j, double gamma,
                                       std::vector<double> lambda_samples = {0.25, 0.5, 1.0, 2.0},
                                       double rel_slack = 0.02) {
    StaircaseReport rep;
    const double dg = gamma - ip.gamma0;
    rep.B = std::pow(ip.eps, -dg);
    const double shift = std::pow(ip.eps, dg / ip.p);
    // grid covering both lambda and the shifted lambda for every level
    double lo = *std::min_element(lambda_samples.begin(), lambda_samples.end());
    double hi = *std::max_element(lambda_samples.begin(), lambda_samples.end());
    lo = std::min(lo, lo * std::min(shift, 1.0)) / 4.0;
    hi = std::max(hi, hi * std::max(shift, 1.0)) * 4.0;
    auto grid = log_grid(lo, hi, 32);

    std::vector<DistributionCurve> curves;
    for (int l = 0; l <= j; ++l) curves.push_back(staircase_curve(ip, l, gamma, grid));
    for (int l = 1; l <= j; ++l) {
        for (double lam : lambda_samples) {
            StaircaseRow row;
            row.level = l;
            row.lambda = lam;
            row.lhs = curves[static_cast<std::size_t>(l)].mu_at(lam);
            row.rhs = std::pow(ip.eps, dg) *
                      curves[static_cast<std::size_t>(l - 1)].mu_at(lam * shift);
            row.ok = row.lhs >= row.rhs * (1.0 - rel_slack) - 1e-12;
            rep.all_ok = rep.all_ok && row.ok;
            rep.rows.push_back(row);
        }
        rep.anchors.push_back(curves[static_cast<std::size_t>(l)].mu_at(0.5));
    }
    return rep;
}

/// Boundary (t = 1/q) family g_j(x) = g_0(2^j x) g_0(2^j (2-x)): TV stays 2
/// while the Lorentz quasi-norm of Q_{(1+gamma)/p} grows like j^{1/r}.
struct BoundaryTable {
    double gamma = 0.0, p = 0.0, r = 0.0, q = 0.0;
    std::vector<GrowthRow> rows;
    double frac_exponent = 0.0;     // ||g_j||_{W^{1/q,q}}^q vs j, expect ~1
    double lorentz_exponent = 0.0;  // expect ~1/r
};

inline BoundaryTable boundary_family_blowup(int j_max, double gamma, double p, double r,
                                            double q = 2.0) {
    if (gamma >= -1.0 && gamma <= 0.0)
        throw std::invalid_argument("boundary_family_blowup: gamma outside [-1, 0]");
    BoundaryTable tab;
    tab.gamma = gamma;
    tab.p = p;
    tab.r = r;
    tab.q = q;
    const double b = (1.0 + gamma) / p;
    auto grid = log_grid(1e-3, 1e8, 16);
    std::vector<double> js, fracs, lors;
    for (int j = 0; j <= j_max; ++j) {
        GrowthRow row;
        row.j = j;
        auto g = make_boundary_g(j);
        row.tv = g.poly->total_variation();
        auto fr = fractional_seminorm_pow(g, 1.0 / q, q);
        row.frac_pow = fr.value_pow;
        auto curve = oracle_distribution_1d(g, MeasureSpec{1, gamma}, QuotientSpec{b}, grid);
        auto lz = lorentz_norm(curve, LorentzSpec{p, r});
        row.lorentz = lz.value;
        row.lorentz_verdict = lz.verdict;
        tab.rows.push_back(row);
        if (j >= 2 && lz.verdict == Verdict::Ok && fr.verdict == Verdict::Ok) {
            double f0 = tab.rows.front().frac_pow;
            double l0 = std::pow(tab.rows.front().lorentz, r);
            double fex = row.frac_pow - f0;
            double lex = std::pow(row.lorentz, r) - l0;
            if (fex > 0.0 && lex > 0.0) {
                js.push_back(j);
                fracs.push_back(fex);
                lors.push_back(std::pow(lex, 1.0 / r));
            }
        }
    }
    tab.frac_exponent = detail::loglog_slope(js, fracs);
    tab.lorentz_exponent = detail::loglog_slope(js, lors);
    return tab;
}

}  // namespace dqlab

#endif
