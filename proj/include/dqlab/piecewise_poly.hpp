#ifndef DQLAB_PIECEWISE_POLY_HPP
#define DQLAB_PIECEWISE_POLY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dqlab/special.hpp"

namespace dqlab {

// Dense polynomial helpers. Coefficients are monomial, ascending degree,
// always in a local variable t in [0,1] so that tiny pieces stay conditioned.
namespace poly {

inline double eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

inline std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// q(t) = p(alpha + beta t), Horner with polynomial accumulation.
inline std::vector<double> affine_compose(const std::vector<double>& c, double alpha, double beta) {
    std::vector<double> q{0.0};
    for (std::size_t i = c.size(); i-- > 0;) {
        // q <- q * (alpha + beta t) + c[i]
        std::vector<double> nq(q.size() + 1, 0.0);
        for (std::size_t k = 0; k < q.size(); ++k) {
            nq[k] += q[k] * alpha;
            nq[k + 1] += q[k] * beta;
        }
        nq[0] += c[i];
        q = std::move(nq);
    }
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    return q;
}

/// Roots of p in (lo,hi), found by dense sampling + bisection. Adequate for
/// the low-degree smooth pieces in this library; not a general root finder.
inline std::vector<double> roots_in(const std::vector<double>& c, double lo, double hi) {
    std::vector<double> roots;
    const int K = std::max<int>(32, static_cast<int>(c.size()) * 8);
    double prev_t = lo, prev_v = eval(c, lo);
    for (int i = 1; i <= K; ++i) {
        double t = lo + (hi - lo) * i / K;
        double v = eval(c, t);
        if (prev_v == 0.0) {
            roots.push_back(prev_t);
        } else if (v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            double a = prev_t, b = t, fa = prev_v;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b), fm = eval(c, m);
                if (fm == 0.0) { a = b = m; break; }
                if (std::signbit(fm) == std::signbit(fa)) { a = m; fa = fm; } else { b = m; }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_t = t;
        prev_v = v;
    }
    return roots;
}

}  // namespace poly

/// Continuous piecewise polynomial on R, constant outside [breaks.front(),
/// breaks.back()]. Piece i lives on [breaks[i], breaks[i+1]] with monomial
/// coefficients in the local variable t = (x - breaks[i]) / width.
class PiecewisePoly1D {
public:
    std::vector<double> breaks;
    std::vector<std::vector<double>> coeffs;
    double left_value = 0.0;
    double right_value = 0.0;

    PiecewisePoly1D() = default;
    PiecewisePoly1D(std::vector<double> brk, std::vector<std::vector<double>> cf, double lv,
                    double rv)
        : breaks(std::move(brk)), coeffs(std::move(cf)), left_value(lv), right_value(rv) {
        if (breaks.size() != coeffs.size() + 1)
            throw std::invalid_argument("PiecewisePoly1D: breaks/coeffs size mismatch");
        for (std::size_t i = 1; i < breaks.size(); ++i)
            if (!(breaks[i] > breaks[i - 1]))
                throw std::invalid_argument("PiecewisePoly1D: breaks must increase strictly");
    }

    static PiecewisePoly1D constant(double v) { return PiecewisePoly1D({0.0, 1.0}, {{v}}, v, v); }

    std::size_t piece_count() const { return coeffs.size(); }
    double lo() const { return breaks.front(); }
    double hi() const { return breaks.back(); }

    /// Index of the piece containing x; -1 left tail, piece_count() right tail.
    std::ptrdiff_t locate(double x) const {
        if (x < breaks.front()) return -1;
        if (x >= breaks.back()) return static_cast<std::ptrdiff_t>(coeffs.size());
        auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
        return static_cast<std::ptrdiff_t>(it - breaks.begin()) - 1;
    }

    double operator()(double x) const {
        std::ptrdiff_t i = locate(x);
        if (i < 0) return left_value;
        if (i >= static_cast<std::ptrdiff_t>(coeffs.size())) return right_value;
        double w = breaks[i + 1] - breaks[i];
        return poly::eval(coeffs[i], (x - breaks[i]) / w);
    }

    double derivative_at(double x) const {
        std::ptrdiff_t i = locate(x);
        if (i < 0 || i >= static_cast<std::ptrdiff_t>(coeffs.size())) return 0.0;
        double w = breaks[i + 1] - breaks[i];
        return poly::eval(poly::derivative(coeffs[i]), (x - breaks[i]) / w) / w;
    }

    PiecewisePoly1D scaled(double c) const {
        PiecewisePoly1D r = *this;
        for (auto& p : r.coeffs)
            for (auto& a : p) a *= c;
        r.left_value *= c;
        r.right_value *= c;
        return r;
    }

    /// v(x) = u(s x + c), s != 0.
    PiecewisePoly1D affine_pullback(double s, double c) const {
        if (s == 0.0) throw std::invalid_argument("affine_pullback: s != 0 required");
        PiecewisePoly1D r;
        std::size_t m = coeffs.size();
        r.breaks.resize(breaks.size());
        r.coeffs.resize(m);
        if (s > 0.0) {
            for (std::size_t i = 0; i < breaks.size(); ++i) r.breaks[i] = (breaks[i] - c) / s;
            r.coeffs = coeffs;
            r.left_value = left_value;
            r.right_value = right_value;
        } else {
            for (std::size_t i = 0; i < breaks.size(); ++i)
                r.breaks[breaks.size() - 1 - i] = (breaks[i] - c) / s;
            for (std::size_t i = 0; i < m; ++i)
                r.coeffs[m - 1 - i] = poly::affine_compose(coeffs[i], 1.0, -1.0);
            r.left_value = right_value;
            r.right_value = left_value;
        }
        return r;
    }

    /// Breakpoints of a and b merged, duplicates (relative tol) removed.
    static std::vector<double> merged_breaks(const PiecewisePoly1D& a, const PiecewisePoly1D& b) {
        std::vector<double> m;
        m.reserve(a.breaks.size() + b.breaks.size());
        std::merge(a.breaks.begin(), a.breaks.end(), b.breaks.begin(), b.breaks.end(),
                   std::back_inserter(m));
        double span = std::max(m.back() - m.front(), 1.0);
        std::vector<double> out;
        for (double x : m)
            if (out.empty() || x - out.back() > 1e-14 * span) out.push_back(x);
        return out;
    }

    /// Coefficients of this function on [a,b] in the local variable of [a,b].
    /// [a,b] must not straddle a breakpoint.
    std::vector<double> local_on(double a, double b) const {
        double mid = 0.5 * (a + b);
        std::ptrdiff_t i = locate(mid);
        if (i < 0) return {left_value};
        if (i >= static_cast<std::ptrdiff_t>(coeffs.size())) return {right_value};
        double w = breaks[i + 1] - breaks[i];
        double alpha = (a - breaks[i]) / w;
        double beta = (b - a) / w;
        return poly::affine_compose(coeffs[i], alpha, beta);
    }

    static PiecewisePoly1D linear_combine(double ca, const PiecewisePoly1D& a, double cb,
                                          const PiecewisePoly1D& b) {
        std::vector<double> brk = merged_breaks(a, b);
        PiecewisePoly1D r;
        r.breaks = brk;
        r.coeffs.resize(brk.size() - 1);
        for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
            std::vector<double> pa = a.local_on(brk[i], brk[i + 1]);
            std::vector<double> pb = b.local_on(brk[i], brk[i + 1]);
            std::vector<double> s(std::max(pa.size(), pb.size()), 0.0);
            for (std::size_t k = 0; k < pa.size(); ++k) s[k] += ca * pa[k];
            for (std::size_t k = 0; k < pb.size(); ++k) s[k] += cb * pb[k];
            r.coeffs[i] = std::move(s);
        }
        r.left_value = ca * a.left_value + cb * b.left_value;
        r.right_value = ca * a.right_value + cb * b.right_value;
        return r;
    }

    static PiecewisePoly1D product(const PiecewisePoly1D& a, const PiecewisePoly1D& b) {
        std::vector<double> brk = merged_breaks(a, b);
        PiecewisePoly1D r;
        r.breaks = brk;
        r.coeffs.resize(brk.size() - 1);
        for (std::size_t i = 0; i + 1 < brk.size(); ++i)
            r.coeffs[i] = poly::mul(a.local_on(brk[i], brk[i + 1]), b.local_on(brk[i], brk[i + 1]));
        r.left_value = a.left_value * b.left_value;
        r.right_value = a.right_value * b.right_value;
        return r;
    }

    /// Integral over [breaks.front(), breaks.back()] of |u|^p (p > 0).
    /// Pieces are split at sign changes so the integrand is smooth per panel.
    /// Exact int_a^b u dx (closed-form antiderivative per piece), including
    /// the constant tails.
    double integral(double a, double b) const {
        if (b < a) return -integral(b, a);
        double total = 0.0;
        if (a < lo()) total += left_value * (std::min(b, lo()) - a);
        if (b > hi()) total += right_value * (b - std::max(a, hi()));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            double x0 = std::max(a, breaks[i]), x1 = std::min(b, breaks[i + 1]);
            if (x1 <= x0) continue;
            double w = breaks[i + 1] - breaks[i];
            double t0 = (x0 - breaks[i]) / w, t1 = (x1 - breaks[i]) / w;
            double s = 0.0;
            for (std::size_t m = 0; m < coeffs[i].size(); ++m)
                s += coeffs[i][m] * (std::pow(t1, static_cast<double>(m + 1)) -
                                     std::pow(t0, static_cast<double>(m + 1))) /
                     static_cast<double>(m + 1);
            total += w * s;
        }
        return total;
    }

    double abs_pow_integral(double p) const {
        double total = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            double w = breaks[i + 1] - breaks[i];
            const auto& c = coeffs[i];
            std::vector<double> cuts{0.0};
            for (double rt : poly::roots_in(c, 0.0, 1.0))
                if (rt > 1e-13 && rt < 1.0 - 1e-13) cuts.push_back(rt);
            cuts.push_back(1.0);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                total += w * gauss20(
                                 [&](double t) { return std::pow(std::abs(poly::eval(c, t)), p); },
                                 cuts[k], cuts[k + 1]);
        }
        return total;
    }

    /// ||u||_{L^p}^p; requires both tails to vanish.
    double lp_norm_pow(double p) const {
        if (left_value != 0.0 || right_value != 0.0)
            throw std::domain_error("lp_norm_pow: function is not compactly supported");
        return abs_pow_integral(p);
    }

    /// int |u'|^p dx, pieces split at critical points.
    double deriv_abs_pow_integral(double p) const {
        double total = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            double w = breaks[i + 1] - breaks[i];
            std::vector<double> d = poly::derivative(coeffs[i]);
            std::vector<double> cuts{0.0};
            for (double rt : poly::roots_in(d, 0.0, 1.0))
                if (rt > 1e-13 && rt < 1.0 - 1e-13) cuts.push_back(rt);
            cuts.push_back(1.0);
            std::sort(cuts.begin(), cuts.end());
            // |u'(x)|^p dx = |d(t)/w|^p w dt
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                total += std::pow(w, 1.0 - p) *
                         gauss20([&](double t) { return std::pow(std::abs(poly::eval(d, t)), p); },
                                 cuts[k], cuts[k + 1]);
        }
        return total;
    }

    /// Exact total variation: per piece, sum of |increments| between
    /// consecutive critical points.
    double total_variation() const {
        double tv = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const auto& c = coeffs[i];
            std::vector<double> d = poly::derivative(c);
            std::vector<double> cuts{0.0};
            for (double rt : poly::roots_in(d, 0.0, 1.0))
                if (rt > 1e-13 && rt < 1.0 - 1e-13) cuts.push_back(rt);
            cuts.push_back(1.0);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
                tv += std::abs(poly::eval(c, cuts[k + 1]) - poly::eval(c, cuts[k]));
        }
        return tv;
    }

    double max_abs() const {
        double m = std::max(std::abs(left_value), std::abs(right_value));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            for (int k = 0; k <= 64; ++k)
                m = std::max(m, std::abs(poly::eval(coeffs[i], k / 64.0)));
        }
        return m;
    }

    double lipschitz_bound() const {
        double m = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            double w = breaks[i + 1] - breaks[i];
            std::vector<double> d = poly::derivative(coeffs[i]);
            for (int k = 0; k <= 64; ++k)
                m = std::max(m, std::abs(poly::eval(d, k / 64.0)) / w);
        }
        return m;
    }
};

}  // namespace dqlab

#endif
