#ifndef DQLAB_SPECIAL_HPP
#define DQLAB_SPECIAL_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace dqlab {

/// Gamma function via a Lanczos approximation (g = 7, 9 terms).
/// Good to ~13 significant digits on the real axis away from the poles.
inline double gamma_fn(double x) {
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // reflection formula
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

/// Surface area of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: n >= 1 required");
    if (n == 1) return 2.0;  // S^0 = two points
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma_fn(0.5 * n);
}

/// k(p,n) = int_{S^{n-1}} |e.w|^p dw, closed form
/// 2 pi^{(n-1)/2} Gamma((p+1)/2) / Gamma((n+p)/2).
inline double k_constant(double p, int n) {
    if (n < 1) throw std::invalid_argument("k_constant: n >= 1 required");
    if (p < 0) throw std::invalid_argument("k_constant: p >= 0 required");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (n - 1)) * gamma_fn(0.5 * (p + 1.0)) /
           gamma_fn(0.5 * (n + p));
}

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature on [a,b].
inline double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-13, int max_depth = 48) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// k(p,n) by direct sphere quadrature, the independent cross-check of the
/// closed form. n = 1 is the two-point sum; n = 2 integrates over the circle;
/// n = 3 reduces to a 1D polar integral.
inline double k_constant_quadrature(double p, int n) {
    const double pi = std::numbers::pi;
    switch (n) {
        case 1:
            return 2.0;  // |e.w| = 1 at both points of S^0
        case 2:
            return adaptive_quad([p](double th) { return std::pow(std::abs(std::cos(th)), p); },
                                 0.0, 2.0 * pi);
        case 3:
            // measure element 2 pi sin(phi) dphi, e = north pole
            return adaptive_quad(
                [p, pi](double phi) {
                    return 2.0 * pi * std::pow(std::abs(std::cos(phi)), p) * std::sin(phi);
                },
                0.0, pi);
        default:
            throw std::invalid_argument("k_constant_quadrature: n in {1,2,3} supported");
    }
}

/// Nodes/weights of 20-point Gauss-Legendre on [-1,1].
struct GaussLegendre20 {
    static constexpr int N = 20;
    static constexpr double x[N] = {
        -0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
        -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154196,
        -0.2277858511416451, -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
        0.3737060887154196,  0.5108670019508271,  0.6360536807265150,  0.7463319064601508,
        0.8391169718222188,  0.9122344282513259,  0.9639719272779138,  0.9931285991850949};
    static constexpr double w[N] = {
        0.0176140071391521, 0.0406014298003869, 0.0626720483341091, 0.0832767415767048,
        0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183821,
        0.1491729864726037, 0.1527533871307259, 0.1527533871307259, 0.1491729864726037,
        0.1420961093183821, 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
        0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};
};

/// Gauss-Legendre quadrature of f on [a,b], 20 nodes.
inline double gauss20(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < GaussLegendre20::N; ++i)
        s += GaussLegendre20::w[i] * f(mid + half * GaussLegendre20::x[i]);
    return s * half;
}

/// Integral of r^{g-1} over [a,b], 0 < a <= b (b may be +inf when g < 0).
inline double power_weight_integral(double g, double a, double b) {
    if (!(a > 0.0)) throw std::invalid_argument("power_weight_integral: a > 0 required");
    if (std::isinf(b)) {
        if (g >= 0.0) throw std::invalid_argument("power_weight_integral: divergent tail");
        return -std::pow(a, g) / g;
    }
    if (b <= a) return 0.0;
    if (g == 0.0) return std::log(b / a);
    return (std::pow(b, g) - std::pow(a, g)) / g;
}

}  // namespace dqlab

#endif
