#ifndef DQLAB_CORPUS_HPP
#define DQLAB_CORPUS_HPP

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dqlab/test_function.hpp"

namespace dqlab {

namespace detail {

inline TestFunction from_poly(std::shared_ptr<const PiecewisePoly1D> pp, std::string id,
                              Smoothness tag) {
    TestFunction u;
    u.dim = 1;
    u.id = std::move(id);
    u.poly = pp;
    u.eval = [pp](std::span<const double> x) { return (*pp)(x[0]); };
    u.tail_left = pp->left_value;
    u.tail_right = pp->right_value;
    u.constant_at_infinity = (pp->left_value != 0.0 || pp->right_value != 0.0);
    u.support_radius = std::max(std::abs(pp->lo()), std::abs(pp->hi()));
    u.sup_bound = pp->max_abs();
    u.lipschitz = pp->lipschitz_bound();
    u.tag = tag;
    return u;
}

}  // namespace detail

/// Quintic smoothstep on [0,1]: 10t^3 - 15t^4 + 6t^5, C^2 at both endpoints.
/// This is the fixed increasing profile g_0 behind the Cantor families.
inline std::shared_ptr<const PiecewisePoly1D> smoothstep_poly() {
    return std::make_shared<PiecewisePoly1D>(
        std::vector<double>{0.0, 1.0},
        std::vector<std::vector<double>>{{0.0, 0.0, 0.0, 10.0, -15.0, 6.0}}, 0.0, 1.0);
}

/// u(x) = max(0, 1 - |x|).
inline TestFunction make_hat() {
    auto pp = std::make_shared<PiecewisePoly1D>(
        std::vector<double>{-1.0, 0.0, 1.0},
        std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, -1.0}}, 0.0, 0.0);
    TestFunction u = detail::from_poly(pp, "hat", Smoothness::PiecewiseLinear);
    u.exact_lp_norm = [](double p) { return std::pow(2.0 / (p + 1.0), 1.0 / p); };
    u.exact_grad_lp_norm = [](double p) { return std::pow(2.0, 1.0 / p); };
    u.exact_tv = 2.0;
    u.sup_bound = 1.0;
    u.lipschitz = 1.0;
    return u;
}

/// 1_{[a,b]} on R.
inline TestFunction make_indicator_interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("make_indicator_interval: a < b required");
    TestFunction u;
    u.dim = 1;
    {
        std::ostringstream os;
        os << "indicator:" << a << "," << b;
        u.id = os.str();
    }
    u.indicator = Indicator1D{a, b};
    u.eval = [a, b](std::span<const double> x) { return (x[0] >= a && x[0] <= b) ? 1.0 : 0.0; };
    u.support_radius = std::max(std::abs(a), std::abs(b));
    u.sup_bound = 1.0;
    u.tag = Smoothness::Indicator;
    u.exact_lp_norm = [a, b](double p) { return std::pow(b - a, 1.0 / p); };
    u.exact_tv = 2.0;
    return u;
}

/// 1_{B_r(0)} on R^2, TV = perimeter = 2 pi r.
inline TestFunction make_disc_indicator(double r) {
    if (!(r > 0)) throw std::invalid_argument("make_disc_indicator: r > 0 required");
    TestFunction u;
    u.dim = 2;
    {
        std::ostringstream os;
        os << "disc:r=" << r;
        u.id = os.str();
    }
    u.disc = DiscIndicator{r};
    u.eval = [r](std::span<const double> x) {
        return (x[0] * x[0] + x[1] * x[1] <= r * r) ? 1.0 : 0.0;
    };
    u.support_radius = r;
    u.sup_bound = 1.0;
    u.tag = Smoothness::Indicator;
    u.exact_lp_norm = [r](double p) { return std::pow(std::numbers::pi * r * r, 1.0 / p); };
    u.exact_tv = 2.0 * std::numbers::pi * r;
    return u;
}

/// Fixed C^1 bump. n = 1: piecewise-quintic s(1-|x|); n = 2: cos^2 radial
/// profile. No exact norms declared; references come from quadrature.
inline TestFunction make_smooth_bump(int n = 1) {
    if (n == 1) {
        auto s = smoothstep_poly();
        // s(x+1) s(1-x): rises on [-1,0], falls on [0,1], peak value 1
        auto pp = std::make_shared<PiecewisePoly1D>(PiecewisePoly1D::product(
            s->affine_pullback(1.0, 1.0), s->affine_pullback(-1.0, 1.0)));
        TestFunction u = detail::from_poly(pp, "bump", Smoothness::SmoothCompact);
        u.constant_at_infinity = false;
        return u;
    }
    if (n != 2) throw std::invalid_argument("make_smooth_bump: n in {1,2}");
    TestFunction u;
    u.dim = 2;
    u.id = "bump2";
    const double pi = std::numbers::pi;
    auto f = [pi](double r) {
        if (r >= 1.0) return 0.0;
        double c = std::cos(0.5 * pi * r);
        return c * c;
    };
    auto fp = [pi](double r) { return (r >= 1.0) ? 0.0 : -0.5 * pi * std::sin(pi * r); };
    u.radial = RadialProfile{f, fp, 1.0};
    u.eval = [f](std::span<const double> x) { return f(std::hypot(x[0], x[1])); };
    u.support_radius = 1.0;
    u.sup_bound = 1.0;
    u.lipschitz = 0.5 * pi;
    u.tag = Smoothness::SmoothCompact;
    return u;
}

/// Cantor-Lebesgue approximants: g_0 the smoothstep, and
/// g_j(x) = (g_{j-1}(x/eps) + g_{j-1}(1 - (1-x)/eps)) / 2.
/// Monotone, 0 below 0, 1 above 1, total variation 1 for every j.
inline TestFunction make_cantor_g(int j, double eps) {
    if (j < 0) throw std::invalid_argument("make_cantor_g: j >= 0 required");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("make_cantor_g: eps in (0, 1/2) required");
    PiecewisePoly1D g = *smoothstep_poly();
    for (int k = 1; k <= j; ++k) {
        PiecewisePoly1D a = g.affine_pullback(1.0 / eps, 0.0);
        PiecewisePoly1D b = g.affine_pullback(1.0 / eps, 1.0 - 1.0 / eps);
        g = PiecewisePoly1D::linear_combine(0.5, a, 0.5, b);
    }
    auto pp = std::make_shared<PiecewisePoly1D>(std::move(g));
    std::ostringstream os;
    os << "cantor:j=" << j << ",eps=" << eps;
    TestFunction u = detail::from_poly(pp, os.str(), Smoothness::CantorApproximant);
    u.exact_tv = 1.0;
    u.exact_grad_lp_norm = std::nullopt;
    u.sup_bound = 1.0;
    return u;
}

/// Compactly supported Cantor bump g_j(x) g_j(2-x): rises like g_j on [0,1],
/// falls symmetrically on [1,2]. Total variation 2. Unlike the monotone g_j,
/// every W^{s,p} seminorm with 0 < s < 1 is finite (no jump at infinity), so
/// it is the right probe for interpolation inequalities at small s p.
inline TestFunction make_cantor_bump(int j, double eps) {
    TestFunction g = make_cantor_g(j, eps);
    PiecewisePoly1D fall = g.poly->affine_pullback(-1.0, 2.0);
    auto pp = std::make_shared<PiecewisePoly1D>(PiecewisePoly1D::product(*g.poly, fall));
    std::ostringstream os;
    os << "cantor-bump:j=" << j << ",eps=" << eps;
    TestFunction u = detail::from_poly(pp, os.str(), Smoothness::CantorApproximant);
    u.exact_tv = 2.0;
    u.sup_bound = 1.0;
    return u;
}

/// Boundary (t = 1/q) family: g_j(x) = g_0(2^j x) g_0(2^j (2-x)),
/// compactly supported in [0,2], total variation 2.
inline TestFunction make_boundary_g(int j) {
    if (j < 0) throw std::invalid_argument("make_boundary_g: j >= 0 required");
    double s = std::ldexp(1.0, j);  // 2^j
    auto g0 = smoothstep_poly();
    PiecewisePoly1D up = g0->affine_pullback(s, 0.0);
    PiecewisePoly1D down = g0->affine_pullback(-s, 2.0 * s);
    auto pp = std::make_shared<PiecewisePoly1D>(PiecewisePoly1D::product(up, down));
    std::ostringstream os;
    os << "boundary:j=" << j;
    TestFunction u = detail::from_poly(pp, os.str(), Smoothness::CantorApproximant);
    u.exact_tv = 2.0;
    u.sup_bound = 1.0;
    return u;
}

/// The fixed C^2 plateau cutoff: 0 outside (-1,2), 1 on (-1/2,3/2).
inline std::shared_ptr<const PiecewisePoly1D> eta1_poly() {
    auto s = smoothstep_poly();
    PiecewisePoly1D rise = s->affine_pullback(2.0, 2.0);   // s(2x+2): rises on [-1,-1/2]
    PiecewisePoly1D fall = s->affine_pullback(-2.0, 4.0);  // s(4-2x): falls on [3/2,2]
    return std::make_shared<PiecewisePoly1D>(PiecewisePoly1D::product(rise, fall));
}

/// u(x) = g(x_1) eta(x_1) ... eta(x_n) for a 1D profile g; n = 2 supported.
inline TestFunction lift_to_dim(const TestFunction& g, int n) {
    if (n < 2) throw std::invalid_argument("lift_to_dim: n >= 2 required");
    if (n > 2) throw std::invalid_argument("lift_to_dim: only n = 2 is in the corpus");
    if (g.dim != 1 || !g.poly) throw std::invalid_argument("lift_to_dim: 1D poly-backed g required");
    TestFunction u;
    u.dim = 2;
    u.id = g.id + ":lift2";
    auto eta = eta1_poly();
    auto gp = g.poly;
    u.lift = ProductLift{gp, eta};
    u.eval = [gp, eta](std::span<const double> x) {
        return (*gp)(x[0]) * (*eta)(x[0]) * (*eta)(x[1]);
    };
    u.support_radius = 2.0 * std::numbers::sqrt2;
    u.sup_bound = g.sup_bound;
    u.tag = g.tag;
    return u;
}

/// Dilation u_t(x) = u(t x). Exact norms transform by homogeneity:
/// ||grad u_t||_p = t^{1-n/p} ||grad u||_p, ||u_t||_p = t^{-n/p} ||u||_p,
/// and in 1D the total variation is invariant.
inline TestFunction rescale(const TestFunction& u, double t) {
    if (!(t > 0)) throw std::invalid_argument("rescale: t > 0 required");
    if (u.dim != 1) throw std::invalid_argument("rescale: 1D only");
    TestFunction v = u;
    std::ostringstream os;
    os << u.id << ":dilate=" << t;
    v.id = os.str();
    if (u.poly) {
        auto pp = std::make_shared<PiecewisePoly1D>(u.poly->affine_pullback(t, 0.0));
        v.poly = pp;
        v.eval = [pp](std::span<const double> x) { return (*pp)(x[0]); };
    } else if (u.indicator) {
        Indicator1D ind{u.indicator->a / t, u.indicator->b / t};
        v.indicator = ind;
        v.eval = [ind](std::span<const double> x) {
            return (x[0] >= ind.a && x[0] <= ind.b) ? 1.0 : 0.0;
        };
    }
    v.support_radius = u.support_radius / t;
    if (u.lipschitz) v.lipschitz = *u.lipschitz * t;
    int n = u.dim;
    if (u.exact_lp_norm) {
        auto base = *u.exact_lp_norm;
        v.exact_lp_norm = [base, t, n](double p) { return std::pow(t, -n / p) * base(p); };
    }
    if (u.exact_grad_lp_norm) {
        auto base = *u.exact_grad_lp_norm;
        v.exact_grad_lp_norm = [base, t, n](double p) { return std::pow(t, 1.0 - n / p) * base(p); };
    }
    // 1D TV invariant under dilation
    return v;
}

/// c * u. Every extracted norm is 1-homogeneous in this scaling.
inline TestFunction scale_value(const TestFunction& u, double c) {
    TestFunction v = u;
    std::ostringstream os;
    os << u.id << ":scale=" << c;
    v.id = os.str();
    auto base = u.eval;
    v.eval = [base, c](std::span<const double> x) { return c * base(x); };
    if (u.poly) {
        auto pp = std::make_shared<PiecewisePoly1D>(u.poly->scaled(c));
        v.poly = pp;
        v.eval = [pp](std::span<const double> x) { return (*pp)(x[0]); };
    }
    v.indicator.reset();  // scaled jump functions are no longer indicators
    v.sup_bound = std::abs(c) * u.sup_bound;
    v.tail_left = c * u.tail_left;
    v.tail_right = c * u.tail_right;
    if (u.lipschitz) v.lipschitz = std::abs(c) * *u.lipschitz;
    if (u.exact_tv) v.exact_tv = std::abs(c) * *u.exact_tv;
    if (u.exact_lp_norm) {
        auto b = *u.exact_lp_norm;
        v.exact_lp_norm = [b, c](double p) { return std::abs(c) * b(p); };
    }
    if (u.exact_grad_lp_norm) {
        auto b = *u.exact_grad_lp_norm;
        v.exact_grad_lp_norm = [b, c](double p) { return std::abs(c) * b(p); };
    }
    return v;
}

/// Affine change of variable squeezing a 1D member into [lo, hi].
/// Used by the wavelet experiments, which live on [0,1).
inline TestFunction rescale_to_interval(const TestFunction& u, double lo, double hi) {
    if (u.dim != 1) throw std::invalid_argument("rescale_to_interval: 1D only");
    double a, b;  // current support interval
    if (u.poly) {
        a = u.poly->lo();
        b = u.poly->hi();
    } else if (u.indicator) {
        a = u.indicator->a;
        b = u.indicator->b;
    } else {
        throw std::invalid_argument("rescale_to_interval: structured backing required");
    }
    double s = (b - a) / (hi - lo);
    double c = a - s * lo;  // x -> s*x + c maps [lo,hi] onto [a,b]
    TestFunction v = u;
    v.id = u.id + ":unit";
    if (u.poly) {
        auto pp = std::make_shared<PiecewisePoly1D>(u.poly->affine_pullback(s, c));
        v.poly = pp;
        v.eval = [pp](std::span<const double> x) { return (*pp)(x[0]); };
    } else {
        Indicator1D ind{(a - c) / s, (b - c) / s};
        v.indicator = ind;
        v.eval = [ind](std::span<const double> x) {
            return (x[0] >= ind.a && x[0] <= ind.b) ? 1.0 : 0.0;
        };
    }
    v.support_radius = std::max(std::abs(lo), std::abs(hi));
    if (u.lipschitz) v.lipschitz = *u.lipschitz * s;
    // 1D TV is invariant; Lp norms rescale by s^{-1/p}
    if (u.exact_lp_norm) {
        auto base = *u.exact_lp_norm;
        v.exact_lp_norm = [base, s](double p) { return std::pow(s, -1.0 / p) * base(p); };
    }
    if (u.exact_grad_lp_norm) {
        auto base = *u.exact_grad_lp_norm;
        v.exact_grad_lp_norm = [base, s](double p) { return std::pow(s, 1.0 - 1.0 / p) * base(p); };
    }
    return v;
}

/// Corpus member lookup by string id, e.g. "hat", "indicator:0,1",
/// "cantor:j=6,eps=0.25", "boundary:j=4", "bump", "bump2", "disc:r=1".
inline TestFunction corpus_by_id(const std::string& id) {
    auto starts = [&](const char* pfx) { return id.rfind(pfx, 0) == 0; };
    if (id == "hat") return make_hat();
    if (id == "bump") return make_smooth_bump(1);
    if (id == "bump2") return make_smooth_bump(2);
    if (starts("indicator:")) {
        double a, b;
        char comma;
        std::istringstream is(id.substr(10));
        if (!(is >> a >> comma >> b) || comma != ',')
            throw std::invalid_argument("bad indicator id: " + id);
        return make_indicator_interval(a, b);
    }
    if (starts("disc:r=")) {
        return make_disc_indicator(std::stod(id.substr(7)));
    }
    if (starts("cantor:j=")) {
        auto rest = id.substr(9);
        auto pos = rest.find(",eps=");
        if (pos == std::string::npos) throw std::invalid_argument("bad cantor id: " + id);
        int j = std::stoi(rest.substr(0, pos));
        double eps = std::stod(rest.substr(pos + 5));
        return make_cantor_g(j, eps);
    }
    if (starts("boundary:j=")) return make_boundary_g(std::stoi(id.substr(11)));
    throw std::invalid_argument("unknown corpus id: " + id);
}

}  // namespace dqlab

#endif
