#ifndef DQLAB_WAVELETS_HPP
#define DQLAB_WAVELETS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dqlab/special.hpp"
#include "dqlab/test_function.hpp"

namespace dqlab {

/// Index of one wavelet coefficient: orientation e in E = {0,1}^n \ {0}
/// (bitmask, bit i = e_{i+1}), level j >= 0, lattice offset k. The cube is
/// I = 2^{-j}(k + [0,1]^n) with side 2^{-j}.
struct DyadicIndex {
    int e = 1;
    int j = 0;
    std::array<std::int64_t, 2> k{0, 0};
};

struct HaarCoefficient {
    DyadicIndex idx;
    double value = 0.0;  // u^e_I = int u psi~^e_I
};

/// Haar coefficients of u on [0,1)^n up to level J, with the measure weight
/// nu~_gamma({(e,I)}) = 2^{-j(gamma+n)}. Level-0 scaling coefficients (e = 0)
/// are excluded, matching E = {0,1}^n \ {0}.
struct CoefficientSequence {
    int dim = 1;
    int max_level = 0;
    double gamma = 0.0;
    bool support_leak = false;  // u does not vanish outside [0,1)^n
    std::vector<HaarCoefficient> entries;

    double weight(const DyadicIndex& i) const {
        return std::pow(2.0, -static_cast<double>(i.j) * (gamma + dim));
    }
    double side(const DyadicIndex& i) const { return std::pow(2.0, -i.j); }
};

namespace detail {

/// int_a^b u for the structured 1D backings (exact).
inline double segment_integral(const TestFunction& u, double a, double b) {
    if (u.indicator) {
        double lo = std::max(a, u.indicator->a), hi = std::min(b, u.indicator->b);
        return std::max(0.0, hi - lo);
    }
    if (u.poly) return u.poly->integral(a, b);
    throw std::invalid_argument("haar_analyze: structured 1D backing required");
}

/// Tensor Gauss quadrature of u over the rectangle [a0,b0] x [a1,b1].
inline double rect_integral_2d(const TestFunction& u, double a0, double b0, double a1,
                               double b1) {
    double total = 0.0;
    std::array<double, 2> pt;
    total = gauss20(
        [&](double x) {
            pt[0] = x;
            return gauss20(
                [&](double y) {
                    pt[1] = y;
                    return u.eval(pt);
                },
                a1, b1);
        },
        a0, b0);
    return total;
}

}  // namespace detail

/// Haar analysis on [0,1)^n with the dual normalization psi~^e_I(x) =
/// 2^{jn} psi~^e(2^j x - k), psi = 1_{[0,1/2)} - 1_{[1/2,1)}, phi = 1_{[0,1)}.
/// Coefficients are exact (closed-form integrals) for 1D poly/indicator
/// backings and Gauss quadrature in n = 2.
inline CoefficientSequence haar_analyze(const TestFunction& u, int J, double gamma) {
    if (u.dim == 1 && J > 12) throw std::invalid_argument("haar_analyze: J <= 12 for n = 1");
    if (u.dim == 2 && J > 8) throw std::invalid_argument("haar_analyze: J <= 8 for n = 2");
    if (u.dim > 2) throw std::invalid_argument("haar_analyze: n in {1, 2}");
    CoefficientSequence seq;
    seq.dim = u.dim;
    seq.max_level = J;
    seq.gamma = gamma;

    if (u.dim == 1) {
        // leak check: any mass outside [0,1)
        double lo = u.indicator ? u.indicator->a : u.poly->lo();
        double hi = u.indicator ? u.indicator->b : u.poly->hi();
        if (lo < -1e-12 || hi > 1.0 + 1e-12 || u.tail_left != 0.0 || u.tail_right != 0.0)
            seq.support_leak = true;
        for (int j = 0; j <= J; ++j) {
            double side = std::pow(2.0, -j);
            std::int64_t cells = std::int64_t{1} << j;
            for (std::int64_t k = 0; k < cells; ++k) {
                double a = k * side, m = a + 0.5 * side, b = a + side;
                double coef = (detail::segment_integral(u, a, m) -
                               detail::segment_integral(u, m, b)) /
                              side;
                if (coef != 0.0)
                    seq.entries.push_back({DyadicIndex{1, j, {k, 0}}, coef});
            }
        }
        return seq;
    }

    // n = 2: e in {01, 10, 11}; psi^0 = phi contributes sign +1 on both halves
    std::array<double, 2> probe;
    for (double x : {-0.25, 0.5, 1.25})
        for (double y : {-0.25, 0.5, 1.25}) {
            if (x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0) continue;
            probe = {x, y};
            if (std::abs(u.eval(probe)) > 1e-12) seq.support_leak = true;
        }
    for (int j = 0; j <= J; ++j) {
        double side = std::pow(2.0, -j);
        std::int64_t cells = std::int64_t{1} << j;
        for (std::int64_t k0 = 0; k0 < cells; ++k0) {
            for (std::int64_t k1 = 0; k1 < cells; ++k1) {
                double a0 = k0 * side, a1 = k1 * side;
                double m0 = a0 + 0.5 * side, m1 = a1 + 0.5 * side;
                // quadrant integrals: q[ix][iy], ix/iy = 0 lower half, 1 upper
                double q[2][2];
                q[0][0] = detail::rect_integral_2d(u, a0, m0, a1, m1);
                q[1][0] = detail::rect_integral_2d(u, m0, a0 + side, a1, m1);
                q[0][1] = detail::rect_integral_2d(u, a0, m0, m1, a1 + side);
                q[1][1] = detail::rect_integral_2d(u, m0, a0 + side, m1, a1 + side);
                double inv = 1.0 / (side * side);  // 2^{jn}
                for (int e = 1; e <= 3; ++e) {
                    double coef = 0.0;
                    for (int ix = 0; ix < 2; ++ix)
                        for (int iy = 0; iy < 2; ++iy) {
                            double sgn = ((e & 1) && ix ? -1.0 : 1.0) *
                                         ((e & 2) && iy ? -1.0 : 1.0);
                            coef += sgn * q[ix][iy];
                        }
                    coef *= inv;
                    if (coef != 0.0)
                        seq.entries.push_back({DyadicIndex{e, j, {k0, k1}}, coef});
                }
            }
        }
    }
    return seq;
}

/// eq:CDDD_weakL1 sandwich data: the normalized coefficients
/// |u^e_I| / l(I)^{1+gamma} as a function on (E x dyadic cubes, nu~_gamma).
struct SandwichReport {
    double weak_l1 = 0.0;            // [.]_{l^{1,inf}(nu~_gamma)}
    double tv = 0.0;                 // exact TV of u (input)
    double l1 = 0.0;                 // ||.||_{l^1(nu~_gamma)}, may grow with J
    double weak_over_tv = 0.0;
    std::vector<double> level_l1;    // per-level contribution to l1
};

inline SandwichReport cddd_sandwich(const CoefficientSequence& seq, double gamma, double tv) {
    if (gamma >= -1.0 && gamma <= 0.0)
        throw std::invalid_argument("cddd_sandwich: gamma outside [-1, 0]");
    SandwichReport rep;
    rep.tv = tv;
    rep.level_l1.assign(static_cast<std::size_t>(seq.max_level) + 1, 0.0);

    std::vector<std::pair<double, double>> tw;  // (normalized value, weight)
    tw.reserve(seq.entries.size());
    for (const auto& c : seq.entries) {
        double t = std::abs(c.value) / std::pow(seq.side(c.idx), 1.0 + gamma);
        if (t <= 0.0) continue;
        double w = seq.weight(c.idx);
        tw.emplace_back(t, w);
        rep.l1 += t * w;
        rep.level_l1[static_cast<std::size_t>(c.idx.j)] += t * w;
    }
    // weak-l1: sup_lambda lambda nu~{t > lambda}; the sup is attained just
    // below some t_i, where the measure is the cumulative weight of {t >= t_i}
    std::sort(tw.begin(), tw.end(), [](auto& a, auto& b) { return a.first > b.first; });
    double cum = 0.0;
    for (const auto& [t, w] : tw) {
        cum += w;
        rep.weak_l1 = std::max(rep.weak_l1, t * cum);
    }
    rep.weak_over_tv = tv > 0.0 ? rep.weak_l1 / tv : 0.0;
    return rep;
}

}  // namespace dqlab

#endif
