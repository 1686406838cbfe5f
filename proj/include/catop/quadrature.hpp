#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "catop/errors.hpp"

namespace catop {

/// Gauss-Kronrod 7/15 pair, adaptively bisected. Works for any value type
/// with +, scalar * and a caller-supplied norm (double, complex, matrices).
/// The node set is shared across all components of the value, so a
/// matrix-valued integrand is refined against its worst entry.
namespace gk {

// Kronrod nodes on [0,1] offsets... nodes are the classic 15-point set on [-1,1].
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWeightK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss-7 weights aligned with odd Kronrod node indices (1,3,5,7).
inline constexpr double kWeightG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

}  // namespace gk

struct QuadOptions {
    double abs_tol = 1e-10;
    std::size_t max_intervals = 100000;
};

/// Integrates f over [a,b]. `zero` supplies a correctly-shaped additive
/// identity. err_est accumulates the Kronrod-Gauss discrepancy actually met.
template <class V, class F, class Norm>
V integrate_gk15(F&& f, double a, double b, const QuadOptions& opt, Norm&& norm,
                 V zero, double* err_est = nullptr) {
    struct Interval { double a, b; };
    std::vector<Interval> stack{{a, b}};
    V total = zero;
    double err_total = 0.0;
    std::size_t used = 0;
    const double span = std::fabs(b - a);

    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        if (++used > opt.max_intervals)
            throw IntegrationError("adaptive quadrature: interval budget exhausted");

        const double c = 0.5 * (iv.a + iv.b);
        const double h = 0.5 * (iv.b - iv.a);
        V sum_k = zero;
        V sum_g = zero;
        for (int i = 0; i < 8; ++i) {
            if (gk::kNodes[i] == 0.0) {
                V fc = f(c);
                sum_k = sum_k + gk::kWeightK[i] * fc;
                sum_g = sum_g + gk::kWeightG[3] * fc;
                continue;
            }
            V lo = f(c - h * gk::kNodes[i]);
            V hi = f(c + h * gk::kNodes[i]);
            sum_k = sum_k + gk::kWeightK[i] * (lo + hi);
            if (i % 2 == 1) sum_g = sum_g + gk::kWeightG[i / 2] * (lo + hi);
        }
        V val_k = h * sum_k;
        double err = norm(h * sum_g + (-1.0) * val_k);
        double local_tol = opt.abs_tol * std::fabs(iv.b - iv.a) / span;
        if (err <= local_tol || std::fabs(iv.b - iv.a) < 1e-14 * span) {
            total = total + val_k;
            err_total += err;
        } else {
            stack.push_back({iv.a, c});
            stack.push_back({c, iv.b});
        }
    }
    if (err_est) *err_est = err_total;
    return total;
}

/// Integrates f over [0, inf) through t = u^2/(1-u)^2; dt = 2u/(1-u)^3 du.
/// The substitution flattens sqrt-type endpoints and algebraic decay.
template <class V, class F, class Norm>
V integrate_halfline(F&& f, const QuadOptions& opt, Norm&& norm, V zero,
                     double* err_est = nullptr) {
    auto g = [&](double u) -> V {
        double om = 1.0 - u;
        double t = (u * u) / (om * om);
        double jac = 2.0 * u / (om * om * om);
        return jac * f(t);
    };
    return integrate_gk15<V>(g, 0.0, 1.0, opt, std::forward<Norm>(norm), zero, err_est);
}

}  // namespace catop
