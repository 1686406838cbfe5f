#include "catop/seq_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "catop/errors.hpp"

namespace catop {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kQuarterSlack = 0.25 * (1.0 + 64.0 * 1e-16);
}  // namespace

WeightedSeq::WeightedSeq(std::vector<cplx> coeffs, double trunc_err)
    : c_(std::move(coeffs)), err_(trunc_err) {
    if (err_ < 0.0) throw DomainError("WeightedSeq: negative truncation error");
}

WeightedSeq WeightedSeq::delta(std::size_t j, cplx scale) {
    std::vector<cplx> c(j + 1, cplx(0.0));
    c[j] = scale;
    return WeightedSeq(std::move(c));
}

WeightedSeq& WeightedSeq::operator+=(const WeightedSeq& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), cplx(0.0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    err_ += o.err_;
    return *this;
}

WeightedSeq& WeightedSeq::operator-=(const WeightedSeq& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), cplx(0.0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    err_ += o.err_;
    return *this;
}

WeightedSeq& WeightedSeq::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    err_ *= std::abs(s);
    return *this;
}

WeightedSeq operator+(WeightedSeq a, const WeightedSeq& b) { a += b; return a; }
WeightedSeq operator-(WeightedSeq a, const WeightedSeq& b) { a -= b; return a; }
WeightedSeq operator*(cplx s, WeightedSeq a) { a *= s; return a; }

double norm_w(const WeightedSeq& a) {
    double s = 0.0;
    double w = 1.0;
    for (std::size_t n = 0; n < a.length(); ++n) {
        s += std::abs(a.coeff(n)) * w;
        w *= 0.25;
    }
    return s;
}

cplx z_transform(const WeightedSeq& a, cplx z) {
    if (std::abs(z) > kQuarterSlack) throw DomainError("z_transform: |z| must be <= 1/4");
    cplx acc = 0.0;
    for (std::size_t n = a.length(); n-- > 0;) acc = acc * z + a.coeff(n);
    return acc;
}

WeightedSeq convolve(const WeightedSeq& a, const WeightedSeq& b) {
    if (a.length() == 0 || b.length() == 0)
        return WeightedSeq(std::vector<cplx>{}, a.trunc_err() + b.trunc_err());
    std::size_t L;
    bool a_tr = a.trunc_err() > 0.0, b_tr = b.trunc_err() > 0.0;
    if (!a_tr && !b_tr) L = a.length() + b.length() - 1;
    else if (a_tr && b_tr) L = std::min(a.length(), b.length());
    else L = a_tr ? a.length() : b.length();

    std::vector<cplx> out(L, cplx(0.0));
    for (std::size_t i = 0; i < a.length(); ++i) {
        cplx ai = a.coeff(i);
        if (ai == cplx(0.0)) continue;
        std::size_t jmax = std::min(b.length(), L > i ? L - i : 0);
        for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ai * b.coeff(j);
    }
    double err = norm_w(a) * b.trunc_err() + norm_w(b) * a.trunc_err() +
                 a.trunc_err() * b.trunc_err();
    return WeightedSeq(std::move(out), err);
}

WeightedSeq catalan_seq(std::size_t L) {
    if (L < 1 || L > 512) throw SizeError("catalan_seq: L must be in [1, 512]");
    auto cat = catalan_numbers(L + 1);
    std::vector<cplx> c(L);
    for (std::size_t n = 0; n < L; ++n) c[n] = cat.value(n);
    return WeightedSeq(std::move(c), cat.tail_bound(L));
}

WeightedSeq geometric_seq(cplx lambda, std::size_t L) {
    double mod = std::abs(lambda);
    if (mod <= 0.25)
        throw AlgebraMembershipError("geometric_seq: requires |lambda| > 1/4");
    if (L < 1) throw SizeError("geometric_seq: L must be >= 1");
    std::vector<cplx> c(L);
    cplx inv = 1.0 / lambda;
    cplx p = 1.0;
    for (std::size_t n = 0; n < L; ++n) { c[n] = p; p *= inv; }
    // discarded tail: sum_{n>=L} (4|lambda|)^-n in closed form
    double q = 1.0 / (4.0 * mod);
    double tail = std::pow(q, static_cast<double>(L)) / (1.0 - q);
    return WeightedSeq(std::move(c), tail);
}

bool in_omega(cplx lambda) {
    if (lambda == cplx(0.0)) throw DomainError("in_omega: lambda must be nonzero");
    return std::abs(lambda - 1.0) / std::norm(lambda) > 0.25;
}

WeightedSeq resolvent_catalan(cplx lambda, std::size_t L) {
    if (lambda == cplx(0.0)) throw DomainError("resolvent_catalan: lambda must be nonzero");
    if (lambda == cplx(1.0))
        throw OutsideRegionError(
            "resolvent_catalan: 1 = C(0) lies in the spectrum of the Catalan sequence");
    if (!in_omega(lambda))
        throw OutsideRegionError("resolvent_catalan: lambda outside Omega");
    L = std::min<std::size_t>(L, 512);  // raw Catalan coefficients stay in double range
    cplx mu = (lambda - 1.0) / (lambda * lambda);  // |mu| > 1/4 exactly on Omega
    WeightedSeq p = geometric_seq(mu, L);
    WeightedSeq c = catalan_seq(L);
    WeightedSeq r = WeightedSeq::delta(0, 1.0 / lambda);
    r += (1.0 / (lambda * (lambda - 1.0))) * p;
    r += (1.0 / (lambda * lambda)) * c;
    r -= (1.0 / (lambda * lambda)) * convolve(c, p);
    return r;
}

cplx sigma_boundary(double theta) {
    if (theta < -kPi - 1e-12 || theta > kPi + 1e-12)
        throw DomainError("sigma_boundary: theta must lie in [-pi, pi]");
    double s = std::sin(0.5 * theta);
    if (s == 0.0) return cplx(2.0);
    // principal-branch parametrization of C(e^{i theta}/4):
    // 2 e^{-i theta} (1 - sqrt(2|sin(theta/2)|) e^{i(theta - sgn(theta) pi)/4})
    double sgn = theta > 0.0 ? 1.0 : -1.0;
    cplx root = std::sqrt(2.0 * std::fabs(s)) * std::polar(1.0, (theta - sgn * kPi) / 4.0);
    return 2.0 * std::polar(1.0, -theta) * (1.0 - root);
}

std::vector<BoundarySample> sigma_boundary_samples(std::size_t M) {
    // theta = pi u|u|: quadratic clustering at the branch point theta = 0,
    // where the curve moves like sqrt(theta). Consecutive samples then stay
    // within ~7/M of each other; u = 0 (theta = 0) is on the grid for even M.
    std::vector<BoundarySample> out;
    out.reserve(M);
    for (std::size_t k = 0; k < M; ++k) {
        double u = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(M);
        double theta = kPi * u * std::fabs(u);
        out.push_back({theta, sigma_boundary(theta)});
    }
    return out;
}

namespace {

// The curve |l-1| = |l|^2/4 is a pair of loops joined at a node at l = 2
// (the gradient of the defining function vanishes there): a small loop
// around the segment [0.828, 2] and a large one through 2 and -4.828.
// Neither is a radial graph from the origin over all angles, so each loop
// is traced in its own star-shaped chart.

constexpr double kInnerCenter = 1.4;

double curve_gap(cplx p) { return std::abs(p - 1.0) - 0.25 * std::norm(p); }

// inner loop: distance from kInnerCenter along direction phi; inside the
// loop curve_gap < 0. phi = 0 aims at the node, where the sign change
// degenerates; callers avoid that ray (the node itself is emitted exactly).
cplx inner_point(double phi) {
    auto h = [&](double s) { return curve_gap(kInnerCenter + std::polar(s, phi)); };
    double lo = 0.0, hi = 0.0;
    for (double s = 0.02; s <= 1.2; s += 0.02) {
        if (h(s) >= 0.0) { lo = s - 0.02; hi = s; break; }
    }
    if (hi == 0.0) return cplx(2.0, 0.0);  // tangent ray: the node
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return kInnerCenter + std::polar(0.5 * (lo + hi), phi);
}

// outer loop: radial from the origin, scanned downward from r = 8 (outside,
// curve_gap < 0) into the region between the loops (curve_gap > 0).
cplx outer_point(double theta) {
    auto g = [&](double r) { return curve_gap(std::polar(r, theta)); };
    double lo = 0.0, hi = 0.0;
    for (double r = 8.0; r >= 1.0; r -= 0.05) {
        if (g(r) >= 0.0) { lo = r, hi = r + 0.05; break; }
    }
    if (hi == 0.0) return cplx(2.0, 0.0);  // tangent ray theta = 0: the node
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) >= 0.0) lo = mid;
        else hi = mid;
    }
    return std::polar(0.5 * (lo + hi), theta);
}

}  // namespace

std::vector<BoundarySample> omega_boundary_samples(std::size_t M) {
    if (M == 0) return {};
    // Fine polyline over both loops, ordered through the node so the point
    // modulus varies continuously: inner loop (phi 0 -> 2pi around its
    // center), then outer loop (theta 0 -> pi, -pi -> 0). Samples are then
    // placed at equal progress of the modulus, whose total variation over
    // the whole curve is 8; adjacent output moduli differ by ~8/M.
    struct Node {
        bool inner;
        double param;  // phi (inner) or theta (outer), in the chart above
    };
    const std::size_t fine_per_loop =
        std::max<std::size_t>(1024, std::min<std::size_t>(M, 32768));
    std::vector<Node> nodes;
    std::vector<cplx> pts;
    nodes.reserve(2 * fine_per_loop);
    pts.reserve(2 * fine_per_loop);
    for (std::size_t k = 0; k < fine_per_loop; ++k) {
        double phi = 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(fine_per_loop);
        nodes.push_back({true, phi});
        pts.push_back(inner_point(phi));
    }
    for (std::size_t k = 0; k < fine_per_loop; ++k) {
        double t = 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(fine_per_loop);
        double theta = t <= kPi ? t : t - 2.0 * kPi;
        nodes.push_back({false, theta});
        pts.push_back(outer_point(theta));
    }
    std::vector<double> srun(pts.size());
    srun[0] = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        srun[k] = srun[k - 1] + std::fabs(std::abs(pts[k]) - std::abs(pts[k - 1])) + 1e-9;

    std::vector<BoundarySample> out;
    out.reserve(M);
    double total = srun.back();
    std::size_t cell = 0;
    for (std::size_t j = 0; j < M; ++j) {
        double target = total * (static_cast<double>(j) + 0.5) / static_cast<double>(M);
        while (cell + 1 < pts.size() && srun[cell + 1] < target) ++cell;
        // re-solve on the chosen chart so the emitted point sits on the
        // curve to bisection accuracy, not polyline accuracy
        const Node& a = nodes[cell];
        const Node& b = nodes[std::min(cell + 1, nodes.size() - 1)];
        double t = (target - srun[cell]) /
                   std::max(srun[std::min(cell + 1, srun.size() - 1)] - srun[cell], 1e-300);
        cplx p;
        if (a.inner != b.inner) {
            p = t < 0.5 ? inner_point(a.param) : outer_point(b.param);
        } else if (a.inner) {
            p = inner_point(a.param + t * (b.param - a.param));
        } else {
            double tb = b.param, ta = a.param;
            if (tb < ta) tb += 2.0 * kPi;  // wrap at theta = pi
            double th = ta + t * (tb - ta);
            if (th > kPi) th -= 2.0 * kPi;
            p = outer_point(th);
        }
        out.push_back({std::atan2(p.imag(), p.real()), p});
    }
    return out;
}

BackwardDiffResult backward_difference_catalan(std::size_t J) {
    if (J < 1 || J > 48) throw SizeError("backward_difference_catalan: J must be in [1, 48]");
    BackwardDiffResult res;
    res.closed_form.resize(J);
    res.direct_series.resize(J);

    const double sqrt6 = std::sqrt(6.0);
    auto cat = catalan_numbers(256);

    // closed form: coeff_0 = 2 sqrt6 - 4; coeff_j = (sqrt6/3) sum_{k>=j} C_k / 12^k,
    // with C_k/12^k written (C_k 4^-k) 3^-k; terms decay like 3^-k.
    for (std::size_t j = 0; j < J; ++j) {
        if (j == 0) {
            res.closed_form[0] = 2.0 * sqrt6 - 4.0;
            continue;
        }
        long double sum = 0.0L;
        long double p = 1.0L;  // 3^-k
        for (std::size_t k = 0; k < 256; ++k) {
            if (k >= j) {
                long double t = static_cast<long double>(cat.weighted(k)) * p;
                sum += t;
                if (t < 1e-22L && k > j + 8) break;
            }
            p /= 3.0L;
        }
        res.closed_form[j] = static_cast<double>(sqrt6 / 3.0L * sum);
    }

    // direct series: C(a/8) = sum_n C_n (a/8)^{*n}, a = delta_1 - delta_0,
    // iterated as repeated convolution truncated at J coefficients.
    // For fixed j the terms decay like 2^-n n^{j-3/2}; n = 220 is well past 1e-16.
    std::vector<long double> power(J, 0.0L);  // (a/8)^{*n}, n = 0 is delta_0
    power[0] = 1.0L;
    std::vector<long double> acc(J, 0.0L);
    for (std::size_t n = 0; n < 220; ++n) {
        long double Cn = static_cast<long double>(cat.value(n));
        for (std::size_t j = 0; j < J; ++j) acc[j] += Cn * power[j];
        // power <- power * (a/8): (x * a/8)_j = (x_{j-1} - x_j)/8
        std::vector<long double> next(J, 0.0L);
        for (std::size_t j = 0; j < J; ++j) {
            long double prev = j > 0 ? power[j - 1] : 0.0L;
            next[j] = (prev - power[j]) / 8.0L;
        }
        power.swap(next);
    }
    for (std::size_t j = 0; j < J; ++j) res.direct_series[j] = static_cast<double>(acc[j]);

    double worst = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        worst = std::max(worst, std::fabs(res.closed_form[j] - res.direct_series[j]));
    res.max_discrepancy = worst;
    return res;
}

}  // namespace catop
