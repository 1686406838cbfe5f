#include "catop/catalan.hpp"

#include <cmath>

#include "catop/errors.hpp"
#include "catop/quadrature.hpp"

namespace catop {

CatalanCoefficients::CatalanCoefficients(std::size_t count) {
    if (count < 1 || count > kMaxCount)
        throw SizeError("catalan_numbers: count must be in [1, 100000]");

    // Exact values by the multiplicative identity C_{n+1} = C_n (4n+2)/(n+2);
    // the division is exact in integers (asserted by the remainder).
    std::size_t n_exact = std::min(count, kExactCap);
    exact_.reserve(n_exact);
    exact_.emplace_back(1u);
    for (std::size_t n = 0; n + 1 < n_exact; ++n) {
        BigUInt next = exact_.back();
        next.mul_small(static_cast<std::uint32_t>(4 * n + 2));
        std::uint32_t rem = next.div_small(static_cast<std::uint32_t>(n + 2));
        if (rem != 0) throw Error("catalan recurrence: non-integer step");
        exact_.push_back(std::move(next));
    }

    // Weighted values b_n = C_n 4^-n via b_{n+1} = b_n (2n+1)/(2n+4),
    // accumulated in long double so the 1e5-long chain keeps ~15 digits.
    weighted_.resize(count);
    scaled_.resize(count);
    long double b = 1.0L;
    long double mant = 1.0L;
    long exp4 = 0;
    for (std::size_t n = 0; n < count; ++n) {
        weighted_[n] = static_cast<double>(b);
        scaled_[n] = Scaled4{static_cast<double>(mant), exp4};
        b = b * (2 * static_cast<long double>(n) + 1) / (2 * static_cast<long double>(n) + 4);
        // C_{n+1} = C_n (4n+2)/(n+2); renormalize the 4^k mantissa into [1,4)
        mant = mant * (4 * static_cast<long double>(n) + 2) / (static_cast<long double>(n) + 2);
        while (mant >= 4.0L) { mant /= 4.0L; ++exp4; }
    }
}

const BigUInt& CatalanCoefficients::exact(std::size_t n) const {
    if (n >= exact_.size()) throw SizeError("CatalanCoefficients::exact: index beyond exact storage");
    return exact_[n];
}

Scaled4 CatalanCoefficients::scaled(std::size_t n) const { return scaled_.at(n); }

double CatalanCoefficients::value(std::size_t n) const {
    Scaled4 s = scaled_.at(n);
    if (s.exp4 > 500) return HUGE_VAL;
    return s.mantissa * std::pow(4.0, static_cast<double>(s.exp4));
}

double CatalanCoefficients::tail_bound(std::size_t N) const {
    if (N >= count()) throw SizeError("tail_bound: N beyond held coefficients");
    if (N == 0) return 2.0;
    if (N == 1) return 1.0;
    double bN = weighted_[N];
    return 2.0 * static_cast<double>(N) * bN * (1.0 + 1.5 / (static_cast<double>(N) - 1.0));
}

CatalanCoefficients catalan_numbers(std::size_t n) { return CatalanCoefficients(n); }

double catalan_tail_bound(std::size_t N) {
    if (N > CatalanCoefficients::kMaxCount) throw SizeError("catalan_tail_bound: N too large");
    if (N == 0) return 2.0;
    if (N == 1) return 1.0;
    long double b = 1.0L;
    for (std::size_t k = 0; k < N; ++k)
        b = b * (2 * static_cast<long double>(k) + 1) / (2 * static_cast<long double>(k) + 4);
    return 2.0 * static_cast<double>(N) * static_cast<double>(b) *
           (1.0 + 1.5 / (static_cast<double>(N) - 1.0));
}

BigUInt catalan_closed_form(unsigned n) {
    // binom(2n, n) = prod_{k=1..n} (n+k)/k, exact at every step
    BigUInt binom(1u);
    for (unsigned k = 1; k <= n; ++k) {
        binom.mul_small(n + k);
        std::uint32_t rem = binom.div_small(k);
        if (rem != 0) throw Error("catalan_closed_form: non-integer binomial step");
    }
    std::uint32_t rem = binom.div_small(n + 1);
    if (rem != 0) throw Error("catalan_closed_form: (n+1) does not divide binom(2n,n)");
    return binom;
}

namespace {

constexpr double kRadiusSlack = 0.25 * (1.0 + 64.0 * 1e-16);  // admit boundary values
// Crossover where the degree-8 Taylor truncation (~C_9 r^9) meets the
// cancellation of 1 - sqrt(1-4z) (~eps/r): both ~5e-15 at r = 0.01.
constexpr double kTaylorGuard = 1e-2;

void require_disc(cplx z, const char* who) {
    if (std::abs(z) > kRadiusSlack)
        throw DomainError(std::string(who) + ": |z| must be <= 1/4");
}

}  // namespace

cplx catalan_gf(cplx z) {
    require_disc(z, "catalan_gf");
    if (std::abs(z) < kTaylorGuard) {
        // degree-8 Taylor polynomial; avoids the 1 - sqrt(1-4z) cancellation
        static const double c[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
        cplx acc = c[8];
        for (int k = 7; k >= 0; --k) acc = acc * z + c[k];
        return acc;
    }
    return (1.0 - std::sqrt(1.0 - 4.0 * z)) / (2.0 * z);
}

cplx catalan_gf_even(cplx z) {
    require_disc(z, "catalan_gf_even");
    if (std::abs(z) < kTaylorGuard) {
        static const double c[] = {1, 2, 14, 132, 1430};  // C_0, C_2, C_4, C_6, C_8
        cplx z2 = z * z;
        cplx acc = c[4];
        for (int k = 3; k >= 0; --k) acc = acc * z2 + c[k];
        return acc;
    }
    return (std::sqrt(1.0 + 4.0 * z) - std::sqrt(1.0 - 4.0 * z)) / (4.0 * z);
}

cplx catalan_gf_odd(cplx z) {
    require_disc(z, "catalan_gf_odd");
    if (std::abs(z) < kTaylorGuard) {
        static const double c[] = {1, 5, 42, 429};  // C_1, C_3, C_5, C_7
        cplx z2 = z * z;
        cplx acc = c[3];
        for (int k = 2; k >= 0; --k) acc = acc * z2 + c[k];
        return acc * z;
    }
    return (2.0 - std::sqrt(1.0 + 4.0 * z) - std::sqrt(1.0 - 4.0 * z)) / (4.0 * z);
}

bool biquadratic_mean_check(cplx x, double tol) {
    if (std::abs(x) > kRadiusSlack) throw DomainError("biquadratic_mean_check: |x| must be <= 1/4");
    if (x == cplx(0.0)) throw DomainError("biquadratic_mean_check: x must be nonzero");
    cplx y = catalan_gf(x);                               // root of x y^2 - y + 1 = 0
    cplx zr = (-1.0 + std::sqrt(1.0 + 4.0 * x)) / (2.0 * x);  // root of -x z^2 - z + 1 = 0
    cplx w = 0.5 * (y + zr);
    cplx w2 = w * w;
    cplx residual = 4.0 * x * x * w2 * w2 - w2 + 1.0;
    return std::abs(residual) <= tol;
}

IntegralIdentityResult integral_identity(cplx z, unsigned j) {
    if (z.real() <= 0.0) throw DomainError("integral_identity: requires Re(z) > 0");
    if (j > 40) throw SizeError("integral_identity: j must be <= 40");

    // lhs: substitute t = u^2/(1-u)^2 directly; all endpoint behavior is tame.
    auto integrand = [&](double u) -> cplx {
        double om = 1.0 - u;
        cplx base = cplx(u * u) + z * (om * om);   // (t+z)(1-u)^2
        cplx pw = 1.0;
        for (unsigned k = 0; k <= j; ++k) pw *= base;
        double omj = 1.0;
        for (unsigned k = 0; k < 2 * j; ++k) omj *= om;
        double num = 2.0 * u * u * omj;
        double t1 = u * u + om * om;               // (t+1)(1-u)^2
        return num / (t1 * pw);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    double err = 0.0;
    cplx lhs = integrate_gk15<cplx>(integrand, 0.0, 1.0, opt,
                                    [](cplx v) { return std::abs(v); }, cplx(0.0), &err);

    const double pi = 3.14159265358979323846;
    cplx rhs;
    cplx rz = std::sqrt(z);
    if (j == 0) {
        rhs = pi / (rz + 1.0);  // pi (sqrt(z)-1)/(z-1) without the cancelling form
    } else if (std::abs(z - 1.0) < 0.3) {
        // series form, stable near z = 1:
        // pi/(2 sqrt(z)) sum_{k>=j} C_k (z-1)^{k-j} / (4z)^k
        //   with C_k (4z)^{-k} written as (C_k 4^-k) z^{-k}
        auto cat = catalan_numbers(400);
        cplx sum = 0.0;
        cplx zm1 = z - 1.0;
        cplx zinv = 1.0 / z;
        cplx pref = 1.0;  // (z-1)^{k-j}
        cplx pz = 1.0;    // z^{-k}
        for (unsigned k = 0; k < j; ++k) pz *= zinv;
        for (std::size_t k = j; k < 400; ++k) {
            cplx term = cat.weighted(k) * pref * pz;
            sum += term;
            pref *= zm1;
            pz *= zinv;
            if (std::abs(term) < 1e-18 && k > j + 8) break;
        }
        rhs = pi / (2.0 * rz) * sum;
    } else {
        auto cat = catalan_numbers(j + 1);
        cplx w = (z - 1.0) / (4.0 * z);
        cplx sum = 0.0, wp = 1.0;
        for (unsigned k = 0; k < j; ++k) { sum += cat.value(k) * wp; wp *= w; }
        cplx num_part = rz - 1.0 - (z - 1.0) / (2.0 * rz) * sum;
        cplx den = 1.0;
        for (unsigned k = 0; k <= j; ++k) den *= (z - 1.0);
        rhs = pi * num_part / den;
    }
    return IntegralIdentityResult{lhs, err, rhs};
}

TailSeriesResult catalan_tail_series(cplx z, unsigned j, std::size_t N) {
    cplx w = (z - 1.0) / (4.0 * z);
    if (std::abs(w) > kRadiusSlack)
        throw DomainError("catalan_tail_series: |(z-1)/(4z)| must be <= 1/4 (Re(z) >= 1/2)");
    if (N < j) throw SizeError("catalan_tail_series: N must be >= j");
    std::size_t count = std::max<std::size_t>(N + 1, 2);
    auto cat = catalan_numbers(count);
    cplx sum = 0.0;
    cplx wp = 1.0;
    // C_k w^k = (C_k 4^-k)(4w)^k keeps everything in double range
    cplx w4 = 4.0 * w;
    for (unsigned k = 0; k < j; ++k) wp *= w4;
    for (std::size_t k = j; k < N; ++k) {
        sum += cat.weighted(k) * wp;
        wp *= w4;
    }
    // |sum_{k>=N} C_k w^k| <= sum_{k>=N} C_k 4^-k since |4w| <= 1
    double tail = cat.tail_bound(N);
    return TailSeriesResult{sum, tail};
}

}  // namespace catop
