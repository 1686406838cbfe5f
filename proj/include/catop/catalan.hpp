#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "catop/bigint.hpp"

namespace catop {

using cplx = std::complex<double>;

/// C_n as mantissa * 4^exp4 with mantissa in [1,4); stays representable far
/// beyond the double overflow point (n ~ 517).
struct Scaled4 {
    double mantissa = 0.0;
    long exp4 = 0;
};

/// The first `count()` Catalan numbers: exact integers (capped, see
/// kExactCap), scaled doubles for every index, and the weighted values
/// C_n / 4^n that drive all series truncation estimates.
class CatalanCoefficients {
public:
    static constexpr std::size_t kExactCap = 8192;
    static constexpr std::size_t kMaxCount = 100000;

    explicit CatalanCoefficients(std::size_t count);

    std::size_t count() const { return weighted_.size(); }
    std::size_t exact_count() const { return exact_.size(); }

    const BigUInt& exact(std::size_t n) const;
    Scaled4 scaled(std::size_t n) const;
    /// C_n as a plain double (HUGE_VAL once past the representable range).
    double value(std::size_t n) const;
    /// C_n / 4^n.
    double weighted(std::size_t n) const { return weighted_.at(n); }

    /// Upper bound on sum_{n>=N} C_n 4^-n; requires N < count().
    /// Exact for N in {0,1}; otherwise 2N C_N 4^-N (1 + 1.5/(N-1)).
    double tail_bound(std::size_t N) const;

private:
    std::vector<BigUInt> exact_;
    std::vector<Scaled4> scaled_;
    std::vector<double> weighted_;
};

/// Builds C_0..C_{n-1}; 1 <= n <= kMaxCount.
CatalanCoefficients catalan_numbers(std::size_t n);

/// Standalone weighted tail bound (builds only what it needs).
double catalan_tail_bound(std::size_t N);

/// binom(2n, n) / (n+1), exact. Cross-check oracle for the recurrences.
BigUInt catalan_closed_form(unsigned n);

/// Generating function (1 - sqrt(1-4z)) / (2z) on |z| <= 1/4,
/// Taylor-guarded near the removable singularity at 0.
cplx catalan_gf(cplx z);

/// Even part: sum C_{2n} z^{2n} = (sqrt(1+4z) - sqrt(1-4z)) / (4z).
cplx catalan_gf_even(cplx z);

/// Odd part: sum C_{2n+1} z^{2n+1} = (2 - sqrt(1+4z) - sqrt(1-4z)) / (4z).
cplx catalan_gf_odd(cplx z);

/// Checks that the mean w of the two quadratic roots (of xy^2-y+1=0 and
/// -xz^2-z+1=0) satisfies 4x^2 w^4 - w^2 + 1 = 0 within tol.
bool biquadratic_mean_check(cplx x, double tol);

struct IntegralIdentityResult {
    cplx lhs;              // adaptive quadrature of the integral
    double lhs_err_est;    // accumulated quadrature error estimate
    cplx rhs;              // closed form
};

/// int_0^inf sqrt(t) / ((t+1)(t+z)^{j+1}) dt against its closed form.
/// Requires Re(z) > 0 and j <= 40.
IntegralIdentityResult integral_identity(cplx z, unsigned j);

struct TailSeriesResult {
    cplx value;
    double tail_err;       // bound on the dropped part of the series
};

/// Partial sum_{k=j}^{N-1} C_k ((z-1)/(4z))^k; requires |(z-1)/(4z)| <= 1/4.
TailSeriesResult catalan_tail_series(cplx z, unsigned j, std::size_t N);

}  // namespace catop
