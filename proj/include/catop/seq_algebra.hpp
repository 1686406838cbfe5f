#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "catop/catalan.hpp"

namespace catop {

/// Finitely supported element of the weighted convolution algebra
/// l1(N0, 4^-n). trunc_err bounds the weighted norm of whatever tail was
/// discarded when the element was truncated; exact finite sequences carry 0.
class WeightedSeq {
public:
    WeightedSeq() = default;
    explicit WeightedSeq(std::vector<cplx> coeffs, double trunc_err = 0.0);

    static WeightedSeq delta(std::size_t j, cplx scale = cplx(1.0));

    std::size_t length() const { return c_.size(); }
    cplx coeff(std::size_t n) const { return n < c_.size() ? c_[n] : cplx(0.0); }
    const std::vector<cplx>& coeffs() const { return c_; }
    double trunc_err() const { return err_; }

    WeightedSeq& operator+=(const WeightedSeq& o);
    WeightedSeq& operator-=(const WeightedSeq& o);
    WeightedSeq& operator*=(cplx s);

private:
    std::vector<cplx> c_;
    double err_ = 0.0;
};

WeightedSeq operator+(WeightedSeq a, const WeightedSeq& b);
WeightedSeq operator-(WeightedSeq a, const WeightedSeq& b);
WeightedSeq operator*(cplx s, WeightedSeq a);

/// Weighted norm sum |a_n| 4^-n over the stored support.
double norm_w(const WeightedSeq& a);

/// Gelfand transform sum a_n z^n; requires |z| <= 1/4.
cplx z_transform(const WeightedSeq& a, cplx z);

/// Convolution (a*b)_n = sum_j a_{n-j} b_j. Exact inputs give the full
/// support; truncated inputs are cut at the shortest reliable length and
/// the output error budget follows ||a|| err_b + ||b|| err_a + err_a err_b.
WeightedSeq convolve(const WeightedSeq& a, const WeightedSeq& b);

/// First L Catalan numbers as an algebra element; trunc_err = tail bound.
/// L <= 512 keeps the raw coefficients inside double range.
WeightedSeq catalan_seq(std::size_t L);

/// Geometric progression p_lambda(n) = lambda^-n, in the algebra iff
/// |lambda| > 1/4; trunc_err is the exact discarded geometric tail.
WeightedSeq geometric_seq(cplx lambda, std::size_t L);

/// Region where the resolvent formula applies: |lambda-1|/|lambda|^2 > 1/4.
bool in_omega(cplx lambda);

/// (lambda - c)^-1 for lambda in Omega, truncated at L.
WeightedSeq resolvent_catalan(cplx lambda, std::size_t L);

/// Boundary point of sigma(c): equals catalan_gf(e^{i theta}/4); theta in
/// [-pi, pi].
cplx sigma_boundary(double theta);

struct BoundarySample {
    double theta;
    cplx point;
};

/// M samples of the sigma(c) boundary over theta in [-pi, pi).
std::vector<BoundarySample> sigma_boundary_samples(std::size_t M);

/// M samples of the Omega boundary |l-1|/|l|^2 = 1/4, solved radially per
/// angle by bisection.
std::vector<BoundarySample> omega_boundary_samples(std::size_t M);

struct BackwardDiffResult {
    std::vector<double> closed_form;    // coefficients of C(a/8), a = delta_1 - delta_0
    std::vector<double> direct_series;  // same through sum_n C_n (a/8)^{*n}
    double max_discrepancy;
};

/// First J coefficients of the Catalan function of the scaled backward
/// difference, both by the closed form (2 sqrt6 - 4, sqrt6/3 tail sums) and
/// by direct series evaluation.
BackwardDiffResult backward_difference_catalan(std::size_t J);

}  // namespace catop
