#pragma once

#include "catop/cmatrix.hpp"

namespace catop {

struct PowerBoundReport {
    double M = 0.0;                    // max over n <= N_probe of ||(4T)^n||_inf
    std::size_t N_probe = 0;
    double spectral_radius_est = 0.0;  // of T, from the Schur diagonal
    bool radius_warning = false;       // spectral radius of 4T >= 1 - 1e-10
};

/// Probes sup_n ||(4T)^n|| over a finite range and estimates the spectral
/// radius. Advisory: a finite probe cannot prove the sup finite.
PowerBoundReport power_bound_probe(const CMatrix& T, std::size_t N_probe = 64);

/// C(T) = sum C_n T^n, summed as (C_n 4^-n)(4T)^n with an adaptive
/// geometric tail cutoff. The result satisfies ||T C^2 - C + I|| <= 10 tol.
CMatrix catalan_of_matrix_series(const CMatrix& T, double tol);

/// C(T) by the resolvent integral (1/pi) int_{1/4}^inf sqrt(l-1/4)/l (l-T)^-1 dl.
/// Requires spectral radius of T below 1/4 - 1e-8.
CMatrix catalan_of_matrix_quadrature(const CMatrix& T, double tol);

/// Binomial-series square root of I - 4T; squaring reproduces I-4T to 10 tol.
CMatrix sqrt_one_minus_4T(const CMatrix& T, double tol);

/// || T Y^2 - Y + I ||_inf.
double quadratic_residual(const CMatrix& T, const CMatrix& Y);

/// || (I - T Y) Y - I ||_inf: the left-inverse identity for solutions.
double left_inverse_check(const CMatrix& T, const CMatrix& Y);

struct InveReport {
    bool invertible = false;       // 0 in rho(Y), via condition estimate
    bool recovers_T = false;       // T = Y^-1 - Y^-2
    bool commute = false;          // TY = YT
    bool shift_identity = false;   // T Y^2 = Y T Y
    bool all_equal = false;
};

/// The four equivalent conditions for a solution Y of T Y^2 - Y + I = 0.
InveReport inve_equivalences(const CMatrix& T, const CMatrix& Y, double tol);

/// (lambda - Y)^-1 built from the resolvent of T at (lambda-1)/lambda^2;
/// verified by multiply-back to 1e-9 (scaled).
CMatrix resolvent_of_Y(cplx lambda, const CMatrix& T, const CMatrix& Y);

/// ((lambda-1)/lambda^2 - T)^-1 built from two resolvents of Y;
/// verified by multiply-back.
CMatrix resolvent_of_T_from_Y(cplx lambda, const CMatrix& T, const CMatrix& Y);

struct SpectralMapReport {
    bool checked = false;          // false when the eigenvector basis is too ill-conditioned
    bool holds = false;
    double eigvec_condition = 0.0;
};

/// Multiset check sigma(C(T)) == catalan_gf(sigma(T)), gated on
/// diagonalizability (eigenvector condition <= 1e6).
SpectralMapReport spectral_map_check(const CMatrix& T, double tol);

}  // namespace catop
