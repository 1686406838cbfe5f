#include "catop/operator_calculus.hpp"

#include <cmath>

#include "catop/catalan.hpp"
#include "catop/errors.hpp"
#include "catop/linalg.hpp"
#include "catop/quadrature.hpp"

namespace catop {

namespace {

constexpr double kPi = 3.14159265358979323846;

double spectral_radius(const CMatrix& T) {
    double r = 0.0;
    for (cplx mu : eigenvalues(T)) r = std::max(r, std::abs(mu));
    return r;
}

void require_square(const CMatrix& T, const char* who) {
    if (!T.is_square()) throw DimensionError(std::string(who) + ": matrix must be square");
}

const CatalanCoefficients& full_catalan() {
    static thread_local CatalanCoefficients cat = catalan_numbers(CatalanCoefficients::kMaxCount);
    return cat;
}

/// Sums sum_n w_n (4T)^n where w_n is supplied per index, stopping when the
/// observed term decay extrapolates below tol. Used by both the Catalan
/// series and the binomial square root (their weights differ only by index
/// shift and scale).
template <class WeightFn>
CMatrix summed_power_series(const CMatrix& T, double tol, WeightFn&& weight, const char* who) {
    const std::size_t n = T.rows();
    CMatrix four_t = 4.0 * T;
    CMatrix sum = CMatrix(n, n);
    CMatrix power = CMatrix::identity(n);
    double w0 = weight(0);
    sum += w0 * power;

    constexpr std::size_t kMax = 100000;  // weights are defined for k < kMax
    double prev_mag = std::fabs(w0) * 1.0;
    double ratio_window[4] = {1.0, 1.0, 1.0, 1.0};
    for (std::size_t k = 1; k < kMax; ++k) {
        power = power * four_t;
        double wk = weight(k);
        CMatrix term = wk * power;
        sum += term;
        double mag = std::fabs(wk) * power.inf_norm();
        if (mag == 0.0) return sum;  // nilpotent input: the series is finite
        double ratio = prev_mag > 0.0 ? mag / prev_mag : 1.0;
        ratio_window[k % 4] = ratio;
        prev_mag = mag;
        if (k >= 8) {
            double q = std::max(std::max(ratio_window[0], ratio_window[1]),
                                std::max(ratio_window[2], ratio_window[3]));
            if (q < 1.0 && mag * q / (1.0 - q) <= 0.5 * tol) return sum;
        }
    }
    throw ConvergenceError(std::string(who) + ": series did not reach the tolerance within 1e5 terms");
}

}  // namespace

PowerBoundReport power_bound_probe(const CMatrix& T, std::size_t N_probe) {
    require_square(T, "power_bound_probe");
    if (N_probe < 8) throw SizeError("power_bound_probe: N_probe must be >= 8");
    PowerBoundReport rep;
    rep.N_probe = N_probe;
    CMatrix four_t = 4.0 * T;
    CMatrix power = CMatrix::identity(T.rows());
    double M = power.inf_norm();  // n = 0 contributes ||I|| = 1
    for (std::size_t k = 1; k <= N_probe; ++k) {
        power = power * four_t;
        M = std::max(M, power.inf_norm());
        if (!power.all_finite()) break;  // wildly divergent probe; M is already huge
    }
    rep.M = M;
    rep.spectral_radius_est = spectral_radius(T);
    rep.radius_warning = 4.0 * rep.spectral_radius_est >= 1.0 - 1e-10;
    return rep;
}

CMatrix catalan_of_matrix_series(const CMatrix& T, double tol) {
    require_square(T, "catalan_of_matrix_series");
    if (tol <= 0.0) throw DomainError("catalan_of_matrix_series: tol must be positive");
    const CatalanCoefficients& cat = full_catalan();
    CMatrix C = summed_power_series(
        T, tol, [&](std::size_t k) { return cat.weighted(k); }, "catalan_of_matrix_series");
    double res = quadratic_residual(T, C);
    if (res > 10.0 * tol)
        throw ConvergenceError("catalan_of_matrix_series: residual above 10*tol");
    return C;
}

CMatrix sqrt_one_minus_4T(const CMatrix& T, double tol) {
    require_square(T, "sqrt_one_minus_4T");
    if (tol <= 0.0) throw DomainError("sqrt_one_minus_4T: tol must be positive");
    const CatalanCoefficients& cat = full_catalan();
    // sqrt(1-4z) = 1 - 2 sum_{n>=1} C_{n-1} 4^{-n} (4z)^n
    CMatrix S = summed_power_series(
        T, tol,
        [&](std::size_t k) { return k == 0 ? 1.0 : -0.5 * cat.weighted(k - 1); },
        "sqrt_one_minus_4T");
    CMatrix check = S * S - (CMatrix::identity(T.rows()) - 4.0 * T);
    if (check.inf_norm() > 10.0 * tol)
        throw ConvergenceError("sqrt_one_minus_4T: squared result misses I - 4T by more than 10*tol");
    return S;
}

CMatrix catalan_of_matrix_quadrature(const CMatrix& T, double tol) {
    require_square(T, "catalan_of_matrix_quadrature");
    if (tol <= 0.0) throw DomainError("catalan_of_matrix_quadrature: tol must be positive");
    double rho = spectral_radius(T);
    if (rho >= 0.25 - 1e-8)
        throw SpectrumError(
            "catalan_of_matrix_quadrature: spectral radius too close to 1/4; integrand near-singular");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    auto f = [&](double t) -> CMatrix {
        double lam = 0.25 + t;
        CMatrix R = lu_solve(lam * I - T, I);
        return (std::sqrt(t) / (kPi * lam)) * R;
    };
    QuadOptions opt;
    opt.abs_tol = tol;
    return integrate_halfline<CMatrix>(
        f, opt, [](const CMatrix& m) { return m.max_abs(); }, CMatrix(n, n));
}

double quadratic_residual(const CMatrix& T, const CMatrix& Y) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError("quadratic_residual: T and Y must be square of equal size");
    return (T * Y * Y - Y + CMatrix::identity(T.rows())).inf_norm();
}

double left_inverse_check(const CMatrix& T, const CMatrix& Y) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError("left_inverse_check: T and Y must be square of equal size");
    CMatrix I = CMatrix::identity(T.rows());
    return ((I - T * Y) * Y - I).inf_norm();
}

InveReport inve_equivalences(const CMatrix& T, const CMatrix& Y, double tol) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError("inve_equivalences: T and Y must be square of equal size");
    InveReport rep;
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    double nT = std::max(T.inf_norm(), 1.0), nY = std::max(Y.inf_norm(), 1.0);
    try {
        CMatrix Yi = lu_solve(Y, I);
        double cond = Y.inf_norm() * Yi.inf_norm();
        rep.invertible = cond <= 1e12;
        if (rep.invertible) {
            CMatrix Yi2 = Yi * Yi;
            double s = std::max(1.0, Yi.inf_norm() * Yi.inf_norm());
            rep.recovers_T = (T - (Yi - Yi2)).inf_norm() <= tol * s;
        }
    } catch (const SingularMatrixError&) {
        rep.invertible = false;
    }
    rep.commute = (T * Y - Y * T).inf_norm() <= tol * nT * nY;
    rep.shift_identity = (T * Y * Y - Y * T * Y).inf_norm() <= tol * nT * nY * nY;
    rep.all_equal = rep.invertible == rep.recovers_T && rep.commute == rep.shift_identity &&
                    rep.invertible == rep.commute;
    return rep;
}

CMatrix resolvent_of_Y(cplx lambda, const CMatrix& T, const CMatrix& Y) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError("resolvent_of_Y: T and Y must be square of equal size");
    if (lambda == cplx(0.0)) throw DomainError("resolvent_of_Y: lambda must be nonzero");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    cplx w = (lambda - 1.0) / (lambda * lambda);
    CMatrix R;
    try {
        R = lu_solve(w * I - T, I);
    } catch (const SingularMatrixError&) {
        throw SpectrumError("resolvent_of_Y: (lambda-1)/lambda^2 hits sigma(T)");
    }
    cplx l2 = lambda * lambda;
    CMatrix res = (1.0 / lambda) * I + (1.0 / (l2 * lambda)) * R + (1.0 / l2) * Y -
                  ((lambda - 1.0) / (l2 * l2)) * (Y * R);
    double scale = std::max(1.0, res.inf_norm() * (std::abs(lambda) + Y.inf_norm()));
    double resid = ((lambda * I - Y) * res - I).inf_norm();
    if (resid > 1e-9 * scale)
        throw SpectrumError("resolvent_of_Y: multiply-back failed; lambda too close to sigma(Y)");
    return res;
}

CMatrix resolvent_of_T_from_Y(cplx lambda, const CMatrix& T, const CMatrix& Y) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError("resolvent_of_T_from_Y: T and Y must be square of equal size");
    if (lambda == cplx(0.0) || lambda == cplx(1.0))
        throw DomainError("resolvent_of_T_from_Y: lambda must avoid {0, 1}");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    cplx shift = lambda / (lambda - 1.0);
    CMatrix R1, R2;
    try {
        R1 = lu_solve(shift * I - Y, I);
        R2 = lu_solve(lambda * I - Y, I);
    } catch (const SingularMatrixError&) {
        throw SpectrumError("resolvent_of_T_from_Y: an inner resolvent of Y does not exist");
    }
    cplx l2 = lambda * lambda;
    CMatrix res = (l2 * l2 / (lambda - 1.0)) * (R1 * (R2 - (1.0 / l2) * (lambda * I + Y)));
    cplx w = (lambda - 1.0) / l2;
    double scale = std::max(1.0, res.inf_norm() * (std::abs(w) + T.inf_norm()));
    double resid = ((w * I - T) * res - I).inf_norm();
    if (resid > 1e-9 * scale)
        throw SpectrumError("resolvent_of_T_from_Y: multiply-back failed");
    return res;
}

SpectralMapReport spectral_map_check(const CMatrix& T, double tol) {
    require_square(T, "spectral_map_check");
    SpectralMapReport rep;
    SchurForm s = schur(T);
    CMatrix V = eigenvector_matrix(s);
    rep.eigvec_condition = eigenvector_condition(V);
    if (!(rep.eigvec_condition <= 1e6)) return rep;  // reported unchecked
    rep.checked = true;

    CMatrix C = catalan_of_matrix_series(T, std::min(1e-12, tol * 1e-2));
    std::vector<cplx> mapped;
    mapped.reserve(T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) mapped.push_back(catalan_gf(s.U(i, i)));
    rep.holds = multiset_close(eigenvalues(C), mapped, tol);
    return rep;
}

}  // namespace catop
