#pragma once

#include <string>
#include <vector>

#include "catop/cmatrix.hpp"

namespace catop {

enum class QmeMethod { Newton, Catalan };

/// The two Sylvester structures for a Newton-type step:
///  Paper:   (T Yn - I) Y+ + Y+ (T Yn) = T Yn^2 - I     (commuted operator)
///  Derived: T Y+ Yn + (T Yn - I) Y+  = T Yn^2 - I      (exact Frechet form)
/// They coincide whenever T commutes with the iterates (e.g. diagonal data).
enum class SylvesterForm { Paper, Derived };

/// How the higher-order update is assembled from the corrections H_j:
///  SumAll:   Y+ = Yn + sum_{j<=k} H_j          (order k+2)
///  HalfLast: Y+ = Yn + sum_{j<k} H_j + H_k/2   (the benchmark's truncation)
enum class CatalanAssembly { SumAll, HalfLast };

struct SolverConfig {
    QmeMethod method = QmeMethod::Newton;
    unsigned catalan_k = 2;            // corrections H_0..H_k when method == Catalan
    unsigned max_iters = 50;
    double res_tol = 0.0;              // 0 = mode default: 1e-13 double, 1e-20 extended
    SylvesterForm form = SylvesterForm::Paper;
    CatalanAssembly assembly = CatalanAssembly::HalfLast;
    unsigned precision_digits = 0;     // 0 = hardware double; 30..200 = software floats

    double effective_res_tol() const {
        if (res_tol > 0.0) return res_tol;
        return precision_digits == 0 ? 1e-13 : 1e-20;
    }
};

struct IterationStep {
    unsigned k = 0;
    double res = 0.0;      // RES = ||Q(Y_k)||_inf after the step
    double seconds = 0.0;
};

struct IterationTrace {
    std::string method;     // "newton" or "catalanK"
    std::string form;       // "paper" | "derived"
    std::string precision;  // "double" | "extended:<digits>"
    std::size_t n = 0;
    std::vector<IterationStep> steps;
    bool converged = false;
    CMatrix final_Y;
    double series_distance = -1.0;  // distance to the series solution when comparable

    /// {method, form, precision, steps:[{k,res,seconds}], converged, n}
    std::string to_json(bool with_seconds = true) const;
};

/// Q(Y) = T Y^2 - Y + I.
CMatrix q_of(const CMatrix& T, const CMatrix& Y);
/// Q'(Y) E = T E Y + (T Y - I) E.
CMatrix q_prime_apply(const CMatrix& T, const CMatrix& Y, const CMatrix& E);
/// Q''(Y) E1 E2 = T (E1 E2 + E2 E1).
CMatrix q_second_apply(const CMatrix& T, const CMatrix& E1, const CMatrix& E2);

CMatrix newton_step(const CMatrix& T, const CMatrix& Yn, SylvesterForm form);

/// Corrections H_0..H_k of one higher-order step; the three Sylvester
/// solves share one Schur factorization of (T Yn - I, T Yn) in Paper form.
std::vector<CMatrix> catalan_corrections(const CMatrix& T, const CMatrix& Yn, unsigned k,
                                         SylvesterForm form = SylvesterForm::Paper);

/// H_0 alone (fresh factorization).
CMatrix catalan_h0(const CMatrix& T, const CMatrix& Yn);
/// H_j from H_0 and H_{j-1} (fresh factorization; j >= 1).
CMatrix catalan_hj(const CMatrix& T, const CMatrix& Yn, const CMatrix& H0,
                   const CMatrix& Hprev, unsigned j);

/// Cross-check path: H_j = -(C_j/2^j) F^j G with G = Q'^-1 Q and
/// F = Q'^-1 Q''(., G), every inverse an exact generalized-Sylvester solve.
/// Agrees with catalan_corrections on commuting data.
std::vector<CMatrix> catalan_corrections_direct(const CMatrix& T, const CMatrix& Yn, unsigned k);

CMatrix catalan_step(const CMatrix& T, const CMatrix& Yn, unsigned k,
                     CatalanAssembly assembly = CatalanAssembly::HalfLast,
                     SylvesterForm form = SylvesterForm::Paper);

IterationTrace solve_qme(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg);

/// Diagonal test matrix: t_ii = 0.1 except t_{10,10} = 1e-10; n >= 10.
CMatrix qbd_example(std::size_t n);

/// Least-squares convergence order from post-step residuals above
/// 100 * floor_val; single usable pair falls back to the log-log ratio.
double fit_order(const std::vector<double>& residuals, double floor_val);

}  // namespace catop
