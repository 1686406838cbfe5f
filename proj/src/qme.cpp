#include "catop/qme.hpp"

#include <chrono>
#include <cmath>

#include <json.hpp>

#include "catop/catalan.hpp"
#include "catop/errors.hpp"
#include "catop/linalg.hpp"
#include "catop/operator_calculus.hpp"
#include "catop/sylvester.hpp"

namespace catop {

IterationTrace solve_qme_extended(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg);

namespace {

void require_pair(const CMatrix& T, const CMatrix& Y, const char* who) {
    if (!T.is_square() || !Y.is_square() || T.rows() != Y.rows())
        throw DimensionError(std::string(who) + ": T and Y must be square of equal size");
}

double catalan_ratio(unsigned j) {
    // C_j / (2 C_{j-1}) = (4j - 2) / (2 (j + 1))
    return (4.0 * j - 2.0) / (2.0 * (j + 1.0));
}

}  // namespace

CMatrix q_of(const CMatrix& T, const CMatrix& Y) {
    require_pair(T, Y, "q_of");
    return T * Y * Y - Y + CMatrix::identity(T.rows());
}

CMatrix q_prime_apply(const CMatrix& T, const CMatrix& Y, const CMatrix& E) {
    require_pair(T, Y, "q_prime_apply");
    return T * E * Y + (T * Y - CMatrix::identity(T.rows())) * E;
}

CMatrix q_second_apply(const CMatrix& T, const CMatrix& E1, const CMatrix& E2) {
    require_pair(T, E1, "q_second_apply");
    return T * (E1 * E2 + E2 * E1);
}

CMatrix newton_step(const CMatrix& T, const CMatrix& Yn, SylvesterForm form) {
    require_pair(T, Yn, "newton_step");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    CMatrix TY = T * Yn;
    CMatrix rhs = TY * Yn - I;  // T Yn^2 - I
    if (form == SylvesterForm::Paper) {
        try {
            return sylvester_solve({TY - I, TY, rhs, SylvesterStrategy::BartelsStewart});
        } catch (const IllPosedError& e) {
            throw IllPosedError(std::string("newton_step: ") + e.what());
        }
    }
    // exact Frechet correction, solved for Y_{n+1} directly:
    // T Y+ Yn + (T Yn - I) Y+ = T Yn^2 - I
    return generalized_sylvester_kron(T, Yn, TY - I, rhs);
}

std::vector<CMatrix> catalan_corrections(const CMatrix& T, const CMatrix& Yn, unsigned k,
                                         SylvesterForm form) {
    require_pair(T, Yn, "catalan_corrections");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    CMatrix TY = T * Yn;
    CMatrix minus_q = -(TY * Yn) + Yn - I;  // -Q(Yn)

    std::vector<CMatrix> H;
    H.reserve(k + 1);
    if (form == SylvesterForm::Paper) {
        SylvesterCache cache(TY - I, TY);  // shared by all k+1 solves
        H.push_back(cache.solve(minus_q));
        for (unsigned j = 1; j <= k; ++j) {
            CMatrix rhs = -catalan_ratio(j) * (T * (H[0] * H[j - 1] + H[j - 1] * H[0]));
            H.push_back(cache.solve(rhs));
        }
    } else {
        // exact Q'(Yn) H = rhs through the vectorized system
        H.push_back(generalized_sylvester_kron(T, Yn, TY - I, minus_q));
        for (unsigned j = 1; j <= k; ++j) {
            CMatrix rhs = -catalan_ratio(j) * (T * (H[0] * H[j - 1] + H[j - 1] * H[0]));
            H.push_back(generalized_sylvester_kron(T, Yn, TY - I, rhs));
        }
    }
    return H;
}

CMatrix catalan_h0(const CMatrix& T, const CMatrix& Yn) {
    return catalan_corrections(T, Yn, 0)[0];
}

CMatrix catalan_hj(const CMatrix& T, const CMatrix& Yn, const CMatrix& H0,
                   const CMatrix& Hprev, unsigned j) {
    require_pair(T, Yn, "catalan_hj");
    if (j < 1) throw SizeError("catalan_hj: j must be >= 1");
    CMatrix TY = T * Yn;
    CMatrix I = CMatrix::identity(T.rows());
    CMatrix rhs = -catalan_ratio(j) * (T * (H0 * Hprev + Hprev * H0));
    SylvesterCache cache(TY - I, TY);
    return cache.solve(rhs);
}

std::vector<CMatrix> catalan_corrections_direct(const CMatrix& T, const CMatrix& Yn, unsigned k) {
    require_pair(T, Yn, "catalan_corrections_direct");
    const std::size_t n = T.rows();
    CMatrix I = CMatrix::identity(n);
    CMatrix TY = T * Yn;
    CMatrix q = TY * Yn - Yn + I;
    // G = Q'^-1 Q(Yn); F(E) = Q'^-1 (T (E G + G E))
    CMatrix G = generalized_sylvester_kron(T, Yn, TY - I, q);
    auto cat = catalan_numbers(k + 2);
    std::vector<CMatrix> H;
    H.reserve(k + 1);
    CMatrix FjG = G;  // F^j G, starting at j = 0
    double pow2 = 1.0;
    for (unsigned j = 0; j <= k; ++j) {
        if (j > 0) {
            CMatrix rhs = T * (FjG * G + G * FjG);
            FjG = generalized_sylvester_kron(T, Yn, TY - I, rhs);
            pow2 *= 2.0;
        }
        H.push_back((-cat.value(j) / pow2) * FjG);
    }
    return H;
}

CMatrix catalan_step(const CMatrix& T, const CMatrix& Yn, unsigned k, CatalanAssembly assembly,
                     SylvesterForm form) {
    if (k < 1) throw SizeError("catalan_step: k must be >= 1");
    std::vector<CMatrix> H = catalan_corrections(T, Yn, k, form);
    CMatrix Y = Yn;
    for (unsigned j = 0; j < k; ++j) Y += H[j];
    if (assembly == CatalanAssembly::HalfLast) Y += 0.5 * H[k];
    else Y += H[k];
    return Y;
}

CMatrix qbd_example(std::size_t n) {
    if (n < 10) throw SizeError("qbd_example: n must be >= 10");
    CMatrix T(n, n);
    for (std::size_t i = 0; i < n; ++i) T(i, i) = 0.1;
    T(9, 9) = 1e-10;
    return T;
}

double fit_order(const std::vector<double>& residuals, double floor_val) {
    std::vector<double> usable;
    for (double r : residuals)
        if (r > 100.0 * floor_val && std::isfinite(r) && r > 0.0) usable.push_back(r);
    if (usable.size() < 2) throw SizeError("fit_order: need at least two usable residuals");
    if (usable.size() == 2) return std::log(usable[1]) / std::log(usable[0]);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = static_cast<double>(usable.size() - 1);
    for (std::size_t i = 0; i + 1 < usable.size(); ++i) {
        double x = std::log(usable[i]), y = std::log(usable[i + 1]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12) throw DomainError("fit_order: degenerate abscissae");
    return (m * sxy - sx * sy) / denom;
}

IterationTrace solve_qme(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg) {
    require_pair(T, Y0, "solve_qme");
    if (cfg.max_iters < 1) throw SizeError("solve_qme: max_iters must be >= 1");
    if (cfg.res_tol < 0.0) throw DomainError("solve_qme: res_tol must be nonnegative");
    if (cfg.method == QmeMethod::Catalan && cfg.catalan_k < 1)
        throw SizeError("solve_qme: catalan_k must be >= 1");
    if (cfg.precision_digits != 0) {
        if (cfg.precision_digits < 30 || cfg.precision_digits > 200)
            throw SizeError("solve_qme: precision_digits must be 0 or in [30, 200]");
        return solve_qme_extended(T, Y0, cfg);
    }
    const double res_tol = cfg.effective_res_tol();

    IterationTrace tr;
    tr.method = cfg.method == QmeMethod::Newton ? "newton"
                                                : "catalan" + std::to_string(cfg.catalan_k);
    tr.form = cfg.form == SylvesterForm::Paper ? "paper" : "derived";
    tr.precision = "double";
    tr.n = T.rows();

    CMatrix Y = Y0;
    for (unsigned k = 1; k <= cfg.max_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        if (cfg.method == QmeMethod::Newton) Y = newton_step(T, Y, cfg.form);
        else Y = catalan_step(T, Y, cfg.catalan_k, cfg.assembly, cfg.form);
        double res = quadratic_residual(T, Y);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tr.steps.push_back({k, res, secs});
        if (!std::isfinite(res)) break;
        if (res < res_tol) { tr.converged = true; break; }
    }
    tr.final_Y = Y;

    if (tr.converged) {
        // cross-validate against the series solution when it is available
        double rho4 = 0.0;
        for (cplx mu : eigenvalues(T)) rho4 = std::max(rho4, 4.0 * std::abs(mu));
        if (rho4 < 0.999 && T.rows() <= 128) {
            try {
                CMatrix C = catalan_of_matrix_series(T, 1e-12);
                tr.series_distance = (C - Y).inf_norm();
            } catch (const Error&) {
                tr.series_distance = -1.0;  // series not applicable; leave unset
            }
        }
    }
    return tr;
}

std::string IterationTrace::to_json(bool with_seconds) const {
    nlohmann::ordered_json j;
    j["method"] = method;
    j["form"] = form;
    j["precision"] = precision;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        nlohmann::ordered_json step;
        step["k"] = s.k;
        step["res"] = s.res;
        step["seconds"] = with_seconds ? s.seconds : 0.0;
        j["steps"].push_back(step);
    }
    j["converged"] = converged;
    j["n"] = n;
    return j.dump(2);
}

}  // namespace catop
