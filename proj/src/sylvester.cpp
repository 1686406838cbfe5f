#include "catop/sylvester.hpp"

#include <cmath>

#include "catop/errors.hpp"

namespace catop {

namespace {

void check_problem(const SylvesterProblem& p) {
    if (!p.A.is_square() || !p.B.is_square())
        throw DimensionError("sylvester_solve: A and B must be square");
    if (p.D.rows() != p.A.rows() || p.D.cols() != p.B.rows())
        throw DimensionError("sylvester_solve: D shape must be A.rows x B.rows");
}

}  // namespace

SylvesterCache::SylvesterCache(const CMatrix& A, const CMatrix& B)
    : sa_(schur(A)), sb_(schur(B)) {
    qa_h_ = sa_.Q.adjoint();
    qb_h_ = sb_.Q.adjoint();
    scale_ = A.inf_norm() + B.inf_norm();
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < sa_.source_dim; ++i)
        for (std::size_t j = 0; j < sb_.source_dim; ++j)
            best = std::min(best, std::abs(sa_.U(i, i) + sb_.U(j, j)));
    sep_min_ = best;
    if (sep_min_ <= 1e-12 * scale_)
        throw IllPosedError("sylvester: spectra of A and -B intersect within tolerance");
}

CMatrix SylvesterCache::solve(const CMatrix& D) const {
    const std::size_t m = sa_.source_dim, n = sb_.source_dim;
    if (D.rows() != m || D.cols() != n) throw DimensionError("SylvesterCache::solve: D shape");
    CMatrix Dt = qa_h_ * D * sb_.Q;
    const CMatrix& UA = sa_.U;
    const CMatrix& UB = sb_.U;
    CMatrix X(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        // rhs_j = Dt_j - sum_{i<j} UB(i,j) X_i
        std::vector<cplx> rhs(m);
        for (std::size_t r = 0; r < m; ++r) {
            cplx s = Dt(r, j);
            for (std::size_t i = 0; i < j; ++i) s -= UB(i, j) * X(r, i);
            rhs[r] = s;
        }
        // (UA + UB(j,j) I) x = rhs, upper triangular
        cplx mu = UB(j, j);
        for (std::size_t r = m; r-- > 0;) {
            cplx s = rhs[r];
            for (std::size_t k = r + 1; k < m; ++k) s -= UA(r, k) * X(k, j);
            X(r, j) = s / (UA(r, r) + mu);
        }
    }
    return sa_.Q * X * qb_h_;
}

namespace {

CMatrix sylvester_kronecker(const CMatrix& A, const CMatrix& B, const CMatrix& D) {
    const std::size_t m = A.rows(), n = B.rows();
    if (m * n > kKroneckerCap)
        throw StrategyError("sylvester: Kronecker strategy capped at m*n <= 4096");
    // column-major vec: (I_n (x) A + B^T (x) I_m) vec(X) = vec(D)
    CMatrix K(m * n, m * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) K(j * m + r, j * m + c) += A(r, c);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < m; ++r) K(j * m + r, l * m + r) += B(l, j);
    CMatrix d(m * n, 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < m; ++r) d(j * m + r, 0) = D(r, j);
    CMatrix x;
    try {
        x = lu_solve(K, d);
    } catch (const SingularMatrixError&) {
        throw IllPosedError("sylvester: assembled Kronecker system singular");
    }
    CMatrix X(m, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < m; ++r) X(r, j) = x(j * m + r, 0);
    return X;
}

}  // namespace

CMatrix sylvester_solve(const SylvesterProblem& p) {
    check_problem(p);
    if (p.strategy == SylvesterStrategy::Kronecker) {
        CMatrix X = sylvester_kronecker(p.A, p.B, p.D);
        double scale = (p.A.inf_norm() + p.B.inf_norm()) * std::max(X.inf_norm(), 1e-300);
        double res = (p.A * X + X * p.B - p.D).inf_norm();
        if (res > 1e-8 * std::max(scale, p.D.inf_norm()))
            throw IllPosedError("sylvester: Kronecker solve residual too large");
        return X;
    }
    SylvesterCache cache(p.A, p.B);
    return cache.solve(p.D);
}

CMatrix generalized_sylvester_kron(const CMatrix& A1, const CMatrix& B1, const CMatrix& A2,
                                   const CMatrix& D) {
    if (!A1.is_square() || !B1.is_square() || !A2.is_square())
        throw DimensionError("generalized_sylvester_kron: blocks must be square");
    const std::size_t n = A1.rows();
    if (B1.rows() != n || A2.rows() != n || D.rows() != n || D.cols() != n)
        throw DimensionError("generalized_sylvester_kron: all blocks must be n x n");
    if (n * n > kKroneckerCap)
        throw SizeError("generalized_sylvester_kron: n^2 exceeds cap 4096");
    // (B1^T (x) A1 + I (x) A2) vec(X) = vec(D), column-major vec
    CMatrix K(n * n, n * n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) {
            cplx b = B1(l, j);
            if (b == cplx(0.0)) continue;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) K(j * n + r, l * n + c) += b * A1(r, c);
        }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) K(j * n + r, j * n + c) += A2(r, c);
    CMatrix d(n * n, 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) d(j * n + r, 0) = D(r, j);
    CMatrix x;
    try {
        x = lu_solve(K, d);
    } catch (const SingularMatrixError&) {
        throw IllPosedError("generalized_sylvester_kron: assembled system singular");
    }
    CMatrix X(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) X(r, j) = x(j * n + r, 0);
    double scale = (A1.inf_norm() * B1.inf_norm() + A2.inf_norm()) * std::max(X.inf_norm(), 1e-300);
    double res = (A1 * X * B1 + A2 * X - D).inf_norm();
    if (res > 1e-8 * std::max(scale, std::max(D.inf_norm(), 1.0)))
        throw IllPosedError("generalized_sylvester_kron: solve residual too large");
    return X;
}

}  // namespace catop
