#pragma once

#include <vector>

#include "catop/cmatrix.hpp"

namespace catop {

/// Solves A X = B by LU with partial pivoting. Exactly singular pivot
/// raises SingularMatrixError.
CMatrix lu_solve(const CMatrix& A, const CMatrix& B);

/// A = Q U Q^H with Q unitary and U upper triangular.
struct SchurForm {
    CMatrix Q;
    CMatrix U;
    std::size_t source_dim = 0;
};

struct SchurOptions {
    std::size_t max_dim = 512;
    double deflation_tol = 1e-14;    // times ||H||_inf
    std::size_t sweeps_per_eig = 30; // iteration budget: 30 * n
};

/// Hessenberg reduction followed by Wilkinson-shifted QR.
SchurForm schur(const CMatrix& A, const SchurOptions& opt = {});

/// Diagonal of the Schur factor; multiset semantics (no canonical order).
std::vector<cplx> eigenvalues(const CMatrix& A);

/// Right eigenvector matrix from a Schur form (columns normalized).
/// Meaningful for diagonalizable inputs; near-defective ones give an
/// ill-conditioned V, which eigenvector_condition exposes.
CMatrix eigenvector_matrix(const SchurForm& s);

/// inf-norm condition number ||V|| ||V^-1|| of the eigenvector matrix.
double eigenvector_condition(const CMatrix& V);

/// Greedy min-distance matching of two eigenvalue multisets within tol.
bool multiset_close(std::vector<cplx> a, std::vector<cplx> b, double tol);

}  // namespace catop
