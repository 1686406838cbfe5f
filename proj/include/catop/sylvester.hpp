#pragma once

#include "catop/cmatrix.hpp"
#include "catop/linalg.hpp"

namespace catop {

enum class SylvesterStrategy { BartelsStewart, Kronecker };

/// A X + X B = D.
struct SylvesterProblem {
    CMatrix A;  // m x m
    CMatrix B;  // n x n
    CMatrix D;  // m x n
    SylvesterStrategy strategy = SylvesterStrategy::BartelsStewart;
};

/// Kronecker assembly is only permitted up to this many unknowns (m*n).
inline constexpr std::size_t kKroneckerCap = 4096;

CMatrix sylvester_solve(const SylvesterProblem& p);

/// Schur pair of (A, B) factored once; solves A X + X B = D for many D.
/// The iterative solvers reuse one cache for all corrections of a step.
class SylvesterCache {
public:
    SylvesterCache(const CMatrix& A, const CMatrix& B);
    CMatrix solve(const CMatrix& D) const;
    double min_separation() const { return sep_min_; }

private:
    SchurForm sa_, sb_;
    CMatrix qa_h_, qb_h_;
    double sep_min_ = 0.0;
    double scale_ = 0.0;
};

/// Exact solve of A1 X B1 + A2 X = D through the vectorized system.
/// All blocks n x n with n^2 <= kKroneckerCap.
CMatrix generalized_sylvester_kron(const CMatrix& A1, const CMatrix& B1, const CMatrix& A2,
                                   const CMatrix& D);

}  // namespace catop
