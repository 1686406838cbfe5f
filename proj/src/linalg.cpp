#include "catop/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "catop/errors.hpp"

namespace catop {

CMatrix lu_solve(const CMatrix& A, const CMatrix& B) {
    if (!A.is_square()) throw DimensionError("lu_solve: A must be square");
    if (B.rows() != A.rows()) throw DimensionError("lu_solve: B row count mismatch");
    const std::size_t n = A.rows(), m = B.cols();
    CMatrix lu = A;
    CMatrix x = B;
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(lu(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw SingularMatrixError("lu_solve: exactly singular pivot");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(p, j));
        }
        cplx pivot = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            cplx f = lu(i, k) / pivot;
            lu(i, k) = f;
            if (f == cplx(0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
        }
    }
    // back substitution
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            cplx s = x(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
            x(k, j) = s / lu(k, k);
        }
    }
    return x;
}

namespace {

struct Givens {
    double c;
    cplx s;
};

// G [a; b] = [r; 0] with G = [[c, s], [-conj(s), c]], c real.
Givens make_givens(cplx a, cplx b) {
    double na = std::abs(a), nb = std::abs(b);
    if (nb == 0.0) return {1.0, cplx(0.0)};
    double d = std::hypot(na, nb);
    if (na == 0.0) return {0.0, std::conj(b) / nb};
    cplx phase = a / na;
    return {na / d, phase * std::conj(b) / d};
}

// rows k,k+1 of H over columns [j0, j1)
void apply_rows(CMatrix& H, const Givens& g, std::size_t k, std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j) {
        cplx t0 = H(k, j), t1 = H(k + 1, j);
        H(k, j) = g.c * t0 + g.s * t1;
        H(k + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
    }
}

// columns k,k+1 of H over rows [i0, i1) -- multiplication by G^H from the right
void apply_cols(CMatrix& H, const Givens& g, std::size_t k, std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
        cplx t0 = H(i, k), t1 = H(i, k + 1);
        H(i, k) = g.c * t0 + std::conj(g.s) * t1;
        H(i, k + 1) = -g.s * t0 + g.c * t1;
    }
}

// eigenvalue of [[a,b],[c,d]] closest to d
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    cplx tr = a + d;
    cplx det = a * d - b * c;
    cplx disc = std::sqrt(tr * tr - 4.0 * det);
    cplx m1 = 0.5 * (tr + disc), m2 = 0.5 * (tr - disc);
    return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

}  // namespace

SchurForm schur(const CMatrix& A, const SchurOptions& opt) {
    if (!A.is_square()) throw DimensionError("schur: matrix must be square");
    const std::size_t n = A.rows();
    if (n > opt.max_dim) throw SizeError("schur: dimension above configured max");
    SchurForm out;
    out.source_dim = n;
    out.Q = CMatrix::identity(n);
    out.U = A;
    if (n <= 1) return out;

    CMatrix& H = out.U;
    CMatrix& Q = out.Q;

    // Hessenberg reduction by Householder reflectors
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm = std::hypot(colnorm, std::abs(H(i, k)));
        if (colnorm == 0.0) continue;
        cplx x0 = H(k + 1, k);
        cplx phase = (std::abs(x0) == 0.0) ? cplx(1.0) : x0 / std::abs(x0);
        std::vector<cplx> v(n - k - 1);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = H(k + 1 + i, k);
        v[0] += phase * colnorm;
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 == 0.0) continue;
        // H <- P H P with P = I - 2 v v^H / (v^H v) acting on rows/cols k+1..n-1
        for (std::size_t j = 0; j < n; ++j) {  // rows
            cplx dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * H(k + 1 + i, j);
            dot *= 2.0 / vnorm2;
            for (std::size_t i = 0; i < v.size(); ++i) H(k + 1 + i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {  // columns
            cplx dot = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) dot += H(i, k + 1 + j) * v[j];
            dot *= 2.0 / vnorm2;
            for (std::size_t j = 0; j < v.size(); ++j) H(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {  // accumulate Q <- Q P
            cplx dot = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) dot += Q(i, k + 1 + j) * v[j];
            dot *= 2.0 / vnorm2;
            for (std::size_t j = 0; j < v.size(); ++j) Q(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) H(i, k) = 0.0;  // enforce exact zeros
        H(k + 1, k) = -phase * colnorm;
    }

    const double hnorm = std::max(H.inf_norm(), 1e-300);
    const double defl = opt.deflation_tol * hnorm;
    const std::size_t max_total = opt.sweeps_per_eig * n;
    std::size_t total_sweeps = 0;
    std::size_t hi = n - 1;
    std::size_t stalled = 0;

    while (hi > 0) {
        // deflate tiny subdiagonals
        bool deflated = true;
        while (deflated && hi > 0) {
            deflated = false;
            if (std::abs(H(hi, hi - 1)) <=
                std::max(defl, 1e-16 * (std::abs(H(hi, hi)) + std::abs(H(hi - 1, hi - 1))))) {
                H(hi, hi - 1) = 0.0;
                --hi;
                stalled = 0;
                deflated = true;
            }
        }
        if (hi == 0) break;

        // active block [lo, hi]; the boundary subdiagonal is zeroed so the
        // block decouples exactly
        std::size_t lo = hi;
        while (lo > 0) {
            double sub = std::abs(H(lo, lo - 1));
            if (sub <= std::max(defl, 1e-16 * (std::abs(H(lo, lo)) + std::abs(H(lo - 1, lo - 1))))) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (++total_sweeps > max_total)
            throw ConvergenceError("schur: QR iteration exceeded sweep budget");

        cplx shift;
        if (++stalled % 12 == 0) {
            // exceptional shift to break symmetry-induced cycles
            shift = cplx(std::abs(H(hi, hi - 1)) + 0.75 * std::abs(H(hi, hi)), 0.0);
        } else {
            shift = wilkinson_shift(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
        }

        for (std::size_t i = lo; i <= hi; ++i) H(i, i) -= shift;
        std::vector<Givens> rot(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
            Givens g = make_givens(H(k, k), H(k + 1, k));
            rot[k - lo] = g;
            apply_rows(H, g, k, k, n);
            H(k + 1, k) = 0.0;
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens& g = rot[k - lo];
            apply_cols(H, g, k, 0, std::min(k + 2, hi) + 1);
            apply_cols(Q, g, k, 0, n);
        }
        for (std::size_t i = lo; i <= hi; ++i) H(i, i) += shift;
    }

    // scrub the strict lower triangle (fill from rounding is below tolerance)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) H(i, j) = 0.0;
    return out;
}

std::vector<cplx> eigenvalues(const CMatrix& A) {
    SchurForm s = schur(A);
    std::vector<cplx> ev(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) ev[i] = s.U(i, i);
    return ev;
}

CMatrix eigenvector_matrix(const SchurForm& s) {
    const std::size_t n = s.source_dim;
    const double unorm = std::max(s.U.inf_norm(), 1e-300);
    CMatrix V(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<cplx> v(n, 0.0);
        v[k] = 1.0;
        cplx mu = s.U(k, k);
        for (std::size_t i = k; i-- > 0;) {
            cplx rhs = 0.0;
            for (std::size_t j = i + 1; j <= k; ++j) rhs += s.U(i, j) * v[j];
            cplx den = s.U(i, i) - mu;
            if (std::abs(den) < 1e-300 + 1e-16 * unorm) {
                den = cplx(1e-16 * unorm, 0.0);  // near-defective: keep it finite
            }
            v[i] = -rhs / den;
        }
        double norm2 = 0.0;
        for (const auto& vi : v) norm2 += std::norm(vi);
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& vi : v) vi *= inv;
        // column k of V = Q v
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j <= k; ++j) acc += s.Q(i, j) * v[j];
            V(i, k) = acc;
        }
    }
    return V;
}

double eigenvector_condition(const CMatrix& V) {
    try {
        CMatrix Vi = lu_solve(V, CMatrix::identity(V.rows()));
        return V.inf_norm() * Vi.inf_norm();
    } catch (const SingularMatrixError&) {
        return HUGE_VAL;
    }
}

bool multiset_close(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        double best = HUGE_VAL;
        std::size_t arg = b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            double d = std::abs(x - b[i]);
            if (d < best) { best = d; arg = i; }
        }
        if (arg == b.size() || best > tol) return false;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(arg));
    }
    return true;
}

}  // namespace catop
