#include <chrono>
#include <cmath>
#include <vector>

#include "catop/bigfloat.hpp"
#include "catop/errors.hpp"
#include "catop/qme.hpp"
#include "catop/sylvester.hpp"

// Software-float solve path. Real-valued inputs only: the target use is the
// ill-conditioned diagonal benchmark, where residuals sink to 1e-30 and
// doubles bottom out near 1e-15. Diagonal data takes a per-entry scalar
// route; general real matrices go through a Kronecker-assembled LU.

namespace catop {

namespace {

using BF = BigFloat;

struct BFMatrix {
    std::size_t n = 0;
    std::vector<BF> a;
    BF& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const BF& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

BFMatrix to_bf(const CMatrix& m, std::uint32_t prec) {
    BFMatrix r;
    r.n = m.rows();
    r.a.reserve(r.n * r.n);
    for (std::size_t i = 0; i < r.n; ++i)
        for (std::size_t j = 0; j < r.n; ++j)
            r.a.push_back(BF::from_double(m(i, j).real(), prec));
    return r;
}

CMatrix to_cmatrix(const BFMatrix& m) {
    CMatrix r(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) r(i, j) = cplx(m.at(i, j).to_double(), 0.0);
    return r;
}

BFMatrix bf_identity(std::size_t n, std::uint32_t prec) {
    BFMatrix r;
    r.n = n;
    r.a.assign(n * n, BF::from_int(0, prec));
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = BF::from_int(1, prec);
    return r;
}

BFMatrix bf_mul(const BFMatrix& x, const BFMatrix& y) {
    BFMatrix r;
    r.n = x.n;
    r.a.assign(r.n * r.n, BF::from_int(0, x.a[0].precision_bits()));
    for (std::size_t i = 0; i < r.n; ++i)
        for (std::size_t k = 0; k < r.n; ++k) {
            const BF& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (std::size_t j = 0; j < r.n; ++j)
                r.at(i, j) = r.at(i, j) + xik * y.at(k, j);
        }
    return r;
}

BFMatrix bf_sub(const BFMatrix& x, const BFMatrix& y) {
    BFMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
}

BFMatrix bf_add(const BFMatrix& x, const BFMatrix& y) {
    BFMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
}

BFMatrix bf_scale(const BF& s, const BFMatrix& x) {
    BFMatrix r = x;
    for (auto& v : r.a) v = s * v;
    return r;
}

double bf_inf_norm(const BFMatrix& x) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) {
        BF s = BF::from_int(0, x.a[0].precision_bits());
        for (std::size_t j = 0; j < x.n; ++j) s = s + x.at(i, j).abs();
        best = std::max(best, s.to_double());
    }
    return best;
}

/// In-place LU with partial pivoting; solves L U x = b for many b.
struct BFLu {
    std::size_t n = 0;
    std::vector<BF> lu;
    std::vector<std::size_t> perm;

    explicit BFLu(BFMatrix m) : n(m.n), lu(std::move(m.a)), perm(n) {
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            BF best = lu[k * n + k].abs();
            for (std::size_t i = k + 1; i < n; ++i) {
                BF v = lu[i * n + k].abs();
                if (best < v) { best = v; p = i; }
            }
            if (best.is_zero())
                throw SingularMatrixError("extended solve: exactly singular pivot");
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
                std::swap(perm[k], perm[p]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                BF f = lu[i * n + k] / lu[k * n + k];
                lu[i * n + k] = f;
                if (f.is_zero()) continue;
                for (std::size_t j = k + 1; j < n; ++j)
                    lu[i * n + j] = lu[i * n + j] - f * lu[k * n + j];
            }
        }
    }

    std::vector<BF> solve(const std::vector<BF>& b) const {
        std::vector<BF> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k) x[i] = x[i] - lu[i * n + k] * x[k];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k) x[i] = x[i] - lu[i * n + k] * x[k];
            x[i] = x[i] / lu[i * n + i];
        }
        return x;
    }
};

BF bf_ratio(unsigned j, std::uint32_t prec) {
    // C_j / (2 C_{j-1}) = (4j - 2) / (2j + 2)
    return BF::from_int(4 * static_cast<long long>(j) - 2, prec) /
           BF::from_int(2 * static_cast<long long>(j) + 2, prec);
}

/// Diagonal fast path: every iterate stays diagonal, one scalar recursion
/// per entry.
IterationTrace solve_diagonal(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg,
                              std::uint32_t prec, double res_tol) {
    const std::size_t n = T.rows();
    std::vector<BF> t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = BF::from_double(T(i, i).real(), prec);
        y[i] = BF::from_double(Y0(i, i).real(), prec);
    }
    BF one = BF::from_int(1, prec);
    BF two = BF::from_int(2, prec);
    BF half = one / two;

    IterationTrace tr;
    tr.n = n;
    for (unsigned k = 1; k <= cfg.max_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cfg.method == QmeMethod::Newton) {
                y[i] = (t[i] * y[i] * y[i] - one) / (two * t[i] * y[i] - one);
            } else {
                BF q = t[i] * y[i] * y[i] - y[i] + one;
                BF qp = two * t[i] * y[i] - one;
                BF h0 = -(q / qp);
                BF acc = h0;
                BF hprev = h0;
                for (unsigned j = 1; j <= cfg.catalan_k; ++j) {
                    BF hj = -(bf_ratio(j, prec) * (two * t[i] * h0 * hprev) / qp);
                    if (j < cfg.catalan_k) acc = acc + hj;
                    else acc = acc + (cfg.assembly == CatalanAssembly::HalfLast ? half * hj : hj);
                    hprev = hj;
                }
                y[i] = y[i] + acc;
            }
            BF qi = (t[i] * y[i] * y[i] - y[i] + one).abs();
            res = std::max(res, qi.to_double());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tr.steps.push_back({k, res, secs});
        if (res < res_tol) { tr.converged = true; break; }
    }
    CMatrix Y(n, n);
    for (std::size_t i = 0; i < n; ++i) Y(i, i) = cplx(y[i].to_double(), 0.0);
    tr.final_Y = Y;
    return tr;
}

/// General real path: the step operator is vectorized and LU-factored once
/// per outer iteration (all corrections share it).
IterationTrace solve_general(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg,
                             std::uint32_t prec, double res_tol) {
    const std::size_t n = T.rows();
    if (n * n > kKroneckerCap)
        throw StrategyError("extended solve: Kronecker path capped at n^2 <= 4096");
    BFMatrix Tb = to_bf(T, prec);
    BFMatrix Y = to_bf(Y0, prec);
    BFMatrix I = bf_identity(n, prec);
    BF zero = BF::from_int(0, prec);

    auto vec = [&](const BFMatrix& m) {
        std::vector<BF> v(n * n, zero);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) v[j * n + r] = m.at(r, j);
        return v;
    };
    auto unvec = [&](const std::vector<BF>& v) {
        BFMatrix m;
        m.n = n;
        m.a.assign(n * n, zero);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) m.at(r, j) = v[j * n + r];
        return m;
    };

    IterationTrace tr;
    tr.n = n;
    for (unsigned k = 1; k <= cfg.max_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        BFMatrix TY = bf_mul(Tb, Y);
        BFMatrix A = bf_sub(TY, I);  // T Y - I
        // system matrix: Paper   I (x) (TY - I) + (TY)^T (x) I
        //                Derived Y^T (x) T      + I (x) (TY - I)
        BFMatrix K;
        K.n = n * n;
        K.a.assign(K.n * K.n, zero);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    K.at(j * n + r, j * n + c) = K.at(j * n + r, j * n + c) + A.at(r, c);
        if (cfg.form == SylvesterForm::Paper) {
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t r = 0; r < n; ++r)
                        K.at(j * n + r, l * n + r) = K.at(j * n + r, l * n + r) + TY.at(l, j);
        } else {
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j) {
                    const BF& y_lj = Y.at(l, j);
                    if (y_lj.is_zero()) continue;
                    for (std::size_t r = 0; r < n; ++r)
                        for (std::size_t c = 0; c < n; ++c)
                            K.at(j * n + r, l * n + c) =
                                K.at(j * n + r, l * n + c) + y_lj * Tb.at(r, c);
                }
        }
        BFLu lu(std::move(K));

        if (cfg.method == QmeMethod::Newton) {
            BFMatrix rhs = bf_sub(bf_mul(TY, Y), I);  // T Y^2 - I
            Y = unvec(lu.solve(vec(rhs)));
        } else {
            BFMatrix q = bf_add(bf_sub(bf_mul(TY, Y), Y), I);  // Q(Y)
            BFMatrix minus_q = bf_scale(BF::from_int(-1, prec), q);
            std::vector<BFMatrix> H;
            H.push_back(unvec(lu.solve(vec(minus_q))));
            for (unsigned j = 1; j <= cfg.catalan_k; ++j) {
                BFMatrix cross = bf_add(bf_mul(H[0], H[j - 1]), bf_mul(H[j - 1], H[0]));
                BFMatrix rhs = bf_scale(-bf_ratio(j, prec), bf_mul(Tb, cross));
                H.push_back(unvec(lu.solve(vec(rhs))));
            }
            BF half = BF::from_int(1, prec) / BF::from_int(2, prec);
            for (unsigned j = 0; j < cfg.catalan_k; ++j) Y = bf_add(Y, H[j]);
            if (cfg.assembly == CatalanAssembly::HalfLast)
                Y = bf_add(Y, bf_scale(half, H[cfg.catalan_k]));
            else
                Y = bf_add(Y, H[cfg.catalan_k]);
        }
        BFMatrix TYn = bf_mul(Tb, Y);
        BFMatrix Q = bf_add(bf_sub(bf_mul(TYn, Y), Y), I);
        double res = bf_inf_norm(Q);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tr.steps.push_back({k, res, secs});
        if (res < res_tol) { tr.converged = true; break; }
    }
    tr.final_Y = to_cmatrix(Y);
    return tr;
}

}  // namespace

IterationTrace solve_qme_extended(const CMatrix& T, const CMatrix& Y0, const SolverConfig& cfg) {
    for (const auto& v : T.data())
        if (v.imag() != 0.0)
            throw DomainError("extended precision mode supports real-valued T only");
    for (const auto& v : Y0.data())
        if (v.imag() != 0.0)
            throw DomainError("extended precision mode supports real-valued Y0 only");

    const std::uint32_t prec = BigFloat::bits_for_digits(cfg.precision_digits);
    const double res_tol = cfg.effective_res_tol();

    IterationTrace tr;
    if (T.is_diagonal() && Y0.is_diagonal())
        tr = solve_diagonal(T, Y0, cfg, prec, res_tol);
    else
        tr = solve_general(T, Y0, cfg, prec, res_tol);

    tr.method = cfg.method == QmeMethod::Newton ? "newton"
                                                : "catalan" + std::to_string(cfg.catalan_k);
    tr.form = cfg.form == SylvesterForm::Paper ? "paper" : "derived";
    tr.precision = "extended:" + std::to_string(cfg.precision_digits);
    return tr;
}

}  // namespace catop
