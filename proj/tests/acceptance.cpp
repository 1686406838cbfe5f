// Acceptance suite: one check per shipped guarantee, each printed as a
// PASS/FAIL line with the measured numbers. Run a single criterion with
// --criterion <1..10>, or all of them with no arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "catop/catalan.hpp"
#include "catop/cmatrix.hpp"
#include "catop/errors.hpp"
#include "catop/linalg.hpp"
#include "catop/operator_calculus.hpp"
#include "catop/qme.hpp"
#include "catop/quadrature.hpp"
#include "catop/sampling.hpp"
#include "catop/seq_algebra.hpp"

using namespace catop;

namespace {

struct Check {
    std::string text;
    bool pass;
};

struct Criterion {
    int id;
    std::vector<Check> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void check_leq(Criterion& c, const std::string& what, double value, double bound) {
    c.checks.push_back({what + ": " + num(value) + " <= " + num(bound), value <= bound});
}

void check_rel(Criterion& c, const std::string& what, double got, double want, double rel) {
    double dev = std::fabs(got / want - 1.0);
    c.checks.push_back({what + ": got " + num(got) + ", want " + num(want) + " (rel dev " +
                            num(dev) + ", allowed " + num(rel) + ")",
                        dev <= rel});
}

void check_true(Criterion& c, const std::string& what, bool ok) {
    c.checks.push_back({what, ok});
}

// Richardson extrapolation of the weighted partial sums: checkpoints
// N = 1e5 / 2^i, model S(N) = L + sum a_j h^{2j-1} with h = N^{-1/2}.
long double accelerated_limit(bool even_indices) {
    const int NMAX = even_indices ? 200001 : 100001;
    std::vector<long double> b(static_cast<std::size_t>(NMAX) + 1);
    b[0] = 1.0L;
    for (int n = 0; n < NMAX; ++n)
        b[static_cast<std::size_t>(n) + 1] =
            b[static_cast<std::size_t>(n)] * (2 * n + 1) / (2 * n + 4);
    const int M = 7;
    int Ns[M];
    for (int i = 0; i < M; ++i) Ns[i] = 100000 >> i;
    long double A[M][M + 1];
    for (int i = 0; i < M; ++i) {
        long double acc = 0.0L;
        for (int n = 0; n < Ns[i]; ++n)
            acc += b[static_cast<std::size_t>(even_indices ? 2 * n : n)];
        long double h = 1.0L / std::sqrt(static_cast<long double>(Ns[i]));
        A[i][0] = 1.0L;
        long double p = h;
        for (int j = 1; j < M; ++j) {
            A[i][j] = p;
            p *= h * h;
        }
        A[i][M] = acc;
    }
    for (int c = 0; c < M; ++c) {
        int piv = c;
        for (int r = c + 1; r < M; ++r)
            if (std::fabs(static_cast<double>(A[r][c])) >
                std::fabs(static_cast<double>(A[piv][c])))
                piv = r;
        for (int j = 0; j <= M; ++j) std::swap(A[c][j], A[piv][j]);
        for (int r = 0; r < M; ++r) {
            if (r == c) continue;
            long double f = A[r][c] / A[c][c];
            for (int j = c; j <= M; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return A[0][M] / A[0][0];
}

Criterion criterion_1() {
    Criterion c{1, {}};
    double t0 = now_seconds();
    auto cat = catalan_numbers(257);
    long double s = 0.0L;
    for (int n = 0; n < 256; ++n) s += cat.weighted(static_cast<std::size_t>(n));
    auto cat512 = catalan_numbers(513);
    long double se = 0.0L;
    for (int n = 0; n < 256; ++n) se += cat512.weighted(static_cast<std::size_t>(2 * n));
    double bound = cat.tail_bound(256);

    check_leq(c, "|sum_{n<256} C_n 4^-n - 2| within tail_bound(256)",
              std::fabs(static_cast<double>(s) - 2.0), bound);
    check_leq(c, "|sum_{n<256} C_2n 4^-2n - sqrt2| within tail_bound(256)",
              std::fabs(static_cast<double>(se) - std::sqrt(2.0)), bound);
    // No valid bound can be below the true remainder 7.05e-2 at N = 256
    // (the weighted terms decay like n^-3/2), so this stated threshold is
    // unattainable; it is checked as written and reported honestly.
    check_leq(c, "tail_bound(256) < 1e-3 [unattainable: true remainder is 7.05e-2]", bound,
              1e-3);
    double lim = static_cast<double>(accelerated_limit(false));
    double lime = static_cast<double>(accelerated_limit(true));
    check_leq(c, "|accelerated limit - 2|", std::fabs(lim - 2.0), 1e-10);
    check_leq(c, "|accelerated even limit - sqrt2|", std::fabs(lime - std::sqrt(2.0)), 1e-10);
    check_leq(c, "runtime (s)", now_seconds() - t0, 1.0);
    return c;
}

void table_checks(Criterion& c, const IterationTrace& ntr, const IterationTrace& ctr,
                  std::size_t newton_rows, std::size_t catalan_rows, double rel) {
    const double newton_want[] = {8.45274e-2, 1.12729e-3, 2.11638e-7, 7.46507e-15, 9.28789e-30};
    const double catalan_want[] = {1.03079e-2, 3.01635e-8, 7.62333e-25};
    check_true(c, "newton recorded >= " + std::to_string(newton_rows) + " steps",
               ntr.steps.size() >= newton_rows);
    check_true(c, "catalan recorded >= " + std::to_string(catalan_rows) + " steps",
               ctr.steps.size() >= catalan_rows);
    for (std::size_t i = 0; i < newton_rows && i < ntr.steps.size(); ++i)
        check_rel(c, "newton k=" + std::to_string(i + 1), ntr.steps[i].res, newton_want[i], rel);
    for (std::size_t i = 0; i < catalan_rows && i < ctr.steps.size(); ++i)
        check_rel(c, "catalan k=" + std::to_string(i + 1), ctr.steps[i].res, catalan_want[i], rel);
}

Criterion criterion_2() {
    Criterion c{2, {}};
    double t0 = now_seconds();
    CMatrix T = qbd_example(100);
    SolverConfig ncfg;
    auto ntr = solve_qme(T, T, ncfg);
    SolverConfig ccfg;
    ccfg.method = QmeMethod::Catalan;
    auto ctr = solve_qme(T, T, ccfg);
    // The newton k=4 row sits at the binary64 floor: the attainable residual
    // lattice (spacing |Q'| ulp(Y4) ~ 2.3% of the value) has no point within
    // 0.5% of the reference, the closest being 7.50834e-15 (+0.58%). The
    // 3-significant-digit demand is checked as stated and fails honestly;
    // the extended-precision run (criterion 3) matches every digit.
    table_checks(c, ntr, ctr, 4, 2, 5e-3);
    check_leq(c, "runtime (s) at n=100", now_seconds() - t0, 10.0);
    return c;
}

Criterion criterion_3() {
    Criterion c{3, {}};
    double t0 = now_seconds();
    CMatrix T = qbd_example(100);
    SolverConfig ncfg;
    ncfg.precision_digits = 40;
    auto ntr = solve_qme(T, T, ncfg);
    SolverConfig ccfg;
    ccfg.method = QmeMethod::Catalan;
    ccfg.precision_digits = 40;
    auto ctr = solve_qme(T, T, ccfg);
    table_checks(c, ntr, ctr, 5, 3, 5e-2);
    check_leq(c, "runtime (s) extended:40 at n=100", now_seconds() - t0, 60.0);
    return c;
}

Criterion criterion_4() {
    Criterion c{4, {}};
    CMatrix T = qbd_example(100);
    SolverConfig ncfg;
    auto ntr = solve_qme(T, T, ncfg);
    SolverConfig ccfg;
    ccfg.method = QmeMethod::Catalan;
    auto ctr = solve_qme(T, T, ccfg);
    std::vector<double> nres, cres;
    for (auto& s : ntr.steps) nres.push_back(s.res);
    for (auto& s : ctr.steps) cres.push_back(s.res);
    double n_order = fit_order(nres, 1e-14);
    double c_order = fit_order(cres, 1e-14);
    check_true(c, "newton order " + num(n_order) + " in 2 +- 0.3",
               n_order >= 1.7 && n_order <= 2.3);
    check_true(c, "catalan(k=2) order " + num(c_order) + " in 4 +- 0.6",
               c_order >= 3.4 && c_order <= 4.6);
    return c;
}

Criterion criterion_5() {
    Criterion c{5, {}};
    double t0 = now_seconds();
    Sampler s(20260808);
    double worst_q = 0.0, worst_iii = 0.0, worst_sq = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 2 + static_cast<std::size_t>(i) % 7;
        CMatrix T = s.matrix_with_radius(n, 0.02 + 0.18 * (i % 6) / 5.0);
        CMatrix C = catalan_of_matrix_series(T, 1e-12);
        worst_q = std::max(worst_q, quadratic_residual(T, C));
        CMatrix R = sqrt_one_minus_4T(T, 1e-12);
        worst_iii = std::max(
            worst_iii, (T * C - 0.5 * CMatrix::identity(n) + 0.5 * R).inf_norm());
        CMatrix Q = catalan_of_matrix_quadrature(T, 1e-9);
        worst_sq = std::max(worst_sq, (C - Q).inf_norm());
    }
    check_leq(c, "||Q(C(T))||", worst_q, 1e-10);
    check_leq(c, "||T C(T) - I/2 + sqrt(I-4T)/2||", worst_iii, 1e-9);
    check_leq(c, "series vs quadrature", worst_sq, 1e-7);
    check_leq(c, "runtime (s)", now_seconds() - t0, 30.0);
    return c;
}

Criterion criterion_6() {
    Criterion c{6, {}};
    Sampler s(42);
    // family 1: T = lambda I2 with off-diagonal parameters
    double worst1 = 0.0, worst_c1 = 0.0;
    for (int i = 0; i < 12; ++i) {
        cplx lam = s.complex_in_disc(0.24);
        if (std::abs(lam) < 0.05) continue;
        cplx b = s.complex_in_disc(1.5), bb = s.complex_in_disc(1.5);
        if (std::abs(b) + std::abs(bb) < 0.1) continue;
        cplx disc = std::sqrt(1.0 - 4.0 * lam * (1.0 + lam * b * bb));
        for (int sign : {+1, -1}) {
            CMatrix Y(2, 2);
            Y(0, 0) = (1.0 + double(sign) * disc) / (2.0 * lam);
            Y(1, 1) = (1.0 - double(sign) * disc) / (2.0 * lam);
            Y(0, 1) = b;
            Y(1, 0) = bb;
            double scale = std::max(1.0, std::abs(lam) * Y.inf_norm() * Y.inf_norm());
            worst1 = std::max(worst1,
                              quadratic_residual(lam * CMatrix::identity(2), Y) / scale);
        }
        CMatrix C = catalan_of_matrix_series(lam * CMatrix::identity(2), 1e-13);
        worst_c1 = std::max(worst_c1, std::abs(C(0, 0) - catalan_gf(lam)));
        worst_c1 = std::max(worst_c1, std::abs(C(0, 1)));
    }
    check_leq(c, "diagonal family: residual of stated Y (scaled)", worst1, 1e-11);
    check_leq(c, "diagonal family: C(T) = C(lambda) I", worst_c1, 1e-11);

    // family 2: swap matrix, biquadratic diagonal and even/odd C(T)
    double worst2 = 0.0, worst_c2 = 0.0;
    for (double l : {0.1, -0.2, 0.24}) {
        CMatrix T(2, 2);
        T(0, 1) = T(1, 0) = l;
        cplx a = catalan_gf_even(cplx(l));  // one root of 4 l^2 a^4 - a^2 + 1 = 0
        cplx off = (a - 1.0) / (2.0 * l * a);
        CMatrix Y(2, 2);
        Y(0, 0) = Y(1, 1) = a;
        Y(0, 1) = Y(1, 0) = off;
        worst2 = std::max(worst2, quadratic_residual(T, Y));
        CMatrix C = catalan_of_matrix_series(T, 1e-13);
        worst_c2 = std::max(worst_c2, std::abs(C(0, 0) - catalan_gf_even(cplx(l))));
        worst_c2 = std::max(worst_c2, std::abs(C(0, 1) - catalan_gf_odd(cplx(l))));
        cplx bi = 4.0 * l * l * a * a * a * a - a * a + 1.0;
        worst2 = std::max(worst2, std::abs(bi));
    }
    check_leq(c, "swap family: residual and biquadratic root", worst2, 1e-11);
    check_leq(c, "swap family: C(T) entries are C_e, C_o", worst_c2, 1e-11);

    // family 3: nilpotent, exact to machine precision
    CMatrix N(2, 2);
    N(0, 1) = cplx(0.37, -0.11);
    CMatrix Y = CMatrix::identity(2) + N;
    bool exact = quadratic_residual(N, Y) == 0.0;
    CMatrix CN = catalan_of_matrix_series(N, 1e-14);
    exact = exact && (CN - Y).max_abs() == 0.0;
    check_true(c, "nilpotent family: Y = I + T and C(T) = I + T exactly", exact);
    return c;
}

Criterion criterion_7() {
    Criterion c{7, {}};
    auto cat = catalan_numbers(256);
    bool exact = true;
    for (std::size_t n = 1; n < 256 && exact; ++n) {
        BigUInt conv;
        for (std::size_t i = 0; i < n; ++i) conv += cat.exact(i) * cat.exact(n - 1 - i);
        exact = conv == cat.exact(n);
    }
    check_true(c, "delta_1 * c*2 - c + delta_0 = 0 exactly up to index 255", exact);

    Sampler s(99);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        cplx lam = s.omega_point(0.03);
        WeightedSeq r = resolvent_catalan(lam, 256);
        WeightedSeq back = convolve(WeightedSeq::delta(0, lam) - catalan_seq(256), r);
        back -= WeightedSeq::delta(0);
        worst = std::max(worst, std::max(0.0, norm_w(back) - back.trunc_err()));
    }
    check_leq(c, "resolvent multiply-back over 20 Omega points (beyond budget)", worst, 1e-10);

    auto bd = backward_difference_catalan(12);
    check_leq(c, "coefficient_0 vs 2 sqrt6 - 4",
              std::fabs(bd.closed_form[0] - (2.0 * std::sqrt(6.0) - 4.0)), 1e-12);
    check_leq(c, "closed form vs direct series (J=12)", bd.max_discrepancy, 1e-10);
    return c;
}

Criterion criterion_8() {
    Criterion c{8, {}};
    double worst = 0.0;
    for (cplx z : {cplx(1.0), cplx(1.5), cplx(2.0, 1.0)}) {
        for (unsigned j : {0u, 1u, 2u, 5u}) {
            auto r = integral_identity(z, j);
            worst = std::max(worst, std::abs(r.lhs - r.rhs));
        }
    }
    check_leq(c, "integral identity lhs vs rhs (z in {1, 3/2, 2+i}, j in {0,1,2,5})", worst,
              1e-8);

    QuadOptions opt;
    opt.abs_tol = 1e-11;
    const double pi = 3.14159265358979323846;
    const double want[] = {1, 1, 2, 5, 14, 42};
    double worst_m = 0.0;
    for (unsigned n = 0; n < 6; ++n) {
        auto f = [&](double t) {
            double lam = 0.25 + t;
            return std::sqrt(t) * std::pow(lam, -2.0 - double(n));
        };
        double v =
            integrate_halfline<double>(f, opt, [](double x) { return std::fabs(x); }, 0.0) / pi;
        worst_m = std::max(worst_m, std::fabs(v - want[n]));
    }
    check_leq(c, "moment quadrature recovers C_0..C_5", worst_m, 1e-8);
    return c;
}

Criterion criterion_9() {
    Criterion c{9, {}};
    Sampler s(7);
    double worst = 0.0;
    bool inve_ok = true;
    int pairs = 0;
    while (pairs < 20) {
        std::size_t n = 2 + static_cast<std::size_t>(pairs) % 5;
        CMatrix T = s.matrix_with_radius(n, 0.15);
        CMatrix Y = catalan_of_matrix_series(T, 1e-12);
        CMatrix I = CMatrix::identity(n);
        cplx lam = std::polar(s.uniform(1.6, 2.4), s.uniform(-3.0, 3.0));
        CMatrix Ry = resolvent_of_Y(lam, T, Y);  // here Y = C(T), the series solution
        worst = std::max(worst, ((lam * I - Y) * Ry - I).inf_norm());
        cplx w = (lam - 1.0) / (lam * lam);
        CMatrix Rt = resolvent_of_T_from_Y(lam, T, Y);
        worst = std::max(worst, ((w * I - T) * Rt - I).inf_norm());
        auto rep = inve_equivalences(T, Y, 1e-9);
        inve_ok = inve_ok && rep.all_equal && rep.invertible;
        ++pairs;
    }
    check_leq(c, "resolvent formulas multiply-back (20 admissible pairs)", worst, 1e-9);
    check_true(c, "four equivalent conditions report identically true", inve_ok);
    return c;
}

Criterion criterion_10() {
    Criterion c{10, {}};
    auto samples = sigma_boundary_samples(2048);
    double worst_gf = 0.0, worst_in = 0.0;
    for (auto& b : samples) {
        worst_gf = std::max(worst_gf,
                            std::abs(b.point - catalan_gf(0.25 * std::polar(1.0, b.theta))));
        worst_in = std::max(worst_in, std::abs(b.point - 1.0) / std::norm(b.point) - 0.25);
    }
    check_true(c, "2048 samples emitted", samples.size() == 2048);
    check_leq(c, "boundary equals catalan_gf on |z| = 1/4", worst_gf, 1e-12);
    check_leq(c, "containment in the closed Omega complement", worst_in, 1e-9);
    return c;
}

Criterion run_criterion(int id) {
    switch (id) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
        case 10: return criterion_10();
        default: throw Error("unknown criterion id");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        ids.push_back(std::atoi(argv[2]));
    } else if (argc == 1) {
        for (int i = 1; i <= 10; ++i) ids.push_back(i);
    } else {
        std::fprintf(stderr, "usage: acceptance [--criterion <1..10>]\n");
        return 2;
    }
    int failed = 0;
    for (int id : ids) {
        Criterion c = run_criterion(id);
        std::printf("CRITERION %d: %s\n", c.id, c.pass() ? "PASS" : "FAIL");
        for (const auto& ch : c.checks)
            std::printf("  [%s] %s\n", ch.pass ? "ok" : "FAIL", ch.text.c_str());
        if (!c.pass()) ++failed;
    }
    if (ids.size() > 1)
        std::printf("acceptance: %zu criteria run, %d failed\n", ids.size(), failed);
    return failed == 0 ? 0 : 1;
}
