#include "catop/verify.hpp"

#include <cmath>
#include <cstdio>

#include "catop/catalan.hpp"
#include "catop/errors.hpp"
#include "catop/linalg.hpp"
#include "catop/operator_calculus.hpp"
#include "catop/qme.hpp"
#include "catop/sampling.hpp"
#include "catop/seq_algebra.hpp"

namespace catop {

namespace {

std::string fmt(const char* pattern, double worst, double tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, worst, tol);
    return buf;
}

PropertyResult measured(const std::string& name, double worst, double tol) {
    return {name, worst <= tol, fmt("worst %.3e (tol %.3e)", worst, tol)};
}

}  // namespace

std::vector<PropertyResult> verify_scalar(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    Sampler s(seed);

    {  // exact recursion vs closed form, n < 64
        auto cat = catalan_numbers(64);
        bool ok = true;
        for (unsigned n = 1; n < 64 && ok; ++n) {
            BigUInt conv;
            for (unsigned i = 0; i < n; ++i) conv += cat.exact(i) * cat.exact(n - 1 - i);
            ok = conv == cat.exact(n) && catalan_closed_form(n) == cat.exact(n);
        }
        out.push_back({"catalan recursion equals closed form (n<64)", ok,
                       ok ? "exact integer match" : "mismatch"});
    }
    {  // quadratic identity, 200 random points
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            cplx z = s.complex_in_disc(0.249);
            cplx c = catalan_gf(z);
            worst = std::max(worst, std::abs(z * c * c - c + 1.0));
        }
        out.push_back(measured("generating function quadratic identity", worst, 1e-12));
    }
    {  // second root
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            cplx z = s.complex_in_disc(0.249);
            if (std::abs(z) < 1e-3) continue;
            cplx y2 = 1.0 / (z * catalan_gf(z));
            worst = std::max(worst, std::abs(z * y2 * y2 - y2 + 1.0));
        }
        out.push_back(measured("second quadratic root", worst, 1e-11));
    }
    {  // even/odd decomposition
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            cplx z = s.complex_in_disc(0.25);
            worst = std::max(worst,
                             std::abs(catalan_gf_even(z) + catalan_gf_odd(z) - catalan_gf(z)));
        }
        out.push_back(measured("even + odd parts recompose", worst, 1e-12));
    }
    {  // biquadratic mean
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            cplx x = s.complex_in_disc(0.25);
            if (std::abs(x) < 1e-2) continue;
            ok = ok && biquadratic_mean_check(x, 1e-10);
        }
        out.push_back({"biquadratic mean identity", ok, ok ? "100 samples" : "failed sample"});
    }
    {  // partial sums rise to the Abel limits inside the tail bound
        auto cat = catalan_numbers(1025);
        long double sum = 0.0L, even = 0.0L;
        bool ok = true;
        double worst = 0.0;
        for (std::size_t n = 0; n < 512; ++n) {
            sum += cat.weighted(n);
            if (2 * n < 1025) even += cat.weighted(2 * n);
        }
        double d1 = 2.0 - static_cast<double>(sum);
        double d2 = std::sqrt(2.0) - static_cast<double>(even);
        ok = d1 > 0.0 && d1 <= cat.tail_bound(512) && d2 > 0.0 && d2 <= cat.tail_bound(512);
        worst = std::max(d1, d2);
        out.push_back({"weighted sums approach 2 and sqrt(2)", ok,
                       fmt("remainders %.3e within bound %.3e", worst, cat.tail_bound(512))});
    }
    return out;
}

std::vector<PropertyResult> verify_sequence(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    Sampler s(seed);

    {  // submultiplicativity
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            WeightedSeq a = s.seq(3 + i % 12);
            WeightedSeq b = s.seq(2 + (i / 2) % 15);
            double excess = norm_w(convolve(a, b)) - norm_w(a) * norm_w(b);
            worst = std::max(worst, excess);
        }
        out.push_back(measured("weighted norm submultiplicative", worst, 1e-12));
    }
    {  // Gelfand morphism
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            WeightedSeq a = s.seq(3 + i % 10);
            WeightedSeq b = s.seq(2 + i % 13);
            cplx z = s.complex_in_disc(0.25);
            worst = std::max(worst, std::abs(z_transform(convolve(a, b), z) -
                                             z_transform(a, z) * z_transform(b, z)));
        }
        out.push_back(measured("z-transform is multiplicative", worst, 1e-11));
    }
    {  // first resolvent identity
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            cplx l = s.omega_point(0.05), m = s.omega_point(0.05);
            if (std::abs(l - m) < 0.02) continue;
            WeightedSeq rl = resolvent_catalan(l, 256);
            WeightedSeq rm = resolvent_catalan(m, 256);
            WeightedSeq diff = (rl - rm) - (m - l) * convolve(rl, rm);
            worst = std::max(worst, std::max(0.0, norm_w(diff) - diff.trunc_err()));
        }
        out.push_back(measured("first resolvent identity on Omega", worst, 1e-9));
    }
    {  // Prop. (iii) in exact arithmetic
        auto cat = catalan_numbers(256);
        bool ok = true;
        for (std::size_t n = 1; n < 256 && ok; ++n) {
            BigUInt conv;
            for (std::size_t i = 0; i < n; ++i) conv += cat.exact(i) * cat.exact(n - 1 - i);
            ok = conv == cat.exact(n);
        }
        out.push_back({"delta_1 * c^2 - c + delta_0 = 0 exactly", ok,
                       ok ? "exact to index 255" : "mismatch"});
    }
    {  // norm of the catalan element
        WeightedSeq c = catalan_seq(256);
        double dev = std::fabs(norm_w(c) - 2.0);
        out.push_back(measured("norm of catalan sequence near 2", dev, c.trunc_err()));
    }
    {  // backward difference coefficients
        auto r = backward_difference_catalan(12);
        double c0 = std::fabs(r.closed_form[0] - (2.0 * std::sqrt(6.0) - 4.0));
        bool ok = c0 <= 1e-12 && r.max_discrepancy <= 1e-10;
        out.push_back({"backward-difference catalan coefficients", ok,
                       fmt("coeff0 dev %.3e, series dev %.3e", c0, r.max_discrepancy)});
    }
    {  // sigma boundary against the generating function + containment
        double worst = 0.0, worst_ratio = 0.0;
        for (auto& b : sigma_boundary_samples(512)) {
            worst = std::max(worst,
                             std::abs(b.point - catalan_gf(0.25 * std::polar(1.0, b.theta))));
            worst_ratio = std::max(worst_ratio,
                                   std::abs(b.point - 1.0) / std::norm(b.point) - 0.25);
        }
        bool ok = worst <= 1e-12 && worst_ratio <= 1e-9;
        out.push_back({"sigma(c) boundary parametrization", ok,
                       fmt("gf dev %.3e, Omega-boundary dev %.3e", worst, worst_ratio)});
    }
    return out;
}

std::vector<PropertyResult> verify_operator(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    Sampler s(seed);

    double worst_sq = 0.0, worst_iii = 0.0, worst_res = 0.0, worst_comm = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 2 + i % 7;
        CMatrix T = s.matrix_with_radius(n, 0.04 + 0.16 * (i % 5) / 4.0);
        CMatrix C = catalan_of_matrix_series(T, 1e-12);
        worst_res = std::max(worst_res, quadratic_residual(T, C));
        worst_comm = std::max(worst_comm, (T * C - C * T).inf_norm() /
                                              std::max(1.0, T.inf_norm() * C.inf_norm()));
        CMatrix Q = catalan_of_matrix_quadrature(T, 1e-9);
        worst_sq = std::max(worst_sq, (C - Q).inf_norm());
        CMatrix R = sqrt_one_minus_4T(T, 1e-12);
        CMatrix iii = T * C - 0.5 * CMatrix::identity(n) + 0.5 * R;
        worst_iii = std::max(worst_iii, iii.inf_norm());
    }
    out.push_back(measured("series vs quadrature", worst_sq, 1e-7));
    out.push_back(measured("T C(T) = I/2 - sqrt(I/4 - T)", worst_iii, 1e-9));
    out.push_back(measured("residual of the quadratic at C(T)", worst_res, 1e-10));
    out.push_back(measured("C(T) commutes with T (relative)", worst_comm, 1e-11));

    {  // resolvent formulas, multiply-back
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            CMatrix T = s.matrix_with_radius(3 + i, 0.15);
            CMatrix Y = catalan_of_matrix_series(T, 1e-12);
            CMatrix I = CMatrix::identity(T.rows());
            for (int k = 0; k < 20; ++k) {
                cplx lam = std::polar(s.uniform(1.6, 2.4), s.uniform(-3.0, 3.0));
                CMatrix Ry = resolvent_of_Y(lam, T, Y);
                worst = std::max(worst, ((lam * I - Y) * Ry - I).inf_norm());
                cplx w = (lam - 1.0) / (lam * lam);
                CMatrix Rt = resolvent_of_T_from_Y(lam, T, Y);
                worst = std::max(worst, ((w * I - T) * Rt - I).inf_norm());
            }
        }
        out.push_back(measured("resolvent formulas multiply back", worst, 1e-9));
    }
    {  // 2x2 off-diagonal family, both branch signs
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            cplx lam = s.complex_in_disc(0.25);
            if (std::abs(lam) < 0.02) continue;
            cplx b = s.complex_in_disc(2.0), c = s.complex_in_disc(2.0);
            if (std::abs(b) + std::abs(c) < 0.1) continue;
            cplx disc = 1.0 - 4.0 * lam * (1.0 + lam * b * c);
            if (disc.real() < 0.0 && std::fabs(disc.imag()) < 1e-6) continue;  // branch cut
            cplx root = std::sqrt(disc);
            for (int sign : {+1, -1}) {
                CMatrix Y(2, 2);
                Y(0, 0) = (1.0 + double(sign) * root) / (2.0 * lam);
                Y(1, 1) = (1.0 - double(sign) * root) / (2.0 * lam);
                Y(0, 1) = b;
                Y(1, 0) = c;
                double scale = std::max(1.0, Y.inf_norm() * Y.inf_norm() * std::abs(lam));
                worst = std::max(worst,
                                 quadratic_residual(lam * CMatrix::identity(2), Y) / scale);
            }
        }
        out.push_back(measured("2x2 closed-form family (both signs, scaled)", worst, 1e-11));
    }
    {  // spectral mapping on diagonalizable samples
        bool ok = true;
        int checked = 0;
        for (int i = 0; i < 10; ++i) {
            CMatrix T = s.matrix_with_radius(2 + i % 5, 0.2);
            auto rep = spectral_map_check(T, 1e-7);
            if (rep.checked) { ++checked; ok = ok && rep.holds; }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d/10 checked, all held: %s", checked, ok ? "yes" : "no");
        out.push_back({"spectral mapping (diagonalizable samples)", ok && checked > 0, buf});
    }
    return out;
}

std::vector<PropertyResult> verify_solver(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    Sampler s(seed);
    CMatrix T = qbd_example(10);

    {  // both Sylvester forms agree on commuting data
        CMatrix Ya = T, Yb = T;
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            Ya = newton_step(T, Ya, SylvesterForm::Paper);
            Yb = newton_step(T, Yb, SylvesterForm::Derived);
            worst = std::max(worst, (Ya - Yb).inf_norm());
        }
        out.push_back(measured("paper and derived Newton agree on diagonal data", worst, 1e-12));
    }

    SolverConfig ncfg;
    auto ntr = solve_qme(T, T, ncfg);
    SolverConfig ccfg;
    ccfg.method = QmeMethod::Catalan;
    auto ctr = solve_qme(T, T, ccfg);
    {
        bool ok = ntr.converged && ctr.converged;
        double worst = std::max(quadratic_residual(T, ntr.final_Y),
                                quadratic_residual(T, ctr.final_Y));
        out.push_back({"both methods converge with validated residual", ok && worst < 1e-13,
                       fmt("final residuals below %.3e (tol %.3e)", worst, 1e-13)});
    }
    {
        std::vector<double> nres, cres;
        for (auto& st : ntr.steps) nres.push_back(st.res);
        for (auto& st : ctr.steps) cres.push_back(st.res);
        double n_order = fit_order(nres, 1e-14);
        double c_order = fit_order(cres, 1e-14);
        bool ok = n_order > 1.7 && n_order < 2.3 && c_order > 3.4 && c_order < 4.6;
        out.push_back({"fitted convergence orders", ok,
                       fmt("newton %.2f (2 +- 0.3), catalan %.2f (4 +- 0.6)", n_order, c_order)});
        bool mono = true;
        for (std::size_t i = 1; i < nres.size(); ++i) mono = mono && nres[i] < nres[i - 1];
        for (std::size_t i = 1; i < cres.size(); ++i) mono = mono && cres[i] < cres[i - 1];
        out.push_back({"residuals decrease monotonically", mono, "after the first step"});
    }
    {  // one-step ladder in k
        CMatrix Td(8, 8);
        for (std::size_t i = 0; i < 8; ++i) Td(i, i) = 0.16 + 0.008 * double(i);
        CMatrix C = catalan_of_matrix_series(Td, 1e-14);
        CMatrix E(8, 8);
        for (std::size_t i = 0; i < 8; ++i) E(i, i) = 0.4 + 0.05 * double(i) * s.uniform(0.8, 1.2);
        CMatrix Y0 = C + 3e-2 * E;
        double prev = quadratic_residual(Td, Y0);
        bool ok = true;
        for (unsigned k = 1; k <= 4; ++k) {
            double r = quadratic_residual(Td, catalan_step(Td, Y0, k, CatalanAssembly::SumAll));
            ok = ok && r < prev;
            prev = r;
        }
        out.push_back({"one-step residual improves with k = 1..4", ok, "sum assembly"});
    }
    return out;
}

std::vector<PropertyResult> verify_suite(const std::string& name, std::uint64_t seed) {
    if (name == "scalar") return verify_scalar(seed);
    if (name == "sequence") return verify_sequence(seed);
    if (name == "operator") return verify_operator(seed);
    if (name == "solver") return verify_solver(seed);
    if (name == "all") {
        std::vector<PropertyResult> all;
        for (const char* n : {"scalar", "sequence", "operator", "solver"}) {
            auto part = verify_suite(n, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw DomainError("verify_suite: unknown suite '" + name + "'");
}

}  // namespace catop
