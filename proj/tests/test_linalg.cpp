#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "catop/cmatrix.hpp"
#include "catop/errors.hpp"
#include "catop/linalg.hpp"
#include "catop/sylvester.hpp"

using namespace catop;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = scale * cplx(u(rng), u(rng));
    return m;
}

CMatrix naive_matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

CMatrix random_householder_unitary(std::mt19937_64& rng, std::size_t n) {
    CMatrix Q = CMatrix::identity(n);
    for (int rep = 0; rep < 3; ++rep) {
        CMatrix v = random_matrix(rng, n, 1);
        double vsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) vsq += std::norm(v(i, 0));
        CMatrix P = CMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) P(i, j) -= 2.0 * v(i, 0) * std::conj(v(j, 0)) / vsq;
        Q = Q * P;
    }
    return Q;
}

}  // namespace

TEST_CASE("matmul: identity, nilpotent square, naive oracle") {
    std::mt19937_64 rng(2024);
    CMatrix M = random_matrix(rng, 2, 2);
    CHECK((CMatrix::identity(2) * M - M).max_abs() == 0.0);

    // nilpotent: [[0, l], [0, 0]]^2 = 0
    CMatrix T(2, 2);
    T(0, 1) = cplx(0.3, -0.7);
    CHECK((T * T).max_abs() == 0.0);

    for (int t = 0; t < 10; ++t) {
        CMatrix A = random_matrix(rng, 5, 5), B = random_matrix(rng, 5, 5);
        CHECK((matmul(A, B) - naive_matmul(A, B)).max_abs() < 1e-13);
    }
    CHECK_THROWS_AS(matmul(random_matrix(rng, 2, 3), random_matrix(rng, 2, 3)), DimensionError);
}

TEST_CASE("lu_solve: identity, ill-scaled diagonal, residual oracle") {
    std::mt19937_64 rng(7);
    CMatrix B = random_matrix(rng, 6, 3);
    CHECK((lu_solve(CMatrix::identity(6), B) - B).max_abs() == 0.0);

    // diag(0.1, ..., 0.1, 1e-10), inverse is diag(10, ..., 10, 1e10)
    std::vector<cplx> d(10, cplx(0.1));
    d[9] = 1e-10;
    CMatrix A = CMatrix::diagonal(d);
    CMatrix X = lu_solve(A, CMatrix::identity(10));
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(X(i, i) - 10.0) < 1e-12);
    CHECK(X(9, 9).real() == doctest::Approx(1e10));

    for (int t = 0; t < 10; ++t) {
        CMatrix W = random_matrix(rng, 8, 8) + 4.0 * CMatrix::identity(8);  // well-conditioned
        CMatrix R = random_matrix(rng, 8, 2);
        CMatrix Y = lu_solve(W, R);
        CHECK((W * Y - R).inf_norm() <= 1e-11 * W.inf_norm() * Y.inf_norm());
    }

    CMatrix S(2, 2);
    S(0, 0) = 1.0;  // second row zero -> exactly singular
    CHECK_THROWS_AS(lu_solve(S, CMatrix::identity(2)), SingularMatrixError);
}

TEST_CASE("schur: diagonal input, swap eigenvalues, reconstruction") {
    CMatrix D = CMatrix::diagonal({cplx(2.0), cplx(-1.0, 0.5), cplx(0.25)});
    SchurForm s = schur(D);
    CHECK(multiset_close(eigenvalues(D), {cplx(2.0), cplx(-1.0, 0.5), cplx(0.25)}, 1e-12));
    CHECK((s.Q * s.U * s.Q.adjoint() - D).inf_norm() < 1e-12 * std::max(1.0, D.inf_norm()));

    // [[0, l], [l, 0]] has eigenvalues +-l
    cplx l(0.1);
    CMatrix T(2, 2);
    T(0, 1) = l;
    T(1, 0) = l;
    CHECK(multiset_close(eigenvalues(T), {l, -l}, 1e-12));

    // Y = [[1, l], [0, 1]] is defective with double eigenvalue 1
    CMatrix Y = CMatrix::identity(2);
    Y(0, 1) = cplx(0.4);
    CHECK(multiset_close(eigenvalues(Y), {cplx(1.0), cplx(1.0)}, 1e-7));

    std::mt19937_64 rng(99);
    for (std::size_t n : {1ul, 2ul, 3ul, 5ul, 8ul, 12ul}) {
        for (int t = 0; t < 6; ++t) {
            CMatrix A = random_matrix(rng, n, n);
            SchurForm f = schur(A);
            double na = std::max(A.inf_norm(), 1e-30);
            CHECK((f.Q * f.U * f.Q.adjoint() - A).inf_norm() <= 1e-10 * na);
            CHECK((f.Q * f.Q.adjoint() - CMatrix::identity(n)).inf_norm() <= 1e-12 * double(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(f.U(i, j)) == 0.0);
        }
    }
}

TEST_CASE("schur: random normal matrix reconstructs tightly") {
    std::mt19937_64 rng(5);
    CMatrix Q = random_householder_unitary(rng, 6);
    std::vector<cplx> spectrum = {cplx(1.0),       cplx(0.5, 0.5), cplx(-0.7),
                                  cplx(0.1, -0.9), cplx(2.0, 0.1), cplx(-1.5)};
    CMatrix D = CMatrix::diagonal(spectrum);
    CMatrix A = Q * D * Q.adjoint();
    SchurForm f = schur(A);
    CHECK((f.Q * f.U * f.Q.adjoint() - A).inf_norm() <= 1e-10 * A.inf_norm());
    CHECK(multiset_close(eigenvalues(A), spectrum, 1e-9));
}

TEST_CASE("eigenvalues invariant under unitary similarity") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 8; ++t) {
        std::size_t n = 2 + t % 5;
        CMatrix A = random_matrix(rng, n, n);
        CMatrix Q = random_householder_unitary(rng, n);
        CHECK(multiset_close(eigenvalues(A), eigenvalues(Q * A * Q.adjoint()), 1e-8));
    }
}

TEST_CASE("sylvester: trivial, diagonal oracle, strategy agreement") {
    std::mt19937_64 rng(17);
    CMatrix M = random_matrix(rng, 4, 4);
    SylvesterProblem triv{CMatrix::identity(4), CMatrix::identity(4), 2.0 * M,
                          SylvesterStrategy::BartelsStewart};
    CHECK((sylvester_solve(triv) - M).max_abs() < 1e-12);

    // diagonal A, B: X_ij = D_ij / (a_i + b_j)
    CMatrix A = CMatrix::diagonal({cplx(1.0), cplx(2.0, 1.0), cplx(-0.5)});
    CMatrix B = CMatrix::diagonal({cplx(0.3), cplx(4.0)});
    CMatrix D = random_matrix(rng, 3, 2);
    CMatrix X = sylvester_solve({A, B, D, SylvesterStrategy::BartelsStewart});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(X(i, j) - D(i, j) / (A(i, i) + B(j, j))) < 1e-12);

    for (int t = 0; t < 6; ++t) {
        CMatrix A6 = random_matrix(rng, 6, 6) + 3.0 * CMatrix::identity(6);
        CMatrix B6 = random_matrix(rng, 6, 6) + 3.0 * CMatrix::identity(6);
        CMatrix D6 = random_matrix(rng, 6, 6);
        CMatrix x1 = sylvester_solve({A6, B6, D6, SylvesterStrategy::BartelsStewart});
        CMatrix x2 = sylvester_solve({A6, B6, D6, SylvesterStrategy::Kronecker});
        CHECK((x1 - x2).inf_norm() <= 1e-9 * std::max(1.0, x1.inf_norm()));
        double scale = (A6.inf_norm() + B6.inf_norm()) * x1.inf_norm();
        CHECK((A6 * x1 + x1 * B6 - D6).inf_norm() <= 1e-10 * scale);
    }
}

TEST_CASE("sylvester: overlapping spectra and size cap are rejected") {
    CMatrix A = CMatrix::diagonal({cplx(1.0), cplx(2.0)});
    CMatrix B = CMatrix::diagonal({cplx(-1.0), cplx(5.0)});  // -1 in sigma(B) hits 1 in sigma(A)... A+(-B) overlap
    CMatrix D(2, 2);
    CHECK_THROWS_AS(sylvester_solve({A, B, D, SylvesterStrategy::BartelsStewart}), IllPosedError);

    CMatrix big(70, 70);
    for (std::size_t i = 0; i < 70; ++i) big(i, i) = 1.0 + double(i);
    CHECK_THROWS_AS(sylvester_solve({big, big, CMatrix(70, 70), SylvesterStrategy::Kronecker}),
                    StrategyError);
}

TEST_CASE("generalized sylvester: reductions and residual") {
    std::mt19937_64 rng(23);
    // A1 = 0 reduces to A2 X = D
    CMatrix A2 = random_matrix(rng, 4, 4) + 3.0 * CMatrix::identity(4);
    CMatrix D = random_matrix(rng, 4, 4);
    CMatrix X = generalized_sylvester_kron(CMatrix(4, 4), CMatrix::identity(4), A2, D);
    CHECK((X - lu_solve(A2, D)).max_abs() < 1e-10);

    // B1 = I reduces to (A1 + A2) X = D
    CMatrix A1 = random_matrix(rng, 4, 4);
    CMatrix Xr = generalized_sylvester_kron(A1, CMatrix::identity(4), A2, D);
    CHECK((Xr - lu_solve(A1 + A2, D)).max_abs() < 1e-9);

    for (int t = 0; t < 6; ++t) {
        CMatrix a1 = random_matrix(rng, 4, 4);
        CMatrix b1 = random_matrix(rng, 4, 4);
        CMatrix a2 = random_matrix(rng, 4, 4) + 4.0 * CMatrix::identity(4);
        CMatrix d = random_matrix(rng, 4, 4);
        CMatrix x = generalized_sylvester_kron(a1, b1, a2, d);
        double scale = (a1.inf_norm() * b1.inf_norm() + a2.inf_norm()) * x.inf_norm();
        CHECK((a1 * x * b1 + a2 * x - d).inf_norm() <= 1e-11 * std::max(1.0, scale));
    }
}

TEST_CASE("solve residual property over random dims 1..12") {
    std::mt19937_64 rng(1234);
    for (std::size_t n = 1; n <= 12; ++n) {
        CMatrix A = random_matrix(rng, n, n) + 3.0 * CMatrix::identity(n);
        CMatrix B = random_matrix(rng, n, n) + 3.0 * CMatrix::identity(n);
        CMatrix D = random_matrix(rng, n, n);
        CMatrix X = sylvester_solve({A, B, D, SylvesterStrategy::BartelsStewart});
        double scale = (A.inf_norm() + B.inf_norm()) * std::max(X.inf_norm(), 1e-30);
        CHECK((A * X + X * B - D).inf_norm() <= 1e-9 * scale);

        CMatrix Y = lu_solve(A, D);
        CHECK((A * Y - D).inf_norm() <= 1e-9 * A.inf_norm() * std::max(Y.inf_norm(), 1e-30));
    }
}

TEST_CASE("matrix text format round trip and parse forms") {
    CHECK(parse_complex_entry("0.5-0.25i") == cplx(0.5, -0.25));
    CHECK(parse_complex_entry("1+2i") == cplx(1, 2));
    CHECK(parse_complex_entry("-3.5e-2") == cplx(-0.035, 0));
    CHECK(parse_complex_entry("1e-5-2e-7i") == cplx(1e-5, -2e-7));
    CHECK(parse_complex_entry("2i") == cplx(0, 2));
    CHECK(parse_complex_entry("-i") == cplx(0, -1));
    CHECK_THROWS_AS(parse_complex_entry("garbage"), ParseError);
    CHECK_THROWS_AS(parse_complex_entry(""), ParseError);

    std::mt19937_64 rng(55);
    for (int t = 0; t < 12; ++t) {
        CMatrix A = random_matrix(rng, 1 + t % 4, 1 + (t / 2) % 5);
        if (t % 3 == 0)
            for (auto& v : A.data()) v = cplx(v.real(), 0.0);  // exercise the pure-real form
        std::stringstream ss;
        write_matrix(ss, A);
        CMatrix B = read_matrix(ss);
        REQUIRE(B.rows() == A.rows());
        REQUIRE(B.cols() == A.cols());
        // 17 significant digits round-trip doubles exactly
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) CHECK(A(i, j) == B(i, j));
    }

    std::stringstream bad("2 2\n1 2 3");
    CHECK_THROWS_AS(read_matrix(bad), ParseError);
    std::stringstream nan_in("1 1\nnan");
    CHECK_THROWS_AS(read_matrix(nan_in), Error);
}

TEST_CASE("eigenvector matrix conditions a diagonalizable input") {
    std::mt19937_64 rng(3);
    CMatrix Q = random_householder_unitary(rng, 5);
    CMatrix D = CMatrix::diagonal({cplx(1.0), cplx(2.0), cplx(-1.0), cplx(0.5, 0.5), cplx(3.0)});
    CMatrix A = Q * D * Q.adjoint();
    SchurForm f = schur(A);
    CMatrix V = eigenvector_matrix(f);
    double cond = eigenvector_condition(V);
    CHECK(cond < 100.0);  // normal matrix: condition near 1
    // A V = V Lambda column-wise
    for (std::size_t k = 0; k < 5; ++k) {
        cplx mu = f.U(k, k);
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            cplx av = 0.0;
            for (std::size_t j = 0; j < 5; ++j) av += A(i, j) * V(j, k);
            worst = std::max(worst, std::abs(av - mu * V(i, k)));
        }
        CHECK(worst < 1e-9);
    }
}
