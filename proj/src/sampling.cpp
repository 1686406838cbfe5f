#include "catop/sampling.hpp"

#include <cmath>

#include "catop/errors.hpp"
#include "catop/linalg.hpp"

namespace catop {

double Sampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng_);
}

cplx Sampler::complex_in_disc(double radius) {
    double r = radius * std::sqrt(uniform(0.0, 1.0));
    double a = uniform(0.0, 2.0 * 3.14159265358979323846);
    return std::polar(r, a);
}

CMatrix Sampler::matrix(std::size_t rows, std::size_t cols, double scale) {
    CMatrix m(rows, cols);
    for (auto& v : m.data()) v = scale * cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return m;
}

CMatrix Sampler::matrix_with_radius(std::size_t n, double rho) {
    for (;;) {
        CMatrix g = matrix(n, n);
        double r = 0.0;
        for (cplx mu : eigenvalues(g)) r = std::max(r, std::abs(mu));
        if (r > 1e-6) return (rho / r) * g;
    }
}

CMatrix Sampler::unitary(std::size_t n) {
    CMatrix Q = CMatrix::identity(n);
    for (int rep = 0; rep < 3; ++rep) {
        CMatrix v = matrix(n, 1);
        double vsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) vsq += std::norm(v(i, 0));
        if (vsq == 0.0) continue;
        CMatrix P = CMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                P(i, j) -= 2.0 * v(i, 0) * std::conj(v(j, 0)) / vsq;
        Q = Q * P;
    }
    return Q;
}

CMatrix Sampler::normal_matrix(const std::vector<cplx>& spectrum) {
    CMatrix Q = unitary(spectrum.size());
    return Q * CMatrix::diagonal(spectrum) * Q.adjoint();
}

WeightedSeq Sampler::seq(std::size_t length, double scale) {
    std::vector<cplx> c(length);
    for (auto& v : c) v = scale * cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return WeightedSeq(std::move(c));
}

cplx Sampler::omega_point(double margin) {
    for (int tries = 0; tries < 10000; ++tries) {
        cplx l = std::polar(uniform(0.05, 1.2), uniform(-3.14159, 3.14159));
        if (std::abs(l - 1.0) / std::norm(l) >= 0.25 + margin) return l;
    }
    throw Error("omega_point: sampling failed");
}

}  // namespace catop
