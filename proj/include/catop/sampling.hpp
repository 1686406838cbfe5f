#pragma once

#include <cstdint>
#include <random>

#include "catop/cmatrix.hpp"
#include "catop/seq_algebra.hpp"

namespace catop {

/// Deterministic generators behind the randomized verification suites;
/// everything is a pure function of the seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi);
    cplx complex_in_disc(double radius);

    CMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0);
    /// Random dense matrix rescaled to the exact spectral radius rho.
    CMatrix matrix_with_radius(std::size_t n, double rho);
    /// Product of random Householder reflectors.
    CMatrix unitary(std::size_t n);
    /// Unitary * diag * unitary^H.
    CMatrix normal_matrix(const std::vector<cplx>& spectrum);

    WeightedSeq seq(std::size_t length, double scale = 1.0);

    /// Point of Omega with margin: |l-1|/|l|^2 >= 1/4 + margin.
    cplx omega_point(double margin = 0.05);

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace catop
