#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace catop {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Entries are validated finite on
/// construction from data; arithmetic assumes shapes already agree and
/// throws DimensionError otherwise.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);  // zero-filled
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_diagonal(double tol = 0.0) const;

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMatrix transpose() const;
    CMatrix adjoint() const;

    /// Max absolute row sum.
    double inf_norm() const;
    /// Largest entry magnitude.
    double max_abs() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(double s, CMatrix a);
CMatrix operator-(CMatrix a);

/// Plain triple-loop product (also what operator* calls).
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Text format shared repo-wide: first line "rows cols", then rows of
/// whitespace-separated entries written as `re` or `re+imi` / `re-imi`.
CMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const CMatrix& m);
CMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const CMatrix& m);

cplx parse_complex_entry(const std::string& token);
std::string format_complex_entry(cplx v);

}  // namespace catop
