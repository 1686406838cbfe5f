#include "catop/cmatrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "catop/errors.hpp"

namespace catop {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw DimensionError("CMatrix: entry count does not match rows*cols");
    if (!all_finite()) throw DomainError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool CMatrix::is_diagonal(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && std::abs((*this)(i, j)) > tol) return false;
    return true;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

double CMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& v : a_) best = std::max(best, std::abs(v));
    return best;
}

bool CMatrix::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

namespace {
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* who) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(who) + ": shape mismatch");
}
}  // namespace

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { a += b; return a; }
CMatrix operator-(CMatrix a, const CMatrix& b) { a -= b; return a; }
CMatrix operator*(cplx s, CMatrix a) { a *= s; return a; }
CMatrix operator*(double s, CMatrix a) { a *= cplx(s); return a; }
CMatrix operator-(CMatrix a) { a *= cplx(-1.0); return a; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    CMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

cplx parse_complex_entry(const std::string& token) {
    if (token.empty()) throw ParseError("empty matrix entry");
    if (token.back() != 'i' && token.back() != 'I') {
        // pure real
        std::size_t pos = 0;
        double re = 0;
        try {
            re = std::stod(token, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad matrix entry '" + token + "'");
        }
        if (pos != token.size()) throw ParseError("bad matrix entry '" + token + "'");
        return cplx(re, 0.0);
    }
    std::string body = token.substr(0, token.size() - 1);
    // split at the last +/- that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            // pure imaginary: "2i", "-0.5i", "i", "-i"
            if (body.empty() || body == "+") return cplx(0.0, 1.0);
            if (body == "-") return cplx(0.0, -1.0);
            std::size_t pos = 0;
            double im = std::stod(body, &pos);
            if (pos != body.size()) throw ParseError("bad matrix entry '" + token + "'");
            return cplx(0.0, im);
        }
        std::string re_part = body.substr(0, split);
        std::string im_part = body.substr(split);
        if (im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        std::size_t p1 = 0, p2 = 0;
        double re = std::stod(re_part, &p1);
        double im = std::stod(im_part, &p2);
        if (p1 != re_part.size() || p2 != im_part.size())
            throw ParseError("bad matrix entry '" + token + "'");
        return cplx(re, im);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + token + "'");
    }
}

std::string format_complex_entry(cplx v) {
    char buf[96];
    if (v.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

CMatrix read_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError("matrix header: expected 'rows cols'");
    if (rows == 0 || cols == 0) throw ParseError("matrix header: dimensions must be positive");
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    std::string tok;
    for (std::size_t k = 0; k < rows * cols; ++k) {
        if (!(in >> tok)) throw ParseError("matrix body: too few entries");
        entries.push_back(parse_complex_entry(tok));
    }
    return CMatrix(rows, cols, std::move(entries));
}

void write_matrix(std::ostream& out, const CMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_complex_entry(m(i, j));
        }
        out << '\n';
    }
}

CMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    return read_matrix(in);
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write matrix file: " + path);
    write_matrix(out, m);
}

}  // namespace catop
