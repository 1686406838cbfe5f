#include "catop/bigfloat.hpp"

#include <cmath>

#include "catop/errors.hpp"

namespace catop {

std::uint32_t BigFloat::bits_for_digits(unsigned digits) {
    // log2(10) ~ 3.322, plus guard bits for rounding drift
    return static_cast<std::uint32_t>(digits * 3.3219280948873623 + 0.5) + 64;
}

void BigFloat::normalize() {
    if (mant_.is_zero()) { sign_ = 0; exp_ = 0; return; }
    std::size_t bits = mant_.bit_length();
    if (bits > prec_) {
        std::size_t drop = bits - prec_;
        mant_.shift_right(drop);
        exp_ += static_cast<long long>(drop);
        if (mant_.is_zero()) { sign_ = 0; exp_ = 0; return; }
    } else if (bits < prec_) {
        std::size_t up = prec_ - bits;
        mant_.shift_left(up);
        exp_ -= static_cast<long long>(up);
    }
}

BigFloat BigFloat::from_double(double v, std::uint32_t prec_bits) {
    BigFloat r;
    r.prec_ = prec_bits;
    if (v == 0.0) return r;
    if (!std::isfinite(v)) throw DomainError("BigFloat::from_double: non-finite value");
    r.sign_ = v < 0 ? -1 : 1;
    int e = 0;
    double m = std::frexp(std::fabs(v), &e);          // m in [0.5,1)
    std::uint64_t mi = static_cast<std::uint64_t>(std::ldexp(m, 53));  // exactly 53 bits
    r.mant_ = BigUInt(mi);
    r.exp_ = e - 53;
    r.normalize();
    return r;
}

BigFloat BigFloat::from_int(long long v, std::uint32_t prec_bits) {
    BigFloat r;
    r.prec_ = prec_bits;
    if (v == 0) return r;
    r.sign_ = v < 0 ? -1 : 1;
    r.mant_ = BigUInt(static_cast<std::uint64_t>(v < 0 ? -v : v));
    r.exp_ = 0;
    r.normalize();
    return r;
}

double BigFloat::to_double() const {
    if (sign_ == 0) return 0.0;
    long long e2 = 0;
    double m = mant_.to_double_pow2(e2);  // mant = m * 2^e2
    double total_exp = static_cast<double>(e2 + exp_);
    if (total_exp > 1020) return sign_ * HUGE_VAL;
    if (total_exp < -1070) return 0.0;
    return sign_ * std::ldexp(m, static_cast<int>(e2 + exp_));
}

BigFloat BigFloat::operator-() const {
    BigFloat r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigFloat BigFloat::add_signed(const BigFloat& a, const BigFloat& b, bool negate_b) {
    int bsign = negate_b ? -b.sign_ : b.sign_;
    std::uint32_t prec = std::max(a.prec_, b.prec_);
    if (a.sign_ == 0) { BigFloat r = b; r.sign_ = bsign; r.prec_ = prec; r.normalize(); return r; }
    if (bsign == 0) { BigFloat r = a; r.prec_ = prec; r.normalize(); return r; }

    // magnitudes over a common exponent; drop the negligible operand early
    long long ea = a.exp_, eb = b.exp_;
    long long top_a = ea + static_cast<long long>(a.mant_.bit_length());
    long long top_b = eb + static_cast<long long>(b.mant_.bit_length());
    if (top_a > top_b + static_cast<long long>(prec) + 2) {
        BigFloat r = a; r.prec_ = prec; r.normalize(); return r;
    }
    if (top_b > top_a + static_cast<long long>(prec) + 2) {
        BigFloat r = b; r.sign_ = bsign; r.prec_ = prec; r.normalize(); return r;
    }
    long long e = std::min(ea, eb);
    BigUInt ma = a.mant_.shifted_left(static_cast<std::size_t>(ea - e));
    BigUInt mb = b.mant_.shifted_left(static_cast<std::size_t>(eb - e));

    BigFloat r;
    r.prec_ = prec;
    r.exp_ = e;
    if (a.sign_ == bsign) {
        r.mant_ = ma + mb;
        r.sign_ = a.sign_;
    } else {
        int cmp = ma.compare(mb);
        if (cmp == 0) return r;  // exact zero
        if (cmp > 0) { r.mant_ = ma - mb; r.sign_ = a.sign_; }
        else { r.mant_ = mb - ma; r.sign_ = bsign; }
    }
    r.normalize();
    return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return BigFloat::add_signed(a, b, false); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return BigFloat::add_signed(a, b, true); }

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    r.prec_ = std::max(a.prec_, b.prec_);
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mant_ = a.mant_ * b.mant_;
    r.exp_ = a.exp_ + b.exp_;
    r.normalize();
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    r.prec_ = std::max(a.prec_, b.prec_);
    if (b.sign_ == 0) throw DomainError("BigFloat: division by zero");
    if (a.sign_ == 0) return r;
    // (ma << (prec+2)) / mb keeps prec+ significant quotient bits
    BigUInt num = a.mant_.shifted_left(r.prec_ + 2);
    BigUInt q, rem;
    BigUInt::divmod(num, b.mant_, q, rem);
    r.sign_ = a.sign_ * b.sign_;
    r.mant_ = q;
    r.exp_ = a.exp_ - b.exp_ - static_cast<long long>(r.prec_ + 2);
    r.normalize();
    return r;
}

int BigFloat::compare(const BigFloat& a, const BigFloat& b) {
    BigFloat d = a - b;
    return d.sign_;
}

}  // namespace catop
