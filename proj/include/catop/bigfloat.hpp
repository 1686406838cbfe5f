#pragma once

#include <cstdint>
#include <string>

#include "catop/bigint.hpp"

namespace catop {

/// Software binary floating point: sign * mantissa * 2^exp with a fixed
/// mantissa width. Truncating rounding; the width carries enough guard bits
/// that the solver's stated significant digits are honest.
class BigFloat {
public:
    BigFloat() = default;

    static std::uint32_t bits_for_digits(unsigned digits);
    static BigFloat from_double(double v, std::uint32_t prec_bits);
    static BigFloat from_int(long long v, std::uint32_t prec_bits);

    double to_double() const;
    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    std::uint32_t precision_bits() const { return prec_; }

    BigFloat operator-() const;
    BigFloat abs() const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

    /// Three-way comparison by value.
    static int compare(const BigFloat& a, const BigFloat& b);
    bool operator<(const BigFloat& o) const { return compare(*this, o) < 0; }
    bool operator>(const BigFloat& o) const { return compare(*this, o) > 0; }
    bool operator<=(const BigFloat& o) const { return compare(*this, o) <= 0; }
    bool operator>=(const BigFloat& o) const { return compare(*this, o) >= 0; }

private:
    void normalize();
    static BigFloat add_signed(const BigFloat& a, const BigFloat& b, bool negate_b);

    int sign_ = 0;
    BigUInt mant_;             // bit_length == prec_ whenever sign_ != 0
    long long exp_ = 0;        // value = sign * mant * 2^exp
    std::uint32_t prec_ = 64;
};

}  // namespace catop
