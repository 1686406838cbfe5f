#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace catop {

/// Arbitrary-precision unsigned integer, base 2^32 little-endian limbs.
/// Covers what the Catalan machinery needs: exact recurrences, convolution
/// cross-checks and the mantissas of the software floats.
class BigUInt {
public:
    BigUInt() = default;
    BigUInt(std::uint64_t v);  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return limb_.empty(); }
    std::size_t bit_length() const;
    bool bit(std::size_t i) const;

    int compare(const BigUInt& o) const;
    bool operator==(const BigUInt& o) const { return compare(o) == 0; }
    bool operator!=(const BigUInt& o) const { return compare(o) != 0; }
    bool operator<(const BigUInt& o) const { return compare(o) < 0; }
    bool operator<=(const BigUInt& o) const { return compare(o) <= 0; }
    bool operator>(const BigUInt& o) const { return compare(o) > 0; }
    bool operator>=(const BigUInt& o) const { return compare(o) >= 0; }

    BigUInt& operator+=(const BigUInt& o);
    BigUInt& operator-=(const BigUInt& o);  // requires *this >= o
    BigUInt operator+(const BigUInt& o) const;
    BigUInt operator-(const BigUInt& o) const;
    BigUInt operator*(const BigUInt& o) const;

    BigUInt& mul_small(std::uint32_t m);
    /// Divides in place by a small divisor, returns the remainder.
    std::uint32_t div_small(std::uint32_t d);

    BigUInt& shift_left(std::size_t bits);
    BigUInt& shift_right(std::size_t bits);
    BigUInt shifted_left(std::size_t bits) const;

    static void divmod(const BigUInt& num, const BigUInt& den, BigUInt& q, BigUInt& r);

    /// Truncating conversion; HUGE_VAL when out of double range.
    double to_double() const;
    /// Mantissa in [0.5, 1) and exponent with value == mantissa * 2^exp2.
    double to_double_pow2(long long& exp2) const;

    std::string to_decimal() const;
    std::uint64_t low_u64() const;

private:
    void trim();
    std::vector<std::uint32_t> limb_;
};

}  // namespace catop
