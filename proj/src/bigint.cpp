#include "catop/bigint.hpp"

#include <algorithm>
#include <cmath>

namespace catop {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigUInt::BigUInt(std::uint64_t v) {
    if (v) {
        limb_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) limb_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
}

void BigUInt::trim() {
    while (!limb_.empty() && limb_.back() == 0) limb_.pop_back();
}

std::size_t BigUInt::bit_length() const {
    if (limb_.empty()) return 0;
    std::uint32_t top = limb_.back();
    std::size_t bits = (limb_.size() - 1) * 32;
    while (top) { ++bits; top >>= 1; }
    return bits;
}

bool BigUInt::bit(std::size_t i) const {
    std::size_t w = i / 32;
    if (w >= limb_.size()) return false;
    return (limb_[w] >> (i % 32)) & 1u;
}

int BigUInt::compare(const BigUInt& o) const {
    if (limb_.size() != o.limb_.size()) return limb_.size() < o.limb_.size() ? -1 : 1;
    for (std::size_t i = limb_.size(); i-- > 0;) {
        if (limb_[i] != o.limb_[i]) return limb_[i] < o.limb_[i] ? -1 : 1;
    }
    return 0;
}

BigUInt& BigUInt::operator+=(const BigUInt& o) {
    if (limb_.size() < o.limb_.size()) limb_.resize(o.limb_.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limb_.size(); ++i) {
        std::uint64_t s = carry + limb_[i] + (i < o.limb_.size() ? o.limb_[i] : 0);
        limb_[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) limb_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigUInt& BigUInt::operator-=(const BigUInt& o) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limb_.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(limb_[i]) - borrow -
                         (i < o.limb_.size() ? static_cast<std::int64_t>(o.limb_[i]) : 0);
        if (d < 0) { d += static_cast<std::int64_t>(kBase); borrow = 1; }
        else borrow = 0;
        limb_[i] = static_cast<std::uint32_t>(d);
    }
    trim();
    return *this;
}

BigUInt BigUInt::operator+(const BigUInt& o) const { BigUInt r = *this; r += o; return r; }
BigUInt BigUInt::operator-(const BigUInt& o) const { BigUInt r = *this; r -= o; return r; }

BigUInt BigUInt::operator*(const BigUInt& o) const {
    if (is_zero() || o.is_zero()) return BigUInt();
    BigUInt r;
    r.limb_.assign(limb_.size() + o.limb_.size(), 0);
    for (std::size_t i = 0; i < limb_.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t a = limb_[i];
        for (std::size_t j = 0; j < o.limb_.size(); ++j) {
            std::uint64_t cur = r.limb_[i + j] + a * o.limb_[j] + carry;
            r.limb_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + o.limb_.size();
        while (carry) {
            std::uint64_t cur = r.limb_[k] + carry;
            r.limb_[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigUInt& BigUInt::mul_small(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& w : limb_) {
        std::uint64_t cur = static_cast<std::uint64_t>(w) * m + carry;
        w = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    if (carry) limb_.push_back(static_cast<std::uint32_t>(carry));
    trim();
    return *this;
}

std::uint32_t BigUInt::div_small(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t i = limb_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limb_[i];
        limb_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

BigUInt& BigUInt::shift_left(std::size_t bits) {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 32, rem = bits % 32;
    if (rem) {
        std::uint32_t carry = 0;
        for (auto& w : limb_) {
            std::uint32_t nw = (w << rem) | carry;
            carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(w) >> (32 - rem));
            w = nw;
        }
        if (carry) limb_.push_back(carry);
    }
    if (words) limb_.insert(limb_.begin(), words, 0);
    return *this;
}

BigUInt& BigUInt::shift_right(std::size_t bits) {
    std::size_t words = bits / 32, rem = bits % 32;
    if (words >= limb_.size()) { limb_.clear(); return *this; }
    if (words) limb_.erase(limb_.begin(), limb_.begin() + static_cast<std::ptrdiff_t>(words));
    if (rem) {
        std::uint32_t carry = 0;
        for (std::size_t i = limb_.size(); i-- > 0;) {
            std::uint32_t nw = (limb_[i] >> rem) | carry;
            carry = limb_[i] << (32 - rem);
            limb_[i] = nw;
        }
        trim();
    }
    return *this;
}

BigUInt BigUInt::shifted_left(std::size_t bits) const { BigUInt r = *this; r.shift_left(bits); return r; }

void BigUInt::divmod(const BigUInt& num, const BigUInt& den, BigUInt& q, BigUInt& r) {
    q = BigUInt();
    r = BigUInt();
    if (den.is_zero() || num < den) { r = num; return; }
    std::size_t nbits = num.bit_length();
    q.limb_.assign((nbits + 31) / 32, 0);
    for (std::size_t i = nbits; i-- > 0;) {
        r.shift_left(1);
        if (num.bit(i)) {
            if (r.limb_.empty()) r.limb_.push_back(1);
            else r.limb_[0] |= 1u;
        }
        if (r.compare(den) >= 0) {
            r -= den;
            q.limb_[i / 32] |= (1u << (i % 32));
        }
    }
    q.trim();
}

double BigUInt::to_double() const {
    long long e = 0;
    double m = to_double_pow2(e);
    if (m == 0.0) return 0.0;
    return std::ldexp(m, static_cast<int>(e));
}

double BigUInt::to_double_pow2(long long& exp2) const {
    exp2 = 0;
    if (is_zero()) return 0.0;
    std::size_t bits = bit_length();
    BigUInt t = *this;
    if (bits > 64) t.shift_right(bits - 64);
    std::size_t top_bits = std::min<std::size_t>(bits, 64);
    exp2 = static_cast<long long>(bits);
    return std::ldexp(static_cast<double>(t.low_u64()), -static_cast<int>(top_bits));
}

std::string BigUInt::to_decimal() const {
    if (is_zero()) return "0";
    BigUInt tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        std::uint32_t rem = tmp.div_small(1000000000u);
        if (tmp.is_zero()) {
            out = std::to_string(rem) + out;
        } else {
            std::string part = std::to_string(rem);
            out = std::string(9 - part.size(), '0') + part + out;
        }
    }
    return out;
}

std::uint64_t BigUInt::low_u64() const {
    std::uint64_t v = 0;
    if (!limb_.empty()) v = limb_[0];
    if (limb_.size() > 1) v |= static_cast<std::uint64_t>(limb_[1]) << 32;
    return v;
}

}  // namespace catop
