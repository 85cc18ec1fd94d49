#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc {

using BigInt = boost::multiprecision::cpp_int;

// All threshold decisions (fat/thin classification, edge minimality,
// allocation verification) reduce to comparing a*b against c*d for
// non-negative 64-bit operands. 128-bit products cannot wrap, so the
// comparison is exact.
inline int cmp_products(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) throw Overflow("cmp_products: negative operand");
    unsigned __int128 lhs = static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    unsigned __int128 rhs = static_cast<unsigned __int128>(c) * static_cast<unsigned __int128>(d);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw Overflow("checked_add");
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw Overflow("checked_mul");
    return out;
}

// Exact rational over arbitrary-width integers. Only what the dual
// certificate needs: normalized construction, addition, comparison,
// and the "p/q" string form used by the certificate file format.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
    static Rational from_int(std::int64_t v) { return Rational(BigInt(v), BigInt(1)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const { return num_.str() + "/" + den_.str(); }

    // Accepts "p/q" or a bare integer "p" (meaning p/1).
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            return Rational(std::move(num), std::move(den));
        } catch (const std::exception&) {
            throw Malformed("rational", "cannot parse '" + text + "' as p/q");
        }
    }

private:
    void normalize() {
        if (den_ == 0) throw Malformed("rational", "zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

} // namespace fairalloc
