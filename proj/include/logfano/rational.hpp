#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "logfano/errors.hpp"

namespace logfano {

// Exact rational over int64 with __int128 intermediates. All classification
// and threshold arithmetic must be exact so that boundary cases (V/2 = 1-w_l)
// resolve deterministically; magnitudes stay tiny (weights with small
// denominators, N <= a few hundred), so int64 storage suffices. Overflow is
// checked and throws rather than wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational parse(std::string_view s);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw NumericDomainError("rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.num_ << "/" << r.den_;
    }

private:
    using i128 = __int128;

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw NumericDomainError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw NumericDomainError("rational overflow (int64)");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a > 0 ? a : 1;
    }

    void normalize() {
        Rational r = from_i128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    long long num_;
    long long den_; // > 0
};

// Rational extended with an explicit infinity tag, so infinite thresholds
// never travel as sentinel numbers.
class RationalOrInf {
public:
    RationalOrInf() : infinite_(false), value_() {}
    explicit RationalOrInf(Rational v) : infinite_(false), value_(v) {}
    static RationalOrInf infinity() {
        RationalOrInf r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const {
        if (infinite_) throw NumericDomainError("value() on infinite threshold");
        return value_;
    }
    std::string str() const { return infinite_ ? "inf" : value_.str(); }

    friend bool operator==(const RationalOrInf& a, const RationalOrInf& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const RationalOrInf& a, const RationalOrInf& b) { return !(a == b); }

private:
    bool infinite_;
    Rational value_;
};

} // namespace logfano
