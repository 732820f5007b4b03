#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace catspan {

// Exact rational arithmetic on int64 numerator / positive int64 denominator.
// Values are kept reduced. Intermediates use __int128; a result that does
// not fit back into int64 after reduction throws std::overflow_error.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(checked(i128(a.num_) + b.num_));
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(checked(i128(a.num_) - b.num_));
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return a.num_ < b.num_;
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    double to_double() const { return double(num_) / double(den_); }

private:
    using i128 = __int128;

    static std::int64_t checked(i128 v) {
        if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
            throw std::overflow_error("rational: int64 overflow");
        return std::int64_t(v);
    }

    static Rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = checked(n);
        r.den_ = checked(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

// Accepts "7", "-3/4" and plain decimals like "0.25".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    bool neg = s[0] == '-';
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) return Rational(std::stoll(whole));
    if (frac.size() > 18) throw std::invalid_argument("rational: too many decimal digits");
    std::int64_t den = 1;
    for (size_t i = 0; i < frac.size(); i++) den *= 10;
    std::int64_t w = (whole.empty() || whole == "-") ? 0 : std::stoll(whole);
    std::int64_t f = std::stoll(frac);
    if (neg) return Rational(w * den - f, den);
    return Rational(w * den + f, den);
}

}  // namespace catspan
