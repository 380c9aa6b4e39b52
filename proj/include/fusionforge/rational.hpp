#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fusionforge {

/// Exact rational on 64-bit integers. All conformal weights, lattice
/// pairings and series exponents go through this type; operations throw
/// on overflow instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return fromI128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                        i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return fromI128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                        i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return fromI128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return fromI128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
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
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }

    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    /// Representative in [0,1).
    Rational mod1() const { return *this - Rational(floor()); }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p/q" or "p".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)),
                            std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
    }

private:
    using i128 = __int128;

    static Rational fromI128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num_ = std::int64_t(n);
        r.den_ = std::int64_t(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_;
    std::int64_t den_;
};

/// e^{2 pi i r}, with the phase reduced mod 1 first so that e.g. r = 3/2
/// lands exactly on the same float as r = 1/2.
inline std::complex<double> exp2pi(const Rational& r) {
    static const double TWO_PI = 6.283185307179586476925286766559;
    Rational m = r.mod1();
    // hit the axis values exactly
    if (m == Rational(0)) return {1.0, 0.0};
    if (m == Rational(1, 2)) return {-1.0, 0.0};
    if (m == Rational(1, 4)) return {0.0, 1.0};
    if (m == Rational(3, 4)) return {0.0, -1.0};
    double a = TWO_PI * m.to_double();
    return {std::cos(a), std::sin(a)};
}

}  // namespace fusionforge
