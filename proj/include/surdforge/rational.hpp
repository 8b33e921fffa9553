#pragma once

#include "surdforge/integer.hpp"

#include <ostream>
#include <string>
#include <utility>

namespace surdforge {

// Exact rational number, always stored reduced with a positive denominator:
// den > 0 and gcd(|num|, den) == 1. Canonical form makes equality a plain
// member-wise comparison.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}

    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0)
            throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Natural g = gcd(num_ < 0 ? Natural(-num_) : Natural(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    const Integer& num() const { return num_; }
    const Natural& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Integer floor() const { return divmod_floor(num_, den_).quotient; }

    Rational reciprocal() const {
        if (num_ == 0)
            throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    std::string str() const { return num_.str() + "/" + den_.str(); }

    bool operator==(const Rational&) const = default;

    friend Rational operator-(const Rational& r) { return Rational(-r.num_, r.den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    // a/b < c/d  iff  a*d < c*b (denominators positive).
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    Integer num_;
    Natural den_;
};

// Parses "p/q" or "p" with an optional leading minus.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parse_integer(text));
    return Rational(parse_integer(text.substr(0, slash)),
                    parse_integer(text.substr(slash + 1)));
}

}  // namespace surdforge
