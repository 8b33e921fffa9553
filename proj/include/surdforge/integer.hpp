#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace surdforge {

// Arbitrary-precision signed integer. All arithmetic in this library is
// exact; there is no floating point anywhere in the numeric core.
using Integer = boost::multiprecision::cpp_int;

// A non-negative Integer. The alias documents intent; operations taking a
// Natural validate the sign at their boundary.
using Natural = Integer;

inline void require_natural(const Integer& n, const char* what) {
    if (n < 0)
        throw std::domain_error(std::string(what) + " must be non-negative");
}

// gcd(a, 0) = a. Plain Euclidean algorithm.
inline Natural gcd(Natural a, Natural b) {
    require_natural(a, "gcd argument");
    require_natural(b, "gcd argument");
    while (b != 0) {
        a %= b;
        a.swap(b);
    }
    return a;
}

struct DivMod {
    Integer quotient;
    Natural remainder;  // 0 <= remainder < divisor
};

// Floor division: a = quotient * b + remainder with 0 <= remainder < b.
// cpp_int's built-in division truncates toward zero, so negative numerators
// need the usual fix-up.
inline DivMod divmod_floor(const Integer& a, const Natural& b) {
    if (b <= 0)
        throw std::domain_error("divmod_floor: divisor must be positive");
    DivMod out{a / b, a % b};
    if (out.remainder < 0) {
        out.quotient -= 1;
        out.remainder += b;
    }
    return out;
}

// floor(sqrt(n)). boost's integer sqrt already returns the floor root.
inline Natural isqrt(const Natural& n) {
    require_natural(n, "isqrt argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Natural& n) {
    if (n < 0)
        return false;
    Natural r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

// Strict decimal integer parse ("-123", "0", "42"); rejects anything else.
// Used wherever integers cross a serialization boundary.
inline Integer parse_integer(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty integer literal");
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size() || text == "-0")
        throw std::invalid_argument("bad integer literal: " + text);
    if (text[i] == '0' && text.size() > i + 1)
        throw std::invalid_argument("bad integer literal (leading zero): " + text);
    for (; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("bad integer literal: " + text);
    return Integer(text);
}

inline Natural parse_natural(const std::string& text) {
    Integer v = parse_integer(text);
    require_natural(v, "value");
    return v;
}

}  // namespace surdforge
