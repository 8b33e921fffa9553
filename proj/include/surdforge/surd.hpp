#pragma once

#include "surdforge/integer.hpp"

#include <ostream>
#include <string>

namespace surdforge {

// Exact quadratic irrational (p + sqrt(d)) / q.
//
// Stored invariants:
//   * q != 0, d >= 2 and d is not a perfect square;
//   * q divides d - p^2 (keeps the continued-fraction step closed over
//     integer triples);
//   * gcd(p, q, (d - p^2)/q) == 1.
//
// The last condition makes the triple the unique representative of its value
// with minimal d, so equal values compare equal member-wise and (p, q) pairs
// can serve as exact state keys during cycle detection.
class Surd {
public:
    // Normalizing constructor: accepts any triple with q != 0 and d a
    // non-square >= 2, scales it to satisfy the divisibility invariant when
    // needed, and strips the common factor described above.
    Surd(Integer p, Integer q, Natural d);

    const Integer& p() const { return p_; }
    const Integer& q() const { return q_; }
    const Natural& d() const { return d_; }

    bool operator==(const Surd&) const = default;

    std::string str() const;  // "(p+sqrt(d))/q"

private:
    Integer p_;
    Integer q_;
    Natural d_;
};

inline std::ostream& operator<<(std::ostream& os, const Surd& s) {
    return os << s.str();
}

// Free-function form of the normalizing constructor.
Surd surd_normalize(Integer p, Integer q, Natural d);

// floor((p + sqrt(d)) / q), exact for either sign of q.
Integer surd_floor(const Surd& s);

// 1 / (s - floor(s)), the continued-fraction step. Always well defined: d
// non-square means the fractional part cannot vanish.
Surd reciprocal_of_fractional_part(const Surd& s);

// floor(value * 2^bits). Exact; used to compare surd representations without
// leaving integer arithmetic.
Integer scaled_floor(const Surd& s, unsigned bits);

}  // namespace surdforge
