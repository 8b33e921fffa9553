#include "surdforge/surd.hpp"

namespace surdforge {

namespace {

// floor((P + sqrt(D)) / Q) for a raw triple, Q != 0, D non-square.
// sqrt(D) is irrational, so P + sqrt(D) lies strictly between P + r and
// P + r + 1 where r = isqrt(D); no multiple of Q can sit in that gap, which
// makes the integer formula exact.
Integer floor_raw(const Integer& P, const Natural& D, const Integer& Q) {
    Integer top = P + isqrt(D);
    if (Q > 0)
        return divmod_floor(top, Q).quotient;
    return -divmod_floor(top, -Q).quotient - 1;
}

}  // namespace

Surd::Surd(Integer p, Integer q, Natural d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (q_ == 0)
        throw std::domain_error("Surd: q must be nonzero");
    if (d_ < 2 || is_perfect_square(d_))
        throw std::domain_error("Surd: d must be a non-square natural >= 2");
    if ((d_ - p_ * p_) % q_ != 0) {
        // Scale (p, q, d) -> (p|q|, q|q|, d q^2); the scaled triple always
        // satisfies the divisibility invariant and has the same value.
        Integer aq = q_ < 0 ? Integer(-q_) : q_;
        p_ *= aq;
        d_ *= q_ * q_;
        q_ *= aq;
    }
    // Strip g = gcd(p, q, (d - p^2)/q). g | p and g | q force g^2 | d, so
    // (p/g, q/g, d/g^2) is an equal-value triple; one full-gcd extraction
    // lands on the minimal-d representative.
    Integer c = (d_ - p_ * p_) / q_;
    Natural g = gcd(gcd(p_ < 0 ? Natural(-p_) : Natural(p_),
                        q_ < 0 ? Natural(-q_) : Natural(q_)),
                    c < 0 ? Natural(-c) : Natural(c));
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        d_ /= g * g;
    }
}

Surd surd_normalize(Integer p, Integer q, Natural d) {
    return Surd(std::move(p), std::move(q), std::move(d));
}

std::string Surd::str() const {
    return "(" + p_.str() + "+sqrt(" + d_.str() + "))/" + q_.str();
}

Integer surd_floor(const Surd& s) {
    return floor_raw(s.p(), s.d(), s.q());
}

Surd reciprocal_of_fractional_part(const Surd& s) {
    Integer a = surd_floor(s);
    // fractional part is (p1 + sqrt(d)) / q with p1 = p - a q, value in (0,1);
    // rationalizing gives (-p1 + sqrt(d)) / ((d - p1^2)/q), an exact division
    // because p1 == p (mod q).
    Integer p1 = s.p() - a * s.q();
    return Surd(-p1, (s.d() - p1 * p1) / s.q(), s.d());
}

Integer scaled_floor(const Surd& s, unsigned bits) {
    return floor_raw(s.p() << bits, s.d() << (2 * bits), s.q());
}

}  // namespace surdforge
