#pragma once

#include "surdforge/integer.hpp"
#include "surdforge/rational.hpp"
#include "surdforge/surd.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace surdforge {

// Simple continued fraction, split into a non-repeating prefix and a
// (possibly empty) repeating cycle. An empty period means the value is
// rational and the expansion finite.
//
// Invariants enforced at construction:
//   * every term after the first is >= 1 (the first preperiod term may be
//     any integer, which covers negative values under floor semantics);
//   * all period terms are >= 1;
//   * finite expansions are canonical: with length >= 2 the last term is
//     >= 2, resolving the [.., a, 1] == [.., a+1] ambiguity.
class ContinuedFraction {
public:
    explicit ContinuedFraction(std::vector<Integer> preperiod,
                               std::vector<Integer> period = {});

    const std::vector<Integer>& preperiod() const { return preperiod_; }
    const std::vector<Integer>& period() const { return period_; }

    bool is_finite() const { return period_.empty(); }
    bool is_purely_periodic() const { return preperiod_.empty() && !period_.empty(); }

    // i-th term, unrolling the period on demand. Throws std::out_of_range
    // past the end of a finite expansion.
    Integer term(std::size_t i) const;

    // Renders "[a0; a1, a2, (b1, b2, ...)]" with the parenthesized part the
    // period.
    std::string str() const;

    bool operator==(const ContinuedFraction&) const = default;

private:
    std::vector<Integer> preperiod_;
    std::vector<Integer> period_;
};

inline std::ostream& operator<<(std::ostream& os, const ContinuedFraction& cf) {
    return os << cf.str();
}

// Finite expansion of a rational via the Euclidean algorithm; the canonical
// form above makes cf_rational and reconstruct_rational exact inverses.
ContinuedFraction cf_rational(const Rational& r);

// Folds a finite expansion back into the rational it denotes.
Rational reconstruct_rational(const ContinuedFraction& cf);

// The (p, q) part of a surd state; d is fixed along an expansion orbit.
struct SurdState {
    Integer p;
    Integer q;
    bool operator==(const SurdState&) const = default;
};

struct SurdExpansion {
    ContinuedFraction cf;
    // States visited from step 0 through the step that closes the cycle:
    // length preperiod + period + 1, with the last entry equal to the entry
    // at index preperiod. Replaying the expansion against this trace is an
    // exact proof of periodicity.
    std::vector<SurdState> state_trace;
};

// Periodic expansion of a quadratic surd with exact cycle detection. The
// period is always nonempty; the first repeated state is found by keeping
// every state from step 0, so the reported preperiod is minimal.
ContinuedFraction cf_surd(const Surd& s);
SurdExpansion cf_surd_with_trace(const Surd& s);

// Convergents p0/q0 .. pk/qk of the expansion (k+1 entries), by the standard
// three-term recurrence. Throws std::out_of_range if a finite expansion has
// fewer than k+1 terms.
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k);

// Exact evaluation of c2*y^2 + c1*y + c0 at a surd; true iff it vanishes.
bool quadratic_vanishes_at(const Integer& c2, const Integer& c1, const Integer& c0,
                           const Surd& y);

// Value of the purely periodic expansion [(t1, .., tm)]: the positive root of
// qk*y^2 + (q(k-1) - pk)*y - p(k-1) = 0, the fixed point of the period's
// convergent map. Verified by substitution before returning.
Surd periodic_fixed_point(const std::vector<Integer>& period);

// Unvalidated (p, q, d) triple for serialization boundaries.
struct SurdTriple {
    Integer p;
    Integer q;
    Natural d;
    bool operator==(const SurdTriple&) const = default;
};

struct FixedPointCheck {
    Integer c2, c1, c0;  // quadratic built from the period
    SurdTriple value;    // its positive root, as a normalized triple
    bool operator==(const FixedPointCheck&) const = default;
};

// Self-contained record that sqrt(d) has an (infinite) periodic expansion:
// the terms, the full state trace proving the cycle, and the fixed-point
// check for the periodic tail. verify() re-runs everything from the record
// alone in exact arithmetic.
struct PeriodicityCertificate {
    Natural d;
    std::vector<Integer> preperiod;
    std::vector<Integer> period;
    std::vector<SurdState> state_trace;
    FixedPointCheck fixed_point;
    bool verified = false;
    bool operator==(const PeriodicityCertificate&) const = default;
};

PeriodicityCertificate irrationality_certificate(const Natural& d);
bool verify(const PeriodicityCertificate& cert);

struct ConvergentDefect {
    Rational convergent;
    Integer defect;  // p^2 - d q^2
    bool operator==(const ConvergentDefect&) const = default;
};

// First `count` convergents p/q of sqrt(d) with their defects p^2 - d q^2.
std::vector<ConvergentDefect> approximation_report(const Natural& d, std::size_t count);

}  // namespace surdforge
