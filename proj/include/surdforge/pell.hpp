#pragma once

#include "surdforge/integer.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace surdforge {

// A candidate or solution pair (a, b) of |a^2 - n b^2| = k, with a, b >= 1.
struct Pair {
    Natural a;
    Natural b;

    Pair(Natural a_, Natural b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a < 1 || b < 1)
            throw std::domain_error("Pair: components must be >= 1");
    }

    bool operator==(const Pair&) const = default;
};

// Ordering used everywhere results are listed: by (b, a) ascending.
inline bool operator<(const Pair& x, const Pair& y) {
    return x.b != y.b ? x.b < y.b : x.a < y.a;
}

inline std::string to_string(const Pair& p) {
    return "[" + p.a.str() + ", " + p.b.str() + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Pair& p) {
    return os << to_string(p);
}

// a^2 - n b^2
inline Integer defect(const Natural& n, const Pair& p) {
    return p.a * p.a - n * p.b * p.b;
}

struct SearchResult {
    Natural n;
    Natural bound;
    Natural minimum;             // min over the box of |a^2 - n b^2|
    std::vector<Pair> witnesses;  // every attaining pair, sorted by (b, a)
    bool operator==(const SearchResult&) const = default;
};

// Minimum of |a^2 - n b^2| over 1 <= a, b <= bound, with all attaining pairs.
//
// The fast strategy scans each b once: for fixed b the defect magnitude is
// decreasing in a up to s = isqrt(n b^2) and increasing from s + 1, so only
// the two nearest a values (clamped to the box) can attain the minimum.
// The b range may be partitioned across `threads` workers (0 = one per
// hardware core); partial results are merged by sort + dedupe so the output
// is identical to a serial run.
SearchResult empirical_min_search(const Natural& n, const Natural& bound,
                                  unsigned threads = 0);

// The O(bound^2) scan of the whole box, kept as the trusted oracle for the
// fast strategy at small bounds.
SearchResult empirical_min_search_naive(const Natural& n, const Natural& bound);

// All pairs with |a^2 - n b^2| = 1 inside the box, sorted by b ascending.
std::vector<Pair> unit_solutions_in_box(const Natural& n, const Natural& bound,
                                        unsigned threads = 0);

// The n=2 recurrence (a, b) -> (a + 2b, a + b); flips the sign of the defect.
Pair step_up(const Pair& p);

// The descent map (c, d) -> (2d - c, c - d), inverse of step_up. Requires
// d < c < 2d so both outputs stay positive; (1, 1) is the canonical
// non-descendable base. The output's sum a + b = d is strictly smaller.
Pair step_down(const Pair& p);

// (a + 2b)^2 - 2(a + b)^2 == -(a^2 - 2b^2), evaluated exactly. Always true;
// exists so certificates can record machine-verified instances.
bool sign_flip_identity_check(const Integer& a, const Integer& b);

// (a, b) o (x, y) = (a x + n b y, a y + b x); defects multiply, so composing
// unit solutions yields unit solutions. step_up is the n=2, q=(1,1) case.
Pair compose_solutions(const Natural& n, const Pair& p, const Pair& q);

// Least pair with |a^2 - n b^2| = 1, found among the convergents of sqrt(n).
Pair fundamental_unit_solution(const Natural& n);

// First `count` unit solutions in increasing b: for n = 2 by iterating
// step_up from (1, 1), otherwise by composing with the fundamental solution.
std::vector<Pair> generate_unit_solutions(const Natural& n, std::size_t count);

// Full descent chain from a unit solution (n = 2) down to (1, 1), inclusive.
// Throws if |a^2 - 2b^2| != 1.
std::vector<Pair> descent_chain(const Pair& start);

struct IdentityCheck {
    Integer a;
    Integer b;
    bool holds;
    bool operator==(const IdentityCheck&) const = default;
};

struct BaseCase {
    Natural a;
    Natural b;
    bool is_solution;  // whether a^2 == 2 b^2
    bool operator==(const BaseCase&) const = default;
};

// Self-contained record of the descent argument that a^2 - 2b^2 != 0 for all
// 1 <= a, b <= bound: verified instances of the sign-flip identity, the
// explicit base cases, and the full descent chain of every unit solution in
// the box. verify() re-runs every check from the record alone.
struct DescentCertificate {
    Natural n;  // the certificate kind is specific to n = 2
    Natural bound;
    std::vector<IdentityCheck> identity_checks;
    std::vector<BaseCase> base_cases;
    std::vector<std::vector<Pair>> chains;
    bool verified = false;
    bool operator==(const DescentCertificate&) const = default;
};

DescentCertificate descent_no_solution_certificate(const Natural& bound);
bool verify(const DescentCertificate& cert);

}  // namespace surdforge
