#include "surdforge/contfrac.hpp"

#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace surdforge {

ContinuedFraction::ContinuedFraction(std::vector<Integer> preperiod,
                                     std::vector<Integer> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (preperiod_.empty() && period_.empty())
        throw std::invalid_argument("ContinuedFraction: no terms");
    for (std::size_t i = 1; i < preperiod_.size(); ++i)
        if (preperiod_[i] < 1)
            throw std::invalid_argument("ContinuedFraction: term after the first must be >= 1");
    for (const Integer& t : period_)
        if (t < 1)
            throw std::invalid_argument("ContinuedFraction: period terms must be >= 1");
    if (period_.empty() && preperiod_.size() >= 2 && preperiod_.back() < 2)
        throw std::invalid_argument("ContinuedFraction: finite form must end in a term >= 2");
}

Integer ContinuedFraction::term(std::size_t i) const {
    if (i < preperiod_.size())
        return preperiod_[i];
    if (period_.empty())
        throw std::out_of_range("ContinuedFraction: finite expansion has only " +
                                std::to_string(preperiod_.size()) + " terms");
    return period_[(i - preperiod_.size()) % period_.size()];
}

std::string ContinuedFraction::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < preperiod_.size(); ++i) {
        if (i == 1)
            os << "; ";
        else if (i > 1)
            os << ", ";
        os << preperiod_[i];
    }
    if (!period_.empty()) {
        if (preperiod_.empty())
            os << "(";
        else if (preperiod_.size() == 1)
            os << "; (";
        else
            os << ", (";
        for (std::size_t i = 0; i < period_.size(); ++i) {
            if (i)
                os << ", ";
            os << period_[i];
        }
        os << ")";
    }
    os << "]";
    return os.str();
}

ContinuedFraction cf_rational(const Rational& r) {
    std::vector<Integer> terms;
    Integer num = r.num();
    Natural den = r.den();
    for (;;) {
        DivMod dm = divmod_floor(num, den);
        terms.push_back(dm.quotient);
        if (dm.remainder == 0)
            break;
        num = den;
        den = dm.remainder;
    }
    // Euclid's remainders strictly decrease, so when the remainder hits zero
    // the final quotient is >= 2 whenever there is more than one term; the
    // canonical-form invariant holds by construction.
    return ContinuedFraction(std::move(terms));
}

Rational reconstruct_rational(const ContinuedFraction& cf) {
    if (!cf.is_finite())
        throw std::domain_error("reconstruct_rational: expansion is not finite");
    const std::vector<Integer>& terms = cf.preperiod();
    Rational value(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        value = Rational(terms[i]) + value.reciprocal();
    return value;
}

SurdExpansion cf_surd_with_trace(const Surd& s) {
    std::vector<Integer> terms;
    std::vector<SurdState> trace;
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    Surd state = s;
    for (;;) {
        auto key = std::make_pair(state.p(), state.q());
        trace.push_back(SurdState{state.p(), state.q()});
        auto [it, inserted] = seen.emplace(key, terms.size());
        if (!inserted) {
            std::size_t start = it->second;
            std::vector<Integer> pre(terms.begin(), terms.begin() + start);
            std::vector<Integer> per(terms.begin() + start, terms.end());
            return SurdExpansion{ContinuedFraction(std::move(pre), std::move(per)),
                                 std::move(trace)};
        }
        if (state.d() != s.d())
            throw std::logic_error("cf_surd: d drifted along the orbit");
        terms.push_back(surd_floor(state));
        state = reciprocal_of_fractional_part(state);
    }
}

ContinuedFraction cf_surd(const Surd& s) {
    return cf_surd_with_trace(s).cf;
}

namespace {

// Numerator/denominator pairs of the convergent recurrence, seeded with
// p(-1)=1, p(-2)=0, q(-1)=0, q(-2)=1.
struct ConvergentAccum {
    Integer p_prev = 1, p_prev2 = 0;
    Integer q_prev = 0, q_prev2 = 1;

    void push(const Integer& term) {
        Integer p = term * p_prev + p_prev2;
        Integer q = term * q_prev + q_prev2;
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        q_prev2 = std::move(q_prev);
        q_prev = std::move(q);
    }
};

}  // namespace

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k) {
    if (cf.is_finite() && cf.preperiod().size() < k + 1)
        throw std::out_of_range("convergents: finite expansion has only " +
                                std::to_string(cf.preperiod().size()) + " terms");
    std::vector<Rational> out;
    out.reserve(k + 1);
    ConvergentAccum acc;
    for (std::size_t i = 0; i <= k; ++i) {
        acc.push(cf.term(i));
        // consecutive convergents are coprime, so this is already reduced
        out.emplace_back(acc.p_prev, acc.q_prev);
    }
    return out;
}

bool quadratic_vanishes_at(const Integer& c2, const Integer& c1, const Integer& c0,
                           const Surd& y) {
    // y = (P + sqrt(D))/Q, so Q^2 * (c2 y^2 + c1 y + c0) splits into a
    // rational part and a sqrt(D) part; both must vanish.
    const Integer& P = y.p();
    const Integer& Q = y.q();
    const Integer& D = y.d();
    Integer rational_part = c2 * (P * P + D) + c1 * P * Q + c0 * Q * Q;
    Integer surd_part = 2 * c2 * P + c1 * Q;
    return rational_part == 0 && surd_part == 0;
}

Surd periodic_fixed_point(const std::vector<Integer>& period) {
    if (period.empty())
        throw std::invalid_argument("periodic_fixed_point: empty period");
    for (const Integer& t : period)
        if (t < 1)
            throw std::invalid_argument("periodic_fixed_point: period terms must be >= 1");
    ConvergentAccum acc;
    for (const Integer& t : period)
        acc.push(t);
    // y = (pk y + p(k-1)) / (qk y + q(k-1))  =>  c2 y^2 + c1 y + c0 = 0
    Integer c2 = acc.q_prev;
    Integer c1 = acc.q_prev2 - acc.p_prev;
    Integer c0 = -acc.p_prev2;
    Integer disc = c1 * c1 - 4 * c2 * c0;
    if (is_perfect_square(disc))
        throw std::domain_error("periodic_fixed_point: degenerate period (rational root)");
    Surd y(-c1, 2 * c2, disc);
    if (!quadratic_vanishes_at(c2, c1, c0, y))
        throw std::logic_error("periodic_fixed_point: substitution check failed");
    return y;
}

PeriodicityCertificate irrationality_certificate(const Natural& d) {
    if (d < 2 || is_perfect_square(d))
        throw std::domain_error("irrationality_certificate: d must be a non-square >= 2");
    SurdExpansion exp = cf_surd_with_trace(Surd(0, 1, d));

    PeriodicityCertificate cert;
    cert.d = d;
    cert.preperiod = exp.cf.preperiod();
    cert.period = exp.cf.period();
    cert.state_trace = std::move(exp.state_trace);

    Surd y = periodic_fixed_point(cert.period);
    ConvergentAccum acc;
    for (const Integer& t : cert.period)
        acc.push(t);
    cert.fixed_point = FixedPointCheck{acc.q_prev, acc.q_prev2 - acc.p_prev, -acc.p_prev2,
                                       SurdTriple{y.p(), y.q(), y.d()}};
    cert.verified = true;
    if (!verify(cert))
        throw std::logic_error("irrationality_certificate: fresh certificate failed to verify");
    return cert;
}

bool verify(const PeriodicityCertificate& cert) {
    try {
        if (!cert.verified)
            return false;
        if (cert.d < 2 || is_perfect_square(cert.d))
            return false;
        if (cert.period.empty())
            return false;
        const std::size_t pre = cert.preperiod.size();
        const std::size_t len = pre + cert.period.size();
        if (cert.state_trace.size() != len + 1)
            return false;

        // Replay the expansion from sqrt(d) and compare every state and term.
        Surd state(0, 1, cert.d);
        for (std::size_t k = 0; k < len; ++k) {
            if (SurdState{state.p(), state.q()} != cert.state_trace[k])
                return false;
            const Integer& expected = k < pre ? cert.preperiod[k] : cert.period[k - pre];
            if (surd_floor(state) != expected)
                return false;
            state = reciprocal_of_fractional_part(state);
        }
        // Cycle closure, against both the replayed state and the trace.
        if (SurdState{state.p(), state.q()} != cert.state_trace[len])
            return false;
        if (cert.state_trace[len] != cert.state_trace[pre])
            return false;
        // Minimality: no state may repeat before the detected cycle start.
        std::set<std::pair<Integer, Integer>> distinct;
        for (std::size_t i = 0; i < len; ++i)
            if (!distinct.emplace(cert.state_trace[i].p, cert.state_trace[i].q).second)
                return false;

        // The recorded quadratic must be the one the period's convergents
        // define, and the recorded root must satisfy it exactly.
        ConvergentAccum acc;
        for (const Integer& t : cert.period) {
            if (t < 1)
                return false;
            acc.push(t);
        }
        if (cert.fixed_point.c2 != acc.q_prev ||
            cert.fixed_point.c1 != acc.q_prev2 - acc.p_prev ||
            cert.fixed_point.c0 != -acc.p_prev2)
            return false;
        Surd root(cert.fixed_point.value.p, cert.fixed_point.value.q,
                  cert.fixed_point.value.d);
        // The triple must be stored in normalized form, verbatim.
        if (root.p() != cert.fixed_point.value.p || root.q() != cert.fixed_point.value.q ||
            root.d() != cert.fixed_point.value.d)
            return false;
        if (!quadratic_vanishes_at(cert.fixed_point.c2, cert.fixed_point.c1,
                                   cert.fixed_point.c0, root))
            return false;
        // And it must be the value of the periodic tail, i.e. the state where
        // the cycle starts.
        if (root != Surd(cert.state_trace[pre].p, cert.state_trace[pre].q, cert.d))
            return false;
        return true;
    } catch (const std::exception&) {
        // Any malformed field (invalid surd, zero q, ...) means the record
        // does not certify anything.
        return false;
    }
}

std::vector<ConvergentDefect> approximation_report(const Natural& d, std::size_t count) {
    if (d < 2 || is_perfect_square(d))
        throw std::domain_error("approximation_report: d must be a non-square >= 2");
    ContinuedFraction cf = cf_surd(Surd(0, 1, d));
    std::vector<ConvergentDefect> out;
    out.reserve(count);
    ConvergentAccum acc;
    for (std::size_t i = 0; i < count; ++i) {
        acc.push(cf.term(i));
        out.push_back(ConvergentDefect{Rational(acc.p_prev, acc.q_prev),
                                       acc.p_prev * acc.p_prev - d * acc.q_prev * acc.q_prev});
    }
    return out;
}

}  // namespace surdforge
