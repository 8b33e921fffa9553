#include "surdforge/contfrac.hpp"

#include "surdforge/pell.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace surdforge;

namespace {

std::vector<Integer> terms(std::initializer_list<long long> ts) {
    return std::vector<Integer>(ts.begin(), ts.end());
}

Rational random_rational(std::mt19937_64& rng, int max_limbs) {
    auto limbs = [&](int count) {
        Integer v = 0;
        for (int i = 0; i < count; ++i)
            v = (v << 64) | Integer(rng());
        return v;
    };
    Integer num = limbs(1 + int(rng() % max_limbs));
    if (rng() & 1)
        num = -num;
    Natural den = limbs(1 + int(rng() % max_limbs));
    return Rational(num, den + 1);
}

}  // namespace

TEST_CASE("ContinuedFraction validates its term lists") {
    CHECK_NOTHROW(ContinuedFraction(terms({2, 1, 3})));
    CHECK_NOTHROW(ContinuedFraction(terms({-3, 4})));
    CHECK_NOTHROW(ContinuedFraction(terms({0, 2})));
    CHECK_NOTHROW(ContinuedFraction({}, terms({2})));
    CHECK_NOTHROW(ContinuedFraction(terms({1}), terms({1, 2})));
    CHECK_THROWS_AS(ContinuedFraction({}), std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction(terms({2, 0})), std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction(terms({2, -1, 3})), std::invalid_argument);
    // finite canonical form: last term >= 2 when there are two or more terms
    CHECK_THROWS_AS(ContinuedFraction(terms({2, 1})), std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction(terms({1}), terms({0})), std::invalid_argument);
}

TEST_CASE("term unrolls the period lazily") {
    ContinuedFraction cf(terms({1}), terms({2, 3}));
    CHECK(cf.term(0) == 1);
    CHECK(cf.term(1) == 2);
    CHECK(cf.term(2) == 3);
    CHECK(cf.term(3) == 2);
    CHECK(cf.term(100) == 3);

    ContinuedFraction finite(terms({2, 1, 3}));
    CHECK(finite.term(2) == 3);
    CHECK_THROWS_AS(finite.term(3), std::out_of_range);
}

TEST_CASE("rendering") {
    CHECK(ContinuedFraction(terms({2, 1, 3})).str() == "[2; 1, 3]");
    CHECK(ContinuedFraction(terms({3})).str() == "[3]");
    CHECK(ContinuedFraction(terms({1}), terms({2})).str() == "[1; (2)]");
    CHECK(ContinuedFraction({}, terms({1, 2})).str() == "[(1, 2)]");
    CHECK(ContinuedFraction(terms({2, 2}), terms({1, 4})).str() == "[2; 2, (1, 4)]");
}

TEST_CASE("cf_rational worked examples") {
    // 11/4 = 2 + 3/4, 4/3 = 1 + 1/3, 3/1 = 3
    CHECK(cf_rational(Rational(11, 4)) == ContinuedFraction(terms({2, 1, 3})));
    CHECK(cf_rational(Rational(3)) == ContinuedFraction(terms({3})));
    CHECK(cf_rational(Rational(1, 2)) == ContinuedFraction(terms({0, 2})));
    // floor semantics for negatives: -11/4 = -3 + 1/4
    CHECK(cf_rational(Rational(-11, 4)) == ContinuedFraction(terms({-3, 4})));
    CHECK(cf_rational(Rational(0)) == ContinuedFraction(terms({0})));
}

TEST_CASE("reconstruct_rational inverts cf_rational") {
    CHECK(reconstruct_rational(ContinuedFraction(terms({2, 1, 3}))) == Rational(11, 4));
    CHECK(reconstruct_rational(ContinuedFraction(terms({3}))) == Rational(3));
    CHECK(reconstruct_rational(ContinuedFraction(terms({0, 2}))) == Rational(1, 2));
    CHECK_THROWS_AS(reconstruct_rational(ContinuedFraction(terms({1}), terms({2}))),
                    std::domain_error);
}

TEST_CASE("round trip, canonicity, and the Euclidean length bound") {
    std::mt19937_64 rng(20141007);
    for (int i = 0; i < 1000; ++i) {
        Rational r = random_rational(rng, 2);
        ContinuedFraction cf = cf_rational(r);
        REQUIRE(cf.is_finite());
        REQUIRE(reconstruct_rational(cf) == r);
        const auto& ts = cf.preperiod();
        if (ts.size() >= 2)
            REQUIRE(ts.back() >= 2);
        // term count <= 2 log2(den) + 2
        std::size_t bits = boost::multiprecision::msb(r.den()) + 1;
        REQUIRE(ts.size() <= 2 * bits + 2);
    }
}

TEST_CASE("cf_surd worked examples") {
    // 1 + sqrt(2): the all-2s loop, purely periodic
    ContinuedFraction cf = cf_surd(Surd(1, 1, 2));
    CHECK(cf.preperiod().empty());
    CHECK(cf.period() == terms({2}));

    // sqrt(2) = 1 + (sqrt(2) - 1), then the loop
    cf = cf_surd(Surd(0, 1, 2));
    CHECK(cf.preperiod() == terms({1}));
    CHECK(cf.period() == terms({2}));

    cf = cf_surd(Surd(0, 1, 3));
    CHECK(cf.preperiod() == terms({1}));
    CHECK(cf.period() == terms({1, 2}));

    // (1 + sqrt(3))/2 is reduced, hence purely periodic
    cf = cf_surd(Surd(1, 2, 3));
    CHECK(cf.preperiod().empty());
    CHECK(cf.period() == terms({1, 2}));

    // sqrt(8) = [2; (1, 4)]
    cf = cf_surd(Surd(0, 1, 8));
    CHECK(cf.preperiod() == terms({2}));
    CHECK(cf.period() == terms({1, 4}));

    // negative value, floor semantics: -sqrt(2) = [-2; 1, 1, (2)]
    cf = cf_surd(Surd(0, -1, 2));
    CHECK(cf.preperiod() == terms({-2, 1, 1}));
    CHECK(cf.period() == terms({2}));
    CHECK(cf.str() == "[-2; 1, 1, (2)]");
}

TEST_CASE("cf_surd trace closes the cycle and never repeats early") {
    for (long long d = 2; d <= 60; ++d) {
        if (is_perfect_square(Natural(d)))
            continue;
        SurdExpansion exp = cf_surd_with_trace(Surd(0, 1, d));
        std::size_t pre = exp.cf.preperiod().size();
        std::size_t len = pre + exp.cf.period().size();
        REQUIRE(exp.cf.period().size() >= 1);
        REQUIRE(exp.state_trace.size() == len + 1);
        REQUIRE(exp.state_trace[len] == exp.state_trace[pre]);
        std::set<std::pair<Integer, Integer>> distinct;
        for (std::size_t i = 0; i < len; ++i)
            REQUIRE(distinct.emplace(exp.state_trace[i].p, exp.state_trace[i].q).second);
    }
}

TEST_CASE("convergents of sqrt(2) are the Pell pairs") {
    std::vector<Rational> cs = convergents(cf_surd(Surd(0, 1, 2)), 7);
    std::vector<Rational> expected{Rational(1, 1),    Rational(3, 2),   Rational(7, 5),
                                   Rational(17, 12),  Rational(41, 29), Rational(99, 70),
                                   Rational(239, 169), Rational(577, 408)};
    CHECK(cs == expected);
}

TEST_CASE("convergents of a finite expansion") {
    ContinuedFraction cf(terms({2, 1, 3}));
    std::vector<Rational> cs = convergents(cf, 2);
    CHECK(cs == std::vector<Rational>{Rational(2), Rational(3), Rational(11, 4)});
    CHECK(convergents(cf, 0) == std::vector<Rational>{Rational(2)});
    CHECK_THROWS_AS(convergents(cf, 3), std::out_of_range);
}

TEST_CASE("consecutive convergents have determinant +-1 and are coprime") {
    ContinuedFraction cf = cf_surd(Surd(0, 1, 7));
    std::vector<Rational> cs = convergents(cf, 20);
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        Integer det = cs[i + 1].num() * cs[i].den() - cs[i].num() * cs[i + 1].den();
        REQUIRE((det == 1 || det == -1));
    }
    for (const Rational& c : cs)
        REQUIRE(gcd(c.num() < 0 ? Natural(-c.num()) : Natural(c.num()), c.den()) == 1);
}

TEST_CASE("cross-proof consistency: convergents match generated solutions") {
    std::vector<Rational> cs = convergents(cf_surd(Surd(0, 1, 2)), 7);
    std::vector<Pair> sols = generate_unit_solutions(2, 8);
    REQUIRE(cs.size() == sols.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        REQUIRE(cs[i].num() == sols[i].a);
        REQUIRE(cs[i].den() == sols[i].b);
    }
}

TEST_CASE("quadratic_vanishes_at") {
    // y = 1 + sqrt(2) satisfies y^2 - 2y - 1 = 0
    CHECK(quadratic_vanishes_at(1, -2, -1, Surd(1, 1, 2)));
    CHECK_FALSE(quadratic_vanishes_at(1, -2, 0, Surd(1, 1, 2)));
    CHECK_FALSE(quadratic_vanishes_at(1, 0, -2, Surd(1, 1, 2)));
}

TEST_CASE("periodic_fixed_point worked examples") {
    // [(2)]: y = 2 + 1/y, y = 1 + sqrt(2)
    Surd y = periodic_fixed_point(terms({2}));
    CHECK(y == Surd(1, 1, 2));

    // [(1)]: the golden ratio (1 + sqrt(5))/2
    CHECK(periodic_fixed_point(terms({1})) == Surd(1, 2, 5));

    // [(1, 2)]: 2y^2 - 2y - 1 = 0, y = (1 + sqrt(3))/2 = 1/(sqrt(3) - 1)
    Surd z = periodic_fixed_point(terms({1, 2}));
    CHECK(z == Surd(1, 2, 3));
    CHECK(z == reciprocal_of_fractional_part(Surd(0, 1, 3)));

    CHECK_THROWS_AS(periodic_fixed_point({}), std::invalid_argument);
    CHECK_THROWS_AS(periodic_fixed_point(terms({1, 0})), std::invalid_argument);
}

TEST_CASE("periodic_fixed_point of [t] satisfies y = t + 1/y for t = 1..20") {
    for (long long t = 1; t <= 20; ++t) {
        Surd y = periodic_fixed_point(terms({t}));
        // y = t + 1/y  <=>  y^2 - t y - 1 = 0
        REQUIRE(quadratic_vanishes_at(1, -t, -1, y));
        // and its expansion is purely periodic with period [t]
        ContinuedFraction cf = cf_surd(y);
        REQUIRE(cf.preperiod().empty());
        REQUIRE(cf.period() == terms({t}));
    }
}

TEST_CASE("fixed point value equals the periodic tail state of sqrt(d)") {
    for (long long d = 2; d <= 40; ++d) {
        if (is_perfect_square(Natural(d)))
            continue;
        SurdExpansion exp = cf_surd_with_trace(Surd(0, 1, d));
        std::size_t pre = exp.cf.preperiod().size();
        Surd tail(exp.state_trace[pre].p, exp.state_trace[pre].q, d);
        REQUIRE(periodic_fixed_point(exp.cf.period()) == tail);
    }
}

TEST_CASE("irrationality_certificate builds and verifies") {
    PeriodicityCertificate cert = irrationality_certificate(2);
    CHECK(cert.preperiod == terms({1}));
    CHECK(cert.period == terms({2}));
    CHECK(cert.verified);
    CHECK(verify(cert));

    PeriodicityCertificate cert3 = irrationality_certificate(3);
    CHECK(cert3.preperiod == terms({1}));
    CHECK(cert3.period == terms({1, 2}));
    CHECK(verify(cert3));

    CHECK_THROWS_AS(irrationality_certificate(4), std::domain_error);
    CHECK_THROWS_AS(irrationality_certificate(1), std::domain_error);
}

TEST_CASE("in-memory certificate tampering is rejected") {
    PeriodicityCertificate cert = irrationality_certificate(13);
    REQUIRE(verify(cert));

    PeriodicityCertificate bad = cert;
    bad.verified = false;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.period[0] += 1;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.preperiod[0] -= 1;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.state_trace[1].p += 1;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.state_trace.pop_back();
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.fixed_point.c1 += 2;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.fixed_point.value.d = 8;
    CHECK_FALSE(verify(bad));

    bad = cert;
    bad.d = 14;
    CHECK_FALSE(verify(bad));
}

TEST_CASE("approximation_report") {
    auto report = approximation_report(2, 4);
    REQUIRE(report.size() == 4);
    CHECK(report[0] == ConvergentDefect{Rational(1, 1), -1});
    CHECK(report[1] == ConvergentDefect{Rational(3, 2), 1});
    CHECK(report[2] == ConvergentDefect{Rational(7, 5), -1});
    CHECK(report[3] == ConvergentDefect{Rational(17, 12), 1});

    CHECK(approximation_report(2, 1) ==
          std::vector<ConvergentDefect>{ConvergentDefect{Rational(1, 1), -1}});

    auto r3 = approximation_report(3, 3);
    CHECK(r3 == std::vector<ConvergentDefect>{ConvergentDefect{Rational(1, 1), -2},
                                              ConvergentDefect{Rational(2, 1), 1},
                                              ConvergentDefect{Rational(5, 3), -2}});

    CHECK_THROWS_AS(approximation_report(9, 3), std::domain_error);
}
