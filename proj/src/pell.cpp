#include "surdforge/pell.hpp"

#include "surdforge/contfrac.hpp"
#include "surdforge/surd.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>
#include <utility>

namespace surdforge {

namespace {

void require_search_params(const Natural& n, const Natural& bound) {
    require_natural(n, "n");
    require_natural(bound, "bound");
    if (is_perfect_square(n))
        throw std::domain_error("n must not be a perfect square");
    if (bound < 1)
        throw std::domain_error("bound must be >= 1");
}

using u128 = unsigned __int128;

Natural to_natural(const u128& v) {
    Natural hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) | Natural(static_cast<std::uint64_t>(v));
}

Natural to_natural(const Natural& v) { return v; }

u128 word_from_natural(const Natural& v, u128) {
    Natural lo = v & Natural(UINT64_MAX);
    Natural hi = v >> 64;
    return (static_cast<u128>(hi.convert_to<std::uint64_t>()) << 64) |
           static_cast<u128>(lo.convert_to<std::uint64_t>());
}

Natural word_from_natural(const Natural& v, const Natural&) { return v; }

// Walks b over [b_begin, b_end) carrying t = n b^2 and s = isqrt(t)
// incrementally: s grows by isqrt(n) or isqrt(n) + 1 per step, so the inner
// while runs at most once.
template <class W, class Visitor>
void scan_strip(const W& n, const W& b_begin, const W& b_end, Visitor&& visit) {
    if (b_begin >= b_end)
        return;
    W t = n * b_begin * b_begin;
    W s = word_from_natural(isqrt(to_natural(t)), W{});
    const W r = word_from_natural(isqrt(to_natural(n)), W{});
    for (W b = b_begin; b < b_end; b += 1) {
        if (b != b_begin) {
            t += n * (2 * b - 1);
            s += r;
            while ((s + 1) * (s + 1) <= t)
                s += 1;
        }
        visit(b, t, s);
    }
}

struct MinStripResult {
    bool has = false;
    Natural minimum;
    std::vector<Pair> witnesses;
};

// For fixed b the defect magnitude decreases in a up to s = isqrt(n b^2) and
// increases from s + 1 on, so within the box only min(s, bound) and s + 1
// (when it fits) can attain the minimum; ties between the two are kept in a
// ascending order.
template <class W>
MinStripResult min_search_strip(const W& n, const W& b_begin, const W& b_end,
                                const W& bound) {
    MinStripResult out;
    W best{};
    auto consider = [&](const W& a, const W& v, const W& b) {
        if (!out.has || v < best) {
            out.has = true;
            best = v;
            out.witnesses.clear();
            out.witnesses.emplace_back(to_natural(a), to_natural(b));
        } else if (v == best) {
            out.witnesses.emplace_back(to_natural(a), to_natural(b));
        }
    };
    scan_strip(n, b_begin, b_end, [&](const W& b, const W& t, const W& s) {
        if (s >= bound) {
            consider(bound, t - bound * bound, b);
        } else {
            consider(s, t - s * s, b);
            consider(s + 1, (s + 1) * (s + 1) - t, b);
        }
    });
    if (out.has)
        out.minimum = to_natural(best);
    return out;
}

// Unit solutions have a^2 = n b^2 - 1 (a = s) or a^2 = n b^2 + 1 (a = s + 1);
// at most one of the two holds for a given b.
template <class W>
std::vector<Pair> unit_solutions_strip(const W& n, const W& b_begin, const W& b_end,
                                       const W& bound) {
    std::vector<Pair> out;
    scan_strip(n, b_begin, b_end, [&](const W& b, const W& t, const W& s) {
        if (s <= bound && s * s == t - 1)
            out.emplace_back(to_natural(s), to_natural(b));
        else if (s + 1 <= bound && (s + 1) * (s + 1) == t + 1)
            out.emplace_back(to_natural(s + 1), to_natural(b));
    });
    return out;
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0)
        return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Contiguous b strips, one per worker. Results are indexed by strip so the
// merge order never depends on scheduling.
std::vector<std::pair<Natural, Natural>> partition_b_range(const Natural& bound,
                                                           unsigned chunks) {
    Natural len = bound;  // b runs over [1, bound + 1)
    if (Natural(chunks) > len)
        chunks = len.convert_to<unsigned>();
    std::vector<std::pair<Natural, Natural>> strips;
    strips.reserve(chunks);
    Natural begin = 1;
    for (unsigned i = 0; i < chunks; ++i) {
        Natural end = 1 + (len * (i + 1)) / chunks;
        strips.emplace_back(begin, end);
        begin = end;
    }
    return strips;
}

bool fits_u128(const Natural& n, const Natural& bound) {
    if (bound >= (Natural(1) << 32))
        return false;
    return n * (bound + 1) * (bound + 1) < (Natural(1) << 126);
}

template <class Strip>
auto run_strips(const std::vector<std::pair<Natural, Natural>>& strips, Strip&& strip)
    -> std::vector<decltype(strip(Natural(), Natural()))> {
    using Result = decltype(strip(Natural(), Natural()));
    std::vector<Result> results(strips.size());
    if (strips.size() == 1) {
        results[0] = strip(strips[0].first, strips[0].second);
        return results;
    }
    std::vector<std::thread> workers;
    workers.reserve(strips.size());
    for (std::size_t i = 0; i < strips.size(); ++i)
        workers.emplace_back([&, i] { results[i] = strip(strips[i].first, strips[i].second); });
    for (std::thread& w : workers)
        w.join();
    return results;
}

}  // namespace

SearchResult empirical_min_search(const Natural& n, const Natural& bound, unsigned threads) {
    require_search_params(n, bound);
    auto strips = partition_b_range(bound, resolve_threads(threads));

    std::vector<MinStripResult> partials;
    if (fits_u128(n, bound)) {
        u128 wn = word_from_natural(n, u128{});
        u128 wbound = word_from_natural(bound, u128{});
        partials = run_strips(strips, [&](const Natural& b0, const Natural& b1) {
            return min_search_strip<u128>(wn, word_from_natural(b0, u128{}),
                                          word_from_natural(b1, u128{}), wbound);
        });
    } else {
        partials = run_strips(strips, [&](const Natural& b0, const Natural& b1) {
            return min_search_strip<Natural>(n, b0, b1, bound);
        });
    }

    SearchResult result{n, bound, 0, {}};
    bool has = false;
    for (const MinStripResult& part : partials) {
        if (!part.has)
            continue;
        if (!has || part.minimum < result.minimum) {
            has = true;
            result.minimum = part.minimum;
        }
    }
    for (const MinStripResult& part : partials)
        if (part.has && part.minimum == result.minimum)
            result.witnesses.insert(result.witnesses.end(), part.witnesses.begin(),
                                    part.witnesses.end());
    std::sort(result.witnesses.begin(), result.witnesses.end());
    result.witnesses.erase(std::unique(result.witnesses.begin(), result.witnesses.end()),
                           result.witnesses.end());
    return result;
}

SearchResult empirical_min_search_naive(const Natural& n, const Natural& bound) {
    require_search_params(n, bound);
    SearchResult result{n, bound, 0, {}};
    bool has = false;
    for (Natural b = 1; b <= bound; ++b) {
        Natural nb2 = n * b * b;
        for (Natural a = 1; a <= bound; ++a) {
            Integer v = a * a - nb2;
            if (v < 0)
                v = -v;
            if (!has || v < result.minimum) {
                has = true;
                result.minimum = v;
                result.witnesses.clear();
                result.witnesses.emplace_back(a, b);
            } else if (v == result.minimum) {
                result.witnesses.emplace_back(a, b);
            }
        }
    }
    std::sort(result.witnesses.begin(), result.witnesses.end());
    return result;
}

std::vector<Pair> unit_solutions_in_box(const Natural& n, const Natural& bound,
                                        unsigned threads) {
    require_search_params(n, bound);
    auto strips = partition_b_range(bound, resolve_threads(threads));

    std::vector<std::vector<Pair>> partials;
    if (fits_u128(n, bound)) {
        u128 wn = word_from_natural(n, u128{});
        u128 wbound = word_from_natural(bound, u128{});
        partials = run_strips(strips, [&](const Natural& b0, const Natural& b1) {
            return unit_solutions_strip<u128>(wn, word_from_natural(b0, u128{}),
                                              word_from_natural(b1, u128{}), wbound);
        });
    } else {
        partials = run_strips(strips, [&](const Natural& b0, const Natural& b1) {
            return unit_solutions_strip<Natural>(n, b0, b1, bound);
        });
    }

    std::vector<Pair> out;
    for (std::vector<Pair>& part : partials)
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Pair step_up(const Pair& p) {
    return Pair(p.a + 2 * p.b, p.a + p.b);
}

Pair step_down(const Pair& p) {
    if (!(p.b < p.a && p.a < 2 * p.b))
        throw std::domain_error("step_down: pair is not descendable (requires b < a < 2b)");
    return Pair(2 * p.b - p.a, p.a - p.b);
}

bool sign_flip_identity_check(const Integer& a, const Integer& b) {
    Integer lhs = (a + 2 * b) * (a + 2 * b) - 2 * (a + b) * (a + b);
    Integer rhs = -(a * a - 2 * b * b);
    return lhs == rhs;
}

Pair compose_solutions(const Natural& n, const Pair& p, const Pair& q) {
    require_natural(n, "n");
    if (is_perfect_square(n))
        throw std::domain_error("n must not be a perfect square");
    return Pair(p.a * q.a + n * p.b * q.b, p.a * q.b + p.b * q.a);
}

Pair fundamental_unit_solution(const Natural& n) {
    require_natural(n, "n");
    if (is_perfect_square(n))
        throw std::domain_error("n must not be a perfect square");
    ContinuedFraction cf = cf_surd(Surd(0, 1, n));
    // The least unit solution appears among the convergents of sqrt(n)
    // within the first period.
    std::size_t limit = cf.preperiod().size() + 2 * cf.period().size() + 2;
    Integer p = 1, p2 = 0, q = 0, q2 = 1;
    for (std::size_t i = 0; i < limit; ++i) {
        Integer t = cf.term(i);
        Integer pn = t * p + p2;
        Integer qn = t * q + q2;
        p2 = std::move(p);
        p = std::move(pn);
        q2 = std::move(q);
        q = std::move(qn);
        Integer def = p * p - n * q * q;
        if (def == 1 || def == -1)
            return Pair(p, q);
    }
    throw std::logic_error("fundamental_unit_solution: no unit convergent found");
}

std::vector<Pair> generate_unit_solutions(const Natural& n, std::size_t count) {
    require_natural(n, "n");
    if (is_perfect_square(n))
        throw std::domain_error("n must not be a perfect square");
    std::vector<Pair> out;
    if (count == 0)
        return out;
    out.reserve(count);
    if (n == 2) {
        Pair p(1, 1);
        out.push_back(p);
        while (out.size() < count) {
            p = step_up(p);
            out.push_back(p);
        }
        return out;
    }
    Pair fundamental = fundamental_unit_solution(n);
    Pair p = fundamental;
    out.push_back(p);
    while (out.size() < count) {
        p = compose_solutions(n, p, fundamental);
        out.push_back(p);
    }
    return out;
}

std::vector<Pair> descent_chain(const Pair& start) {
    Integer def = defect(2, start);
    if (def != 1 && def != -1)
        throw std::domain_error("descent_chain: not a unit solution of |a^2 - 2b^2| = 1");
    std::vector<Pair> chain{start};
    const Pair one(1, 1);
    while (chain.back() != one)
        chain.push_back(step_down(chain.back()));
    return chain;
}

namespace {

std::vector<IdentityCheck> identity_sample(const std::vector<Pair>& solutions) {
    std::vector<IdentityCheck> checks;
    checks.reserve(32 + solutions.size());
    for (int k = 1; k <= 32; ++k)
        checks.push_back(IdentityCheck{k, k + 1, sign_flip_identity_check(k, k + 1)});
    for (const Pair& s : solutions)
        checks.push_back(IdentityCheck{s.a, s.b, sign_flip_identity_check(s.a, s.b)});
    return checks;
}

}  // namespace

DescentCertificate descent_no_solution_certificate(const Natural& bound) {
    require_natural(bound, "bound");
    if (bound < 1)
        throw std::domain_error("bound must be >= 1");

    DescentCertificate cert;
    cert.n = 2;
    cert.bound = bound;
    std::vector<Pair> solutions = unit_solutions_in_box(2, bound);
    cert.identity_checks = identity_sample(solutions);
    cert.base_cases = {BaseCase{1, 1, false}, BaseCase{2, 1, false}};
    cert.chains.reserve(solutions.size());
    for (const Pair& s : solutions)
        cert.chains.push_back(descent_chain(s));
    cert.verified = true;
    if (!verify(cert))
        throw std::logic_error("descent_no_solution_certificate: fresh certificate failed to verify");
    return cert;
}

bool verify(const DescentCertificate& cert) {
    try {
        if (!cert.verified)
            return false;
        if (cert.n != 2)
            return false;
        if (cert.bound < 1)
            return false;

        // Base cases: exactly (1,1) and (2,1), re-checked to not solve a^2 = 2b^2.
        if (cert.base_cases.size() != 2)
            return false;
        const Natural expected_base[2][2] = {{1, 1}, {2, 1}};
        for (int i = 0; i < 2; ++i) {
            const BaseCase& bc = cert.base_cases[i];
            if (bc.a != expected_base[i][0] || bc.b != expected_base[i][1])
                return false;
            bool is_solution = bc.a * bc.a == 2 * bc.b * bc.b;
            if (is_solution || bc.is_solution != is_solution)
                return false;
        }

        // The identity sample is deterministic: (k, k+1) for k = 1..32, then
        // every unit solution in the box. Each instance is re-evaluated.
        std::vector<Pair> solutions = unit_solutions_in_box(2, cert.bound);
        std::vector<IdentityCheck> expected_checks = identity_sample(solutions);
        if (cert.identity_checks.size() != expected_checks.size())
            return false;
        for (std::size_t i = 0; i < expected_checks.size(); ++i) {
            const IdentityCheck& got = cert.identity_checks[i];
            if (got.a != expected_checks[i].a || got.b != expected_checks[i].b)
                return false;
            if (!got.holds || !sign_flip_identity_check(got.a, got.b))
                return false;
        }

        // One chain per unit solution, in (b, a) order; every link recomputed.
        if (cert.chains.size() != solutions.size())
            return false;
        const Pair one(1, 1);
        for (std::size_t i = 0; i < solutions.size(); ++i) {
            const std::vector<Pair>& chain = cert.chains[i];
            if (chain.empty() || chain.front() != solutions[i] || chain.back() != one)
                return false;
            Integer def = defect(2, chain.front());
            if (def != 1 && def != -1)
                return false;
            for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
                if (chain[j + 1] != step_down(chain[j]))
                    return false;
                if (chain[j + 1].a + chain[j + 1].b >= chain[j].a + chain[j].b)
                    return false;
                if (defect(2, chain[j + 1]) != -defect(2, chain[j]))
                    return false;
            }
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace surdforge
