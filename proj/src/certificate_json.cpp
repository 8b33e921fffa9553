#include "surdforge/certificate_json.hpp"

#include <initializer_list>

namespace surdforge {

namespace {

using nlohmann::json;

json pair_to_json(const Pair& p) {
    return json{{"a", p.a.str()}, {"b", p.b.str()}};
}

void expect_keys(const json& j, std::initializer_list<const char*> keys) {
    if (!j.is_object())
        throw std::invalid_argument("certificate: expected a JSON object");
    if (j.size() != keys.size())
        throw std::invalid_argument("certificate: unexpected number of keys");
    for (const char* k : keys)
        if (!j.contains(k))
            throw std::invalid_argument(std::string("certificate: missing key \"") + k + "\"");
}

Integer get_integer(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_string())
        throw std::invalid_argument(std::string("certificate: \"") + key +
                                    "\" must be a decimal string");
    return parse_integer(v.get<std::string>());
}

Integer element_integer(const json& v) {
    if (!v.is_string())
        throw std::invalid_argument("certificate: expected a decimal string element");
    return parse_integer(v.get<std::string>());
}

Natural get_natural(const json& j, const char* key) {
    Integer v = get_integer(j, key);
    require_natural(v, key);
    return v;
}

bool get_bool(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_boolean())
        throw std::invalid_argument(std::string("certificate: \"") + key +
                                    "\" must be a boolean");
    return v.get<bool>();
}

const json& get_array(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_array())
        throw std::invalid_argument(std::string("certificate: \"") + key +
                                    "\" must be an array");
    return v;
}

Pair pair_from_json(const json& j) {
    expect_keys(j, {"a", "b"});
    return Pair(get_natural(j, "a"), get_natural(j, "b"));
}

}  // namespace

json to_json(const DescentCertificate& cert) {
    json checks = json::array();
    for (const IdentityCheck& c : cert.identity_checks)
        checks.push_back(json{{"a", c.a.str()}, {"b", c.b.str()}, {"holds", c.holds}});
    json bases = json::array();
    for (const BaseCase& bc : cert.base_cases)
        bases.push_back(
            json{{"a", bc.a.str()}, {"b", bc.b.str()}, {"is_solution", bc.is_solution}});
    json chains = json::array();
    for (const std::vector<Pair>& chain : cert.chains) {
        json one = json::array();
        for (const Pair& p : chain)
            one.push_back(pair_to_json(p));
        chains.push_back(std::move(one));
    }
    return json{{"kind", "descent"},
                {"n", cert.n.str()},
                {"bound", cert.bound.str()},
                {"identity_checks", std::move(checks)},
                {"base_cases", std::move(bases)},
                {"chains", std::move(chains)},
                {"verified", cert.verified}};
}

json to_json(const PeriodicityCertificate& cert) {
    json pre = json::array();
    for (const Integer& t : cert.preperiod)
        pre.push_back(t.str());
    json per = json::array();
    for (const Integer& t : cert.period)
        per.push_back(t.str());
    json trace = json::array();
    for (const SurdState& s : cert.state_trace)
        trace.push_back(json{{"p", s.p.str()}, {"q", s.q.str()}});
    json fixed = json{{"quadratic",
                       json::array({cert.fixed_point.c2.str(), cert.fixed_point.c1.str(),
                                    cert.fixed_point.c0.str()})},
                      {"value",
                       json{{"p", cert.fixed_point.value.p.str()},
                            {"q", cert.fixed_point.value.q.str()},
                            {"d", cert.fixed_point.value.d.str()}}}};
    return json{{"kind", "periodicity"},
                {"d", cert.d.str()},
                {"preperiod", std::move(pre)},
                {"period", std::move(per)},
                {"state_trace", std::move(trace)},
                {"fixed_point", std::move(fixed)},
                {"verified", cert.verified}};
}

DescentCertificate descent_certificate_from_json(const json& j) {
    expect_keys(j, {"kind", "n", "bound", "identity_checks", "base_cases", "chains",
                    "verified"});
    if (j.at("kind") != "descent")
        throw std::invalid_argument("certificate: kind is not \"descent\"");

    DescentCertificate cert;
    cert.n = get_natural(j, "n");
    cert.bound = get_natural(j, "bound");
    for (const json& c : get_array(j, "identity_checks")) {
        expect_keys(c, {"a", "b", "holds"});
        cert.identity_checks.push_back(
            IdentityCheck{get_integer(c, "a"), get_integer(c, "b"), get_bool(c, "holds")});
    }
    for (const json& bc : get_array(j, "base_cases")) {
        expect_keys(bc, {"a", "b", "is_solution"});
        cert.base_cases.push_back(
            BaseCase{get_natural(bc, "a"), get_natural(bc, "b"), get_bool(bc, "is_solution")});
    }
    for (const json& chain : get_array(j, "chains")) {
        if (!chain.is_array())
            throw std::invalid_argument("certificate: each chain must be an array");
        std::vector<Pair> pairs;
        for (const json& p : chain)
            pairs.push_back(pair_from_json(p));
        cert.chains.push_back(std::move(pairs));
    }
    cert.verified = get_bool(j, "verified");
    return cert;
}

PeriodicityCertificate periodicity_certificate_from_json(const json& j) {
    expect_keys(j, {"kind", "d", "preperiod", "period", "state_trace", "fixed_point",
                    "verified"});
    if (j.at("kind") != "periodicity")
        throw std::invalid_argument("certificate: kind is not \"periodicity\"");

    PeriodicityCertificate cert;
    cert.d = get_natural(j, "d");
    for (const json& t : get_array(j, "preperiod"))
        cert.preperiod.push_back(element_integer(t));
    for (const json& t : get_array(j, "period"))
        cert.period.push_back(element_integer(t));
    for (const json& s : get_array(j, "state_trace")) {
        expect_keys(s, {"p", "q"});
        cert.state_trace.push_back(SurdState{get_integer(s, "p"), get_integer(s, "q")});
    }
    const json& fixed = j.at("fixed_point");
    expect_keys(fixed, {"quadratic", "value"});
    const json& quad = get_array(fixed, "quadratic");
    if (quad.size() != 3)
        throw std::invalid_argument("certificate: quadratic must have three coefficients");
    cert.fixed_point.c2 = element_integer(quad.at(0));
    cert.fixed_point.c1 = element_integer(quad.at(1));
    cert.fixed_point.c0 = element_integer(quad.at(2));
    const json& value = fixed.at("value");
    expect_keys(value, {"p", "q", "d"});
    cert.fixed_point.value =
        SurdTriple{get_integer(value, "p"), get_integer(value, "q"), get_natural(value, "d")};
    cert.verified = get_bool(j, "verified");
    return cert;
}

VerifyOutcome verify_certificate_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        return VerifyOutcome{false, std::string("not valid JSON: ") + e.what()};
    }
    try {
        if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
            return VerifyOutcome{false, "missing or non-string \"kind\""};
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "descent") {
            if (!verify(descent_certificate_from_json(j)))
                return VerifyOutcome{false, "descent certificate checks failed"};
            return VerifyOutcome{true, {}};
        }
        if (kind == "periodicity") {
            if (!verify(periodicity_certificate_from_json(j)))
                return VerifyOutcome{false, "periodicity certificate checks failed"};
            return VerifyOutcome{true, {}};
        }
        return VerifyOutcome{false, "unknown certificate kind \"" + kind + "\""};
    } catch (const std::exception& e) {
        return VerifyOutcome{false, std::string("malformed certificate: ") + e.what()};
    }
}

}  // namespace surdforge
