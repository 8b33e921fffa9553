#include "surdforge/certificate_json.hpp"
#include "surdforge/contfrac.hpp"
#include "surdforge/integer.hpp"
#include "surdforge/pell.hpp"
#include "surdforge/rational.hpp"
#include "surdforge/surd.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace surdforge;

struct CommandOutput {
    json parameters = json::object();
    json result;
    std::vector<std::string> lines;  // text-mode stdout
    bool raw_json = false;           // print result alone (certificates)
    int exit_code = 0;
};

json pairs_to_json(const std::vector<Pair>& pairs) {
    json arr = json::array();
    for (const Pair& p : pairs)
        arr.push_back(json{{"a", p.a.str()}, {"b", p.b.str()}});
    return arr;
}

void append_pair_lines(std::vector<std::string>& lines, const std::vector<Pair>& pairs) {
    for (const Pair& p : pairs)
        lines.push_back(to_string(p));
}

json cf_to_json(const ContinuedFraction& cf) {
    json pre = json::array();
    for (const Integer& t : cf.preperiod())
        pre.push_back(t.str());
    json per = json::array();
    for (const Integer& t : cf.period())
        per.push_back(t.str());
    return json{{"preperiod", std::move(pre)}, {"period", std::move(per)},
                {"rendered", cf.str()}};
}

Natural parse_sqrt_argument(const std::string& text) {
    Natural d = parse_natural(text);
    if (is_perfect_square(d))
        throw std::domain_error("d must not be a perfect square (sqrt(" + d.str() +
                                ") is an integer; use --rational)");
    return d;
}

unsigned threads_from_env() {
    const char* env = std::getenv("SURDFORGE_THREADS");
    if (env == nullptr || *env == '\0')
        return 0;
    std::string text(env);
    for (char c : text)
        if (c < '0' || c > '9')
            throw CLI::ValidationError("SURDFORGE_THREADS must be a non-negative integer");
    return static_cast<unsigned>(std::stoul(text));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surdforge: exact Pell-equation and continued-fraction toolkit\n"
                 "that emits re-checkable irrationality certificates"};
    app.require_subcommand(1);
    bool json_mode = false;
    bool quiet = false;
    app.add_flag("--json", json_mode, "emit one JSON envelope object on stdout");
    app.add_flag("--quiet", quiet, "suppress diagnostics on stderr");

    std::function<CommandOutput()> run;
    std::string command;
    unsigned threads = 0;

    // search --n N --bound B [--naive]
    {
        auto* sub = app.add_subcommand("search", "minimum of |a^2 - n b^2| over the box");
        auto n = std::make_shared<std::string>();
        auto bound = std::make_shared<std::string>("1000");
        auto naive = std::make_shared<bool>(false);
        sub->add_option("--n", *n, "non-square n >= 2")->required();
        sub->add_option("--bound", *bound, "box bound (default 1000)");
        sub->add_flag("--naive", *naive, "use the O(bound^2) oracle scan");
        sub->callback([&, n, bound, naive] {
            command = "search";
            run = [&, n, bound, naive] {
                CommandOutput out;
                out.parameters = {{"n", *n}, {"bound", *bound}, {"naive", *naive},
                                  {"threads", threads}};
                Natural nn = parse_natural(*n);
                Natural nb = parse_natural(*bound);
                SearchResult r = *naive ? empirical_min_search_naive(nn, nb)
                                        : empirical_min_search(nn, nb, threads);
                out.result = {{"n", r.n.str()},
                              {"bound", r.bound.str()},
                              {"minimum", r.minimum.str()},
                              {"witnesses", pairs_to_json(r.witnesses)}};
                out.lines.push_back("minimum: " + r.minimum.str());
                append_pair_lines(out.lines, r.witnesses);
                return out;
            };
        });
    }

    // solutions --n N (--bound B | --generate K)
    {
        auto* sub = app.add_subcommand("solutions", "unit solutions of |a^2 - n b^2| = 1");
        auto n = std::make_shared<std::string>();
        auto bound = std::make_shared<std::string>("1000");
        auto count = std::make_shared<std::uint64_t>(0);
        sub->add_option("--n", *n, "non-square n >= 2")->required();
        auto* mode = sub->add_option_group("mode");
        mode->add_option("--bound", *bound, "list all solutions in the box (default 1000)");
        mode->add_option("--generate", *count, "generate the first K solutions by recurrence");
        mode->require_option(0, 1);
        auto generate_given = std::make_shared<bool>(false);
        sub->callback([&, sub, n, bound, count, generate_given] {
            *generate_given = sub->count("--generate") > 0;
            command = "solutions";
            run = [&, n, bound, count, generate_given] {
                CommandOutput out;
                Natural nn = parse_natural(*n);
                std::vector<Pair> pairs;
                if (*generate_given) {
                    out.parameters = {{"n", *n}, {"generate", *count}, {"threads", threads}};
                    pairs = generate_unit_solutions(nn, *count);
                } else {
                    out.parameters = {{"n", *n}, {"bound", *bound}, {"threads", threads}};
                    pairs = unit_solutions_in_box(nn, parse_natural(*bound), threads);
                }
                out.result = {{"n", nn.str()}, {"pairs", pairs_to_json(pairs)}};
                append_pair_lines(out.lines, pairs);
                return out;
            };
        });
    }

    // descend --a A --b B
    {
        auto* sub = app.add_subcommand("descend", "descent chain of an n=2 unit solution");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        sub->add_option("--a", *a)->required();
        sub->add_option("--b", *b)->required();
        sub->callback([&, a, b] {
            command = "descend";
            run = [&, a, b] {
                CommandOutput out;
                out.parameters = {{"a", *a}, {"b", *b}};
                Pair start(parse_natural(*a), parse_natural(*b));
                std::vector<Pair> chain = descent_chain(start);
                out.result = {{"chain", pairs_to_json(chain)}};
                if (chain.size() == 1)
                    out.lines.push_back("(1,1) is terminal");
                else
                    append_pair_lines(out.lines, chain);
                return out;
            };
        });
    }

    // cf (--rational p/q | --sqrt d)
    {
        auto* sub = app.add_subcommand("cf", "simple continued fraction expansion");
        auto rat = std::make_shared<std::string>();
        auto sqrt_d = std::make_shared<std::string>();
        auto* input = sub->add_option_group("input");
        input->add_option("--rational", *rat, "rational value as p/q");
        input->add_option("--sqrt", *sqrt_d, "expand sqrt(d) for non-square d");
        input->require_option(1);
        sub->callback([&, sub, rat, sqrt_d] {
            bool use_rat = sub->count("--rational") > 0;
            command = "cf";
            run = [&, rat, sqrt_d, use_rat] {
                CommandOutput out;
                ContinuedFraction cf = use_rat
                    ? cf_rational(parse_rational(*rat))
                    : cf_surd(Surd(0, 1, parse_sqrt_argument(*sqrt_d)));
                out.parameters = use_rat ? json{{"rational", *rat}} : json{{"sqrt", *sqrt_d}};
                out.result = cf_to_json(cf);
                out.lines.push_back(cf.str());
                return out;
            };
        });
    }

    // convergents (--rational p/q | --sqrt d) --count K
    {
        auto* sub = app.add_subcommand("convergents", "convergents of an expansion");
        auto rat = std::make_shared<std::string>();
        auto sqrt_d = std::make_shared<std::string>();
        auto count = std::make_shared<std::uint64_t>(0);
        auto* input = sub->add_option_group("input");
        input->add_option("--rational", *rat, "rational value as p/q");
        input->add_option("--sqrt", *sqrt_d, "non-square d");
        input->require_option(1);
        sub->add_option("--count", *count, "number of convergents")
            ->required()
            ->check(CLI::PositiveNumber);
        sub->callback([&, sub, rat, sqrt_d, count] {
            bool use_rat = sub->count("--rational") > 0;
            command = "convergents";
            run = [&, rat, sqrt_d, count, use_rat] {
                CommandOutput out;
                ContinuedFraction cf = use_rat
                    ? cf_rational(parse_rational(*rat))
                    : cf_surd(Surd(0, 1, parse_sqrt_argument(*sqrt_d)));
                out.parameters = use_rat ? json{{"rational", *rat}} : json{{"sqrt", *sqrt_d}};
                out.parameters["count"] = *count;
                std::vector<Rational> list =
                    convergents(cf, static_cast<std::size_t>(*count - 1));
                json arr = json::array();
                for (const Rational& r : list) {
                    arr.push_back(r.str());
                    out.lines.push_back(r.str());
                }
                out.result = {{"convergents", std::move(arr)}};
                return out;
            };
        });
    }

    // approx --sqrt d --count K
    {
        auto* sub = app.add_subcommand("approx", "convergents of sqrt(d) with defects");
        auto sqrt_d = std::make_shared<std::string>();
        auto count = std::make_shared<std::uint64_t>(0);
        sub->add_option("--sqrt", *sqrt_d, "non-square d")->required();
        sub->add_option("--count", *count, "number of convergents")
            ->required()
            ->check(CLI::PositiveNumber);
        sub->callback([&, sqrt_d, count] {
            command = "approx";
            run = [&, sqrt_d, count] {
                CommandOutput out;
                out.parameters = {{"sqrt", *sqrt_d}, {"count", *count}};
                auto report = approximation_report(parse_sqrt_argument(*sqrt_d),
                                                   static_cast<std::size_t>(*count));
                json arr = json::array();
                for (const ConvergentDefect& cd : report) {
                    arr.push_back(json{{"convergent", cd.convergent.str()},
                                       {"defect", cd.defect.str()}});
                    out.lines.push_back(cd.convergent.str() + " " + cd.defect.str());
                }
                out.result = {{"report", std::move(arr)}};
                return out;
            };
        });
    }

    // certify (--sqrt d | --no-square-double N)
    {
        auto* sub = app.add_subcommand("certify", "emit a re-checkable proof certificate");
        auto sqrt_d = std::make_shared<std::string>();
        auto nsd = std::make_shared<std::string>();
        auto* kind = sub->add_option_group("kind");
        kind->add_option("--sqrt", *sqrt_d, "periodicity certificate for sqrt(d)");
        kind->add_option("--no-square-double", *nsd,
                         "descent certificate: a^2 != 2 b^2 for 1 <= a,b <= N");
        kind->require_option(1);
        sub->callback([&, sub, sqrt_d, nsd] {
            bool use_sqrt = sub->count("--sqrt") > 0;
            command = "certify";
            run = [&, sqrt_d, nsd, use_sqrt] {
                CommandOutput out;
                out.raw_json = true;
                if (use_sqrt)
                    out.result = to_json(irrationality_certificate(parse_natural(*sqrt_d)));
                else
                    out.result = to_json(descent_no_solution_certificate(parse_natural(*nsd)));
                return out;
            };
        });
    }

    // verify  (certificate JSON on stdin)
    {
        auto* sub = app.add_subcommand("verify", "re-check a certificate read from stdin");
        sub->callback([&] {
            command = "verify";
            run = [&] {
                CommandOutput out;
                std::string text(std::istreambuf_iterator<char>(std::cin), {});
                VerifyOutcome outcome = verify_certificate_text(text);
                out.result = {{"verified", outcome.verified}};
                if (!outcome.verified)
                    out.result["reason"] = outcome.reason;
                out.lines.push_back(outcome.verified ? "verified: true" : "verified: false");
                out.exit_code = outcome.verified ? 0 : 1;
                if (!outcome.verified && !quiet)
                    std::cerr << "verification failed: " << outcome.reason << "\n";
                return out;
            };
        });
    }

    try {
        app.parse(argc, argv);
        threads = threads_from_env();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run '" << (argc > 0 ? argv[0] : "surdforge")
                  << " --help' for usage\n";
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CommandOutput out;
    try {
        out = run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

    if (out.raw_json) {
        std::cout << out.result.dump(2) << "\n";
    } else if (json_mode) {
        json envelope{{"command", command},
                      {"parameters", out.parameters},
                      {"result", out.result},
                      {"elapsed_ms", elapsed}};
        std::cout << envelope.dump(2) << "\n";
    } else {
        for (const std::string& line : out.lines)
            std::cout << line << "\n";
    }
    if (!quiet && !json_mode)
        std::cerr << command << ": " << elapsed << " ms\n";
    return out.exit_code;
}
