#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "segrezeta/json_io.hpp"
#include "segrezeta/selftest.hpp"
#include "segrezeta/zeta.hpp"

namespace {

using namespace segrezeta;

// Exit codes: 0 success/match, 1 verification mismatch, 2 input error,
// 3 genericity exhaustion.
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kGenericity = 3;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::uint64_t prime = 2147483647ULL;
    int retries = 5;
    bool json = false;

    SegreOptions segre() const { return {seed, prime, retries, false}; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG master seed");
    cmd->add_option("--prime", o.prime, "working prime for generic computations");
    cmd->add_option("--retries", o.retries, "genericity retry budget");
    cmd->add_flag("--json", o.json, "emit JSON on stdout");
}

ZetaProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return problem_from_json(j);
}

std::vector<int> parse_target(const std::string& spec, int factors) {
    std::vector<int> dims;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string piece = comma == std::string::npos
                                ? spec.substr(pos)
                                : spec.substr(pos, comma - pos);
        try {
            dims.push_back(std::stoi(piece));
        } catch (...) {
            throw ParseError("bad --target '" + spec + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(dims.size()) != factors)
        throw ParseError("--target needs " + std::to_string(factors) +
                         " dimension(s)");
    return dims;
}

int cmd_segre(const std::string& file, const CommonOpts& o) {
    ZetaProblem p = load_problem(file);
    ChowClass c = segre_class(p.generators, p.ambient, o.segre());
    if (o.json) {
        std::cout << to_json(c).dump(2) << "\n";
    } else {
        std::cout << "i_*s(Z,Y) = " << c.str() << "\n";
    }
    return kOk;
}

int cmd_zeta(const std::string& file, const CommonOpts& o) {
    ZetaProblem p = load_problem(file);
    ZetaFunction z = zeta_from_ideal(p, o.segre());
    PropertyReport props = check_properties(z, p, o.segre());
    if (o.json) {
        std::cout << to_json(z).dump(2) << "\n";
    } else {
        std::cout << "P = " << z.numerator.str() << "\n"
                  << "Q = " << z.denominator.str() << "\n";
        for (const auto& c : props.checks)
            std::cout << (c.skipped ? "  [skip] " : c.pass ? "  [pass] "
                                                           : "  [FAIL] ")
                      << c.name
                      << (c.detail.empty() ? "" : " (" + c.detail + ")")
                      << "\n";
    }
    return props.all_pass() ? kOk : kMismatch;
}

int cmd_verify_cone(const std::string& file, const std::string& target,
                    const CommonOpts& o) {
    ZetaProblem p = load_problem(file);
    std::vector<int> dims = parse_target(target, p.ambient.spec.factors());
    VerificationReport rep = verify_cone(p, dims, o.segre());
    if (o.json) {
        std::cout << to_json(rep, file).dump(2) << "\n";
    } else {
        std::cout << "predicted = " << rep.predicted.str() << "\n"
                  << "computed  = " << rep.computed.str() << "\n"
                  << "verdict: " << (rep.match ? "match" : "mismatch") << "\n";
    }
    return rep.match ? kOk : kMismatch;
}

int cmd_properties(const std::string& file, const CommonOpts& o) {
    ZetaProblem p = load_problem(file);
    ZetaFunction z = zeta_from_ideal(p, o.segre());
    PropertyReport props = check_properties(z, p, o.segre());
    if (o.json) {
        std::cout << to_json(props).dump(2) << "\n";
    } else {
        for (const auto& c : props.checks)
            std::cout << (c.skipped ? "[skip] " : c.pass ? "[pass] " : "[FAIL] ")
                      << c.name
                      << (c.detail.empty() ? "" : " (" + c.detail + ")")
                      << "\n";
    }
    return props.all_pass() ? kOk : kMismatch;
}

int cmd_restrict(const std::string& file, int factor, const CommonOpts& o) {
    ZetaProblem p = load_problem(file);
    ZetaFunction before = zeta_from_ideal(p, o.segre());
    std::mt19937_64 rng(derive_seed(o.seed, 0xD1CE));
    ZetaProblem q = restrict_hyperplane(p, factor, rng, o.prime);
    ZetaFunction after = zeta_from_ideal(q, o.segre());
    bool match = before.numerator == after.numerator &&
                 before.denominator == after.denominator;
    if (o.json) {
        json j;
        j["restricted"] = to_json(q);
        j["zeta_before"] = to_json(before);
        j["zeta_after"] = to_json(after);
        j["verdict"] = match ? "match" : "mismatch";
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "restricted generators:\n";
        for (const auto& [g, d] : q.generators)
            std::cout << "  " << g.str() << "  degree " << d.str() << "\n";
        std::cout << "zeta before = " << before.str() << "\n"
                  << "zeta after  = " << after.str() << "\n"
                  << "verdict: " << (match ? "match" : "mismatch") << "\n";
    }
    return match ? kOk : kMismatch;
}

int cmd_selftest(bool quick, const CommonOpts& o) {
    auto results = run_selftest(o.segre(), quick);
    int failed = 0;
    json arr = json::array();
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        if (o.json) {
            arr.push_back(json{{"name", r.name},
                               {"pass", r.pass},
                               {"detail", r.detail}});
        } else {
            std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name
                      << (r.detail.empty() ? "" : " (" + r.detail + ")")
                      << "\n";
        }
    }
    if (o.json) {
        std::cout << json{{"results", arr}, {"failed", failed}}.dump(2) << "\n";
    } else {
        std::cout << results.size() - failed << "/" << results.size()
                  << " passed\n";
    }
    return failed == 0 ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Segre classes and Segre zeta functions for subschemes "
                 "of P^n and P^n x P^m"};
    app.require_subcommand(1);

    std::string file, target;
    int factor = 0;
    bool quick = false;
    CommonOpts opts;

    auto* segre = app.add_subcommand("segre", "pushforward Segre class of an ideal");
    segre->add_option("file", file, "problem file (JSON)")->required();
    add_common(segre, opts);

    auto* zeta = app.add_subcommand("zeta", "Segre zeta function P/Q");
    zeta->add_option("file", file, "problem file (JSON)")->required();
    add_common(zeta, opts);

    auto* cone = app.add_subcommand("verify-cone",
                                    "check the cone evaluation identity");
    cone->add_option("file", file, "problem file (JSON)")->required();
    cone->add_option("--target", target, "target dimensions N or N,M")
        ->required();
    add_common(cone, opts);

    auto* props = app.add_subcommand("properties",
                                     "structural checks on the zeta function");
    props->add_option("file", file, "problem file (JSON)")->required();
    add_common(props, opts);

    auto* restr = app.add_subcommand("restrict",
                                     "generic hyperplane restriction");
    restr->add_option("file", file, "problem file (JSON)")->required();
    restr->add_option("--factor", factor, "factor index to restrict");
    add_common(restr, opts);

    auto* self = app.add_subcommand("selftest", "run the bundled corpus");
    self->add_flag("--quick", quick, "skip the slower randomized instances");
    add_common(self, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (segre->parsed()) return cmd_segre(file, opts);
        if (zeta->parsed()) return cmd_zeta(file, opts);
        if (cone->parsed()) return cmd_verify_cone(file, target, opts);
        if (props->parsed()) return cmd_properties(file, opts);
        if (restr->parsed()) return cmd_restrict(file, factor, opts);
        if (self->parsed()) return cmd_selftest(quick, opts);
    } catch (const GenericityExhaustedError& e) {
        std::cerr << "genericity exhausted: " << e.what() << "\n";
        return kGenericity;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const RankConstraintError& e) {
        std::cerr << "rank constraint: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
