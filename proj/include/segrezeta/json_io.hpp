#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "segrezeta/chowring.hpp"
#include "segrezeta/errors.hpp"
#include "segrezeta/zeta.hpp"

namespace segrezeta {

using json = nlohmann::json;

inline std::string exponent_key(const std::vector<int>& e) {
    std::string k = "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) k += ",";
        k += std::to_string(e[i]);
    }
    return k + ")";
}

inline std::vector<int> parse_exponent_key(const std::string& k) {
    if (k.size() < 2 || k.front() != '(' || k.back() != ')')
        throw ParseError("bad exponent key '" + k + "'");
    std::vector<int> e;
    std::string body = k.substr(1, k.size() - 2);
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        std::string piece =
            comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
        e.push_back(std::stoi(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return e;
}

inline json to_json(const ChowClass& c) {
    json j;
    j["ambient"] = c.ambient.factor_dims;
    json coeffs = json::object();
    for (const auto& [e, v] : c.coeffs) coeffs[exponent_key(e)] = v;
    j["coeffs"] = coeffs;
    return j;
}

inline ChowClass chow_from_json(const json& j) {
    std::vector<int> dims = j.at("ambient").get<std::vector<int>>();
    AmbientSpec a = dims.size() == 1 ? AmbientSpec::proj(dims[0])
                                     : AmbientSpec(dims, [&] {
                                           std::vector<std::string> v;
                                           if (dims.size() == 2) return std::vector<std::string>{"s", "t"};
                                           for (size_t i = 0; i < dims.size(); ++i)
                                               v.push_back("t" + std::to_string(i + 1));
                                           return v;
                                       }());
    ChowClass c(a);
    for (const auto& [k, v] : j.at("coeffs").items())
        c.add_term(parse_exponent_key(k), v.get<long long>());
    return c;
}

inline json to_json(const ZetaFunction& z) {
    json j;
    j["P"] = z.numerator.str(true);
    j["Q"] = z.denominator.str(true);
    j["degrees"] = z.bundle.degrees;
    return j;
}

inline json to_json(const VerificationReport& r, const std::string& instance) {
    json j;
    j["instance"] = instance;
    j["target"] = r.target_dims;
    j["predicted"] = to_json(r.predicted);
    j["computed"] = to_json(r.computed);
    j["verdict"] = r.match ? "match" : "mismatch";
    j["seeds"] = r.seeds;
    j["prime"] = r.prime;
    return j;
}

inline json to_json(const PropertyReport& r) {
    json arr = json::array();
    for (const auto& c : r.checks) {
        json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        j["skipped"] = c.skipped;
        j["detail"] = c.detail;
        arr.push_back(j);
    }
    return json{{"checks", arr}, {"all_pass", r.all_pass()}};
}

// ---------------------------------------------------------------------------
// Problem files: {"factors": [n,m], "variables": [[...],[...]],
//                 "generators": ["..."], "degrees": [[a,b], ...]}
// ---------------------------------------------------------------------------

inline ZetaProblem problem_from_json(const json& j) {
    std::vector<int> dims = j.at("factors").get<std::vector<int>>();
    auto vars = j.at("variables").get<std::vector<std::vector<std::string>>>();
    if (vars.size() != dims.size())
        throw ParseError("problem file: factors/variables length mismatch");
    for (size_t f = 0; f < dims.size(); ++f)
        if (static_cast<int>(vars[f].size()) != dims[f] + 1)
            throw ParseError("problem file: factor " + std::to_string(f) +
                             " needs " + std::to_string(dims[f] + 1) +
                             " variables");
    std::vector<std::string> class_vars;
    if (dims.size() == 1)
        class_vars = {"H"};
    else if (dims.size() == 2)
        class_vars = {"s", "t"};
    else
        throw ParseError("problem file: only 1 or 2 factors supported");
    VarBlocksPtr blocks = make_blocks(vars);
    ProjectiveAmbient amb(AmbientSpec(dims, class_vars), blocks);

    auto gens = j.at("generators").get<std::vector<std::string>>();
    auto degs = j.at("degrees").get<std::vector<std::vector<int>>>();
    if (gens.size() != degs.size() || gens.empty())
        throw ParseError("problem file: generators/degrees length mismatch");
    ZetaProblem p;
    p.ambient = amb;
    p.bundle = BundleSpec(degs);
    for (size_t i = 0; i < gens.size(); ++i) {
        MultiPoly g = parse_poly(gens[i], blocks, 0);
        if (degs[i].size() != dims.size())
            throw ParseError("problem file: degree vector length mismatch");
        p.generators.push_back({std::move(g), Multidegree(degs[i])});
    }
    p.validate();
    return p;
}

inline json to_json(const ZetaProblem& p) {
    json j;
    j["factors"] = p.ambient.spec.factor_dims;
    j["variables"] = p.ambient.blocks->blocks;
    json gens = json::array(), degs = json::array();
    for (const auto& [g, d] : p.generators) {
        gens.push_back(g.str());
        degs.push_back(d.degrees);
    }
    j["generators"] = gens;
    j["degrees"] = degs;
    return j;
}

} // namespace segrezeta
