#pragma once

#include <random>
#include <string>
#include <vector>

#include "segrezeta/chowring.hpp"
#include "segrezeta/segre.hpp"
#include "segrezeta/zeta.hpp"

namespace segrezeta {

/// Closed-form Segre class of a regular embedding cut by divisors of the
/// given degrees: prod_j D_j / prod_j (1 + D_j). Independent of the graph
/// pipeline; used as the complete-intersection oracle.
inline ChowClass ci_closed_form(const BundleSpec& bundle,
                                const AmbientSpec& ambient) {
    IntPoly num = IntPoly::constant(ambient.class_vars, 1);
    for (const auto& d : bundle.degrees) {
        IntPoly f(ambient.class_vars);
        for (size_t i = 0; i < d.size(); ++i) {
            std::vector<int> e(ambient.class_vars.size(), 0);
            e[i] = 1;
            f.add_term(e, d[i]);
        }
        num = num * f;
    }
    return expand_rational(num, chern_poly(bundle, ambient.class_vars),
                           ambient);
}

/// Segre class through the projective-degree route (single factor only):
/// graph multidegree -> g_i -> inversion formula. The cross-check side of
/// the dual-algorithm equivalence.
inline ChowClass segre_via_projective_degrees(
    const std::vector<std::pair<MultiPoly, Multidegree>>& gens,
    const ProjectiveAmbient& ambient, const SegreOptions& opts = {}) {
    if (ambient.spec.factors() != 1)
        throw StructuralError("projective degrees need a single factor");
    std::vector<std::pair<MultiPoly, Multidegree>> red;
    for (const auto& [g, d] : gens)
        if (!g.is_zero()) red.push_back({g.reduce_mod(opts.prime), d});
    auto [forms, d] = equigenerate(red, ambient.blocks);
    GraphData G = graph_closure(forms, ambient);
    MultidegreeVector md = multidegree_class(G, ambient, opts);
    int n = ambient.spec.factor_dims[0];
    std::vector<long long> g = projective_degrees(md, n, G.generator_count - 1);
    return segre_from_projective_degrees(g, d.degrees[0], n);
}

struct SelfTestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace selftest_detail {

inline ChowClass cls(const AmbientSpec& a,
                     std::vector<std::pair<std::vector<int>, long long>> terms) {
    ChowClass c(a);
    for (auto& [e, v] : terms) c.add_term(e, v);
    return c;
}

inline MultiPoly random_rational_form(const VarBlocksPtr& blocks,
                                      const Multidegree& d,
                                      std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, 37);
    MultiPoly f(blocks);
    for (const auto& e : monomials_of_multidegree(*blocks, d))
        f.add_term(e, Scalar::rational(dist(rng)));
    return f;
}

struct Instance {
    std::string name;
    ProjectiveAmbient ambient;
    std::vector<std::pair<MultiPoly, Multidegree>> gens;
    BundleSpec bundle;

    ZetaProblem problem() const { return {ambient, gens, bundle}; }
};

inline Instance make(const std::string& name, ProjectiveAmbient amb,
                     const std::vector<std::string>& gens,
                     std::vector<std::vector<int>> degs) {
    Instance inst{name, amb, {}, BundleSpec(degs)};
    for (size_t i = 0; i < gens.size(); ++i)
        inst.gens.push_back(
            {parse_poly(gens[i], amb.blocks), Multidegree(degs[i])});
    return inst;
}

inline Instance random_ci(const std::string& name, ProjectiveAmbient amb,
                          std::vector<std::vector<int>> degs,
                          std::mt19937_64& rng) {
    Instance inst{name, amb, {}, BundleSpec(degs)};
    for (const auto& d : degs)
        inst.gens.push_back({random_rational_form(amb.blocks, Multidegree(d), rng),
                             Multidegree(d)});
    return inst;
}

} // namespace selftest_detail

/// Worked-example goldens plus randomized CI-oracle and dual-algorithm
/// sweeps. quick skips the slower randomized instances.
inline std::vector<SelfTestResult> run_selftest(const SegreOptions& opts,
                                                bool quick = false) {
    using namespace selftest_detail;
    std::vector<SelfTestResult> out;
    auto record = [&](const std::string& name, bool pass,
                      const std::string& detail = "") {
        out.push_back({name, pass, detail});
    };
    auto guard = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            record(name + " [exception]", false, e.what());
        }
    };

    // --- worked-example goldens -------------------------------------------
    guard("golden", [&] {
        auto p2 = ProjectiveAmbient::proj(2);
        auto p3 = ProjectiveAmbient::proj(3);
        auto pp = ProjectiveAmbient::product(2, 2);

        Instance x2xy2 = make("x2xy-p2", p2, {"x0^2", "x0*x1"}, {{2}, {2}});
        Instance x2xy3 = make("x2xy-p3", p3, {"x0^2", "x0*x1"}, {{2}, {2}});
        Instance pt = make("point-p2", p2, {"x0", "x1"}, {{1}, {1}});
        Instance nonci =
            make("nonci-p2p2", pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}});

        record("segre (x^2,xy) P^2 = H",
               segre_class(x2xy2.gens, p2, opts) ==
                   cls(p2.spec, {{{1}, 1}}));
        record("segre (x^2,xy) P^3 = H - 4H^3",
               segre_class(x2xy3.gens, p3, opts) ==
                   cls(p3.spec, {{{1}, 1}, {{3}, -4}}));
        record("segre (x,y) P^2 = H^2",
               segre_class(pt.gens, p2, opts) == cls(p2.spec, {{{2}, 1}}));
        record("segre (x0y0,x0y1) P^2xP^2",
               segre_class(nonci.gens, pp, opts) ==
                   cls(pp.spec, {{{1, 0}, 1},
                                 {{2, 0}, -1},
                                 {{0, 2}, 1},
                                 {{1, 2}, -3},
                                 {{2, 2}, 6}}));

        ZetaFunction zx = zeta_from_ideal(x2xy3.problem(), opts);
        IntPoly expP(p3.spec.class_vars);
        expP.add_term({1}, 1);
        expP.add_term({2}, 4);
        record("zeta (x^2,xy) P^3 numerator t + 4t^2", zx.numerator == expP);
        ZetaFunction zp = zeta_from_ideal(pt.problem(), opts);
        IntPoly expP2(p2.spec.class_vars);
        expP2.add_term({2}, 1);
        record("zeta (x,y) P^2 numerator t^2", zp.numerator == expP2);
        ZetaFunction zn = zeta_from_ideal(nonci.problem(), opts);
        IntPoly expPn(pp.spec.class_vars);
        expPn.add_term({1, 0}, 1);
        expPn.add_term({2, 0}, 1);
        expPn.add_term({1, 1}, 2);
        expPn.add_term({0, 2}, 1);
        record("zeta nonci numerator s + s^2 + 2st + t^2",
               zn.numerator == expPn);

        record("non-reduced cone regression",
               segre_class(x2xy2.gens, p2, opts) !=
                   segre_class({{parse_poly("x0", p2.blocks), Multidegree({1})}},
                               p2, opts));

        auto rep = verify_cone(x2xy3.problem(), {4}, opts);
        record("cone (x^2,xy) P^3 -> P^4", rep.match);
        record("cone predicted H - 4H^3 + 16H^4",
               rep.predicted ==
                   cls(AmbientSpec::proj(4), {{{1}, 1}, {{3}, -4}, {{4}, 16}}));
    });

    // --- property checks on the golden zetas ------------------------------
    guard("properties", [&] {
        auto p3 = ProjectiveAmbient::proj(3);
        auto pp = ProjectiveAmbient::product(2, 2);
        for (auto& inst :
             {make("x2xy-p3", p3, {"x0^2", "x0*x1"}, {{2}, {2}}),
              make("nonci-p2p2", pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}}),
              make("ci-p2p2", pp, {"x0", "y0"}, {{1, 0}, {0, 1}})}) {
            ZetaProblem p = inst.problem();
            ZetaFunction z = zeta_from_ideal(p, opts);
            record("properties " + inst.name,
                   check_properties(z, p, opts).all_pass());
        }
    });

    // --- randomized CI oracle ---------------------------------------------
    guard("ci-oracle", [&] {
        std::mt19937_64 rng(derive_seed(opts.seed, 42));
        std::vector<Instance> insts;
        insts.push_back(random_ci("ci P2 [1,1]", ProjectiveAmbient::proj(2),
                                  {{1}, {1}}, rng));
        insts.push_back(random_ci("ci P2 [2,2]", ProjectiveAmbient::proj(2),
                                  {{2}, {2}}, rng));
        insts.push_back(random_ci("ci P2 [3]", ProjectiveAmbient::proj(2),
                                  {{3}}, rng));
        insts.push_back(random_ci("ci P3 [1,1]", ProjectiveAmbient::proj(3),
                                  {{1}, {1}}, rng));
        insts.push_back(random_ci("ci P3 [2,2]", ProjectiveAmbient::proj(3),
                                  {{2}, {2}}, rng));
        insts.push_back(random_ci("ci P1xP2 [(1,1)]",
                                  ProjectiveAmbient::product(1, 2), {{1, 1}},
                                  rng));
        insts.push_back(random_ci("ci P2xP2 [(1,0),(0,1)]",
                                  ProjectiveAmbient::product(2, 2),
                                  {{1, 0}, {0, 1}}, rng));
        if (!quick) {
            insts.push_back(random_ci("ci P3 [1,2]", ProjectiveAmbient::proj(3),
                                      {{1}, {2}}, rng));
            insts.push_back(random_ci("ci P4 [1,1]", ProjectiveAmbient::proj(4),
                                      {{1}, {1}}, rng));
            insts.push_back(random_ci("ci P4 [2,2]", ProjectiveAmbient::proj(4),
                                      {{2}, {2}}, rng));
            insts.push_back(random_ci("ci P1xP2 [(1,1),(0,1)]",
                                      ProjectiveAmbient::product(1, 2),
                                      {{1, 1}, {0, 1}}, rng));
            insts.push_back(random_ci("ci P2xP2 [(1,1),(1,1)]",
                                      ProjectiveAmbient::product(2, 2),
                                      {{1, 1}, {1, 1}}, rng));
        }
        for (const auto& inst : insts)
            record(inst.name,
                   segre_class(inst.gens, inst.ambient, opts) ==
                       ci_closed_form(inst.bundle, inst.ambient.spec));
    });

    // --- dual-algorithm sweep (single factor) -----------------------------
    guard("dual", [&] {
        auto p2 = ProjectiveAmbient::proj(2);
        auto p3 = ProjectiveAmbient::proj(3);
        std::vector<Instance> insts = {
            make("dual x2xy P2", p2, {"x0^2", "x0*x1"}, {{2}, {2}}),
            make("dual x2xy P3", p3, {"x0^2", "x0*x1"}, {{2}, {2}}),
            make("dual point P2", p2, {"x0", "x1"}, {{1}, {1}}),
            make("dual two lines P2", p2, {"x0*x1"}, {{2}}),
            make("dual line+pt P2", p2, {"x0*x1", "x0*x2"}, {{2}, {2}}),
            make("dual 3 points P2", p2, {"x0*x1", "x0*x2", "x1*x2"},
                 {{2}, {2}, {2}}),
        };
        if (!quick) {
            insts.push_back(make("dual plane+line P3", p3, {"x0*x1", "x0*x2"},
                                 {{2}, {2}}));
            insts.push_back(make("dual fat plane P3", p3,
                                 {"x0^2", "x0*x1", "x0*x2"}, {{2}, {2}, {2}}));
            insts.push_back(make("dual twisted cubic P3", p3,
                                 {"x0*x3 - x1*x2", "x1^2 - x0*x2",
                                  "x2^2 - x1*x3"},
                                 {{2}, {2}, {2}}));
            std::mt19937_64 rng(derive_seed(opts.seed, 43));
            insts.push_back(random_ci("dual random ci P3 [2,2]", p3,
                                      {{2}, {2}}, rng));
        }
        for (const auto& inst : insts)
            record(inst.name,
                   segre_class(inst.gens, inst.ambient, opts) ==
                       segre_via_projective_degrees(inst.gens, inst.ambient,
                                                    opts));
    });

    return out;
}

} // namespace segrezeta
