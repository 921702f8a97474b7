#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "segrezeta/json_io.hpp"
#include "segrezeta/zeta.hpp"

using namespace segrezeta;

namespace {

ZetaProblem problem(const ProjectiveAmbient& amb,
                    const std::vector<std::string>& polys,
                    const std::vector<std::vector<int>>& degs) {
    ZetaProblem p;
    p.ambient = amb;
    p.bundle = BundleSpec(degs);
    for (size_t i = 0; i < polys.size(); ++i)
        p.generators.push_back(
            {parse_poly(polys[i], amb.blocks), Multidegree(degs[i])});
    p.validate();
    return p;
}

IntPoly ip(const std::vector<std::string>& vars,
           std::vector<std::pair<std::vector<int>, long long>> terms) {
    IntPoly p(vars);
    for (auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

} // namespace

TEST_CASE("zeta goldens") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaFunction z =
        zeta_from_ideal(problem(p3, {"x0^2", "x0*x1"}, {{2}, {2}}));
    CHECK(z.numerator == ip({"H"}, {{{1}, 1}, {{2}, 4}}));
    CHECK(z.denominator == ip({"H"}, {{{0}, 1}, {{1}, 4}, {{2}, 4}}));

    auto p2 = ProjectiveAmbient::proj(2);
    ZetaFunction zp = zeta_from_ideal(problem(p2, {"x0", "x1"}, {{1}, {1}}));
    CHECK(zp.numerator == ip({"H"}, {{{2}, 1}}));
    CHECK(zp.denominator == ip({"H"}, {{{0}, 1}, {{1}, 2}, {{2}, 1}}));

    auto pp = ProjectiveAmbient::product(2, 2);
    ZetaFunction zn =
        zeta_from_ideal(problem(pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}}));
    CHECK(zn.numerator == ip({"s", "t"}, {{{1, 0}, 1},
                                          {{2, 0}, 1},
                                          {{1, 1}, 2},
                                          {{0, 2}, 1}}));
}

TEST_CASE("construction rank gate") {
    // g = 3 generators but e = min dim + 1 = 3 in P^2: g < e fails.
    auto p2 = ProjectiveAmbient::proj(2);
    ZetaProblem p =
        problem(p2, {"x0*x1", "x0*x2", "x1*x2"}, {{2}, {2}, {2}});
    CHECK_THROWS_AS(zeta_from_ideal(p), RankConstraintError);
}

TEST_CASE("verification rank gate is stricter") {
    // g = 2 in P^2: construction passes (2 < 3) but r + 1 = 2 is not < 2.
    auto p2 = ProjectiveAmbient::proj(2);
    ZetaProblem p = problem(p2, {"x0^2", "x0*x1"}, {{2}, {2}});
    CHECK_NOTHROW(zeta_from_ideal(p));
    CHECK_THROWS_AS(verify_cone(p, {3}), RankConstraintError);
}

TEST_CASE("cone ideal is purely syntactic") {
    auto p2 = ProjectiveAmbient::proj(2);
    ZetaProblem p = problem(p2, {"x0^2", "x0*x1"}, {{2}, {2}});
    ZetaProblem c = cone_ideal(p, {4});
    CHECK(c.ambient.spec.factor_dims == std::vector<int>{4});
    CHECK(c.ambient.blocks->blocks[0] ==
          std::vector<std::string>{"x0", "x1", "x2", "x3", "x4"});
    REQUIRE(c.generators.size() == 2);
    // Same polynomials, transported; no saturation, no new elements.
    CHECK(c.generators[0].first ==
          parse_poly("x0^2", c.ambient.blocks));
    CHECK(c.generators[1].first ==
          parse_poly("x0*x1", c.ambient.blocks));
    CHECK_THROWS_AS(cone_ideal(p, {1}), StructuralError);
    CHECK_THROWS_AS(cone_ideal(p, {3, 3}), StructuralError);
}

TEST_CASE("cone verification matches the evaluated zeta") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaProblem p = problem(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    VerificationReport rep = verify_cone(p, {4});
    CHECK(rep.match);
    ChowClass expect(AmbientSpec::proj(4));
    expect.add_term({1}, 1);
    expect.add_term({3}, -4);
    expect.add_term({4}, 16);
    CHECK(rep.predicted == expect);
    CHECK(rep.computed == expect);
}

TEST_CASE("product cone verification") {
    auto pp = ProjectiveAmbient::product(2, 2);
    ZetaProblem p = problem(pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}});
    CHECK(verify_cone(p, {3, 2}).match);
    CHECK(verify_cone(p, {2, 3}).match);
}

TEST_CASE("properties pass on goldens") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaProblem p = problem(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    ZetaFunction z = zeta_from_ideal(p);
    PropertyReport rep = check_properties(z, p);
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() == 5);
    for (const auto& c : rep.checks) CHECK(!c.skipped);
}

TEST_CASE("restriction invariance") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaProblem p = problem(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    ZetaFunction before = zeta_from_ideal(p);
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        std::mt19937_64 rng(seed);
        ZetaProblem q = restrict_hyperplane(p, 0, rng);
        CHECK(q.ambient.spec.factor_dims == std::vector<int>{2});
        ZetaFunction after = zeta_from_ideal(q);
        CHECK(after.numerator == before.numerator);
        CHECK(after.denominator == before.denominator);
    }
}

TEST_CASE("restriction gates") {
    auto p2 = ProjectiveAmbient::proj(2);
    ZetaProblem p = problem(p2, {"x0^2", "x0*x1"}, {{2}, {2}});
    std::mt19937_64 rng(1);
    // g = 2 but e' = 2 after restriction: refused.
    CHECK_THROWS_AS(restrict_hyperplane(p, 0, rng), RankConstraintError);
    CHECK_THROWS_AS(restrict_hyperplane(p, 3, rng), StructuralError);
}

TEST_CASE("relative views re-expand to the full class") {
    auto pp = ProjectiveAmbient::product(2, 2);
    ZetaProblem p = problem(pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}});
    ZetaFunction z = zeta_from_ideal(p);
    auto [v0, v1] = relative_views(z);
    CHECK(v0.coefficient_factor == 0);
    CHECK(v1.coefficient_factor == 1);
    ChowClass full = z.evaluate(pp.spec);
    CHECK(v0.re_expand(pp.spec) == full);
    CHECK(v1.re_expand(pp.spec) == full);
    ZetaFunction single = zeta_from_ideal(
        problem(ProjectiveAmbient::proj(3), {"x0^2", "x0*x1"}, {{2}, {2}}));
    CHECK_THROWS_AS(relative_views(single), StructuralError);
}

TEST_CASE("declared degree validation") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaProblem p;
    p.ambient = p3;
    p.bundle = BundleSpec(std::vector<std::vector<int>>{{2}});
    p.generators.push_back({parse_poly("x0", p3.blocks), Multidegree({2})});
    CHECK_THROWS_AS(p.validate(), StructuralError);
}

TEST_CASE("problem json round trip") {
    json j = {{"factors", {3}},
              {"variables", {{"x0", "x1", "x2", "x3"}}},
              {"generators", {"x0^2", "x0*x1"}},
              {"degrees", {{2}, {2}}}};
    ZetaProblem p = problem_from_json(j);
    CHECK(p.rank_g() == 2);
    CHECK(p.ambient.spec == AmbientSpec::proj(3));
    json back = to_json(p);
    ZetaProblem p2 = problem_from_json(back);
    CHECK(p2.generators[0].first ==
          transport(p.generators[0].first, p2.ambient.blocks));
    json bad = j;
    bad["degrees"] = {{2}};
    CHECK_THROWS_AS(problem_from_json(bad), ParseError);
    json badvars = j;
    badvars["variables"] = json::array({json::array({"x0", "x1"})});
    CHECK_THROWS_AS(problem_from_json(badvars), ParseError);
}

TEST_CASE("report json fields") {
    auto p3 = ProjectiveAmbient::proj(3);
    ZetaProblem p = problem(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    VerificationReport rep = verify_cone(p, {4});
    json j = to_json(rep, "inst");
    CHECK(j["verdict"] == "match");
    CHECK(j["target"] == std::vector<int>{4});
    ZetaFunction z = zeta_from_ideal(p);
    json zj = to_json(z);
    CHECK(zj["P"] == "H + 4*H^2");
    CHECK(zj["Q"] == "1 + 4*H + 4*H^2");
}
