#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "segrezeta/segre.hpp"
#include "segrezeta/selftest.hpp"

using namespace segrezeta;

namespace {

ChowClass cc(const AmbientSpec& a,
             std::vector<std::pair<std::vector<int>, long long>> terms) {
    ChowClass c(a);
    for (auto& [e, v] : terms) c.add_term(e, v);
    return c;
}

std::vector<std::pair<MultiPoly, Multidegree>> gens(
    const ProjectiveAmbient& amb, const std::vector<std::string>& polys,
    const std::vector<std::vector<int>>& degs) {
    std::vector<std::pair<MultiPoly, Multidegree>> out;
    for (size_t i = 0; i < polys.size(); ++i)
        out.push_back({parse_poly(polys[i], amb.blocks), Multidegree(degs[i])});
    return out;
}

} // namespace

TEST_CASE("worked goldens in projective space") {
    auto p2 = ProjectiveAmbient::proj(2);
    auto p3 = ProjectiveAmbient::proj(3);
    SegreOptions opts;
    CHECK(segre_class(gens(p2, {"x0^2", "x0*x1"}, {{2}, {2}}), p2, opts) ==
          cc(p2.spec, {{{1}, 1}}));
    CHECK(segre_class(gens(p3, {"x0^2", "x0*x1"}, {{2}, {2}}), p3, opts) ==
          cc(p3.spec, {{{1}, 1}, {{3}, -4}}));
    CHECK(segre_class(gens(p2, {"x0"}, {{1}}), p2, opts) ==
          cc(p2.spec, {{{1}, 1}, {{2}, -1}}));
    CHECK(segre_class(gens(p2, {"x0", "x1"}, {{1}, {1}}), p2, opts) ==
          cc(p2.spec, {{{2}, 1}}));
}

TEST_CASE("worked golden in a product") {
    auto pp = ProjectiveAmbient::product(2, 2);
    CHECK(segre_class(gens(pp, {"x0*y0", "x0*y1"}, {{1, 1}, {1, 1}}), pp, {}) ==
          cc(pp.spec, {{{1, 0}, 1},
                       {{2, 0}, -1},
                       {{0, 2}, 1},
                       {{1, 2}, -3},
                       {{2, 2}, 6}}));
}

TEST_CASE("hypersurface closed form") {
    // A degree-d hypersurface in P^n has class dH/(1+dH).
    auto p3 = ProjectiveAmbient::proj(3);
    ChowClass s =
        segre_class(gens(p3, {"x0^3 + x1^3 + x2^3 + x3^3"}, {{3}}), p3, {});
    CHECK(s == cc(p3.spec, {{{1}, 3}, {{2}, -9}, {{3}, 27}}));
}

TEST_CASE("complete intersection oracle on random forms") {
    SegreOptions opts;
    std::mt19937_64 rng(derive_seed(5, 5));
    for (const auto& [amb, degs] :
         std::vector<std::pair<ProjectiveAmbient, std::vector<std::vector<int>>>>{
             {ProjectiveAmbient::proj(2), {{1}, {2}}},
             {ProjectiveAmbient::proj(3), {{2}, {2}}},
             {ProjectiveAmbient::product(1, 2), {{1, 1}}},
         }) {
        std::vector<std::pair<MultiPoly, Multidegree>> g;
        for (const auto& d : degs)
            g.push_back({selftest_detail::random_rational_form(
                             amb.blocks, Multidegree(d), rng),
                         Multidegree(d)});
        CHECK(segre_class(g, amb, opts) ==
              ci_closed_form(BundleSpec(degs), amb.spec));
    }
}

TEST_CASE("dual algorithm equivalence") {
    SegreOptions opts;
    auto p2 = ProjectiveAmbient::proj(2);
    auto p3 = ProjectiveAmbient::proj(3);
    for (const auto& [amb, polys, degs] :
         std::vector<std::tuple<ProjectiveAmbient, std::vector<std::string>,
                                std::vector<std::vector<int>>>>{
             {p2, {"x0^2", "x0*x1"}, {{2}, {2}}},
             {p2, {"x0*x1", "x0*x2", "x1*x2"}, {{2}, {2}, {2}}},
             {p3, {"x0*x3 - x1*x2", "x1^2 - x0*x2", "x2^2 - x1*x3"},
              {{2}, {2}, {2}}},
         }) {
        auto g = gens(amb, polys, degs);
        CHECK(segre_class(g, amb, opts) ==
              segre_via_projective_degrees(g, amb, opts));
    }
}

TEST_CASE("result is invariant under saturation of the input ideal") {
    // Adjoining a redundant element of the ideal must not change the class.
    auto p2 = ProjectiveAmbient::proj(2);
    auto base = gens(p2, {"x0^2", "x0*x1"}, {{2}, {2}});
    auto fat = gens(p2, {"x0^2", "x0*x1", "x0^2 + x0*x1"}, {{2}, {2}, {2}});
    CHECK(segre_class(base, p2, {}) == segre_class(fat, p2, {}));
}

TEST_CASE("generator order does not matter") {
    auto p3 = ProjectiveAmbient::proj(3);
    auto a = gens(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    auto b = gens(p3, {"x0*x1", "x0^2"}, {{2}, {2}});
    CHECK(segre_class(a, p3, {}) == segre_class(b, p3, {}));
}

TEST_CASE("stability across seeds and primes") {
    auto p3 = ProjectiveAmbient::proj(3);
    auto g = gens(p3, {"x0^2", "x0*x1"}, {{2}, {2}});
    ChowClass ref = segre_class(g, p3, {});
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
        SegreOptions o;
        o.seed = seed;
        CHECK(segre_class(g, p3, o) == ref);
    }
    SegreOptions o2;
    o2.prime = 1000003;
    CHECK(segre_class(g, p3, o2) == ref);
}

TEST_CASE("zero ideal handling") {
    auto p2 = ProjectiveAmbient::proj(2);
    std::vector<std::pair<MultiPoly, Multidegree>> zero = {
        {MultiPoly(p2.blocks), Multidegree({1})}};
    CHECK_THROWS_AS(segre_class(zero, p2, {}), FullAmbientError);
    SegreOptions allow;
    allow.allow_full_ambient = true;
    CHECK(segre_class(zero, p2, allow) == ChowClass::one(p2.spec));
}

TEST_CASE("empty subscheme gives the zero class") {
    auto p2 = ProjectiveAmbient::proj(2);
    // The irrelevant ideal cuts out nothing in P^2.
    auto g = gens(p2, {"x0", "x1", "x2"}, {{1}, {1}, {1}});
    CHECK(segre_class(g, p2, {}) == ChowClass::zero(p2.spec));
}

TEST_CASE("degree mismatch is rejected") {
    auto p2 = ProjectiveAmbient::proj(2);
    auto g = gens(p2, {"x0^2"}, {{1}});
    CHECK_THROWS_AS(segre_class(g, p2, {}), StructuralError);
}

TEST_CASE("prime killing a generator exhausts genericity") {
    auto p2 = ProjectiveAmbient::proj(2);
    auto g = gens(p2, {"3*x0"}, {{1}});
    SegreOptions o;
    o.prime = 3;
    o.retries = 0;
    CHECK_THROWS_AS(segre_class(g, p2, o), GenericityExhaustedError);
}

TEST_CASE("equigenerate reaches the common degree") {
    auto p2 = ProjectiveAmbient::proj(2);
    auto g = gens(p2, {"x0", "x1^2"}, {{1}, {2}});
    auto [forms, d] = equigenerate(g, p2.blocks);
    CHECK(d == Multidegree({2}));
    for (const auto& f : forms) CHECK(multidegree_of(f) == d);
    // x0*(x0,x1,x2) plus x1^2, with no duplicates.
    CHECK(forms.size() == 4);
}

TEST_CASE("graph closure shape") {
    auto p2 = ProjectiveAmbient::proj(2);
    auto g = gens(p2, {"x0^2", "x0*x1"}, {{2}, {2}});
    auto [forms, d] = equigenerate(g, p2.blocks);
    GraphData G = graph_closure(forms, p2);
    CHECK(G.generator_count == 2);
    CHECK(G.common_degree == Multidegree({2}));
    CHECK(G.graph_blocks->block_count() == 2);
    // The saturated graph ideal contains the minor relation with the common
    // factor x0 removed: u0*x1 - u1*x0.
    MultiPoly rel = parse_poly("u0*x1 - u1*x0", G.graph_blocks);
    CHECK(G.graph_ideal.contains(rel));
}

TEST_CASE("projective degree inversion golden") {
    // (x^2, xy) in P^3: g = (1, 1, 0, 0) with d = 2 gives H - 4H^3.
    ChowClass s = segre_from_projective_degrees({1, 1, 0, 0}, 2, 3);
    CHECK(s == cc(AmbientSpec::proj(3), {{{1}, 1}, {{3}, -4}}));
}
