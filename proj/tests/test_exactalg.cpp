#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "segrezeta/multipoly.hpp"
#include "segrezeta/scalar.hpp"

using namespace segrezeta;

TEST_CASE("rational scalar arithmetic") {
    Scalar a = Scalar::rational(2, 3);
    Scalar b = Scalar::rational(-1, 6);
    CHECK((a + b) == Scalar::rational(1, 2));
    CHECK((a - b) == Scalar::rational(5, 6));
    CHECK((a * b) == Scalar::rational(-1, 9));
    CHECK((a / b) == Scalar::rational(-4));
    CHECK((-a) == Scalar::rational(-2, 3));
    CHECK(a.inverse() == Scalar::rational(3, 2));
    CHECK(Scalar::rational(0).is_zero());
    CHECK(Scalar::rational(7, 7).is_one());
    CHECK_THROWS_AS(Scalar::rational(0).inverse(), StructuralError);
}

TEST_CASE("residue scalar arithmetic") {
    const std::uint64_t p = 101;
    Scalar a = Scalar::residue(45, p);
    Scalar b = Scalar::residue(-7, p);
    CHECK(b.residue_value() == 94);
    CHECK((a + b) == Scalar::residue(38, p));
    CHECK((a * a.inverse()).is_one());
    CHECK((a / b * b) == a);
    CHECK_THROWS_AS(Scalar::residue(1, 100), StructuralError); // composite
    CHECK_THROWS_AS(a + Scalar::rational(1), StructuralError); // mixed kinds
}

TEST_CASE("reduce_mod and prime_below") {
    Scalar q = Scalar::rational(3, 7);
    Scalar r = q.reduce_mod(11);
    CHECK(r.modulus() == 11);
    CHECK((r * Scalar::residue(7, 11)) == Scalar::residue(3, 11));
    CHECK_THROWS_AS(Scalar::rational(1, 11).reduce_mod(11), StructuralError);
    CHECK(prime_below(2147483647ULL) == 2147483629ULL);
    CHECK(prime_below(8) == 7);
}

static VarBlocksPtr p2_blocks() {
    return make_blocks({{"x0", "x1", "x2"}});
}

TEST_CASE("parse and print round trip") {
    auto b = p2_blocks();
    MultiPoly f = parse_poly("x0^2 - 3*x1*x2 + 2", b);
    CHECK(f.term_count() == 3);
    MultiPoly g = parse_poly(f.str(), b);
    CHECK(f == g);
    CHECK_THROWS_AS(parse_poly("x0 + z9", b), ParseError);
    CHECK_THROWS_AS(parse_poly("x0 + ", b), ParseError);
    CHECK(parse_poly("0", b).is_zero());
}

TEST_CASE("polynomial arithmetic") {
    auto b = p2_blocks();
    MultiPoly f = parse_poly("x0 + x1", b);
    MultiPoly g = parse_poly("x0 - x1", b);
    CHECK(f * g == parse_poly("x0^2 - x1^2", b));
    CHECK(f - f == MultiPoly(b));
    CHECK((f * f) == parse_poly("x0^2 + 2*x0*x1 + x1^2", b));
    CHECK(f.scaled(Scalar::rational(2)) == parse_poly("2*x0 + 2*x1", b));
    CHECK((-f) + f == MultiPoly(b));
}

TEST_CASE("multidegree detection") {
    auto b = make_blocks({{"x0", "x1"}, {"y0", "y1", "y2"}});
    MultiPoly f = parse_poly("x0*y0^2 + x1*y1*y2", b);
    CHECK(multidegree_of(f) == Multidegree({1, 2}));
    CHECK_THROWS_AS(multidegree_of(parse_poly("x0 + y0", b)),
                    InhomogeneousError);
    CHECK_THROWS_AS(multidegree_of(MultiPoly(b)), ZeroPolynomialError);
}

TEST_CASE("monomial enumeration counts") {
    auto b = make_blocks({{"x0", "x1", "x2"}});
    CHECK(monomials_of_multidegree(*b, Multidegree({2})).size() == 6);
    CHECK(monomials_of_multidegree(*b, Multidegree({0})).size() == 1);
    auto bb = make_blocks({{"x0", "x1"}, {"y0", "y1"}});
    // 2 monomials of degree 1 in each factor.
    CHECK(monomials_of_multidegree(*bb, Multidegree({1, 1})).size() == 4);
}

TEST_CASE("substitute") {
    auto b = p2_blocks();
    MultiPoly f = parse_poly("x0^2 + x1*x2", b);
    std::map<std::string, MultiPoly> m;
    m.emplace("x2", parse_poly("x0 + x1", b));
    CHECK(substitute(f, m) == parse_poly("x0^2 + x0*x1 + x1^2", b));
    std::map<std::string, MultiPoly> bad;
    bad.emplace("q", parse_poly("x0", b));
    CHECK_THROWS_AS(substitute(f, bad), StructuralError);
}

TEST_CASE("transport by name") {
    auto small = make_blocks({{"x0", "x1"}});
    auto big = make_blocks({{"x0", "x1", "x2"}, {"u0"}});
    MultiPoly f = parse_poly("x0^2 - x1^2", small);
    MultiPoly g = transport(f, big);
    CHECK(g == parse_poly("x0^2 - x1^2", big));
    CHECK(transport(g, small) == f); // x2, u0 unused
    MultiPoly h = parse_poly("x0*x2", big);
    CHECK_THROWS_AS(transport(h, small), StructuralError);
}

TEST_CASE("random_form is seed deterministic") {
    auto b = p2_blocks();
    std::mt19937_64 r1(99), r2(99), r3(100);
    MultiPoly f1 = random_form(b, Multidegree({2}), r1, 101);
    MultiPoly f2 = random_form(b, Multidegree({2}), r2, 101);
    MultiPoly f3 = random_form(b, Multidegree({2}), r3, 101);
    CHECK(f1 == f2);
    CHECK(f1 != f3);
    CHECK(multidegree_of(f1) == Multidegree({2}));
}

TEST_CASE("var blocks invariants") {
    CHECK_THROWS_AS(make_blocks({{"x", "x"}}), StructuralError);
    CHECK_THROWS_AS(make_blocks({{"x"}, {"x"}}), StructuralError);
    auto b = make_blocks({{"a", "b"}, {"c"}});
    CHECK(b->total_vars() == 3);
    CHECK(b->block_offset(1) == 2);
    CHECK(b->block_of(2) == 1);
    CHECK(*b->find("c") == 2);
    CHECK(!b->find("z"));
}
