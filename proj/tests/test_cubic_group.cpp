#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "hconst/cubic_group.hpp"

using namespace hconst;

static FieldPtr Q = rationals();

static NodalParam P(long long a, long long b = 1) {
    return NodalParam::of(FieldElem::from_mpq(Q, mpq_class((long)a, (long)b)));
}

TEST_CASE("parameterization") {
    ProjPoint p1 = param_to_point(P(1));
    CHECK(p1.str() == "(-8 : 1 : 1)");
    ProjPoint p3 = param_to_point(P(7, 4));
    CHECK(p3.coords[0].rat() * 64 == -1331);  // (-11^3 : 7^3 : 4^3) rescaled
    CHECK(p3.coords[1].rat() * 64 == 343);
    ProjPoint f1 = param_to_point(P(0));
    CHECK(f1.str() == "(-1 : 0 : 1)");
    ProjPoint f0 = param_to_point(NodalParam::infinity(Q));
    CHECK(f0.str() == "(-1 : 1 : 0)");

    // round trips, including the identity
    for (long long v : {-7, -2, 0, 1, 3, 12})
        CHECK(point_to_param(param_to_point(P(v))) == P(v));
    CHECK(point_to_param(f0).is_identity());

    // off-curve and node inputs are rejected
    ProjPoint bad;
    bad.field = Q;
    bad.coords = {FieldElem::from_int(Q, 1), FieldElem::from_int(Q, 2),
                  FieldElem::from_int(Q, 1)};
    CHECK_THROWS_AS(point_to_param(bad), InputError);
    ProjPoint node;
    node.field = Q;
    node.coords = {FieldElem::from_int(Q, 1), FieldElem::from_int(Q, 1),
                   FieldElem::from_int(Q, 1)};
    CHECK_THROWS_AS(point_to_param(node), InputError);

    // every parameterized point satisfies the cubic exactly
    MultiPoly cubic = nodal_cubic(Q);
    for (long long a = -6; a <= 6; a++)
        for (long long b = 1; b <= 4; b++) {
            ProjPoint pt = param_to_point(P(a, b));
            CHECK(cubic.eval({pt.coords[0], pt.coords[1], pt.coords[2]}).is_zero());
        }
}

TEST_CASE("group law") {
    CHECK(add(P(1), P(5)) == P(4, 7));
    CHECK(add(P(3), NodalParam::infinity(Q)) == P(3));
    CHECK(neg(P(1)) == P(-2));
    CHECK(add(P(1), P(-2)).is_identity());
    CHECK(neg(P(7, 4)) == P(-11, 4));
    CHECK(neg(NodalParam::infinity(Q)).is_identity());

    // F_1 (parameter 0) has exact order 3
    CHECK(add(P(0), P(0)) == P(-1));
    CHECK(add(P(-1), P(0)).is_identity());
    CHECK(mul_int(P(0), 3).is_identity());
    CHECK_FALSE(mul_int(P(0), 1).is_identity());
    CHECK_FALSE(mul_int(P(0), 2).is_identity());

    CHECK(third_intersection(P(1), P(5)) == P(-11, 7));
    // st + s + t = 0 lands on the flex parameter 0
    CHECK(third_intersection(P(1), P(-1, 2)) == P(0));
    // tangent case: u = -(t^2 + 2t)/(2t + 1)
    CHECK(third_intersection(P(3), P(3)) == P(-15, 7));

    // char 3 is rejected throughout
    FieldPtr f3 = finite_field(3);
    CHECK_THROWS_AS(NodalParam::from_int(f3, 1), InputError);
    CHECK_THROWS_AS(nodal_cubic(f3), InputError);

    // the law works over other finite fields
    FieldPtr f7 = finite_field(7);
    NodalParam a = NodalParam::from_int(f7, 2), b = NodalParam::from_int(f7, 5);
    CHECK(add(a, b) == NodalParam::from_int(f7, 2));  // (10-1)/8 = 9/8 = 2/1 mod 7
}

TEST_CASE("group axioms over random rationals") {
    std::mt19937_64 rng(3);
    auto rnd = [&]() -> NodalParam {
        if (rng() % 10 == 0) return NodalParam::infinity(Q);
        long long num = (long long)(rng() % 41) - 20;
        long long den = 1 + (long long)(rng() % 9);
        return P(num, den);
    };
    for (int trial = 0; trial < 200; trial++) {
        NodalParam a = rnd(), b = rnd(), c = rnd();
        CHECK(add(a, b) == add(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(add(a, NodalParam::infinity(Q)) == a);
        CHECK(add(a, neg(a)).is_identity());

        // the third intersection point is collinear with the inputs
        if (!a.is_identity() && !b.is_identity() && a != b) {
            NodalParam u = third_intersection(a, b);
            CHECK(collinear(param_to_point(a), param_to_point(b), param_to_point(u)));
        }
    }
}

TEST_CASE("3-torsion over Q") {
    // exhaustive small search: only inf, 0, -1 are killed by 3
    for (long long a = -20; a <= 20; a++)
        for (long long b = 1; b <= 20; b++) {
            if (std::gcd(std::abs(a), b) != 1) continue;
            NodalParam p = P(a, b);
            bool torsion = mul_int(p, 3).is_identity();
            bool expect = (b == 1 && (a == 0 || a == -1));
            CHECK(torsion == expect);
        }
    CHECK(mul_int(NodalParam::infinity(Q), 3).is_identity());
}

TEST_CASE("construction verification") {
    std::map<std::string, NodalParam> pts = {
        {"p1", P(1)}, {"p2", P(5)}, {"p4", P(3)}, {"p5", P(4)}};
    ConstructionResult res = verify_construction(pts);
    CHECK(res.ok());
    CHECK(res.p3 == P(7, 4));
    CHECK(res.p6 == P(8, 11));
    // the forced points match the published coordinates
    ProjPoint p3 = param_to_point(res.p3);
    CHECK(p3.coords[0].rat() * 64 == -1331);
    ProjPoint p6 = param_to_point(res.p6);
    CHECK(p6.coords[0].rat() * 1331 == -6859);  // (-19^3 : 8^3 : 11^3)
    CHECK(p6.coords[1].rat() * 1331 == 512);

    // p7, p8 force p9 onto their line
    pts["p7"] = P(2);
    pts["p8"] = P(6);
    ConstructionResult res2 = verify_construction(pts);
    CHECK(res2.ok());
    REQUIRE(res2.p9.has_value());
    CHECK(*res2.p9 == third_intersection(P(2), P(6)));

    // inverse pair: p1 + p2 is the identity, the torsion check degenerates
    std::map<std::string, NodalParam> bad = {
        {"p1", P(1)}, {"p2", P(-2)}, {"p4", P(3)}, {"p5", P(4)}};
    ConstructionResult rbad = verify_construction(bad);
    CHECK_FALSE(rbad.ok());

    CHECK_THROWS_AS(verify_construction({{"p1", P(1)}}), InputError);
}
