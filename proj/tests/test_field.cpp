#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hconst/field.hpp"

using namespace hconst;

namespace {

UniPoly upoly(const FieldPtr& f, std::vector<long long> cs) {
    std::vector<FieldElem> v;
    for (long long c : cs) v.push_back(FieldElem::from_int(f, c));
    return uni_trim({f, std::move(v)});
}

std::set<std::string> root_strs(const std::vector<std::pair<FieldElem, unsigned>>& rs) {
    std::set<std::string> out;
    for (const auto& [r, m] : rs) out.insert(r.str() + ":" + std::to_string(m));
    return out;
}

}  // namespace

TEST_CASE("field construction and spec strings") {
    auto Q = make_field("Q");
    CHECK(Q->is_rational());
    CHECK(Q->spec_string() == "Q");

    auto F2 = make_field("GF(2)");
    CHECK(F2->characteristic == 2);
    CHECK(F2->order() == 2);

    auto F9 = make_field("GF(3^2; modulus=t^2+1)");
    CHECK(F9->characteristic == 3);
    CHECK(F9->degree() == 2);
    CHECK(F9->order() == 9);

    CHECK(make_field(0, std::nullopt)->is_rational());
    CHECK(make_field(2, std::nullopt)->order() == 2);
    CHECK(make_field(3, std::string("t^2+1"))->order() == 9);

    CHECK_THROWS_AS(make_field("GF(4)"), InputError);        // 4 is not prime
    CHECK_THROWS_AS(make_field("GF(6)"), InputError);
    CHECK_THROWS_AS(make_field("GF(3^2; modulus=t^2+t)"), InputError);  // t | modulus
    CHECK_THROWS_AS(make_field("GF(3^2; modulus=t^2+2)"), InputError);  // (t-1)(t+1)
    CHECK_THROWS_AS(make_field("nonsense"), InputError);
}

TEST_CASE("prime field arithmetic") {
    auto F7 = finite_field(7);
    auto a = FieldElem::from_int(F7, 3), b = FieldElem::from_int(F7, 5);
    CHECK(a * b == FieldElem::one(F7));  // 15 = 1 mod 7
    CHECK(a + b == FieldElem::one(F7));
    CHECK((a - b).str() == "5");
    CHECK(a.inverse() * a == FieldElem::one(F7));
    CHECK(a.pow(6) == FieldElem::one(F7));
    CHECK_THROWS(FieldElem::zero(F7).inverse());
}

TEST_CASE("extension field arithmetic in F_9") {
    auto F9 = make_field("GF(3^2; modulus=t^2+1)");
    auto t = FieldElem::generator(F9);
    CHECK(t * t == FieldElem::from_int(F9, 2));  // t^2 = -1
    CHECK(t.pow(8) == FieldElem::one(F9));
    CHECK(t.pow(4) == FieldElem::one(F9));  // t has order 4
    auto u = t + FieldElem::one(F9);
    CHECK(u.inverse() * u == FieldElem::one(F9));
    CHECK((t + t + t).is_zero());
}

TEST_CASE("rational arithmetic") {
    auto Q = rationals();
    auto third = FieldElem::from_mpq(Q, mpq_class(1, 3));
    auto r = FieldElem::from_mpq(Q, mpq_class(2, 3)) + FieldElem::from_mpq(Q, mpq_class(1, 6));
    CHECK(r.rat() == mpq_class(5, 6));
    CHECK((third * FieldElem::from_int(Q, 3)).is_one());
    CHECK(FieldElem::from_mpq(Q, mpq_class(-7, 4)).str() == "-7/4");
}

TEST_CASE("rational reduction mod p") {
    auto Q = rationals();
    auto F13 = finite_field(13);
    auto a = rational_reduce(FieldElem::from_mpq(Q, mpq_class(7, 4)), F13);
    CHECK(a == FieldElem::from_int(F13, 5));  // 7 * 4^{-1} = 7 * 10 = 70 = 5
    auto F3 = finite_field(3);
    CHECK_THROWS_AS(rational_reduce(FieldElem::from_mpq(Q, mpq_class(1, 3)), F3), InputError);
}

TEST_CASE("root finding over finite fields") {
    auto F7 = finite_field(7);
    CHECK(root_strs(find_roots(upoly(F7, {-1, 0, 1}))) ==
          std::set<std::string>{"1:1", "6:1"});  // x^2 - 1
    CHECK(root_strs(find_roots(upoly(F7, {-1, 0, 0, 1}))) ==
          std::set<std::string>{"1:1", "2:1", "4:1"});  // x^3 - 1
    auto F3 = finite_field(3);
    CHECK(find_roots(upoly(F3, {-2, 0, 1})).empty());  // x^2 - 2 = x^2 + 1

    // x^12 - 1 splits over F_13 with twelve simple roots
    std::vector<long long> cs(13, 0);
    cs[0] = -1;
    cs[12] = 1;
    auto F13 = finite_field(13);
    auto rs = find_roots(upoly(F13, cs));
    CHECK(rs.size() == 12);
    for (const auto& [r, m] : rs) {
        CHECK(m == 1);
        CHECK(r.pow(12).is_one());
    }

    // multiplicities: (x - 2)^3 * (x - 5) over F_13
    // expand: x^4 - 11 x^3 + 42 x^2 - 68 x + 40
    auto rs2 = find_roots(upoly(F13, {40, -68, 42, -11, 1}));
    CHECK(root_strs(rs2) == std::set<std::string>{"2:3", "5:1"});
}

TEST_CASE("root finding over larger extensions uses factoring") {
    // F_101^2 has 10201 elements, beyond the enumeration threshold
    auto [F, emb] = extend_finite_field(finite_field(101), 2);
    CHECK(F->order() == 10201);
    // x^2 - g for the generator g: roots exist iff g is a square; g generates
    // a degree-2 extension basis, test with a known square instead: a = c^2
    auto c = FieldElem::generator(F) + FieldElem::from_int(F, 3);
    auto a = c * c;
    UniPoly f = uni_trim({F, {-a, FieldElem::zero(F), FieldElem::one(F)}});
    auto rs = find_roots(f);
    REQUIRE(rs.size() == 2);
    for (const auto& [r, m] : rs) CHECK(r * r == a);
}

TEST_CASE("rational root test over Q") {
    auto Q = rationals();
    // (2x - 3)(x + 5)^2 = 2x^3 + 17x^2 + 20x - 75
    auto rs = find_roots(upoly(Q, {-75, 20, 17, 2}));
    CHECK(root_strs(rs) == std::set<std::string>{"3/2:1", "-5:2"});
    CHECK(find_roots(upoly(Q, {-2, 0, 1})).empty());  // x^2 - 2
    CHECK(root_strs(find_roots(upoly(Q, {0, 0, 1}))) == std::set<std::string>{"0:2"});
}

TEST_CASE("splitting field extension") {
    auto F3 = finite_field(3);
    auto sp = extend_to_split(upoly(F3, {1, 0, 1}), kDefaultExtBound);  // x^2 + 1
    CHECK(sp.field->order() == 9);
    CHECK(sp.roots.size() == 2);
    for (const auto& [r, m] : sp.roots) {
        CHECK(m == 1);
        CHECK((r * r + FieldElem::one(sp.field)).is_zero());
    }

    // x^4 + x + 1 is irreducible over F_2: splits in F_16
    auto F2 = finite_field(2);
    auto sp2 = extend_to_split(upoly(F2, {1, 1, 0, 0, 1}), kDefaultExtBound);
    CHECK(sp2.field->order() == 16);
    CHECK(sp2.roots.size() == 4);

    // a polynomial needing too large an extension: x^64 + x + 1 over F_2 has
    // irreducible factors of large degree
    std::vector<long long> big(65, 0);
    big[0] = 1;
    big[1] = 1;
    big[64] = 1;
    CHECK_THROWS_AS(extend_to_split(upoly(F2, big), 4), ExtensionExceeded);
}

TEST_CASE("embeddings commute with arithmetic") {
    auto F4 = make_field("GF(2^2)");
    auto [F16, emb] = extend_finite_field(F4, 2);
    CHECK(F16->order() == 16);
    auto t = FieldElem::generator(F4);
    auto u = t + FieldElem::one(F4);
    CHECK(emb.map(t * u) == emb.map(t) * emb.map(u));
    CHECK(emb.map(t + u) == emb.map(t) + emb.map(u));
    CHECK(emb.map(t.inverse()) == emb.map(t).inverse());
    // image of the generator still satisfies the old minimal polynomial
    auto it = emb.map(t);
    CHECK((it * it + it + FieldElem::one(F16)).is_zero());  // t^2 + t + 1 = 0 in F_4
}

TEST_CASE("frobenius is additive and multiplicative") {
    for (auto spec : {"GF(2^2)", "GF(2^3)", "GF(3^2)", "GF(3^4)", "GF(5^2)", "GF(7^2)"}) {
        auto F = make_field(spec);
        auto p = F->characteristic;
        auto g = FieldElem::generator(F);
        FieldElem a = FieldElem::one(F), b = g;
        for (int i = 0; i < 20; ++i) {
            a = a * g + FieldElem::from_int(F, (long long)(i + 1));
            b = b * b + a;
            CHECK((a + b).pow(p) == a.pow(p) + b.pow(p));
            CHECK((a * b).pow(p) == a.pow(p) * b.pow(p));
        }
        // Frobenius has order k on the whole field
        auto q = F->order();
        CHECK(g.pow(q) == g);
    }
}

TEST_CASE("field axioms on pseudo-random elements") {
    for (auto spec : {"Q", "GF(7)", "GF(3^3)", "GF(2^4)"}) {
        auto F = make_field(spec);
        FieldElem x = (F->is_rational() || F->degree() == 1)
                          ? FieldElem::from_mpq(F, mpq_class(3, 1))
                          : FieldElem::generator(F);
        FieldElem a = x + FieldElem::one(F), b = a * a - x, c = b * a + x;
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == FieldElem::zero(F));
        if (!b.is_zero()) CHECK(b * b.inverse() == FieldElem::one(F));
        CHECK(a - b == a + (-b));
    }
}

TEST_CASE("unipoly division and gcd") {
    auto F7 = finite_field(7);
    auto f = upoly(F7, {2, 0, 1, 3});  // 3x^3 + x^2 + 2
    auto g = upoly(F7, {1, 1});        // x + 1
    UniPoly q, r;
    uni_divrem(f, g, q, r);
    CHECK(uni_add(uni_mul(q, g), r).c == f.c);
    CHECK(r.deg() < g.deg());

    // gcd((x-1)(x-2), (x-1)(x-3)) = x - 1
    auto a = uni_mul(upoly(F7, {-1, 1}), upoly(F7, {-2, 1}));
    auto b = uni_mul(upoly(F7, {-1, 1}), upoly(F7, {-3, 1}));
    auto d = uni_gcd(a, b);
    CHECK(d.deg() == 1);
    CHECK(d.c[0] == FieldElem::from_int(F7, -1));
    CHECK(d.c[1].is_one());
}

TEST_CASE("canonical modulus choice is deterministic") {
    auto a = make_field("GF(3^2)");
    auto b = make_field("GF(3^2)");
    CHECK(a->same(*b));
    CHECK(a->spec_string() == b->spec_string());
}
