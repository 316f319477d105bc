#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hconst/arrangements.hpp"
#include "hconst/resolution.hpp"

using namespace hconst;

TEST_CASE("finite plane line sets") {
    CHECK(finite_plane_lines(2).lines.size() == 7);
    CHECK(finite_plane_lines(3).lines.size() == 13);
    CHECK(finite_plane_lines(4).lines.size() == 21);
    CHECK(finite_plane_lines(9).lines.size() == 91);
    CHECK_THROWS_AS(finite_plane_lines(6), InputError);

    // the char-3 example: lines missing (0:0:1)
    LineSet nine = finite_plane_lines_avoiding(3, {0, 0, 1});
    CHECK(nine.lines.size() == 9);

    // duplicates are rejected even under rescaling
    LineSet dup;
    dup.field = finite_field(5);
    auto e = [&](long long v) { return FieldElem::from_int(dup.field, v); };
    dup.add_line(e(1), e(2), e(3));
    CHECK_THROWS_AS(dup.add_line(e(2), e(4), e(6)), InputError);
}

TEST_CASE("incidence data") {
    LineSet fano = finite_plane_lines(2);
    IncidenceData inc = incidence_data(fano);
    CHECK(inc.points.size() == 7);
    CHECK(inc.t.at(3) == 7);
    CHECK(inc.t.size() == 1);

    // full F_q plane: q^2+q+1 points, all of multiplicity q+1
    for (fq::u64 q : {3, 4, 5}) {
        IncidenceData d = incidence_data(finite_plane_lines(q));
        CHECK(d.points.size() == q * q + q + 1);
        CHECK(d.t.at((unsigned)q + 1) == q * q + q + 1);
    }

    // generic four lines over a big prime field: six double points
    LineSet four;
    four.field = finite_field(101);
    auto e = [&](long long v) { return FieldElem::from_int(four.field, v); };
    four.add_line(e(1), e(0), e(0));
    four.add_line(e(0), e(1), e(0));
    four.add_line(e(0), e(0), e(1));
    four.add_line(e(1), e(2), e(3));
    IncidenceData d4 = incidence_data(four);
    CHECK(d4.points.size() == 6);
    CHECK(d4.t.at(2) == 6);

    // double count holds on every arrangement above
    auto pairs = [](const IncidenceData& d) {
        long long s = 0;
        for (const auto& p : d.points) s += (long long)p.mult * (p.mult - 1) / 2;
        return s;
    };
    CHECK(pairs(inc) == 21);
    CHECK(pairs(d4) == 6);
}

TEST_CASE("fermat arrangements") {
    // n = 3 over F_7: nine lines, twelve triple points
    LineSet f3 = fermat_arrangement(3, finite_field(7));
    CHECK(f3.lines.size() == 9);
    IncidenceData inc = incidence_data(f3);
    CHECK(inc.t.at(3) == 12);
    CurveReport rep = arrangement_report(f3);
    CHECK(rep.sequence.str() == "9;3^12");
    CHECK(rep.H == mpq_class(-9, 4));

    // n = 1: the lines x-y, x-z, y-z meet at (1:1:1)
    LineSet f1 = fermat_arrangement(1, rationals());
    CHECK(f1.lines.size() == 3);
    IncidenceData i1 = incidence_data(f1);
    CHECK(i1.points.size() == 1);
    CHECK(i1.points[0].mult == 3);

    // n = 4 over F_13: roots of x^4-1 exist, 12 lines
    LineSet f4 = fermat_arrangement(4, finite_field(13));
    CHECK(f4.lines.size() == 12);
    CurveReport r4 = arrangement_report(f4);
    long long msq = r4.sequence.sum_mult_sq();
    CHECK(r4.H == mpq_class((long)(144 - msq), (long)r4.sequence.r()));

    // F_5 has no cube roots of unity; the field is extended
    LineSet ext = fermat_arrangement(3, finite_field(5));
    CHECK(ext.field->order() == 25);
    CHECK(incidence_data(ext).t.at(3) == 12);

    CHECK_THROWS_AS(fermat_arrangement(3, finite_field(3)), InputError);
    CHECK_THROWS_AS(fermat_arrangement(3, rationals()), InputError);
}

TEST_CASE("arrangement reports") {
    for (fq::u64 q : {2, 3, 4, 5}) {
        CurveReport rep = arrangement_report(finite_plane_lines(q));
        CHECK(rep.H == -mpq_class((long)q));
        // all components are lines: the genus-formula chain is tight
        bool saw = false;
        for (const auto& c : rep.checks)
            if (c.name == "chain_genusFormula") {
                CHECK(c.passed());
                CHECK(c.note.find("all components are lines") != std::string::npos);
                saw = true;
            }
        CHECK(saw);
    }

    CurveReport fano = arrangement_report(finite_plane_lines(2));
    CHECK(fano.sequence.str() == "7;3^7");
    CHECK(fano.sigma.at(2) == 0);

    // full F_3 plane violates the Hirzebruch inequality
    CurveReport f3 = arrangement_report(finite_plane_lines(3));
    for (const auto& c : f3.checks)
        if (c.name == "hirzebruch") CHECK(c.status == CheckStatus::fail);

    // a generic triangle plus transversal stays unflagged
    LineSet tri;
    tri.field = finite_field(101);
    auto e = [&](long long v) { return FieldElem::from_int(tri.field, v); };
    tri.add_line(e(1), e(0), e(0));
    tri.add_line(e(0), e(1), e(0));
    tri.add_line(e(0), e(0), e(1));
    tri.add_line(e(1), e(2), e(3));
    for (const auto& c : arrangement_report(tri).checks)
        if (c.name == "hirzebruch") CHECK(c.passed());
}

TEST_CASE("cross-check against the resolver") {
    for (fq::u64 q : {2, 3}) {
        LineSet ls = finite_plane_lines(q);
        CurveReport rep = arrangement_report(ls);
        CurveAnalysis an = analyze_curve_finite(arrangement_polynomial(ls), {});
        MultSeq from_resolver = seq_from_analysis(an);
        CHECK(from_resolver.str() == rep.sequence.str());
        CHECK(h_constant(from_resolver) == rep.H);
        // line arrangements have ordinary singularities only
        for (const auto& pt : an.points) CHECK(pt.ordinary);
    }

    LineSet nine = finite_plane_lines_avoiding(3, {0, 0, 1});
    CurveReport rep9 = arrangement_report(nine);
    CHECK(rep9.sequence.str() == "9;3^12");
    CHECK(rep9.H == mpq_class(-9, 4));
    CurveAnalysis an9 = analyze_curve_finite(arrangement_polynomial(nine), {});
    CHECK(seq_from_analysis(an9).str() == "9;3^12");
}
