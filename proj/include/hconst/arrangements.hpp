#pragma once

// Line arrangements in the projective plane: finite-plane and Fermat-type
// families, combinatorial incidence data, and the resulting curve reports
// including the Hirzebruch realizability flag.

#include "hconst/invariants.hpp"

namespace hconst {

// lines stored as dual coefficient triples (a:b:c), meaning ax + by + cz = 0
struct LineSet {
    FieldPtr field;
    std::vector<std::vector<FieldElem>> lines;  // canonicalized, pairwise distinct

    void add_line(FieldElem a, FieldElem b, FieldElem c);
    std::string str() const;
};

// all q^2 + q + 1 lines of the plane over F_q (q = p^k)
LineSet finite_plane_lines(fq::u64 q);
// the lines not passing through the given point
LineSet finite_plane_lines_avoiding(fq::u64 q, const std::vector<long long>& point);

// the 3n linear factors of (x^n - y^n)(x^n - z^n)(y^n - z^n); the field is
// extended until it contains n distinct n-th roots of unity
LineSet fermat_arrangement(unsigned n, const FieldPtr& field,
                           unsigned ext_bound = kDefaultExtBound);

struct IncidencePoint {
    std::vector<FieldElem> coords;  // normalized, last nonzero = 1
    unsigned mult = 0;              // number of lines through the point
};

struct IncidenceData {
    std::vector<IncidencePoint> points;
    std::map<unsigned, unsigned> t;  // t_k = points on exactly k lines
};

IncidenceData incidence_data(const LineSet& ls);

// MultSeq with d = s = #lines and all component genera 0, delegated to the
// invariants module; every entry is an actual point
CurveReport arrangement_report(const LineSet& ls);

// the product of the linear forms, for cross-checks against the resolver
MultiPoly arrangement_polynomial(const LineSet& ls);

}  // namespace hconst
