#pragma once

// Resolution of plane curve singularities by iterated blowups: locating the
// singular points of a projective curve, the tree of infinitely near points
// over each of them, and the per-point invariants read off that tree.

#include "hconst/poly.hpp"

namespace hconst {

struct ProjPoint {
    FieldPtr field;               // smallest field containing the coordinates
    std::vector<FieldElem> coords;  // normalized: last nonzero coordinate is 1
    unsigned level = 1;           // relative degree of `field` over the base field

    std::string str() const;
    bool same_as(const ProjPoint& o) const;  // same field spec and coordinates
};

// one infinitely near point in the blowup tree
struct InfNearNode {
    unsigned multiplicity = 0;
    unsigned depth = 0;                 // 0 for the point on the curve itself
    MultiPoly local_equation;           // proper transform, centered at the origin
    std::string chart_label;            // which chart / tangent direction produced it
    std::vector<InfNearNode> children;  // empty iff the branch is resolved here
};

struct SingularityRecord {
    ProjPoint point;
    InfNearNode tree;
    std::vector<unsigned> mult_sequence;  // tree multiplicities >= 2, root then breadth-first
    unsigned delta = 0;                   // sum of m(m-1)/2 over the tree
    unsigned branches = 0;                // leaves of the resolution tree
    unsigned mu = 0;                      // 2 delta - branches + 1
    bool ordinary = false;
};

struct ResolutionOptions {
    unsigned ext_bound = kDefaultExtBound;
    unsigned stable_window = 2;    // extension levels with no new point before stopping
    fq::u64 seed = 1;              // for the coordinate changes in point location
    std::vector<fq::u64> primes = {101, 103, 107};  // reduction primes for curves over Q
};

struct CurveAnalysis {
    unsigned degree = 0;
    std::vector<SingularityRecord> points;
    fq::u64 base_order = 0;        // order of the field the search ran over
    std::vector<fq::u64> good_primes;  // engaged only for curves over Q
};

// All singular points of the squarefree projective curve f = 0 (3 variables,
// homogeneous) over the algebraic closure of its finite base field. Points are
// reported over the smallest extension containing them.
std::vector<ProjPoint> find_singular_points(const MultiPoly& f, const ResolutionOptions& opt);

// Local affine equation of f at a projective point (chart with the last
// nonzero coordinate set to 1, point translated to the origin). The
// polynomial is returned over the point's field in variables (x, y).
MultiPoly local_equation(const MultiPoly& f, const ProjPoint& p);

// Raised when surviving reduction primes disagree (CLI exit code 1).
struct DisagreementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BlowupChild {
    MultiPoly equation;  // proper transform, new center at the origin
    std::string chart_label;
};

// Blowup of an affine curve germ at the origin: the proper transforms at the
// points of the exceptional line lying on the curve. Directions (1 : a) come
// from the chart (x, xy); the direction (0 : 1) from the chart (xy, y).
// Throws ExtensionExceeded if the tangent cone needs a field past ext_bound.
std::vector<BlowupChild> blowup_step(const MultiPoly& germ, unsigned ext_bound);

// Full resolution tree of an affine germ at the origin (multiplicity >= 1).
InfNearNode resolve_point(const MultiPoly& germ, unsigned ext_bound);

// Tree walk: multiplicity sequence, delta, branches, mu, ordinariness.
SingularityRecord analyze_point(const MultiPoly& f, const ProjPoint& p,
                                const ResolutionOptions& opt);

// End-to-end singularity analysis of a squarefree curve over a finite field.
CurveAnalysis analyze_curve_finite(const MultiPoly& f, const ResolutionOptions& opt);

// Over Q: reduce modulo each configured prime, discard primes where the
// degree drops or the curve stops being squarefree, and require at least two
// surviving reductions that agree on the global multiplicity data.
CurveAnalysis analyze_curve(const MultiPoly& f, const ResolutionOptions& opt);

}  // namespace hconst
