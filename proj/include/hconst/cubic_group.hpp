#pragma once

// Group of smooth points of the nodal cubic 27xyz - (x+y+z)^3, through the
// parameterization t -> (-(t+1)^3 : t^3 : 1) with identity at infinity
// (the flex (-1:1:0)). The group law reduces to rational arithmetic in the
// parameter, which keeps everything exact.

#include "hconst/invariants.hpp"

namespace hconst {

struct NodalParam {
    FieldPtr field;
    std::optional<FieldElem> t;  // disengaged = the identity (infinity)

    static NodalParam infinity(const FieldPtr& f) { return {f, std::nullopt}; }
    static NodalParam of(FieldElem v);
    static NodalParam from_int(const FieldPtr& f, long long v);
    static NodalParam parse(const FieldPtr& f, const std::string& text);  // "inf" or a rational

    bool is_identity() const { return !t.has_value(); }
    std::string str() const;
    bool operator==(const NodalParam& o) const;
    bool operator!=(const NodalParam& o) const { return !(*this == o); }
};

MultiPoly nodal_cubic(const FieldPtr& f);  // in variables x, y, z

ProjPoint param_to_point(const NodalParam& p);
// inverse of the parameterization; rejects points off the curve and the node (1:1:1)
NodalParam point_to_param(const ProjPoint& p);

NodalParam add(const NodalParam& a, const NodalParam& b);
NodalParam neg(const NodalParam& a);
NodalParam sub(const NodalParam& a, const NodalParam& b);
NodalParam mul_int(const NodalParam& a, long long n);

// the third point of the cubic on the line through the two given points
NodalParam third_intersection(const NodalParam& a, const NodalParam& b);

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

struct ConstructionResult {
    NodalParam p3;
    NodalParam p6;
    std::optional<NodalParam> p9;
    std::vector<CheckResult> checks;
    bool ok() const;
};

// the constraint system behind the ten-triple-point nonic: p_3 and p_6 are
// forced from p_1, p_2 and p_4, p_5 by the flex F_1 (parameter 0), the sum
// p_1 + p_2 + p_3 must be nonzero 3-torsion, and p_9 completes the line
// through p_7, p_8 when those are supplied
ConstructionResult verify_construction(const std::map<std::string, NodalParam>& p);

}  // namespace hconst
