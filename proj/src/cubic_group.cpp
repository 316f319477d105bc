#include "hconst/cubic_group.hpp"

#include <sstream>

namespace hconst {

namespace {

void reject_char3(const FieldPtr& f) {
    if (f->characteristic == 3)
        throw InputError("the nodal cubic degenerates to 27xyz = 0 in characteristic 3");
}

FieldElem fe(const FieldPtr& f, long long v) { return FieldElem::from_int(f, v); }

}  // namespace

NodalParam NodalParam::of(FieldElem v) {
    FieldPtr f = v.field();
    reject_char3(f);
    return {f, std::move(v)};
}

NodalParam NodalParam::from_int(const FieldPtr& f, long long v) {
    return of(fe(f, v));
}

NodalParam NodalParam::parse(const FieldPtr& f, const std::string& text) {
    if (text == "inf") {
        reject_char3(f);
        return infinity(f);
    }
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return of(FieldElem::from_mpq(f, mpq_class(mpz_class(text))));
        mpq_class q(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
        q.canonicalize();
        return of(FieldElem::from_mpq(f, q));
    } catch (const std::invalid_argument&) {
        throw InputError("cannot parse parameter \"" + text + "\"");
    }
}

std::string NodalParam::str() const {
    return is_identity() ? "inf" : t->str();
}

bool NodalParam::operator==(const NodalParam& o) const {
    if (is_identity() || o.is_identity()) return is_identity() == o.is_identity();
    return *t == *o.t;
}

MultiPoly nodal_cubic(const FieldPtr& f) {
    reject_char3(f);
    return parse_poly("27*x*y*z - (x + y + z)^3", f, {"x", "y", "z"});
}

ProjPoint param_to_point(const NodalParam& p) {
    reject_char3(p.field);
    ProjPoint pt;
    pt.field = p.field;
    pt.level = 1;
    FieldElem one = fe(p.field, 1);
    if (p.is_identity()) {
        pt.coords = {-one, one, FieldElem::zero(p.field)};
        return pt;
    }
    FieldElem t = *p.t;
    pt.coords = {-(t + one).pow(3), t.pow(3), one};
    return pt;
}

NodalParam point_to_param(const ProjPoint& p) {
    reject_char3(p.field);
    if (p.coords.size() != 3) throw InputError("expected a plane point");
    FieldElem x = p.coords[0], y = p.coords[1], z = p.coords[2];
    FieldElem sum = x + y + z;
    if (fe(p.field, 27) * x * y * z != sum.pow(3))
        throw InputError("point " + p.str() + " is not on the nodal cubic");
    if (z.is_zero()) return NodalParam::infinity(p.field);
    x = x / z;
    y = y / z;
    // t^3 = y and 3t^2 + 3t + (1 + x + y) = 0 combine to a linear equation
    FieldElem c = (fe(p.field, 1) + x + y) / fe(p.field, 3);
    if (c.is_one())
        throw InputError("the node (1:1:1) has no parameter");
    return NodalParam::of((y - c) / (fe(p.field, 1) - c));
}

NodalParam add(const NodalParam& a, const NodalParam& b) {
    reject_char3(a.field);
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    FieldElem t = *a.t, s = *b.t;
    FieldElem den = s + t + fe(a.field, 1);
    if (den.is_zero()) return NodalParam::infinity(a.field);
    return NodalParam::of((s * t - fe(a.field, 1)) / den);
}

NodalParam neg(const NodalParam& a) {
    reject_char3(a.field);
    if (a.is_identity()) return a;
    return NodalParam::of(-fe(a.field, 1) - *a.t);
}

NodalParam sub(const NodalParam& a, const NodalParam& b) { return add(a, neg(b)); }

NodalParam mul_int(const NodalParam& a, long long n) {
    NodalParam base = n < 0 ? neg(a) : a;
    unsigned long long k = n < 0 ? -(unsigned long long)n : (unsigned long long)n;
    NodalParam acc = NodalParam::infinity(a.field);
    for (unsigned long long i = 0; i < k; i++) acc = add(acc, base);
    return acc;
}

NodalParam third_intersection(const NodalParam& a, const NodalParam& b) {
    return neg(add(a, b));
}

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
    const auto& u = a.coords;
    const auto& v = b.coords;
    const auto& w = c.coords;
    FieldElem det = u[0] * (v[1] * w[2] - v[2] * w[1]) -
                    u[1] * (v[0] * w[2] - v[2] * w[0]) +
                    u[2] * (v[0] * w[1] - v[1] * w[0]);
    return det.is_zero();
}

bool ConstructionResult::ok() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

ConstructionResult verify_construction(const std::map<std::string, NodalParam>& p) {
    for (const char* need : {"p1", "p2", "p4", "p5"})
        if (!p.count(need))
            throw InputError(std::string("missing parameter ") + need);
    FieldPtr f = p.at("p1").field;
    reject_char3(f);
    NodalParam flex1 = NodalParam::from_int(f, 0);

    ConstructionResult res{NodalParam::infinity(f), NodalParam::infinity(f), {}, {}};
    res.p3 = sub(sub(flex1, p.at("p1")), p.at("p2"));
    res.p6 = sub(sub(flex1, p.at("p4")), p.at("p5"));

    auto report = [&](const std::string& name, bool pass, const std::string& note) {
        CheckResult c;
        c.name = name;
        c.status = pass ? CheckStatus::pass : CheckStatus::fail;
        c.note = note;
        res.checks.push_back(c);
    };

    // degenerate choices: repeated points, or a forced point landing on a
    // flex (the flexes are reserved for the construction itself)
    std::vector<NodalParam> flexes = {NodalParam::infinity(f),
                                      NodalParam::from_int(f, 0),
                                      NodalParam::from_int(f, -1)};
    std::vector<NodalParam> six = {p.at("p1"), p.at("p2"), res.p3,
                                   p.at("p4"), p.at("p5"), res.p6};
    bool distinct = true;
    for (size_t i = 0; i < six.size() && distinct; i++) {
        for (size_t j = i + 1; j < six.size(); j++)
            if (six[i] == six[j]) distinct = false;
        for (const auto& fl : flexes)
            if (six[i] == fl) distinct = false;
    }
    report("points_distinct", distinct,
           "p1, p2, p3, p4, p5, p6 must be distinct and avoid the flexes");

    NodalParam q = add(add(p.at("p1"), p.at("p2")), res.p3);
    report("sum_nonzero", !q.is_identity(),
           "p1 + p2 + p3 = " + q.str() + ", must not be the identity");
    report("sum_torsion3", mul_int(q, 3).is_identity(),
           "3 (p1 + p2 + p3) = " + mul_int(q, 3).str());

    NodalParam q2 = add(add(p.at("p4"), p.at("p5")), res.p6);
    report("second_sum_matches", q2 == q,
           "p4 + p5 + p6 = " + q2.str() + ", expected " + q.str());

    if (p.count("p7") && p.count("p8")) {
        NodalParam p9 = third_intersection(p.at("p7"), p.at("p8"));
        res.p9 = p9;
        bool col = collinear(param_to_point(p.at("p7")), param_to_point(p.at("p8")),
                             param_to_point(p9));
        report("p9_on_line", col, "p9 = " + p9.str());
    }
    return res;
}

}  // namespace hconst
