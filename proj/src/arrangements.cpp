#include "hconst/arrangements.hpp"

#include <algorithm>
#include <sstream>

namespace hconst {

namespace {

// scale so the last nonzero coordinate is 1
void canonicalize(std::vector<FieldElem>& v) {
    for (int i = 2; i >= 0; i--) {
        if (!v[i].is_zero()) {
            FieldElem inv = v[i].inverse();
            for (auto& c : v) c = c * inv;
            return;
        }
    }
    throw InputError("zero coefficient triple");
}

bool same_triple(const std::vector<FieldElem>& a, const std::vector<FieldElem>& b) {
    return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

std::string triple_str(const std::vector<FieldElem>& v) {
    return "(" + v[0].str() + " : " + v[1].str() + " : " + v[2].str() + ")";
}

}  // namespace

void LineSet::add_line(FieldElem a, FieldElem b, FieldElem c) {
    std::vector<FieldElem> v = {std::move(a), std::move(b), std::move(c)};
    canonicalize(v);
    for (const auto& l : lines)
        if (same_triple(l, v))
            throw InputError("duplicate line " + triple_str(v));
    lines.push_back(std::move(v));
}

std::string LineSet::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < lines.size(); i++) {
        if (i) os << "\n";
        os << triple_str(lines[i]);
    }
    return os.str();
}

namespace {

FieldPtr plane_field(fq::u64 q) {
    fq::u64 p = 2;
    while (p * p <= q && q % p) p++;
    if (q % p) p = q;  // q itself is prime
    fq::u64 pw = p;
    unsigned k = 1;
    while (pw < q) {
        pw *= p;
        k++;
    }
    if (pw != q) throw InputError(std::to_string(q) + " is not a prime power");
    FieldPtr f = finite_field(p);
    if (k > 1) f = extend_finite_field(f, k).first;
    return f;
}

// canonical projective representatives: (1:b:c), (0:1:c), (0:0:1)
std::vector<std::vector<FieldElem>> proj_points(const FieldPtr& f) {
    fq::u64 q = f->order();
    auto at = [&](fq::u64 i) { return FieldElem(f, fq::elem_at(f->ctx(), i)); };
    FieldElem z = FieldElem::zero(f), o = FieldElem::one(f);
    std::vector<std::vector<FieldElem>> out;
    for (fq::u64 b = 0; b < q; b++)
        for (fq::u64 c = 0; c < q; c++)
            out.push_back({o, at(b), at(c)});
    for (fq::u64 c = 0; c < q; c++) out.push_back({z, o, at(c)});
    out.push_back({z, z, o});
    return out;
}

}  // namespace

LineSet finite_plane_lines(fq::u64 q) {
    LineSet ls;
    ls.field = plane_field(q);
    for (auto& t : proj_points(ls.field)) ls.add_line(t[0], t[1], t[2]);
    return ls;
}

LineSet finite_plane_lines_avoiding(fq::u64 q, const std::vector<long long>& point) {
    if (point.size() != 3) throw InputError("a projective point needs 3 coordinates");
    LineSet ls;
    ls.field = plane_field(q);
    std::vector<FieldElem> p;
    for (long long c : point) p.push_back(FieldElem::from_int(ls.field, c));
    for (auto& t : proj_points(ls.field)) {
        FieldElem dot = t[0] * p[0] + t[1] * p[1] + t[2] * p[2];
        if (!dot.is_zero()) ls.add_line(t[0], t[1], t[2]);
    }
    return ls;
}

LineSet fermat_arrangement(unsigned n, const FieldPtr& field, unsigned ext_bound) {
    if (n == 0) throw InputError("fermat arrangement needs n >= 1");
    if (field->characteristic != 0 && n % field->characteristic == 0)
        throw InputError("x^n - 1 is not separable in characteristic " +
                         std::to_string(field->characteristic));
    std::vector<FieldElem> unity;
    FieldPtr f = field;
    {
        std::vector<FieldElem> c(n + 1, FieldElem::zero(f));
        c[0] = -FieldElem::one(f);
        c[n] = FieldElem::one(f);
        UniPoly xn1 = UniPoly::from_coeffs(f, c);
        auto base_roots = find_roots(xn1);
        if (base_roots.size() == n) {
            for (auto& [r, m] : base_roots) unity.push_back(r);
        } else {
            SplitResult sp = extend_to_split(xn1, ext_bound);
            f = sp.field;
            for (auto& [r, m] : sp.roots) unity.push_back(r);
        }
    }
    LineSet ls;
    ls.field = f;
    FieldElem z = FieldElem::zero(f), o = FieldElem::one(f);
    for (const auto& zeta : unity) ls.add_line(o, -zeta, z);
    for (const auto& zeta : unity) ls.add_line(o, z, -zeta);
    for (const auto& zeta : unity) ls.add_line(z, o, -zeta);
    return ls;
}

IncidenceData incidence_data(const LineSet& ls) {
    if (ls.lines.size() < 2) throw InputError("need at least two lines");
    IncidenceData data;
    auto cross = [](const std::vector<FieldElem>& a, const std::vector<FieldElem>& b) {
        return std::vector<FieldElem>{a[1] * b[2] - a[2] * b[1],
                                      a[2] * b[0] - a[0] * b[2],
                                      a[0] * b[1] - a[1] * b[0]};
    };
    for (size_t i = 0; i < ls.lines.size(); i++)
        for (size_t j = i + 1; j < ls.lines.size(); j++) {
            std::vector<FieldElem> pt = cross(ls.lines[i], ls.lines[j]);
            canonicalize(pt);
            bool seen = false;
            for (const auto& known : data.points)
                if (same_triple(known.coords, pt)) {
                    seen = true;
                    break;
                }
            if (!seen) data.points.push_back({pt, 0});
        }
    for (auto& pt : data.points) {
        for (const auto& l : ls.lines) {
            FieldElem dot = l[0] * pt.coords[0] + l[1] * pt.coords[1] +
                            l[2] * pt.coords[2];
            if (dot.is_zero()) pt.mult++;
        }
        data.t[pt.mult]++;
    }
    // double count: sum C(m,2) over points equals C(#lines, 2)
    long long pairs = 0;
    for (const auto& pt : data.points)
        pairs += (long long)pt.mult * (pt.mult - 1) / 2;
    long long n = (long long)ls.lines.size();
    if (pairs != n * (n - 1) / 2)
        throw InputError("incidence double count failed; lines are not distinct");
    return data;
}

CurveReport arrangement_report(const LineSet& ls) {
    IncidenceData inc = incidence_data(ls);
    MultSeq seq;
    seq.degree = (unsigned)ls.lines.size();
    seq.components = (unsigned)ls.lines.size();
    seq.genus_list = std::vector<long long>(ls.lines.size(), 0);
    long long mu = 0;
    for (const auto& pt : inc.points)
        if (pt.mult >= 2) {
            seq.entries.push_back({pt.mult, true});
            mu += (long long)(pt.mult - 1) * (pt.mult - 1);
        }
    seq.normalize();
    ReportOptions opt;
    opt.mu_total = mu;
    opt.irreducible = ls.lines.size() == 1;
    CurveReport rep = make_report(seq, opt);
    rep.checks.push_back(check_hirzebruch(inc.t, (unsigned)ls.lines.size()));
    return rep;
}

MultiPoly arrangement_polynomial(const LineSet& ls) {
    if (ls.lines.empty()) throw InputError("empty arrangement");
    std::vector<std::string> vars = {"x", "y", "z"};
    MultiPoly prod = MultiPoly::constant(ls.field, vars, FieldElem::one(ls.field));
    for (const auto& l : ls.lines) {
        MultiPoly form = MultiPoly::zero(ls.field, vars);
        for (unsigned i = 0; i < 3; i++) {
            Exponents e(3, 0);
            e[i] = 1;
            form = form + MultiPoly::monomial(ls.field, vars, e, l[i]);
        }
        prod = prod * form;
    }
    return prod;
}

}  // namespace hconst
