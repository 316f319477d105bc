#include "hconst/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace hconst {

namespace {

const std::vector<std::string> kXY = {"x", "y"};

// evaluate f with each variable replaced by a polynomial of another ring
MultiPoly poly_apply(const MultiPoly& f, const std::vector<MultiPoly>& images) {
    if (images.size() != f.vars().size()) throw std::logic_error("poly_apply arity");
    const FieldPtr& F = images[0].field();
    const auto& vars = images[0].vars();
    std::vector<std::vector<MultiPoly>> pw(images.size());
    for (size_t i = 0; i < images.size(); ++i)
        pw[i].push_back(MultiPoly::constant(F, vars, FieldElem::one(F)));
    MultiPoly acc(F, vars);
    for (const auto& [e, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(F, vars, c);
        for (size_t i = 0; i < e.size(); ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * images[i]);
            if (e[i]) t = t * pw[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

FieldElem map_into(const Embedding& emb, const FieldElem& a) { return emb.map(a); }

struct ScanRng {
    fq::u64 state;
    fq::u64 next() {
        fq::u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

FieldElem normalize_last(std::vector<FieldElem>& v) {
    for (size_t i = v.size(); i-- > 0;) {
        if (!v[i].is_zero()) {
            FieldElem s = v[i].inverse();
            for (auto& c : v) c = c * s;
            return s;
        }
    }
    throw std::logic_error("zero projective point");
}

// resultant of univariate polynomials by the Euclidean remainder sequence
FieldElem uni_resultant(UniPoly a, UniPoly b) {
    const FieldPtr& F = a.fld;
    if (a.is_zero() || b.is_zero()) return FieldElem::zero(F);
    FieldElem s = FieldElem::one(F);
    while (b.deg() > 0) {
        UniPoly q, r;
        uni_divrem(a, b, q, r);
        if (r.is_zero()) return FieldElem::zero(F);
        if ((a.deg() * b.deg()) % 2) s = -s;
        s = s * b.lead().pow((unsigned long)(a.deg() - r.deg()));
        a = b;
        b = r;
    }
    return s * b.c[0].pow((unsigned long)a.deg());
}

}  // namespace

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < coords.size(); ++i) os << (i ? " : " : "") << coords[i].str();
    os << ")";
    return os.str();
}

bool ProjPoint::same_as(const ProjPoint& o) const {
    return field->spec_string() == o.field->spec_string() && str() == o.str();
}

MultiPoly local_equation(const MultiPoly& f, const ProjPoint& p) {
    const FieldPtr& F = p.field;
    Embedding emb = f.field()->same(*F) ? Embedding::identity(F) : embed_field(f.field(), F);
    MultiPoly g = f.map_field(emb);
    size_t chart = 0;
    for (size_t i = p.coords.size(); i-- > 0;)
        if (!p.coords[i].is_zero()) {
            chart = i;
            break;
        }
    std::vector<MultiPoly> images;
    size_t next_affine = 0;
    for (size_t i = 0; i < p.coords.size(); ++i) {
        if (i == chart) {
            images.push_back(MultiPoly::constant(F, kXY, FieldElem::one(F)));
        } else {
            MultiPoly v = MultiPoly::variable(F, kXY, next_affine++);
            images.push_back(v + MultiPoly::constant(F, kXY, p.coords[i]));
        }
    }
    MultiPoly germ = poly_apply(g, images);
    if (germ.is_zero() ||
        !germ.eval({FieldElem::zero(F), FieldElem::zero(F)}).is_zero())
        throw InputError("point " + p.str() + " does not lie on the curve");
    return germ;
}

std::vector<BlowupChild> blowup_step(const MultiPoly& germ, unsigned ext_bound) {
    const FieldPtr& F = germ.field();
    unsigned m = germ.order_at_origin();
    MultiPoly cone = germ.lowest_form();
    UniPoly u = cone.substitute_value(0, FieldElem::one(F)).to_unipoly(1);

    std::vector<BlowupChild> children;
    MultiPoly X = MultiPoly::variable(F, kXY, 0), Y = MultiPoly::variable(F, kXY, 1);
    if (u.deg() >= 1) {
        MultiPoly fa = div_exact(germ.compose({X, X * Y}),
                                 MultiPoly::variable(F, kXY, 0).pow(m));
        SplitResult sp;
        if (F->is_rational()) {
            // over Q only rational tangent directions can be followed
            sp = SplitResult{F, Embedding::identity(F), find_roots(u)};
            unsigned count = 0;
            for (const auto& [r, mult] : sp.roots) count += mult;
            if ((int)count != u.deg())
                throw ExtensionExceeded("tangent directions are not rational; "
                                        "analyze over finite reductions instead");
        } else {
            sp = extend_to_split(u, ext_bound);
        }
        MultiPoly fae = fa.map_field(sp.emb);
        for (const auto& [a, mult] : sp.roots) {
            MultiPoly shift = MultiPoly::variable(sp.field, kXY, 1) +
                              MultiPoly::constant(sp.field, kXY, a);
            children.push_back({fae.substitute(1, shift), "A:y=" + a.str()});
        }
    }
    if (u.deg() < (int)m) {
        // the direction (0 : 1), visible only in the second chart
        children.push_back({div_exact(germ.compose({X * Y, Y}),
                                      MultiPoly::variable(F, kXY, 1).pow(m)),
                            "B:(0:1)"});
    }
    return children;
}

namespace {

InfNearNode resolve_rec(const MultiPoly& germ, const std::string& label, unsigned ext_bound,
                        unsigned depth) {
    if (depth > 512)
        throw InputError("resolution does not terminate; the curve is not reduced");
    InfNearNode node;
    node.depth = depth;
    node.local_equation = germ;
    node.chart_label = label;
    node.multiplicity = germ.order_at_origin();
    if (node.multiplicity == 0) throw std::logic_error("germ does not pass through the point");
    if (node.multiplicity == 1) return node;
    for (const BlowupChild& child : blowup_step(germ, ext_bound))
        node.children.push_back(resolve_rec(child.equation, child.chart_label, ext_bound, depth + 1));
    return node;
}

// breadth-first multiplicity sequence plus the delta / branch totals
void walk(const InfNearNode& root, std::vector<unsigned>& seq, unsigned& delta,
          unsigned& leaves) {
    std::vector<const InfNearNode*> queue = {&root};
    for (size_t i = 0; i < queue.size(); ++i) {
        const InfNearNode* n = queue[i];
        if (n->multiplicity >= 2) seq.push_back(n->multiplicity);
        delta += n->multiplicity * (n->multiplicity - 1) / 2;
        if (n->children.empty()) ++leaves;
        for (const auto& c : n->children) queue.push_back(&c);
    }
}

}  // namespace

InfNearNode resolve_point(const MultiPoly& germ, unsigned ext_bound) {
    return resolve_rec(germ, "root", ext_bound, 0);
}

SingularityRecord analyze_point(const MultiPoly& f, const ProjPoint& p,
                                const ResolutionOptions& opt) {
    SingularityRecord rec;
    rec.point = p;
    MultiPoly germ = local_equation(f, p);
    rec.tree = resolve_point(germ, opt.ext_bound);
    walk(rec.tree, rec.mult_sequence, rec.delta, rec.branches);
    rec.mu = 2 * rec.delta - rec.branches + 1;
    unsigned m = rec.tree.multiplicity;
    rec.ordinary = rec.tree.children.size() == m;
    for (const auto& c : rec.tree.children)
        if (c.multiplicity != 1) rec.ordinary = false;
    return rec;
}

// ---------------------------------------------------------------------------
// locating singular points

namespace {

struct LevelField {
    FieldPtr field;
    Embedding emb;  // base field into this level
};

// singular points of f on the affine chart z = 1 with coordinates in F,
// by brute enumeration (fp, fpx, fpy already over F)
void brute_chart_scan(const MultiPoly& fp, const MultiPoly& fpx, const MultiPoly& fpy,
                      std::vector<std::vector<FieldElem>>& out) {
    const FieldPtr& F = fp.field();
    FieldElem one = FieldElem::one(F);
    for (fq::u64 ix = 0; ix < F->order(); ++ix) {
        FieldElem x0(F, fq::elem_at(F->ctx(), ix));
        std::vector<FieldElem> vals = {x0, one, one};
        UniPoly ug = fp.specialize(1, vals);
        UniPoly ugx = fpx.specialize(1, vals);
        UniPoly ugy = fpy.specialize(1, vals);
        for (fq::u64 iy = 0; iy < F->order(); ++iy) {
            FieldElem y0(F, fq::elem_at(F->ctx(), iy));
            if (!ug.eval(y0).is_zero()) continue;
            if (!ugx.eval(y0).is_zero()) continue;
            if (!ugy.eval(y0).is_zero()) continue;
            out.push_back({x0, y0, one});
        }
    }
}

// singular points on the chart z = 1 found by eliminating y:
// sample-and-interpolate Res_y(g, g_x), then a per-root univariate gcd.
// Requires the coefficient of y^d in f to be a nonzero constant.
// Returns false when the resultant degenerates (new coordinates needed).
bool elim_chart_scan(const MultiPoly& fp, const MultiPoly& fpx, const MultiPoly& fpy,
                     unsigned degree, std::vector<std::vector<FieldElem>>& out) {
    const FieldPtr& F = fp.field();
    FieldElem one = FieldElem::one(F);
    int dgx = -1;  // generic y-degree of g_x
    {
        std::vector<MultiPoly> cs = fpx.dehomogenize(2).coeffs_in(1);
        dgx = (int)cs.size() - 1;
        while (dgx >= 0 && cs[(size_t)dgx].is_zero()) --dgx;
    }
    if (dgx < 0) return false;
    FieldElem lead_g = fp.eval({FieldElem::zero(F), one, FieldElem::zero(F)});

    unsigned D = degree * (degree - 1);  // Bezout bound on deg Res
    std::vector<fq::Elem> xs, ys;
    for (fq::u64 i = 0; xs.size() < (size_t)D + 1; ++i) {
        if (i >= F->order()) return false;
        FieldElem c(F, fq::elem_at(F->ctx(), i));
        std::vector<FieldElem> vals = {c, one, one};
        UniPoly gc = fp.specialize(1, vals);
        UniPoly gxc = fpx.specialize(1, vals);
        FieldElem val = FieldElem::zero(F);
        if (!gxc.is_zero()) {
            // degree drop in the second argument scales by the (constant) lead of g
            val = lead_g.pow((unsigned long)(dgx - gxc.deg())) * uni_resultant(gc, gxc);
        }
        xs.push_back(c.res());
        ys.push_back(val.res());
    }
    fq::Poly R = fq::poly_interpolate(F->ctx(), xs, ys);
    if (R.zero()) return false;

    for (const auto& [xr, mult] : fq::poly_roots(F->ctx(), R)) {
        FieldElem x0(F, xr);
        std::vector<FieldElem> vals = {x0, one, one};
        UniPoly h = uni_gcd(fp.specialize(1, vals), fpx.specialize(1, vals));
        h = uni_gcd(h, fpy.specialize(1, vals));
        if (h.deg() < 1) continue;
        for (const auto& [y0, ym] : find_roots(h)) out.push_back({x0, y0, one});
    }
    return true;
}

}  // namespace

std::vector<ProjPoint> find_singular_points(const MultiPoly& f, const ResolutionOptions& opt) {
    const FieldPtr& base = f.field();
    if (base->is_rational()) throw std::logic_error("find_singular_points needs a finite field");
    int d;
    if (!f.is_homogeneous(&d) || d < 1) throw InputError("curve must be homogeneous of positive degree");
    if (f.vars().size() != 3) throw InputError("curve must be a form in three variables");

    unsigned k = base->degree();
    ScanRng rng{0x51CA12ULL ^ (opt.seed * 0x9e3779b97f4a7c15ULL) ^ base->order()};

    // Coordinate change over the base field, needed only by the elimination
    // tier: the images of (1 : 0 : 0) and (0 : 1 : 0) must avoid the curve,
    // so that no component becomes horizontal and the y-lead stays constant.
    // The brute tier runs in the identity coordinates, where no such point
    // need exist (tiny fields).
    FieldElem b0 = FieldElem::zero(base), b1 = FieldElem::one(base);
    std::vector<std::vector<FieldElem>> M = {{b1, b0, b0}, {b0, b1, b0}, {b0, b0, b1}};
    auto draw_matrix = [&]() {
        for (int tries = 0; tries < 4096; ++tries) {
            std::vector<std::vector<FieldElem>> cand(3);
            for (auto& row : cand)
                for (int j = 0; j < 3; ++j)
                    row.push_back(FieldElem(base, fq::elem_at(base->ctx(), rng.next() % base->order())));
            FieldElem det =
                cand[0][0] * (cand[1][1] * cand[2][2] - cand[1][2] * cand[2][1]) -
                cand[0][1] * (cand[1][0] * cand[2][2] - cand[1][2] * cand[2][0]) +
                cand[0][2] * (cand[1][0] * cand[2][1] - cand[1][1] * cand[2][0]);
            if (det.is_zero()) continue;
            if (f.eval({cand[0][1], cand[1][1], cand[2][1]}).is_zero()) continue;
            if (f.eval({cand[0][0], cand[1][0], cand[2][0]}).is_zero()) continue;
            M = cand;
            return;
        }
        throw InputError("no coordinate system separates the curve from a point");
    };
    bool matrix_drawn = false;

    auto transform = [&](const std::vector<std::vector<FieldElem>>& mat) {
        std::vector<MultiPoly> images;
        for (int i = 0; i < 3; ++i) {
            MultiPoly row(base, f.vars());
            for (int j = 0; j < 3; ++j)
                row = row + MultiPoly::variable(base, f.vars(), (size_t)j).scale(mat[(size_t)i][(size_t)j]);
            images.push_back(row);
        }
        return f.compose(images);
    };
    MultiPoly ft = transform(M);

    // the line z = 0 of the new coordinates: common roots of four binary forms
    auto line_gcd = [&](const MultiPoly& g) {
        FieldElem zero = FieldElem::zero(base);
        auto at_line = [&](const MultiPoly& h) {
            return h.substitute_value(2, zero)
                .substitute_value(0, FieldElem::one(base))
                .to_unipoly(1);
        };
        UniPoly G = at_line(g);
        for (size_t v = 0; v < 3; ++v) G = uni_gcd(G, at_line(g.derivative(v)));
        return G;
    };
    UniPoly G = line_gcd(ft);

    unsigned elim_min = (unsigned)d * (unsigned)(d - 1) + 2 * (unsigned)d + 9;
    std::vector<ProjPoint> found;
    unsigned empty_run = 0;
    for (unsigned level = 1;; ++level) {
        if (level > opt.ext_bound)
            throw ExtensionExceeded("singular point search exceeded the extension bound");
        LevelField lf;
        if (level == 1) {
            lf = {base, Embedding::identity(base)};
        } else {
            auto [ext, emb] = extend_finite_field(base, level);
            lf = {ext, emb};
        }
        MultiPoly fl = ft.map_field(lf.emb);
        std::vector<std::vector<FieldElem>> raw;

        bool ok = false;
        int retries = 0;
        while (!ok) {
            raw.clear();
            if (lf.field->order() < elim_min) {
                brute_chart_scan(fl, fl.derivative(0), fl.derivative(1), raw);
                ok = true;
            } else {
                if (!matrix_drawn) {
                    draw_matrix();
                    matrix_drawn = true;
                    ft = transform(M);
                    G = line_gcd(ft);
                    fl = ft.map_field(lf.emb);
                }
                ok = elim_chart_scan(fl, fl.derivative(0), fl.derivative(1), (unsigned)d, raw);
                if (!ok) {  // degenerate coordinates: redraw and restart the level
                    if (++retries > 40)
                        throw InputError("singular point elimination keeps degenerating");
                    draw_matrix();
                    ft = transform(M);
                    G = line_gcd(ft);
                    fl = ft.map_field(lf.emb);
                }
            }
        }
        // points on the line z = 0
        for (const auto& [y0, m] : find_roots(G.map_field(lf.emb)))
            raw.push_back({FieldElem::one(lf.field), y0, FieldElem::zero(lf.field)});
        // the remaining point (0 : 1 : 0) of that line, rational, level 1 only
        if (level == 1) {
            std::vector<FieldElem> apex = {b0, b1, b0};
            bool sing = ft.eval(apex).is_zero();
            for (size_t v = 0; v < 3 && sing; ++v)
                sing = ft.derivative(v).eval(apex).is_zero();
            if (sing) raw.push_back(apex);
        }

        unsigned new_points = 0;
        for (auto& v : raw) {
            bool minimal = true;
            for (unsigned i = 1; i < level && minimal; ++i) {
                if (level % i != 0) continue;
                bool inside = true;
                for (const auto& c : v)
                    if (!fq::in_subfield(lf.field->ctx(), c.res(), k * i)) {
                        inside = false;
                        break;
                    }
                if (inside) minimal = false;
            }
            if (!minimal) continue;
            // map back through the coordinate change
            std::vector<FieldElem> w;
            for (int i = 0; i < 3; ++i) {
                FieldElem s = FieldElem::zero(lf.field);
                for (int j = 0; j < 3; ++j)
                    s = s + map_into(lf.emb, M[(size_t)i][(size_t)j]) * v[(size_t)j];
                w.push_back(s);
            }
            normalize_last(w);
            found.push_back({lf.field, w, level});
            ++new_points;
        }
        empty_run = new_points == 0 ? empty_run + 1 : 0;
        if (empty_run >= opt.stable_window) break;
    }
    std::sort(found.begin(), found.end(), [](const ProjPoint& a, const ProjPoint& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.str() < b.str();
    });
    return found;
}

// ---------------------------------------------------------------------------

CurveAnalysis analyze_curve_finite(const MultiPoly& f, const ResolutionOptions& opt) {
    if (!is_squarefree_curve(f, opt.ext_bound)) throw InputError("curve is not reduced");
    CurveAnalysis out;
    out.degree = (unsigned)f.total_degree();
    out.base_order = f.field()->order();
    for (const ProjPoint& p : find_singular_points(f, opt))
        out.points.push_back(analyze_point(f, p, opt));
    return out;
}

namespace {

// order-independent signature of the global singularity data of one analysis
std::string signature(const CurveAnalysis& a) {
    std::vector<std::string> parts;
    for (const auto& r : a.points) {
        std::ostringstream os;
        os << r.tree.multiplicity << "|";
        for (unsigned m : r.mult_sequence) os << m << ",";
        // the extension level is omitted: conjugate points may split
        // differently under different reduction primes
        os << "|" << r.delta << "|" << r.branches << "|" << r.ordinary;
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string s = std::to_string(a.degree) + "#";
    for (const auto& p : parts) s += p + ";";
    return s;
}

}  // namespace

CurveAnalysis analyze_curve(const MultiPoly& f, const ResolutionOptions& opt) {
    if (!f.field()->is_rational()) return analyze_curve_finite(f, opt);
    int d = f.total_degree();
    std::vector<std::pair<fq::u64, CurveAnalysis>> runs;
    for (fq::u64 p : opt.primes) {
        try {
            MultiPoly fp = f.reduce_mod(finite_field(p));
            if (fp.total_degree() != d) continue;
            CurveAnalysis a = analyze_curve_finite(fp, opt);
            runs.emplace_back(p, a);
        } catch (const InputError&) {
            continue;  // bad prime: denominator, degree drop or lost reducedness
        }
    }
    if (runs.size() < 2) throw InputError("too few good reduction primes; supply more primes");
    // all surviving primes must agree on the global multiplicity data
    for (size_t i = 1; i < runs.size(); ++i) {
        if (signature(runs[i].second) != signature(runs[0].second)) {
            std::ostringstream os;
            os << "reduction primes disagree on the singularity data:";
            for (const auto& [p, a] : runs) os << " p=" << p << " -> " << signature(a);
            throw DisagreementError(os.str());
        }
    }
    CurveAnalysis out = runs[0].second;
    for (const auto& [p, a] : runs) out.good_primes.push_back(p);
    return out;
}

}  // namespace hconst
