#include "hconst/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hconst {

namespace {

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool exp_divides(const Exponents& a, const Exponents& b) {  // a | b componentwise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

unsigned exp_total(const Exponents& e) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    return s;
}

}  // namespace

MultiPoly::MultiPoly(FieldPtr f, std::vector<std::string> vars)
    : fld_(std::move(f)), vars_(std::move(vars)) {}

MultiPoly MultiPoly::zero(const FieldPtr& f, const std::vector<std::string>& vars) {
    return MultiPoly(f, vars);
}

MultiPoly MultiPoly::constant(const FieldPtr& f, const std::vector<std::string>& vars,
                              const FieldElem& c) {
    MultiPoly r(f, vars);
    r.insert_term(Exponents(vars.size(), 0), c);
    return r;
}

MultiPoly MultiPoly::variable(const FieldPtr& f, const std::vector<std::string>& vars,
                              size_t index) {
    Exponents e(vars.size(), 0);
    e.at(index) = 1;
    return monomial(f, vars, e, FieldElem::one(f));
}

MultiPoly MultiPoly::monomial(const FieldPtr& f, const std::vector<std::string>& vars,
                              Exponents e, const FieldElem& c) {
    if (e.size() != vars.size()) throw std::logic_error("monomial exponent size");
    MultiPoly r(f, vars);
    r.insert_term(e, c);
    return r;
}

void MultiPoly::insert_term(const Exponents& e, const FieldElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

size_t MultiPoly::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw InputError("unknown variable: " + name);
}

bool MultiPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && exp_total(terms_.begin()->first) == 0);
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, (int)exp_total(e));
    return d;
}

int MultiPoly::degree_in(size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, (int)e.at(var));
    return d;
}

bool MultiPoly::is_homogeneous(int* degree_out) const {
    if (terms_.empty()) {
        if (degree_out) *degree_out = -1;
        return true;
    }
    unsigned d = exp_total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (exp_total(e) != d) return false;
    if (degree_out) *degree_out = (int)d;
    return true;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(fld_, vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(fld_, vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.insert_term(exp_add(ea, eb), ca * cb);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(fld_, vars_, FieldElem::one(fld_));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::scale(const FieldElem& s) const {
    MultiPoly r(fld_, vars_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (e != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

MultiPoly MultiPoly::derivative(size_t var) const {
    MultiPoly r(fld_, vars_);
    for (const auto& [e, c] : terms_) {
        if (e.at(var) == 0) continue;
        Exponents ne = e;
        ne[var] -= 1;
        r.insert_term(ne, c * FieldElem::from_int(fld_, (long long)e[var]));
    }
    return r;
}

FieldElem MultiPoly::eval(const std::vector<FieldElem>& point) const {
    if (point.size() != vars_.size()) throw std::logic_error("eval arity");
    std::vector<std::vector<FieldElem>> pw(vars_.size(), {FieldElem::one(fld_)});
    FieldElem acc = FieldElem::zero(fld_);
    for (const auto& [e, c] : terms_) {
        FieldElem t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * point[i]);
            if (e[i]) t = t * pw[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_.size()) throw std::logic_error("compose arity");
    std::vector<std::vector<MultiPoly>> pw(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i)
        pw[i].push_back(constant(fld_, vars_, FieldElem::one(fld_)));
    MultiPoly acc(fld_, vars_);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(fld_, vars_, c);
        for (size_t i = 0; i < e.size(); ++i) {
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * images[i]);
            if (e[i]) t = t * pw[i][e[i]];
        }
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(size_t var, const MultiPoly& image) const {
    std::vector<MultiPoly> images;
    for (size_t i = 0; i < vars_.size(); ++i)
        images.push_back(i == var ? image : variable(fld_, vars_, i));
    return compose(images);
}

MultiPoly MultiPoly::substitute_value(size_t var, const FieldElem& value) const {
    return substitute(var, constant(fld_, vars_, value));
}

unsigned MultiPoly::order_at_origin() const {
    if (terms_.empty()) throw std::logic_error("order of zero polynomial");
    unsigned m = UINT32_MAX;
    for (const auto& [e, c] : terms_) m = std::min(m, exp_total(e));
    return m;
}

MultiPoly MultiPoly::lowest_form() const {
    unsigned m = order_at_origin();
    MultiPoly r(fld_, vars_);
    for (const auto& [e, c] : terms_)
        if (exp_total(e) == m) r.terms_.emplace(e, c);
    return r;
}

MultiPoly MultiPoly::dehomogenize(size_t var) const {
    MultiPoly r(fld_, vars_);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        ne[var] = 0;
        r.insert_term(ne, c);
    }
    return r;
}

MultiPoly MultiPoly::homogenize(size_t var, unsigned degree) const {
    MultiPoly r(fld_, vars_);
    for (const auto& [e, c] : terms_) {
        unsigned d = exp_total(e);
        if (d > degree) throw InputError("homogenize: degree too small");
        Exponents ne = e;
        ne[var] += degree - d;
        r.insert_term(ne, c);
    }
    return r;
}

UniPoly MultiPoly::to_unipoly(size_t var) const {
    int d = degree_in(var);
    std::vector<FieldElem> cs((size_t)std::max(d + 1, 0), FieldElem::zero(fld_));
    for (const auto& [e, c] : terms_) {
        for (size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0) throw std::logic_error("to_unipoly: extra variable");
        cs[e[var]] = c;
    }
    return uni_trim({fld_, std::move(cs)});
}

MultiPoly MultiPoly::from_unipoly(const UniPoly& u, const std::vector<std::string>& vars,
                                  size_t var) {
    MultiPoly r(u.fld, vars);
    for (size_t i = 0; i < u.c.size(); ++i) {
        Exponents e(vars.size(), 0);
        e.at(var) = (unsigned)i;
        r.insert_term(e, u.c[i]);
    }
    return r;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(size_t var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> cs((size_t)std::max(d + 1, 0), MultiPoly(fld_, vars_));
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        ne[var] = 0;
        cs[e[var]].insert_term(ne, c);
    }
    return cs;
}

UniPoly MultiPoly::specialize(size_t kept, const std::vector<FieldElem>& values) const {
    if (values.size() != vars_.size()) throw std::logic_error("specialize arity");
    std::vector<std::vector<FieldElem>> pw(vars_.size(), {FieldElem::one(fld_)});
    int d = degree_in(kept);
    std::vector<FieldElem> cs((size_t)std::max(d + 1, 0), FieldElem::zero(fld_));
    for (const auto& [e, c] : terms_) {
        FieldElem t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (i == kept || e[i] == 0) continue;
            while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * values[i]);
            t = t * pw[i][e[i]];
        }
        cs[e[kept]] = cs[e[kept]] + t;
    }
    return uni_trim({fld_, std::move(cs)});
}

MultiPoly MultiPoly::map_field(const Embedding& e) const {
    MultiPoly r(e.to, vars_);
    for (const auto& [ex, c] : terms_) r.terms_.emplace(ex, e.map(c));
    return r;
}

MultiPoly MultiPoly::reduce_mod(const FieldPtr& fp) const {
    MultiPoly r(fp, vars_);
    for (const auto& [e, c] : terms_) r.insert_term(e, rational_reduce(c, fp));
    return r;
}

MultiPoly MultiPoly::normalized() const {
    if (terms_.empty()) return *this;
    return scale(terms_.rbegin()->second.inverse());
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        FieldElem c = it->second;
        std::string sep = " + ";
        if (fld_->is_rational() && c.rat() < 0) {
            sep = " - ";
            c = -c;
        }
        if (first) {
            if (sep == " - ") os << "-";
            first = false;
        } else {
            os << sep;
        }
        std::string cs = c.str();
        bool composite = cs.find_first_of("+*/") != std::string::npos ||
                         cs.find('-', 1) != std::string::npos || cs[0] == '-';
        std::vector<std::string> parts;
        for (size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = it->first[i];
            if (e == 0) continue;
            parts.push_back(e == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(e));
        }
        if (parts.empty()) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (composite ? "(" + cs + ")" : cs) << "*";
            for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const FieldPtr& fld;
    const std::vector<std::string>& vars;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at position " + std::to_string(pos) + ": " + msg);
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    MultiPoly expr() {
        bool neg = false;
        skip_ws();
        if (accept('-'))
            neg = true;
        else
            accept('+');
        MultiPoly r = term();
        if (neg) r = -r;
        while (true) {
            if (accept('+'))
                r = r + term();
            else if (accept('-'))
                r = r - term();
            else
                break;
        }
        return r;
    }

    MultiPoly term() {
        MultiPoly r = factor();
        while (accept('*')) r = r * factor();
        return r;
    }

    MultiPoly factor() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected exponent");
            unsigned long e = std::stoul(s.substr(start, pos - start));
            return base.pow((unsigned)e);
        }
        return base;
    }

    MultiPoly atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char ch = s[pos];
        if (ch == '(') {
            ++pos;
            MultiPoly r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit((unsigned char)ch)) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            mpq_class v(s.substr(start, pos - start));
            return MultiPoly::constant(fld, vars, FieldElem::from_mpq(fld, v));
        }
        if (std::isalpha((unsigned char)ch) || ch == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return MultiPoly::variable(fld, vars, i);
            if (name == "t" && !fld->is_rational() && fld->degree() > 1)
                return MultiPoly::constant(fld, vars, FieldElem::generator(fld));
            fail("unknown symbol: " + name);
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const FieldPtr& field,
                     const std::vector<std::string>& vars) {
    Parser p{text, 0, field, vars};
    MultiPoly r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

// ---------------------------------------------------------------------------
// exact division, gcd, squarefree parts

MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw InputError("division by zero polynomial");
    MultiPoly q(a.field(), a.vars());
    if (a.is_zero()) return q;
    if (b.is_constant()) return a.scale(b.terms().begin()->second.inverse());
    MultiPoly r = a;
    const auto& ltb = *b.terms_.rbegin();
    while (!r.is_zero()) {
        const auto& ltr = *r.terms_.rbegin();
        if (!exp_divides(ltb.first, ltr.first)) throw InputError("inexact division");
        MultiPoly m = MultiPoly::monomial(a.field(), a.vars(), exp_sub(ltr.first, ltb.first),
                                          ltr.second / ltb.second);
        q = q + m;
        r = r - m * b;
    }
    return q;
}

MultiPoly gcd_univariate(const MultiPoly& f, const MultiPoly& g) {
    size_t var = 0;
    bool found = false;
    for (size_t i = 0; i < f.vars().size(); ++i) {
        if (f.degree_in(i) > 0 || g.degree_in(i) > 0) {
            if (found) throw std::logic_error("gcd_univariate: several variables");
            var = i;
            found = true;
        }
    }
    if (!found) {
        FieldElem c = (f.is_zero() && g.is_zero()) ? FieldElem::zero(f.field())
                                                   : FieldElem::one(f.field());
        return MultiPoly::constant(f.field(), f.vars(), c);
    }
    UniPoly h = uni_gcd(f.to_unipoly(var), g.to_unipoly(var));
    return MultiPoly::from_unipoly(h, f.vars(), var);
}

namespace {

// p-th root of a univariate with zero derivative over F_{p^k}
UniPoly uni_pth_root(const UniPoly& f) {
    fq::u64 p = f.fld->characteristic;
    if (p == 0) throw std::logic_error("p-th root over Q");
    unsigned k = f.fld->degree();
    fq::u64 frob_inv = 1;
    for (unsigned i = 0; i + 1 < k; ++i) frob_inv *= p;
    std::vector<FieldElem> cs;
    for (size_t i = 0; i < f.c.size(); i += (size_t)p)
        cs.push_back(f.c[i].pow(frob_inv));
    return uni_trim({f.fld, std::move(cs)});
}

UniPoly uni_quot(const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    uni_divrem(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact univariate division");
    return q;
}

}  // namespace

UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero()) throw InputError("squarefree part of zero polynomial");
    UniPoly g = uni_monic(f);
    if (g.deg() == 0) return g;
    UniPoly d = uni_derivative(g);
    if (d.is_zero()) return squarefree_part(uni_pth_root(g));
    UniPoly c = uni_gcd(g, d);
    UniPoly w = uni_quot(g, c);  // factors of multiplicity not divisible by char
    UniPoly y = g;
    while (true) {
        UniPoly h = uni_gcd(y, w);
        if (h.deg() <= 0) break;
        y = uni_quot(y, h);
    }
    if (y.deg() <= 0) return uni_monic(w);
    return uni_monic(uni_mul(w, squarefree_part(y)));
}

MultiPoly squarefree_part(const MultiPoly& f, size_t var) {
    return MultiPoly::from_unipoly(squarefree_part(f.to_unipoly(var)), f.vars(), var);
}

// ---------------------------------------------------------------------------
// resultants

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, size_t var) {
    MultiPoly zero_p(f.field(), f.vars());
    if (f.is_zero() || g.is_zero()) return zero_p;
    std::vector<MultiPoly> fc = f.coeffs_in(var);
    std::vector<MultiPoly> gc = g.coeffs_in(var);
    int df = (int)fc.size() - 1, dg = (int)gc.size() - 1;
    MultiPoly one_p = MultiPoly::constant(f.field(), f.vars(), FieldElem::one(f.field()));
    if (df == 0) return fc[0].pow((unsigned)dg);
    if (dg == 0) return gc[0].pow((unsigned)df);

    int n = df + dg;
    std::vector<std::vector<MultiPoly>> a((size_t)n, std::vector<MultiPoly>((size_t)n, zero_p));
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) a[r][r + j] = fc[(size_t)(df - j)];
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) a[dg + r][r + j] = gc[(size_t)(dg - j)];

    // fraction-free Gaussian elimination
    int sign = 1;
    MultiPoly prev = one_p;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return zero_p;
            std::swap(a[(size_t)k], a[(size_t)piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num.is_zero() ? zero_p : div_exact(num, prev);
            }
            a[i][k] = zero_p;
        }
        prev = a[k][k];
    }
    MultiPoly det = a[(size_t)n - 1][(size_t)n - 1];
    return sign < 0 ? -det : det;
}

// ---------------------------------------------------------------------------
// perfect powers and implicitization

namespace {

// p-th root in characteristic p: exponents divide by p, Frobenius-invert coefficients
std::optional<MultiPoly> pth_root(const MultiPoly& f) {
    fq::u64 p = f.field()->characteristic;
    unsigned k = f.field()->degree();
    fq::u64 frob_inv = 1;
    for (unsigned i = 0; i + 1 < k; ++i) frob_inv *= p;
    MultiPoly r(f.field(), f.vars());
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(e.size());
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] % p != 0) return std::nullopt;
            ne[i] = (unsigned)(e[i] / p);
        }
        r = r + MultiPoly::monomial(f.field(), f.vars(), ne, c.pow(frob_inv));
    }
    return r;
}

std::optional<FieldElem> elem_root(const FieldElem& c, unsigned e) {
    const FieldPtr& f = c.field();
    if (f->is_rational()) {
        mpq_class v = c.rat();
        bool neg = v < 0;
        if (neg && e % 2 == 0) return std::nullopt;
        mpz_class num = neg ? mpz_class(-v.get_num()) : v.get_num();
        mpz_class den = v.get_den();
        mpz_class rn, rd;
        if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), e)) return std::nullopt;
        if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), e)) return std::nullopt;
        mpq_class root(neg ? mpq_class(-rn, rd) : mpq_class(rn, rd));
        root.canonicalize();
        return FieldElem(f, root);
    }
    UniPoly pe = UniPoly::zero(f);
    pe.c.assign(e + 1, FieldElem::zero(f));
    pe.c[0] = -c;
    pe.c[e] = FieldElem::one(f);
    auto roots = find_roots(uni_trim(pe));
    if (roots.empty()) return std::nullopt;
    FieldElem best = roots[0].first;
    for (const auto& [r, m] : roots)
        if (r < best) best = r;
    return best;
}

}  // namespace

std::optional<MultiPoly> perfect_power_root(const MultiPoly& f, unsigned e) {
    if (e == 0) throw std::logic_error("0-th root");
    if (e == 1 || f.is_zero()) return f;
    fq::u64 p = f.field()->characteristic;
    if (p != 0 && e % p == 0) {
        auto r = pth_root(f);
        if (!r) return std::nullopt;
        return perfect_power_root(*r, e / (unsigned)p);
    }
    const auto& lt = *f.terms().rbegin();
    Exponents head(lt.first.size());
    for (size_t i = 0; i < head.size(); ++i) {
        if (lt.first[i] % e != 0) return std::nullopt;
        head[i] = lt.first[i] / e;
    }
    auto c0 = elem_root(lt.second, e);
    if (!c0) return std::nullopt;
    MultiPoly g = MultiPoly::monomial(f.field(), f.vars(), head, *c0);
    FieldElem denom = FieldElem::from_int(f.field(), (long long)e) * c0->pow(e - 1);
    Exponents last = head;
    size_t guard = 4 * f.terms().size() * f.terms().size() + 64;
    while (guard--) {
        MultiPoly r = f - g.pow(e);
        if (r.is_zero()) return g;
        const auto& ltr = *r.terms().rbegin();
        Exponents shift(head.size());
        for (size_t i = 0; i < head.size(); ++i) {
            if (head[i] * (e - 1) > ltr.first[i]) return std::nullopt;
            shift[i] = ltr.first[i] - head[i] * (e - 1);
        }
        if (!(shift < last)) return std::nullopt;
        last = shift;
        g = g + MultiPoly::monomial(f.field(), f.vars(), shift, ltr.second / denom);
    }
    return std::nullopt;
}

ImplicitizeResult implicitize(const MultiPoly& fx, const MultiPoly& fy, const MultiPoly& fz) {
    const FieldPtr& F = fx.field();
    if (fx.vars().size() != 2)
        throw InputError("implicitize: parameterization must use two variables");
    int d = -1;
    for (const MultiPoly* f : {&fx, &fy, &fz}) {
        if (f->is_zero()) continue;
        int df;
        if (!f->is_homogeneous(&df)) throw InputError("implicitize: forms must be homogeneous");
        if (d < 0) d = df;
        if (df != d) throw InputError("implicitize: forms must share a degree");
    }
    if (d <= 0) throw InputError("implicitize: degenerate parameterization");

    // common-factor check: the gcd of the dehomogenizations plus an s-divisibility test
    std::vector<UniPoly> uf;
    bool all_div_s = true;
    for (const MultiPoly* f : {&fx, &fy, &fz}) {
        if (f->is_zero()) continue;
        UniPoly u = f->dehomogenize(0).to_unipoly(1);
        if (u.deg() == d) all_div_s = false;
        uf.push_back(u);
    }
    if (uf.size() < 2 || all_div_s)
        throw InputError("implicitize: forms share a common factor");
    UniPoly g = uf[0];
    for (size_t i = 1; i < uf.size(); ++i) g = uni_gcd(g, uf[i]);
    if (g.deg() > 0) throw InputError("implicitize: forms share a common factor");

    std::vector<std::string> vars = {"x", "y", "z", "t"};
    auto lift = [&](const MultiPoly& f) {
        return MultiPoly::from_unipoly(f.dehomogenize(0).to_unipoly(1), vars, 3);
    };
    MultiPoly X = MultiPoly::variable(F, vars, 0), Y = MultiPoly::variable(F, vars, 1);
    MultiPoly A = X * lift(fz) - lift(fx);
    MultiPoly B = Y * lift(fz) - lift(fy);
    MultiPoly h = resultant(A, B, 3).normalized();
    if (h.is_zero() || h.is_constant())
        throw InputError("implicitize: resultant degenerates");

    unsigned e = 1;
    for (unsigned ell = 2; ell <= (unsigned)h.total_degree(); ++ell) {
        bool prime = true;
        for (unsigned q = 2; q * q <= ell; ++q)
            if (ell % q == 0) prime = false;
        if (!prime) continue;
        while (h.total_degree() > 0 && (unsigned)h.total_degree() % ell == 0) {
            auto r = perfect_power_root(h, ell);
            if (!r) break;
            h = r->normalized();
            e *= ell;
        }
    }
    unsigned dh = (unsigned)h.total_degree();
    MultiPoly hom = h.homogenize(2, dh);
    // drop the eliminated parameter variable from the result
    MultiPoly curve(F, {"x", "y", "z"});
    for (const auto& [ex, c] : hom.terms())
        curve = curve + MultiPoly::monomial(F, curve.vars(), {ex[0], ex[1], ex[2]}, c);
    return {curve, e, dh, dh < (unsigned)d};
}

// ---------------------------------------------------------------------------
// line restrictions and the reducedness test

UniPoly restrict_to_line(const MultiPoly& f, const std::vector<FieldElem>& P,
                         const std::vector<FieldElem>& Q) {
    const FieldPtr& F = f.field();
    if (P.size() != f.vars().size() || Q.size() != P.size())
        throw std::logic_error("restrict_to_line arity");
    std::vector<std::vector<UniPoly>> pw(P.size());
    UniPoly one = UniPoly::from_coeffs(F, {FieldElem::one(F)});
    for (size_t i = 0; i < P.size(); ++i) pw[i].push_back(one);
    UniPoly acc = UniPoly::zero(F);
    for (const auto& [e, c] : f.terms()) {
        UniPoly t = UniPoly::from_coeffs(F, {c});
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            UniPoly lin = uni_trim(UniPoly{F, {P[i], Q[i]}});
            while (pw[i].size() <= e[i]) pw[i].push_back(uni_mul(pw[i].back(), lin));
            t = uni_mul(t, pw[i][e[i]]);
        }
        acc = uni_add(acc, t);
    }
    return acc;
}

namespace {

struct LineRng {
    fq::u64 state;
    fq::u64 next() {
        fq::u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

bool is_squarefree_curve(const MultiPoly& f, unsigned /*ext_bound*/) {
    if (f.is_zero()) return false;
    const FieldPtr& F0 = f.field();
    if (F0->is_rational()) throw std::logic_error("is_squarefree_curve needs a finite field");
    int d;
    if (!f.is_homogeneous(&d)) throw InputError("curve must be homogeneous");
    if (d == 0) return true;

    // work over an extension large enough that random lines miss the bad locus
    unsigned m = 1;
    fq::u64 sz = F0->order();
    while (sz < 1009) {
        ++m;
        sz *= F0->order();
    }
    FieldPtr F = F0;
    MultiPoly g = f;
    if (m > 1) {
        auto [ext, emb] = extend_finite_field(F0, m);
        F = ext;
        g = f.map_field(emb);
    }

    LineRng rng{0x5eedULL ^ F->order()};
    auto rand_elem = [&]() {
        return FieldElem(F, fq::elem_at(F->ctx(), rng.next() % F->order()));
    };
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<FieldElem> P = {rand_elem(), rand_elem(), rand_elem()};
        std::vector<FieldElem> Q = {rand_elem(), rand_elem(), rand_elem()};
        // require P, Q to span a line
        bool indep = false;
        for (int i = 0; i < 3 && !indep; ++i)
            for (int j = i + 1; j < 3 && !indep; ++j)
                if (P[i] * Q[j] != P[j] * Q[i]) indep = true;
        if (!indep) {
            --trial;
            continue;
        }
        UniPoly u = restrict_to_line(g, P, Q);
        if (u.is_zero()) continue;  // the line is a component; resample
        int s_mult = d - u.deg();   // multiplicity of the factor at t = infinity
        if (s_mult <= 1 && squarefree_part(u).deg() == u.deg()) return true;
    }
    return false;
}

}  // namespace hconst
