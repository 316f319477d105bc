#include "hconst/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hconst {

using fq::u64;

std::string Field::spec_string() const {
    if (is_rational()) return "Q";
    if (degree() == 1) return "GF(" + std::to_string(characteristic) + ")";
    std::string mod;
    const auto& m = fin->modulus;
    for (int i = (int)m.size() - 1; i >= 0; --i) {
        if (!m[i]) continue;
        if (!mod.empty()) mod += "+";
        if (i == 0 || m[i] != 1) {
            mod += std::to_string(m[i]);
            if (i > 0) mod += "*";
        }
        if (i >= 1) mod += "t";
        if (i >= 2) mod += "^" + std::to_string(i);
    }
    return "GF(" + std::to_string(characteristic) + "^" + std::to_string(degree()) +
           "; modulus=" + mod + ")";
}

FieldPtr rationals() {
    static FieldPtr q = std::make_shared<Field>();
    return q;
}

FieldPtr finite_field(u64 p) {
    if (!fq::is_prime_u64(p)) throw InputError("characteristic must be prime: " + std::to_string(p));
    auto f = std::make_shared<Field>();
    f->characteristic = p;
    f->fin = fq::make_prime_ctx(p);
    return f;
}

FieldPtr finite_field(u64 p, std::vector<u64> modulus) {
    if (!fq::is_prime_u64(p)) throw InputError("characteristic must be prime: " + std::to_string(p));
    fq::Ctx ctx;
    try {
        ctx = fq::make_ext_ctx(p, std::move(modulus));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (ctx.k >= 2 && !fq::is_irreducible_fp(p, ctx.modulus))
        throw InputError("extension modulus is reducible over F_" + std::to_string(p));
    auto f = std::make_shared<Field>();
    f->characteristic = p;
    f->fin = std::move(ctx);
    return f;
}

namespace {

// parse a univariate polynomial in `t` with integer coefficients, e.g.
// "t^2+1" or "t^3+2*t+1"; returns little-endian coefficient vector mod p
std::vector<u64> parse_modulus_text(const std::string& text, u64 p) {
    std::vector<long long> coeffs;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    int sign = 1;
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
    }
    while (i <= text.size()) {
        skip_ws();
        long long coef = 1;
        bool have_coef = false;
        unsigned expo = 0;
        bool have_var = false;
        if (i < text.size() && std::isdigit((unsigned char)text[i])) {
            coef = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i]))
                coef = coef * 10 + (text[i++] - '0');
            have_coef = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        if (i < text.size() && text[i] == 't') {
            ++i;
            have_var = true;
            expo = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
                    throw InputError("bad exponent in modulus: " + text);
                expo = 0;
                while (i < text.size() && std::isdigit((unsigned char)text[i]))
                    expo = expo * 10 + (text[i++] - '0');
            }
        }
        if (!have_coef && !have_var) throw InputError("cannot parse modulus: " + text);
        if ((size_t)expo + 1 > coeffs.size()) coeffs.resize(expo + 1, 0);
        coeffs[expo] += sign * coef;
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] == '+') sign = 1;
        else if (text[i] == '-') sign = -1;
        else throw InputError("unexpected character in modulus: " + text);
        ++i;
    }
    std::vector<u64> out;
    for (long long c : coeffs) {
        long long m = c % (long long)p;
        if (m < 0) m += (long long)p;
        out.push_back((u64)m);
    }
    return out;
}

}  // namespace

FieldPtr make_field(u64 p, const std::optional<std::string>& modulus_text) {
    if (p == 0) {
        if (modulus_text) throw InputError("modulus given with characteristic 0");
        return rationals();
    }
    if (!modulus_text) return finite_field(p);
    return finite_field(p, parse_modulus_text(*modulus_text, p));
}

FieldPtr make_field(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s == "Q" || s == "q") return rationals();
    if (s.rfind("GF(", 0) != 0 || s.back() != ')')
        throw InputError("cannot parse field spec: " + spec);
    std::string inner = s.substr(3, s.size() - 4);
    std::string head = inner;
    std::optional<std::string> modulus;
    size_t semi = inner.find(';');
    if (semi != std::string::npos) {
        head = inner.substr(0, semi);
        std::string rest = inner.substr(semi + 1);
        if (rest.rfind("modulus=", 0) != 0)
            throw InputError("cannot parse field spec: " + spec);
        modulus = rest.substr(8);
    }
    u64 p = 0;
    unsigned k = 1;
    size_t caret = head.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoull(head);
        } else {
            p = std::stoull(head.substr(0, caret));
            k = (unsigned)std::stoul(head.substr(caret + 1));
        }
    } catch (...) {
        throw InputError("cannot parse field spec: " + spec);
    }
    if (k == 1 && !modulus) return finite_field(p);
    if (!modulus) {
        // pick a canonical irreducible modulus of the requested degree
        return finite_field(p, fq::find_irreducible_fp(p, k));
    }
    auto f = finite_field(p, parse_modulus_text(*modulus, p));
    if (f->degree() != k)
        throw InputError("modulus degree does not match field spec: " + spec);
    return f;
}

// ---------------------------------------------------------------------------

FieldElem::FieldElem(FieldPtr f, mpq_class v) : fld_(std::move(f)), rat_(std::move(v)) {
    rat_.canonicalize();
}
FieldElem::FieldElem(FieldPtr f, fq::Elem v) : fld_(std::move(f)), res_(std::move(v)) {}

FieldElem FieldElem::from_int(const FieldPtr& f, long long v) {
    if (f->is_rational()) return FieldElem(f, mpq_class((long)v));
    return FieldElem(f, fq::from_int(f->ctx(), v));
}

FieldElem FieldElem::from_mpq(const FieldPtr& f, const mpq_class& v) {
    if (f->is_rational()) return FieldElem(f, v);
    // reduce numerator * denominator^{-1} mod p, then lift to the extension
    u64 p = f->characteristic;
    mpz_class num = v.get_num(), den = v.get_den();
    mpz_class pz((unsigned long)p);
    mpz_class dm = den % pz;
    if (dm == 0) throw InputError("bad prime: denominator divisible by " + std::to_string(p));
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    u64 n = nm.get_ui();
    u64 d = dm.get_ui();
    u64 r = fq::mulmod(n, fq::invmod(d, p), p);
    return FieldElem(f, fq::from_int(f->ctx(), (long long)r));
}

FieldElem FieldElem::generator(const FieldPtr& f) {
    if (f->is_rational() || f->degree() < 2)
        throw InputError("field has no extension generator");
    return FieldElem(f, fq::gen(f->ctx()));
}

bool FieldElem::is_zero() const {
    if (!fld_) return true;
    return fld_->is_rational() ? rat_ == 0 : fq::is_zero(res_);
}

bool FieldElem::is_one() const {
    if (!fld_) return false;
    return fld_->is_rational() ? rat_ == 1 : res_ == fq::one(fld_->ctx());
}

void FieldElem::check_same(const FieldElem& o) const {
    if (!fld_ || !o.fld_ || !fld_->same(*o.fld_))
        throw InputError("field mismatch in element operation");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(o);
    if (fld_->is_rational()) return FieldElem(fld_, rat_ + o.rat_);
    return FieldElem(fld_, fq::add(fld_->ctx(), res_, o.res_));
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same(o);
    if (fld_->is_rational()) return FieldElem(fld_, rat_ - o.rat_);
    return FieldElem(fld_, fq::sub(fld_->ctx(), res_, o.res_));
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(o);
    if (fld_->is_rational()) return FieldElem(fld_, rat_ * o.rat_);
    return FieldElem(fld_, fq::mul(fld_->ctx(), res_, o.res_));
}
FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }
FieldElem FieldElem::operator-() const {
    if (fld_->is_rational()) return FieldElem(fld_, -rat_);
    return FieldElem(fld_, fq::neg(fld_->ctx(), res_));
}
FieldElem FieldElem::inverse() const {
    if (is_zero()) throw InputError("division by zero");
    if (fld_->is_rational()) return FieldElem(fld_, 1 / rat_);
    return FieldElem(fld_, fq::inv(fld_->ctx(), res_));
}
FieldElem FieldElem::pow(unsigned long e) const {
    if (fld_->is_rational()) {
        mpq_class r = 1;
        mpq_class b = rat_;
        unsigned long k = e;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return FieldElem(fld_, r);
    }
    return FieldElem(fld_, fq::pow(fld_->ctx(), res_, e));
}
bool FieldElem::operator==(const FieldElem& o) const {
    check_same(o);
    return fld_->is_rational() ? rat_ == o.rat_ : res_ == o.res_;
}
bool FieldElem::operator<(const FieldElem& o) const {
    check_same(o);
    if (fld_->is_rational()) return rat_ < o.rat_;
    return res_ < o.res_;
}

std::string FieldElem::str() const {
    if (!fld_) return "0";
    if (fld_->is_rational()) {
        if (rat_.get_den() == 1) return rat_.get_num().get_str();
        return rat_.get_num().get_str() + "/" + rat_.get_den().get_str();
    }
    return fq::to_string(fld_->ctx(), res_);
}

FieldElem rational_reduce(const FieldElem& a, const FieldPtr& fp) {
    if (!a.field()->is_rational()) throw InputError("rational_reduce expects a rational element");
    if (fp->is_rational()) throw InputError("rational_reduce target must be finite");
    return FieldElem::from_mpq(fp, a.rat());
}

FieldElem Embedding::map(const FieldElem& a) const {
    if (!a.field()->same(*from)) throw InputError("embedding applied to wrong field");
    if (from->same(*to)) return a;
    return FieldElem(to, fq::embed_elem(from->ctx(), to->ctx(), a.res(), gen_image));
}

Embedding Embedding::identity(const FieldPtr& f) { return Embedding{f, f, {}}; }

Embedding embed_field(const FieldPtr& from, const FieldPtr& to) {
    if (from->is_rational() || to->is_rational())
        throw InputError("embedding requires finite fields");
    if (from->characteristic != to->characteristic || to->degree() % from->degree() != 0)
        throw InputError("no embedding between these fields");
    if (from->same(*to)) return Embedding::identity(from);
    Embedding e;
    e.from = from;
    e.to = to;
    e.gen_image = fq::embed_generator(from->ctx(), to->ctx());
    return e;
}

// ---------------------------------------------------------------------------

UniPoly UniPoly::from_coeffs(const FieldPtr& f, std::vector<FieldElem> cs) {
    return uni_trim(UniPoly{f, std::move(cs)});
}

FieldElem UniPoly::eval(const FieldElem& x) const {
    FieldElem r = FieldElem::zero(fld);
    for (int i = deg(); i >= 0; --i) r = r * x + c[i];
    return r;
}

UniPoly UniPoly::map_field(const Embedding& e) const {
    UniPoly r{e.to, {}};
    r.c.reserve(c.size());
    for (const auto& x : c) r.c.push_back(e.map(x));
    return r;
}

UniPoly uni_trim(UniPoly a) {
    while (!a.c.empty() && a.c.back().is_zero()) a.c.pop_back();
    return a;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly r{a.fld, {}};
    size_t n = std::max(a.c.size(), b.c.size());
    for (size_t i = 0; i < n; ++i) {
        FieldElem x = i < a.c.size() ? a.c[i] : FieldElem::zero(a.fld);
        FieldElem y = i < b.c.size() ? b.c[i] : FieldElem::zero(a.fld);
        r.c.push_back(x + y);
    }
    return uni_trim(std::move(r));
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly r{a.fld, {}};
    size_t n = std::max(a.c.size(), b.c.size());
    for (size_t i = 0; i < n; ++i) {
        FieldElem x = i < a.c.size() ? a.c[i] : FieldElem::zero(a.fld);
        FieldElem y = i < b.c.size() ? b.c[i] : FieldElem::zero(a.fld);
        r.c.push_back(x - y);
    }
    return uni_trim(std::move(r));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly::zero(a.fld);
    UniPoly r{a.fld, std::vector<FieldElem>(a.c.size() + b.c.size() - 1, FieldElem::zero(a.fld))};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
    }
    return uni_trim(std::move(r));
}

void uni_divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    r = a;
    q = UniPoly::zero(a.fld);
    int db = b.deg();
    if (a.deg() < db) return;
    q.c.assign(a.deg() - db + 1, FieldElem::zero(a.fld));
    FieldElem linv = b.c.back().inverse();
    for (int d = a.deg() - db; d >= 0; --d) {
        if ((int)r.c.size() <= d + db) continue;
        FieldElem coef = r.c[d + db];
        if (coef.is_zero()) continue;
        FieldElem f = coef * linv;
        q.c[d] = f;
        for (int i = 0; i <= db; ++i) r.c[d + i] = r.c[d + i] - f * b.c[i];
    }
    r = uni_trim(std::move(r));
    q = uni_trim(std::move(q));
}

UniPoly uni_monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    FieldElem inv = a.c.back().inverse();
    UniPoly r = a;
    for (auto& x : r.c) x = x * inv;
    return r;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    a = uni_trim(std::move(a));
    b = uni_trim(std::move(b));
    while (!b.is_zero()) {
        UniPoly q, r;
        uni_divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(a);
}

UniPoly uni_derivative(const UniPoly& a) {
    UniPoly r{a.fld, {}};
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c.push_back(a.c[i] * FieldElem::from_int(a.fld, (long long)i));
    return uni_trim(std::move(r));
}

namespace {

fq::Poly to_fq_poly(const UniPoly& a) {
    fq::Poly p;
    for (const auto& c : a.c) p.c.push_back(c.res());
    return p;
}

std::vector<std::pair<FieldElem, unsigned>> rational_roots(const UniPoly& f) {
    // rational root test on the integer-cleared polynomial
    std::vector<std::pair<FieldElem, unsigned>> out;
    mpz_class lcm_den = 1;
    for (const auto& c : f.c) lcm_den = lcm(lcm_den, c.rat().get_den());
    std::vector<mpz_class> ic;
    for (const auto& c : f.c) {
        mpq_class cleared = c.rat() * lcm_den;
        cleared.canonicalize();
        ic.push_back(cleared.get_num());
    }
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    std::vector<FieldElem> candidates;
    candidates.push_back(FieldElem::zero(f.fld));  // handles x | f
    if (low < ic.size()) {
        mpz_class a0 = abs(ic[low]);
        mpz_class an = abs(ic.back());
        std::vector<mpz_class> pdiv, qdiv;
        for (mpz_class d = 1; d * d <= a0; ++d) {
            if (a0 % d == 0) {
                pdiv.push_back(d);
                pdiv.push_back(a0 / d);
            }
        }
        for (mpz_class d = 1; d * d <= an; ++d) {
            if (an % d == 0) {
                qdiv.push_back(d);
                qdiv.push_back(an / d);
            }
        }
        for (const auto& p : pdiv)
            for (const auto& q : qdiv) {
                mpq_class cand(p, q);
                cand.canonicalize();
                candidates.emplace_back(f.fld, cand);
                candidates.emplace_back(f.fld, mpq_class(-cand));
            }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& cand : candidates) {
        if (!f.eval(cand).is_zero()) continue;
        unsigned mult = 0;
        UniPoly cur = f;
        UniPoly lin{f.fld, {-cand, FieldElem::one(f.fld)}};
        while (true) {
            UniPoly q, r;
            uni_divrem(cur, lin, q, r);
            if (!r.is_zero()) break;
            ++mult;
            cur = std::move(q);
        }
        out.emplace_back(cand, mult);
    }
    return out;
}

}  // namespace

std::vector<std::pair<FieldElem, unsigned>> find_roots(const UniPoly& f) {
    if (f.is_zero()) throw InputError("find_roots on the zero polynomial");
    if (f.fld->is_rational()) return rational_roots(f);
    auto raw = fq::poly_roots(f.fld->ctx(), to_fq_poly(f));
    std::vector<std::pair<FieldElem, unsigned>> out;
    for (auto& [r, m] : raw) out.emplace_back(FieldElem(f.fld, std::move(r)), m);
    return out;
}

std::pair<FieldPtr, Embedding> extend_finite_field(const FieldPtr& base, unsigned m) {
    if (base->is_rational()) throw InputError("cannot extend the rational field");
    if (m == 1) return {base, Embedding::identity(base)};
    unsigned target_deg = base->degree() * m;
    auto mod = fq::find_irreducible_fp(base->characteristic, target_deg);
    FieldPtr ext = finite_field(base->characteristic, std::move(mod));
    return {ext, embed_field(base, ext)};
}

SplitResult extend_to_split(const UniPoly& f, unsigned ext_bound) {
    if (f.is_zero()) throw InputError("extend_to_split on the zero polynomial");
    if (f.fld->is_rational()) throw InputError("extend_to_split requires positive characteristic");
    unsigned total = (unsigned)f.deg();
    for (unsigned j = 1; j <= ext_bound; ++j) {
        auto [ext, emb] = extend_finite_field(f.fld, j);
        UniPoly g = f.map_field(emb);
        auto roots = find_roots(g);
        unsigned count = 0;
        for (auto& [r, m] : roots) count += m;
        if (count == total) return SplitResult{ext, emb, std::move(roots)};
    }
    throw ExtensionExceeded("polynomial does not split within extension bound " +
                            std::to_string(ext_bound));
}

}  // namespace hconst
