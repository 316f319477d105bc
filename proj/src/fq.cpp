#include "hconst/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace hconst::fq {

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("division by zero in F_p");
    // extended Euclid on signed 128-bit to be safe for large p
    long long t = 0, newt = 1;
    long long r = (long long)p, newr = (long long)a;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt; newt = tmp;
        tmp = r - q * newr;
        r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    if (t < 0) t += (long long)p;
    return (u64)t;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

Ctx make_prime_ctx(u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
    Ctx c;
    c.p = p;
    c.k = 1;
    c.modulus = {0, 1};
    c.order = p;
    return c;
}

Ctx make_ext_ctx(u64 p, std::vector<u64> modulus) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
    while (!modulus.empty() && modulus.back() % p == 0) modulus.pop_back();
    if (modulus.size() < 2) throw std::invalid_argument("extension modulus must have degree >= 1");
    for (auto& x : modulus) x %= p;
    if (modulus.back() != 1) throw std::invalid_argument("extension modulus must be monic");
    Ctx c;
    c.p = p;
    c.k = (unsigned)modulus.size() - 1;
    c.modulus = std::move(modulus);
    u64 ord = 1;
    for (unsigned i = 0; i < c.k; ++i) {
        if (ord > (u64)-1 / p) { ord = 0; break; }
        ord *= p;
    }
    c.order = ord;
    return c;
}

Elem zero(const Ctx& c) { return Elem(c.k, 0); }

Elem one(const Ctx& c) {
    Elem e(c.k, 0);
    e[0] = 1 % c.p;
    return e;
}

Elem from_int(const Ctx& c, long long v) {
    long long m = v % (long long)c.p;
    if (m < 0) m += (long long)c.p;
    Elem e(c.k, 0);
    e[0] = (u64)m;
    return e;
}

Elem gen(const Ctx& c) {
    Elem e(c.k, 0);
    if (c.k >= 2) e[1] = 1;
    else e[0] = 0;  // in F_p the class of t is the root of t, i.e. 0
    return e;
}

bool is_zero(const Elem& a) {
    for (u64 x : a)
        if (x) return false;
    return true;
}

Elem add(const Ctx& c, const Elem& a, const Elem& b) {
    Elem r(c.k);
    for (unsigned i = 0; i < c.k; ++i) r[i] = addmod(a[i], b[i], c.p);
    return r;
}

Elem sub(const Ctx& c, const Elem& a, const Elem& b) {
    Elem r(c.k);
    for (unsigned i = 0; i < c.k; ++i) r[i] = submod(a[i], b[i], c.p);
    return r;
}

Elem neg(const Ctx& c, const Elem& a) {
    Elem r(c.k);
    for (unsigned i = 0; i < c.k; ++i) r[i] = a[i] ? c.p - a[i] : 0;
    return r;
}

Elem mul(const Ctx& c, const Elem& a, const Elem& b) {
    if (c.k == 1) return Elem{mulmod(a[0], b[0], c.p)};
    // schoolbook product, then reduce by the monic modulus
    std::vector<u64> prod(2 * c.k - 1, 0);
    for (unsigned i = 0; i < c.k; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < c.k; ++j) {
            if (!b[j]) continue;
            prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], c.p), c.p);
        }
    }
    for (int d = (int)prod.size() - 1; d >= (int)c.k; --d) {
        u64 lead = prod[d];
        if (!lead) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < c.k; ++i) {
            if (c.modulus[i])
                prod[d - c.k + i] = submod(prod[d - c.k + i], mulmod(lead, c.modulus[i], c.p), c.p);
        }
    }
    prod.resize(c.k);
    return prod;
}

namespace {

// polynomial arithmetic over F_p on raw u64 vectors (for inv via ext-gcd)
using FpV = std::vector<u64>;

void fpv_trim(FpV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpV fpv_mul(const FpV& a, const FpV& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    return r;
}

FpV fpv_sub(const FpV& a, const FpV& b, u64 p) {
    FpV r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = submod(x, y, p);
    }
    fpv_trim(r);
    return r;
}

// a = q*b + r over F_p
void fpv_divrem(FpV a, const FpV& b, u64 p, FpV& q, FpV& r) {
    fpv_trim(a);
    q.clear();
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    u64 binv = invmod(b.back(), p);
    if (a.size() < b.size()) { r = a; return; }
    q.assign(a.size() - b.size() + 1, 0);
    for (int d = (int)a.size() - (int)b.size(); d >= 0; --d) {
        u64 coef = a[d + b.size() - 1];
        if (!coef) continue;
        u64 f = mulmod(coef, binv, p);
        q[d] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[d + i] = submod(a[d + i], mulmod(f, b[i], p), p);
    }
    fpv_trim(a);
    r = a;
}

}  // namespace

Elem inv(const Ctx& c, const Elem& a) {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (c.k == 1) return Elem{invmod(a[0], c.p)};
    // extended Euclid: s*a + t*modulus = gcd = const
    FpV r0 = c.modulus;
    FpV r1(a);
    fpv_trim(r1);
    FpV s0 = {}, s1 = {1};
    while (!r1.empty() && r1.size() > 1) {
        FpV q, rem;
        fpv_divrem(r0, r1, c.p, q, rem);
        FpV s2 = fpv_sub(s0, fpv_mul(q, s1, c.p), c.p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::domain_error("element not invertible (modulus reducible?)");
    u64 lead = invmod(r1[0], c.p);
    FpV res = s1;
    for (auto& x : res) x = mulmod(x, lead, c.p);
    res.resize(c.k, 0);
    return res;
}

Elem pow(const Ctx& c, Elem a, u64 e) {
    Elem r = one(c);
    while (e) {
        if (e & 1) r = mul(c, r, a);
        a = mul(c, a, a);
        e >>= 1;
    }
    return r;
}

Elem elem_at(const Ctx& c, u64 index) {
    Elem e(c.k);
    for (unsigned i = 0; i < c.k; ++i) {
        e[i] = index % c.p;
        index /= c.p;
    }
    return e;
}

std::string to_string(const Ctx& c, const Elem& a, const std::string& var) {
    std::string s;
    for (int i = (int)c.k - 1; i >= 0; --i) {
        if (!a[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || a[i] != 1) {
            s += std::to_string(a[i]);
            if (i > 0) s += "*";
        }
        if (i >= 1) s += var;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------

Poly poly_trim(const Ctx& f, Poly a) {
    (void)f;
    while (!a.c.empty() && is_zero(a.c.back())) a.c.pop_back();
    return a;
}

Poly poly_from_coeffs(const Ctx& f, std::vector<Elem> cs) {
    Poly p;
    p.c = std::move(cs);
    return poly_trim(f, std::move(p));
}

Poly poly_x(const Ctx& f) { return Poly{{zero(f), one(f)}}; }

Poly poly_const(const Ctx& f, const Elem& e) {
    if (is_zero(e)) return {};
    return Poly{{e}};
}

Poly poly_add(const Ctx& f, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), zero(f));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] = add(f, r.c[i], a.c[i]);
        if (i < b.c.size()) r.c[i] = add(f, r.c[i], b.c[i]);
    }
    return poly_trim(f, std::move(r));
}

Poly poly_sub(const Ctx& f, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), zero(f));
    for (size_t i = 0; i < r.c.size(); ++i) {
        Elem x = i < a.c.size() ? a.c[i] : zero(f);
        Elem y = i < b.c.size() ? b.c[i] : zero(f);
        r.c[i] = sub(f, x, y);
    }
    return poly_trim(f, std::move(r));
}

Poly poly_mul(const Ctx& f, const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return {};
    Poly r;
    r.c.resize(a.c.size() + b.c.size() - 1, zero(f));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (is_zero(b.c[j])) continue;
            r.c[i + j] = add(f, r.c[i + j], mul(f, a.c[i], b.c[j]));
        }
    }
    return poly_trim(f, std::move(r));
}

Poly poly_scale(const Ctx& f, const Poly& a, const Elem& s) {
    if (is_zero(s)) return {};
    Poly r = a;
    for (auto& c : r.c) c = mul(f, c, s);
    return r;
}

void poly_divrem(const Ctx& f, const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    r = a;
    q = {};
    int db = b.deg();
    if (a.deg() < db) return;
    q.c.assign(a.deg() - db + 1, zero(f));
    Elem linv = inv(f, b.c.back());
    for (int d = a.deg() - db; d >= 0; --d) {
        if ((int)r.c.size() <= d + db) continue;
        Elem coef = r.c[d + db];
        if (is_zero(coef)) continue;
        Elem fac = mul(f, coef, linv);
        q.c[d] = fac;
        for (int i = 0; i <= db; ++i)
            r.c[d + i] = sub(f, r.c[d + i], mul(f, fac, b.c[i]));
    }
    r = poly_trim(f, std::move(r));
    q = poly_trim(f, std::move(q));
}

Poly poly_mod(const Ctx& f, const Poly& a, const Poly& m) {
    Poly q, r;
    poly_divrem(f, a, m, q, r);
    return r;
}

Poly poly_monic(const Ctx& f, const Poly& a) {
    if (a.zero()) return a;
    return poly_scale(f, a, inv(f, a.c.back()));
}

Poly poly_gcd(const Ctx& f, Poly a, Poly b) {
    a = poly_trim(f, std::move(a));
    b = poly_trim(f, std::move(b));
    while (!b.zero()) {
        Poly q, r;
        poly_divrem(f, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(f, a);
}

Poly poly_derivative(const Ctx& f, const Poly& a) {
    Poly r;
    for (size_t i = 1; i < a.c.size(); ++i) {
        Elem c = mul(f, a.c[i], from_int(f, (long long)(i % f.p)));
        r.c.push_back(c);
    }
    return poly_trim(f, std::move(r));
}

Elem poly_eval(const Ctx& f, const Poly& a, const Elem& x) {
    Elem r = zero(f);
    for (int i = a.deg(); i >= 0; --i) r = add(f, mul(f, r, x), a.c[i]);
    return r;
}

Poly poly_powmod(const Ctx& f, Poly base, u64 e, const Poly& m) {
    base = poly_mod(f, base, m);
    Poly r = poly_const(f, one(f));
    r = poly_mod(f, r, m);
    while (e) {
        if (e & 1) r = poly_mod(f, poly_mul(f, r, base), m);
        base = poly_mod(f, poly_mul(f, base, base), m);
        e >>= 1;
    }
    return r;
}

Poly poly_xq_pow(const Ctx& f, unsigned e_p_powers, const Poly& m) {
    Poly r = poly_mod(f, poly_x(f), m);
    for (unsigned i = 0; i < e_p_powers; ++i) r = poly_powmod(f, r, f.p, m);
    return r;
}

Poly poly_interpolate(const Ctx& f, const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
    // incremental Newton form, converted on the fly to coefficient form
    size_t n = xs.size();
    Poly result;                       // accumulated polynomial
    Poly basis = poly_const(f, one(f));  // prod (x - xs[i]) over processed i
    for (size_t i = 0; i < n; ++i) {
        Elem val = poly_eval(f, result, xs[i]);
        Elem diff = sub(f, ys[i], val);
        if (!is_zero(diff)) {
            Elem denom = poly_eval(f, basis, xs[i]);
            Elem coef = mul(f, diff, inv(f, denom));
            result = poly_add(f, result, poly_scale(f, basis, coef));
        }
        Poly lin{{neg(f, xs[i]), one(f)}};
        basis = poly_mul(f, basis, lin);
    }
    return result;
}

namespace {

struct SplitRng {
    u64 s;
    u64 next() {
        // splitmix64
        s += 0x9e3779b97f4a7c15ull;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// distinct roots of a squarefree, fully-split polynomial h (every irreducible
// factor is linear) over a possibly large field
void split_linear(const Ctx& f, Poly h, std::vector<Elem>& out, SplitRng& rng) {
    h = poly_monic(f, h);
    if (h.deg() <= 0) return;
    if (h.deg() == 1) {
        out.push_back(neg(f, h.c[0]));
        return;
    }
    if (f.order != 0 && f.order <= 65536) {
        // small field: direct scan
        for (u64 i = 0; i < f.order; ++i) {
            Elem x = elem_at(f, i);
            if (is_zero(poly_eval(f, h, x))) out.push_back(x);
        }
        return;
    }
    if (f.p == 2) {
        // trace splitting: Tr(c x) = sum (c x)^(2^i), i < k
        unsigned n = f.k;
        while (true) {
            Elem c0 = elem_at(f, rng.next() % (f.order ? f.order : ~0ull));
            if (is_zero(c0)) continue;
            Poly cx = poly_from_coeffs(f, {zero(f), c0});
            Poly tr = poly_mod(f, cx, h);
            Poly acc = tr;
            for (unsigned i = 1; i < n; ++i) {
                tr = poly_mod(f, poly_mul(f, tr, tr), h);
                acc = poly_add(f, acc, tr);
            }
            Poly g = poly_gcd(f, h, acc);
            if (g.deg() > 0 && g.deg() < h.deg()) {
                Poly q, r;
                poly_divrem(f, h, g, q, r);
                split_linear(f, g, out, rng);
                split_linear(f, q, out, rng);
                return;
            }
        }
    }
    // odd characteristic: Cantor-Zassenhaus split with (x+a)^((q-1)/2) - 1
    while (true) {
        Elem a = elem_at(f, rng.next() % f.order);
        Poly shifted{{a, one(f)}};
        Poly w = poly_powmod(f, shifted, (f.order - 1) / 2, h);
        w = poly_sub(f, w, poly_const(f, one(f)));
        Poly g = poly_gcd(f, h, w);
        if (g.deg() > 0 && g.deg() < h.deg()) {
            Poly q, r;
            poly_divrem(f, h, g, q, r);
            split_linear(f, g, out, rng);
            split_linear(f, q, out, rng);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Elem, unsigned>> poly_roots(const Ctx& f, const Poly& a) {
    std::vector<std::pair<Elem, unsigned>> result;
    Poly h = poly_trim(f, a);
    if (h.deg() <= 0) return result;
    std::vector<Elem> roots;
    if (f.order != 0 && f.order <= 4096) {
        for (u64 i = 0; i < f.order; ++i) {
            Elem x = elem_at(f, i);
            if (is_zero(poly_eval(f, h, x))) roots.push_back(x);
        }
    } else {
        // isolate the product of linear factors: gcd(h, x^q - x)
        Poly xq = poly_xq_pow(f, f.k, poly_monic(f, h));
        Poly lin = poly_gcd(f, h, poly_sub(f, xq, poly_x(f)));
        SplitRng rng{0x5eedf00du ^ (u64)h.deg()};
        split_linear(f, lin, roots, rng);
    }
    for (const Elem& r : roots) {
        // multiplicity by repeated division
        unsigned mult = 0;
        Poly cur = h;
        Poly lin{{neg(f, r), one(f)}};
        while (true) {
            Poly q, rest;
            poly_divrem(f, cur, lin, q, rest);
            if (!rest.zero()) break;
            ++mult;
            cur = std::move(q);
        }
        result.emplace_back(r, mult);
    }
    std::sort(result.begin(), result.end());
    return result;
}

// ---------------------------------------------------------------------------

bool is_irreducible_fp(u64 p, const std::vector<u64>& modulus) {
    Ctx fp = make_prime_ctx(p);
    std::vector<Elem> cs;
    for (u64 c : modulus) cs.push_back(Elem{c % p});
    Poly m = poly_from_coeffs(fp, cs);
    unsigned n = (unsigned)m.deg();
    if (n == 0) return false;
    if (n == 1) return true;
    // no root in F_{p^j} for any j <= n/2  <=>  no irreducible factor of
    // degree <= n/2  <=>  irreducible. Root-in-subfield test via
    // gcd(m, x^(p^j) - x).
    Poly xpj = poly_mod(fp, poly_x(fp), m);
    for (unsigned j = 1; j <= n / 2; ++j) {
        xpj = poly_powmod(fp, xpj, p, m);
        Poly g = poly_gcd(fp, m, poly_sub(fp, xpj, poly_x(fp)));
        if (g.deg() > 0) return false;
    }
    return true;
}

std::vector<u64> find_irreducible_fp(u64 p, unsigned degree) {
    if (degree == 1) return {0, 1};
    // deterministic scan over lower coefficient vectors
    std::vector<u64> cand(degree + 1, 0);
    cand[degree] = 1;
    // iterate lower coefficients as a base-p counter
    u64 total = 1;
    for (unsigned i = 0; i < degree; ++i) {
        if (total > (u64)1 << 40) { total = 0; break; }  // practically unbounded
        total *= p;
    }
    for (u64 idx = 1; total == 0 || idx < total; ++idx) {
        u64 v = idx;
        for (unsigned i = 0; i < degree; ++i) {
            cand[i] = v % p;
            v /= p;
        }
        if (cand[0] == 0) continue;  // divisible by t
        if (is_irreducible_fp(p, cand)) return cand;
    }
    throw std::runtime_error("no irreducible polynomial found (unreachable)");
}

Elem embed_generator(const Ctx& from, const Ctx& to) {
    if (from.p != to.p || to.k % from.k != 0)
        throw std::invalid_argument("invalid field embedding");
    if (from.k == 1) return one(to);  // unused; prime field embeds canonically
    std::vector<Elem> cs;
    for (u64 c : from.modulus) cs.push_back(from_int(to, (long long)c));
    Poly m = poly_from_coeffs(to, cs);
    auto roots = poly_roots(to, m);
    if (roots.empty()) throw std::runtime_error("embedding root not found");
    return roots.front().first;  // poly_roots sorts; smallest is canonical
}

Elem embed_elem(const Ctx& from, const Ctx& to, const Elem& a, const Elem& gen_image) {
    Elem r = zero(to);
    Elem power = one(to);
    for (unsigned i = 0; i < from.k; ++i) {
        if (a[i]) {
            Elem term = power;
            for (auto& x : term) x = mulmod(x, a[i], to.p);
            r = add(to, r, term);
        }
        if (i + 1 < from.k) power = mul(to, power, gen_image);
    }
    return r;
}

bool in_subfield(const Ctx& c, const Elem& a, unsigned d) {
    if (d >= c.k) return true;
    Elem frob = a;
    for (unsigned i = 0; i < d; ++i) frob = pow(c, frob, c.p);
    return frob == a;
}

}  // namespace hconst::fq
