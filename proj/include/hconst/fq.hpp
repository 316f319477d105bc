#pragma once

// Low-level arithmetic for finite fields F_{p^k} = F_p[t]/(modulus) with
// word-sized p. Elements are coefficient vectors of length k with entries
// in [0, p). This layer is deliberately free of arbitrary-precision types;
// the public Field/FieldElem API sits on top of it.

#include <cstdint>
#include <string>
#include <vector>

namespace hconst::fq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);
bool is_prime_u64(u64 n);

// F_{p^k} context. modulus is little-endian, monic, degree k.
// For k == 1 the modulus is {0, 1} (i.e. t) and elements are single residues.
struct Ctx {
    u64 p = 0;
    unsigned k = 1;
    std::vector<u64> modulus;   // size k+1, modulus[k] == 1
    u64 order = 0;              // p^k; 0 if it would overflow 64 bits

    bool operator==(const Ctx&) const = default;
};

Ctx make_prime_ctx(u64 p);
Ctx make_ext_ctx(u64 p, std::vector<u64> modulus);  // validates monic; does NOT check irreducibility

using Elem = std::vector<u64>;  // size ctx.k

Elem zero(const Ctx& c);
Elem one(const Ctx& c);
Elem from_int(const Ctx& c, long long v);
Elem gen(const Ctx& c);  // the class of t (requires k >= 2 to be interesting)
bool is_zero(const Elem& a);
Elem add(const Ctx& c, const Elem& a, const Elem& b);
Elem sub(const Ctx& c, const Elem& a, const Elem& b);
Elem neg(const Ctx& c, const Elem& a);
Elem mul(const Ctx& c, const Elem& a, const Elem& b);
Elem inv(const Ctx& c, const Elem& a);  // throws std::domain_error on zero
Elem pow(const Ctx& c, Elem a, u64 e);

// Deterministic enumeration of all field elements, index in [0, order).
Elem elem_at(const Ctx& c, u64 index);

std::string to_string(const Ctx& c, const Elem& a, const std::string& var = "t");

// ---------------------------------------------------------------------------
// Dense univariate polynomials over F_{p^k}, little-endian coefficients.
struct Poly {
    std::vector<Elem> c;

    int deg() const { return (int)c.size() - 1; }
    bool zero() const { return c.empty(); }
};

Poly poly_trim(const Ctx& f, Poly a);
Poly poly_from_coeffs(const Ctx& f, std::vector<Elem> cs);
Poly poly_x(const Ctx& f);
Poly poly_const(const Ctx& f, const Elem& e);
Poly poly_add(const Ctx& f, const Poly& a, const Poly& b);
Poly poly_sub(const Ctx& f, const Poly& a, const Poly& b);
Poly poly_mul(const Ctx& f, const Poly& a, const Poly& b);
Poly poly_scale(const Ctx& f, const Poly& a, const Elem& s);
// quotient/remainder; divisor need not be monic (leading coeff inverted).
void poly_divrem(const Ctx& f, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_mod(const Ctx& f, const Poly& a, const Poly& m);
Poly poly_monic(const Ctx& f, const Poly& a);
Poly poly_gcd(const Ctx& f, Poly a, Poly b);  // monic gcd
Poly poly_derivative(const Ctx& f, const Poly& a);
Elem poly_eval(const Ctx& f, const Poly& a, const Elem& x);
// base^e mod m, base reduced first
Poly poly_powmod(const Ctx& f, Poly base, u64 e, const Poly& m);
// x^(p^e) mod m via repeated Frobenius-by-squaring (e counts powers of p)
Poly poly_xq_pow(const Ctx& f, unsigned e_p_powers, const Poly& m);
// Lagrange interpolation through (xs[i], ys[i]), xs distinct.
Poly poly_interpolate(const Ctx& f, const std::vector<Elem>& xs, const std::vector<Elem>& ys);

// All roots in the ctx field, each with multiplicity. Works in any size field:
// small fields by enumeration, large ones by Cantor-Zassenhaus (odd p) or
// trace splitting (p == 2).
std::vector<std::pair<Elem, unsigned>> poly_roots(const Ctx& f, const Poly& a);

// ---------------------------------------------------------------------------
// Irreducibility and field construction over F_p.
bool is_irreducible_fp(u64 p, const std::vector<u64>& modulus);
std::vector<u64> find_irreducible_fp(u64 p, unsigned degree);  // deterministic scan

// Embedding of F_{p^k} into F_{p^(k*m)}: image of the generator t.
// Chooses the lexicographically smallest root of the source modulus.
Elem embed_generator(const Ctx& from, const Ctx& to);
Elem embed_elem(const Ctx& from, const Ctx& to, const Elem& a, const Elem& gen_image);

// a lies in the subfield F_{p^d} (d | k) iff a^(p^d) == a.
bool in_subfield(const Ctx& c, const Elem& a, unsigned d);

}  // namespace hconst::fq
