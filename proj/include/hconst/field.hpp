#pragma once

// Exact ground fields: arbitrary-precision rationals Q, prime fields F_p and
// simple extensions F_{p^k} over the prime field. Values are immutable; all
// operations are pure.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hconst/fq.hpp"

namespace hconst {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signals that a computation needed a field extension beyond the configured
// bound ("resolution incomplete"; CLI exit code 3).
struct ExtensionExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr unsigned kDefaultExtBound = 6;

struct Field;
using FieldPtr = std::shared_ptr<const Field>;

struct Field {
    fq::u64 characteristic = 0;    // 0 for Q
    std::optional<fq::Ctx> fin;    // engaged iff characteristic > 0

    bool is_rational() const { return characteristic == 0; }
    unsigned degree() const { return fin ? fin->k : 1; }
    fq::u64 order() const { return fin ? fin->order : 0; }
    const fq::Ctx& ctx() const {
        if (!fin) throw std::logic_error("ctx() on rational field");
        return *fin;
    }
    bool same(const Field& o) const {
        return characteristic == o.characteristic && (!fin || fin->modulus == o.fin->modulus);
    }
    std::string spec_string() const;  // "Q", "GF(p)", "GF(p^k; modulus=...)"
};

FieldPtr rationals();
FieldPtr finite_field(fq::u64 p);
FieldPtr finite_field(fq::u64 p, std::vector<fq::u64> modulus);  // checks irreducibility
// Grammar: Q | GF(p) | GF(p^k) | GF(p^k; modulus=<poly in t>)
FieldPtr make_field(const std::string& spec);
// Spec-style constructor: p = 0 for Q; optional modulus text, a monic poly in t.
FieldPtr make_field(fq::u64 p, const std::optional<std::string>& modulus_text);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr f, mpq_class v);
    FieldElem(FieldPtr f, fq::Elem v);

    static FieldElem from_int(const FieldPtr& f, long long v);
    static FieldElem from_mpq(const FieldPtr& f, const mpq_class& v);  // reduces mod p if finite
    static FieldElem zero(const FieldPtr& f) { return from_int(f, 0); }
    static FieldElem one(const FieldPtr& f) { return from_int(f, 1); }
    static FieldElem generator(const FieldPtr& f);  // class of t in an extension

    const FieldPtr& field() const { return fld_; }
    bool is_zero() const;
    bool is_one() const;
    const mpq_class& rat() const { return rat_; }
    const fq::Elem& res() const { return res_; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;
    FieldElem pow(unsigned long e) const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    bool operator<(const FieldElem& o) const;  // arbitrary stable order

    std::string str() const;  // "a/b" or polynomial in t

private:
    void check_same(const FieldElem& o) const;
    FieldPtr fld_;
    mpq_class rat_;
    fq::Elem res_;
};

// Reduction Q -> F_p. Throws InputError("bad prime") when the denominator is
// divisible by p.
FieldElem rational_reduce(const FieldElem& a, const FieldPtr& fp);

// Embedding of one finite field into a larger one over the same prime field.
struct Embedding {
    FieldPtr from;
    FieldPtr to;
    fq::Elem gen_image;

    FieldElem map(const FieldElem& a) const;
    static Embedding identity(const FieldPtr& f);
};
Embedding embed_field(const FieldPtr& from, const FieldPtr& to);

// ---------------------------------------------------------------------------
// Dense univariate polynomials over a Field (little-endian), the generic
// sibling of fq::Poly that also covers Q.
struct UniPoly {
    FieldPtr fld;
    std::vector<FieldElem> c;

    int deg() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    static UniPoly zero(const FieldPtr& f) { return {f, {}}; }
    static UniPoly from_coeffs(const FieldPtr& f, std::vector<FieldElem> cs);
    FieldElem eval(const FieldElem& x) const;
    FieldElem lead() const { return c.back(); }
    UniPoly map_field(const Embedding& e) const;
};

UniPoly uni_trim(UniPoly a);
UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
void uni_divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly uni_gcd(UniPoly a, UniPoly b);  // monic
UniPoly uni_derivative(const UniPoly& a);
UniPoly uni_monic(const UniPoly& a);

// Roots in the coefficient field, with multiplicities. Over Q: rational root
// test. Over finite fields: enumeration or Cantor-Zassenhaus.
std::vector<std::pair<FieldElem, unsigned>> find_roots(const UniPoly& f);

// Smallest extension F_{q^j}, j <= ext_bound, over which f splits completely;
// returns the extension, the embedding of f's field into it, and all roots
// (with multiplicity, summing to deg f). Throws ExtensionExceeded otherwise.
struct SplitResult {
    FieldPtr field;
    Embedding emb;
    std::vector<std::pair<FieldElem, unsigned>> roots;
};
SplitResult extend_to_split(const UniPoly& f, unsigned ext_bound);

// Extension of a finite field by relative degree m (simple extension of the
// prime field, with the old field re-embedded).
std::pair<FieldPtr, Embedding> extend_finite_field(const FieldPtr& base, unsigned m);

}  // namespace hconst
