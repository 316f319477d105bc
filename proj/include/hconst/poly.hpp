#pragma once

// Sparse exact multivariate polynomials over a Field: parsing, arithmetic,
// coordinate changes, tangent cones, univariate gcd / squarefree parts,
// resultants and implicitization of rational parameterizations.

#include <map>
#include <string>
#include <vector>

#include "hconst/field.hpp"

namespace hconst {

using Exponents = std::vector<unsigned>;

class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(FieldPtr f, std::vector<std::string> vars);

    static MultiPoly zero(const FieldPtr& f, const std::vector<std::string>& vars);
    static MultiPoly constant(const FieldPtr& f, const std::vector<std::string>& vars,
                              const FieldElem& c);
    static MultiPoly variable(const FieldPtr& f, const std::vector<std::string>& vars,
                              size_t index);
    static MultiPoly monomial(const FieldPtr& f, const std::vector<std::string>& vars,
                              Exponents e, const FieldElem& c);

    const FieldPtr& field() const { return fld_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, FieldElem>& terms() const { return terms_; }
    size_t var_index(const std::string& name) const;  // throws InputError if unknown

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const;             // -1 for the zero polynomial
    int degree_in(size_t var) const;      // -1 for the zero polynomial
    bool is_homogeneous(int* degree_out = nullptr) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly pow(unsigned e) const;
    MultiPoly scale(const FieldElem& s) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly derivative(size_t var) const;
    FieldElem eval(const std::vector<FieldElem>& point) const;

    // simultaneous substitution var_i -> images[i] (images over the same var list)
    MultiPoly compose(const std::vector<MultiPoly>& images) const;
    MultiPoly substitute(size_t var, const MultiPoly& image) const;
    MultiPoly substitute_value(size_t var, const FieldElem& value) const;

    // order of vanishing at the origin (minimal total degree); f must be nonzero
    unsigned order_at_origin() const;
    MultiPoly lowest_form() const;  // sum of minimal-degree terms (tangent cone)

    MultiPoly dehomogenize(size_t var) const;  // var := 1
    MultiPoly homogenize(size_t var, unsigned degree) const;

    // views between representations (requires the polynomial to involve only `var`)
    UniPoly to_unipoly(size_t var) const;
    static MultiPoly from_unipoly(const UniPoly& u, const std::vector<std::string>& vars,
                                  size_t var);
    // coefficients with respect to one variable, as polynomials in the others
    std::vector<MultiPoly> coeffs_in(size_t var) const;

    // substitute values for every variable except `kept`; result univariate
    UniPoly specialize(size_t kept, const std::vector<FieldElem>& values) const;

    MultiPoly map_field(const Embedding& e) const;
    // reduction Q -> F_p of every coefficient; throws InputError("bad prime")
    MultiPoly reduce_mod(const FieldPtr& fp) const;

    // multiply by the inverse of the lex-leading coefficient
    MultiPoly normalized() const;

    std::string str() const;

private:
    void insert_term(const Exponents& e, const FieldElem& c);
    FieldPtr fld_;
    std::vector<std::string> vars_;
    std::map<Exponents, FieldElem> terms_;
    friend MultiPoly div_exact(const MultiPoly&, const MultiPoly&);
};

// Parse the curve-file / CLI polynomial grammar: integer literals, named
// variables, + - * ^ and parentheses; explicit '*' required. In extension
// fields the symbol `t` (if not a declared variable) denotes the generator.
MultiPoly parse_poly(const std::string& text, const FieldPtr& field,
                     const std::vector<std::string>& vars);

// exact multivariate division (throws InputError when not exact)
MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b);

// gcd of two polynomials that involve a single common variable
MultiPoly gcd_univariate(const MultiPoly& f, const MultiPoly& g);

// squarefree part of a univariate polynomial, with the characteristic-p
// derivative degeneracy handled by p-th root extraction
UniPoly squarefree_part(const UniPoly& f);
MultiPoly squarefree_part(const MultiPoly& f, size_t var);

// Sylvester resultant with respect to `var`, eliminated by fraction-free
// (Bareiss) row reduction; coefficients may involve the other variables.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, size_t var);

// f = g^e exactly? returns g, or nothing when no e-th root exists
std::optional<MultiPoly> perfect_power_root(const MultiPoly& f, unsigned e);

struct ImplicitizeResult {
    MultiPoly curve;         // reduced image equation, homogeneous in (x, y, z)
    unsigned map_degree;     // e: the resultant was an e-th power
    unsigned image_degree;   // degree of the reduced image
    bool degenerate;         // image degree < parameterization degree
};

// fx, fy, fz: degree-d binary forms in (s, t) without common factor.
ImplicitizeResult implicitize(const MultiPoly& fx, const MultiPoly& fy, const MultiPoly& fz);

// Restriction of a homogeneous trivariate to the line s*P + t*Q, as a
// univariate in t with s = 1 (degree drop = multiplicity of the s-factor).
UniPoly restrict_to_line(const MultiPoly& f, const std::vector<FieldElem>& P,
                         const std::vector<FieldElem>& Q);

// Probabilistic-complete exact squarefreeness test for a homogeneous
// trivariate over a finite field (restriction to pseudo-random lines).
bool is_squarefree_curve(const MultiPoly& f, unsigned ext_bound = kDefaultExtBound);

}  // namespace hconst
