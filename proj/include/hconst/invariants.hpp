#pragma once

// Numerical invariants of a multiplicity sequence (d; m_1, ..., m_r):
// H-constants, the sigma_k family, genus and Euler data, and the named
// inequality checks that a curve report carries.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hconst/resolution.hpp"

namespace hconst {

struct MultEntry {
    unsigned mult = 2;
    bool actual = true;  // false for infinitely near points
};

// degree plus the multiplicities of all singular points, actual and
// infinitely near; s and per-component genera are carried when known
struct MultSeq {
    unsigned degree = 1;
    std::vector<MultEntry> entries;  // sorted descending, actual first within ties
    std::optional<unsigned> components;              // s
    std::optional<std::vector<long long>> genus_list;  // length s when present

    unsigned r() const { return (unsigned)entries.size(); }
    unsigned r_actual() const;
    unsigned max_mult() const;     // 0 when r = 0
    unsigned count_mult(unsigned j) const;  // n_j
    long long sum_mult() const;
    long long sum_mult_sq() const;
    long long sum_binom2() const;  // sum of m_i(m_i - 1)/2
    mpq_class average_mult() const;  // m-bar; requires r >= 1

    void normalize();  // sort into canonical order
    std::string str() const;  // canonical text, e.g. "9;3^12" or "5;3,2^3"
};

// canonical grammar: d alone, or d;m^count,m,... with multiplicities
// descending; all parsed entries are actual
MultSeq parse_sequence(const std::string& text);

mpq_class h_constant(const MultSeq& seq);
mpq_class h_constant_actual(const MultSeq& seq);
long long sigma_k(const MultSeq& seq, long long k);
long long sigma0_k(const MultSeq& seq, long long k);  // actual entries only

// sum of component genera via C(d-1,2) - sum C(m_i,2) + (s-1); negative
// values indicate an infeasible degree/multiplicity/component combination
long long genus_sum(const MultSeq& seq);

// E of the normalization, 2s - 2 sum g_j
long long euler_normalization(const MultSeq& seq);
// E of the plane curve itself when all singularities are ordinary
long long euler_plane_ordinary(const MultSeq& seq);

enum class CheckStatus { pass, fail, not_applicable };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::not_applicable;
    mpq_class lhs;
    mpq_class rhs;
    mpq_class margin;  // lhs - rhs
    std::string note;  // equality cases, scope reasons

    bool passed() const { return status == CheckStatus::pass; }
    std::string status_str() const;
};

// 3d - 2 > sum (m_i - 2)
CheckResult check_cor0(const MultSeq& seq);

// (36-4r) d^2 + 48 d (r-1) + r (8r-32) + 16 > 0
bool eqNew_holds(long long d, long long r);
CheckResult check_eqNew(long long d, long long r);

// sum m_i <= (r + sqrt(r^2 + 4r(d-1)(d-2))) / 2, decided exactly by
// comparing (2 sum m - r)^2 with r^2 + 4r(d-1)(d-2); notes the equality case
CheckResult sum_mult_bound(long long d, long long r, long long sum_m);

// sigma_{2m-1} >= 2d - 1, and sigma_m >= 3d - 2 for irreducible curves
CheckResult check_prop0_sigma2m1(const MultSeq& seq);
CheckResult check_prop0_sigmam(const MultSeq& seq, bool irreducible);

CheckResult check_mu_bound(const MultSeq& seq, long long mu_total);

// H = (3d + sum(2g_j - 2) - sum m)/r >= (3d - 2s - sum m)/r
//   >= (d - sum m)/r > -mbar, with the equality cases reported
CheckResult check_chain(const MultSeq& seq);

// n_2 + (3/4) n_3 >= d + sum_{k>4} (k-4) n_k for a line arrangement of d
// lines; failure flags the arrangement as not realizable over C.
// Not applicable to pencils and near-pencils.
CheckResult check_hirzebruch(const std::map<unsigned, unsigned>& n, unsigned d);

// scope / counterexample classification for the finiteness conjectures
CheckResult check_conj_c14(const MultSeq& seq);
CheckResult check_conj_c20(const MultSeq& seq);
CheckResult check_rk21(const MultSeq& seq);

struct ReportOptions {
    std::vector<long long> extra_k;       // added to the default {0,2,4,m,2m-1}
    std::optional<long long> mu_total;
    std::optional<bool> irreducible;      // defaults to s == 1 when s is known
};

struct CurveReport {
    MultSeq sequence;
    mpq_class H;
    std::optional<mpq_class> H_actual;  // absent when no entry is actual
    std::map<long long, long long> sigma;
    long long delta_total = 0;
    std::optional<long long> mu_total;
    std::optional<long long> genus;          // genus_sum when s is known
    std::optional<long long> euler;          // E of the normalization
    std::vector<CheckResult> checks;
};

CurveReport make_report(const MultSeq& seq, const ReportOptions& opt = {});

// multiplicity sequence of a resolved curve: per singular point, the first
// tree entry is actual and the rest are infinitely near
MultSeq seq_from_analysis(const CurveAnalysis& an);

}  // namespace hconst
