#include "hconst/invariants.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hconst {

namespace {

long long binom2(long long m) { return m * (m - 1) / 2; }

mpq_class qq(long long n, long long d = 1) {
    mpq_class q((long)n, (long)d);
    q.canonicalize();
    return q;
}

std::string rat_str(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str();
}

}  // namespace

unsigned MultSeq::r_actual() const {
    unsigned n = 0;
    for (const auto& e : entries)
        if (e.actual) n++;
    return n;
}

unsigned MultSeq::max_mult() const {
    unsigned m = 0;
    for (const auto& e : entries) m = std::max(m, e.mult);
    return m;
}

unsigned MultSeq::count_mult(unsigned j) const {
    unsigned n = 0;
    for (const auto& e : entries)
        if (e.mult == j) n++;
    return n;
}

long long MultSeq::sum_mult() const {
    long long s = 0;
    for (const auto& e : entries) s += e.mult;
    return s;
}

long long MultSeq::sum_mult_sq() const {
    long long s = 0;
    for (const auto& e : entries) s += (long long)e.mult * e.mult;
    return s;
}

long long MultSeq::sum_binom2() const {
    long long s = 0;
    for (const auto& e : entries) s += binom2(e.mult);
    return s;
}

mpq_class MultSeq::average_mult() const {
    if (entries.empty()) throw InputError("empty multiplicity sequence");
    mpq_class q = qq(sum_mult(), r());
    q.canonicalize();
    return q;
}

void MultSeq::normalize() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const MultEntry& a, const MultEntry& b) {
                         if (a.mult != b.mult) return a.mult > b.mult;
                         return a.actual && !b.actual;
                     });
}

std::string MultSeq::str() const {
    MultSeq c(*this);
    c.normalize();
    std::ostringstream os;
    os << degree;
    size_t i = 0;
    while (i < c.entries.size()) {
        size_t j = i;
        while (j < c.entries.size() && c.entries[j].mult == c.entries[i].mult) j++;
        os << (i == 0 ? ';' : ',') << c.entries[i].mult;
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

MultSeq parse_sequence(const std::string& text) {
    MultSeq seq;
    size_t pos = 0;
    auto read_uint = [&]() -> unsigned long {
        if (pos >= text.size() || !isdigit((unsigned char)text[pos]))
            throw InputError("expected a number at position " + std::to_string(pos) +
                             " in sequence \"" + text + "\"");
        size_t end;
        unsigned long v = std::stoul(text.substr(pos), &end);
        pos += end;
        return v;
    };
    unsigned long d = read_uint();
    if (d == 0) throw InputError("sequence degree must be positive");
    seq.degree = (unsigned)d;
    if (pos < text.size()) {
        if (text[pos] != ';')
            throw InputError("expected ';' after the degree in \"" + text + "\"");
        pos++;
        while (true) {
            unsigned long m = read_uint();
            if (m < 2) throw InputError("multiplicities must be at least 2");
            if (m > d) throw InputError("multiplicity " + std::to_string(m) +
                                        " exceeds the degree");
            unsigned long count = 1;
            if (pos < text.size() && text[pos] == '^') {
                pos++;
                count = read_uint();
                if (count == 0) throw InputError("zero repeat count");
            }
            for (unsigned long i = 0; i < count; i++)
                seq.entries.push_back({(unsigned)m, true});
            if (pos == text.size()) break;
            if (text[pos] != ',')
                throw InputError("expected ',' at position " + std::to_string(pos) +
                                 " in \"" + text + "\"");
            pos++;
        }
    }
    seq.normalize();
    return seq;
}

mpq_class h_constant(const MultSeq& seq) {
    if (seq.entries.empty()) throw InputError("empty multiplicity sequence");
    mpq_class q = qq((long long)seq.degree * seq.degree - seq.sum_mult_sq(), seq.r());
    q.canonicalize();
    return q;
}

mpq_class h_constant_actual(const MultSeq& seq) {
    long long ssq = 0, n = 0;
    for (const auto& e : seq.entries)
        if (e.actual) {
            ssq += (long long)e.mult * e.mult;
            n++;
        }
    if (n == 0) throw InputError("sequence has no actual entries");
    mpq_class q = qq((long long)seq.degree * seq.degree - ssq, n);
    q.canonicalize();
    return q;
}

long long sigma_k(const MultSeq& seq, long long k) {
    return (long long)seq.degree * seq.degree - seq.sum_mult_sq() + k * seq.r();
}

long long sigma0_k(const MultSeq& seq, long long k) {
    long long ssq = 0, n = 0;
    for (const auto& e : seq.entries)
        if (e.actual) {
            ssq += (long long)e.mult * e.mult;
            n++;
        }
    return (long long)seq.degree * seq.degree - ssq + k * n;
}

long long genus_sum(const MultSeq& seq) {
    if (!seq.components) throw InputError("component count is not known");
    return binom2((long long)seq.degree - 1) - seq.sum_binom2() +
           ((long long)*seq.components - 1);
}

long long euler_normalization(const MultSeq& seq) {
    if (!seq.components) throw InputError("component count is not known");
    long long g;
    if (seq.genus_list) {
        g = 0;
        for (long long gj : *seq.genus_list) g += gj;
    } else {
        g = genus_sum(seq);
    }
    return 2LL * *seq.components - 2 * g;
}

long long euler_plane_ordinary(const MultSeq& seq) {
    long long e = euler_normalization(seq);
    for (const auto& ent : seq.entries) e -= (long long)ent.mult - 1;
    return e;
}

std::string CheckResult::status_str() const {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "not-applicable";
    }
}

namespace {

CheckResult make_check(std::string name, const mpq_class& lhs, const mpq_class& rhs,
                       bool strict, std::string note = "") {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs - rhs;
    c.margin.canonicalize();
    bool ok = strict ? lhs > rhs : lhs >= rhs;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.note = std::move(note);
    return c;
}

CheckResult na_check(std::string name, std::string note) {
    CheckResult c;
    c.name = std::move(name);
    c.status = CheckStatus::not_applicable;
    c.note = std::move(note);
    return c;
}

}  // namespace

CheckResult check_cor0(const MultSeq& seq) {
    long long rhs = seq.sum_mult() - 2LL * seq.r();
    return make_check("cor0", qq(3LL * seq.degree - 2), qq(rhs), true);
}

bool eqNew_holds(long long d, long long r) {
    return (36 - 4 * r) * d * d + 48 * d * (r - 1) + r * (8 * r - 32) + 16 > 0;
}

CheckResult check_eqNew(long long d, long long r) {
    if (d < 1 || r < 1) throw InputError("eqNew needs d >= 1 and r >= 1");
    long long v = (36 - 4 * r) * d * d + 48 * d * (r - 1) + r * (8 * r - 32) + 16;
    return make_check("eqNew", qq(v), qq(0), true);
}

CheckResult sum_mult_bound(long long d, long long r, long long sum_m) {
    if (d < 3 || r < 1) throw InputError("sum_mult_bound needs d >= 3 and r >= 1");
    long long lhs = 2 * sum_m - r;
    mpq_class l = lhs <= 0 ? qq(0) : qq(lhs * lhs);
    mpq_class rr = qq(r * r + 4 * r * (d - 1) * (d - 2));
    CheckResult c = make_check("sum_mult_bound", rr, l, false);
    if (c.margin == 0) c.note = "equality";
    return c;
}

CheckResult check_prop0_sigma2m1(const MultSeq& seq) {
    if (seq.entries.empty())
        return na_check("prop0_sigma2m1", "no singular points");
    long long m = seq.max_mult();
    return make_check("prop0_sigma2m1", qq(sigma_k(seq, 2 * m - 1)),
                      qq(2LL * seq.degree - 1), false);
}

CheckResult check_prop0_sigmam(const MultSeq& seq, bool irreducible) {
    if (seq.entries.empty())
        return na_check("prop0_sigmam", "no singular points");
    if (!irreducible)
        return na_check("prop0_sigmam", "requires an irreducible curve");
    long long m = seq.max_mult();
    return make_check("prop0_sigmam", qq(sigma_k(seq, m)),
                      qq(3LL * seq.degree - 2), false);
}

CheckResult check_mu_bound(const MultSeq& seq, long long mu_total) {
    long long b = (long long)seq.degree - 1;
    return make_check("mu_bound", qq(b * b), qq(mu_total), false);
}

CheckResult check_chain(const MultSeq& seq) {
    if (seq.entries.empty())
        return na_check("chain_genusFormula", "no singular points");
    if (!seq.components)
        return na_check("chain_genusFormula", "component count is not known");
    long long s = *seq.components;
    long long d = seq.degree;
    long long sm = seq.sum_mult();
    long long r = seq.r();
    long long g = seq.genus_list
                      ? [&] {
                            long long t = 0;
                            for (long long gj : *seq.genus_list) t += gj;
                            return t;
                        }()
                      : genus_sum(seq);
    mpq_class H = h_constant(seq);
    mpq_class t1 = qq(3 * d + 2 * g - 2 * s - sm, r);
    mpq_class t2 = qq(3 * d - 2 * s - sm, r);
    mpq_class t3 = qq(d - sm, r);
    mpq_class mbar = seq.average_mult();

    CheckResult c;
    c.name = "chain_genusFormula";
    c.lhs = H;
    c.rhs = -mbar;
    c.margin = H + mbar;
    c.margin.canonicalize();
    bool ok = H == t1 && t1 >= t2 && t2 >= t3 && t3 > -mbar;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    std::ostringstream note;
    note << "(3d+2g-2s-Sm)/r=" << rat_str(t1) << " (3d-2s-Sm)/r=" << rat_str(t2)
         << " (d-Sm)/r=" << rat_str(t3) << " -mbar=" << rat_str(-mbar);
    if (t1 == t2) note << "; all components rational";
    if (t2 == t3) note << "; all components are lines";
    c.note = note.str();
    return c;
}

CheckResult check_hirzebruch(const std::map<unsigned, unsigned>& n, unsigned d) {
    auto count = [&](unsigned k) -> long long {
        auto it = n.find(k);
        return it == n.end() ? 0 : it->second;
    };
    if (count(d) > 0)
        return na_check("hirzebruch", "pencil: all lines concurrent");
    if (d >= 1 && count(d - 1) > 0)
        return na_check("hirzebruch", "near-pencil: all lines but one concurrent");
    mpq_class lhs = qq(count(2)) + mpq_class(3, 4) * qq(count(3));
    lhs.canonicalize();
    long long rhs = d;
    for (const auto& [k, cnt] : n)
        if (k > 4) rhs += (long long)(k - 4) * cnt;
    CheckResult c = make_check("hirzebruch", lhs, qq(rhs), false);
    if (c.status == CheckStatus::fail) c.note = "not realizable over the complex numbers";
    return c;
}

namespace {

bool all_rational(const MultSeq& seq) {
    if (seq.genus_list) {
        for (long long g : *seq.genus_list)
            if (g != 0) return false;
        return true;
    }
    return seq.components && genus_sum(seq) == 0;
}

bool only_mults(const MultSeq& seq, std::set<unsigned> allowed) {
    for (const auto& e : seq.entries)
        if (!allowed.count(e.mult)) return false;
    return true;
}

}  // namespace

CheckResult check_conj_c14(const MultSeq& seq) {
    if (!only_mults(seq, {3}) || seq.entries.empty())
        return na_check("conj_c14", "out of scope: multiplicities are not all 3");
    if (!seq.components)
        return na_check("conj_c14", "out of scope: component count unknown");
    if (!all_rational(seq))
        return na_check("conj_c14", "out of scope: components are not all rational");
    CheckResult c;
    c.name = "conj_c14";
    c.lhs = qq(seq.degree);
    c.rhs = qq(9);
    c.margin = c.lhs - c.rhs;
    if (seq.degree > 9) {
        c.status = CheckStatus::fail;
        c.note = "would-be counterexample: all triple points, rational, degree > 9";
    } else {
        c.status = CheckStatus::pass;
        c.note = "within scope, degree <= 9";
    }
    return c;
}

CheckResult check_conj_c20(const MultSeq& seq) {
    if (!only_mults(seq, {2, 3}) || seq.entries.empty())
        return na_check("conj_c20", "out of scope: multiplicities beyond 2 and 3");
    if (!seq.components)
        return na_check("conj_c20", "out of scope: component count unknown");
    if (!all_rational(seq))
        return na_check("conj_c20", "out of scope: components are not all rational");
    bool irreducible = *seq.components == 1;
    unsigned bound = irreducible ? 8 : 9;
    CheckResult c;
    c.name = "conj_c20";
    c.lhs = qq(seq.count_mult(2));
    c.rhs = qq(0);
    c.margin = c.lhs;
    if (seq.degree <= bound) {
        c.status = CheckStatus::not_applicable;
        c.note = "out of scope: degree within the conjecture's exclusion";
    } else if (seq.count_mult(2) == 0) {
        c.status = CheckStatus::fail;
        c.note = "would-be counterexample: no nodes";
    } else {
        c.status = CheckStatus::pass;
        c.note = "has nodes";
    }
    return c;
}

CheckResult check_rk21(const MultSeq& seq) {
    if (!only_mults(seq, {2, 3}) || seq.entries.empty())
        return na_check("rk21", "out of scope: multiplicities beyond 2 and 3");
    if (!seq.components || !all_rational(seq))
        return na_check("rk21", "out of scope: needs rational components");
    long long d = seq.degree;
    mpq_class rhs = qq(d * d - 21 * d + 14, 2);
    return make_check("rk21", qq(seq.count_mult(2)), rhs, true);
}

CurveReport make_report(const MultSeq& seq, const ReportOptions& opt) {
    CurveReport rep;
    rep.sequence = seq;
    rep.sequence.normalize();
    rep.H = h_constant(seq);
    if (seq.r_actual() > 0) rep.H_actual = h_constant_actual(seq);
    rep.delta_total = seq.sum_binom2();
    rep.mu_total = opt.mu_total;
    if (seq.components) {
        rep.genus = genus_sum(seq);
        rep.euler = euler_normalization(seq);
    }

    unsigned m = seq.max_mult();
    std::set<long long> ks = {0, 2, 4, (long long)m, 2LL * m - 1};
    for (long long k : opt.extra_k) ks.insert(k);
    for (long long k : ks) rep.sigma[k] = sigma_k(seq, k);

    bool irreducible = opt.irreducible
                           ? *opt.irreducible
                           : (seq.components && *seq.components == 1);

    rep.checks.push_back(check_cor0(seq));
    rep.checks.push_back(check_eqNew(seq.degree, seq.r()));
    rep.checks.push_back(check_prop0_sigma2m1(seq));
    rep.checks.push_back(check_prop0_sigmam(seq, irreducible));
    if (opt.mu_total) rep.checks.push_back(check_mu_bound(seq, *opt.mu_total));
    rep.checks.push_back(check_chain(seq));
    rep.checks.push_back(check_conj_c14(seq));
    rep.checks.push_back(check_conj_c20(seq));
    rep.checks.push_back(check_rk21(seq));
    return rep;
}

MultSeq seq_from_analysis(const CurveAnalysis& an) {
    MultSeq seq;
    seq.degree = an.degree;
    for (const auto& rec : an.points) {
        bool first = true;
        for (unsigned m : rec.mult_sequence) {
            seq.entries.push_back({m, first});
            first = false;
        }
    }
    seq.normalize();
    return seq;
}

}  // namespace hconst
