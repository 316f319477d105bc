#include "hconst/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <random>
#include <set>
#include <sstream>

namespace hconst {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_rat(const std::string& text, mpq_class* out) {
    std::string t = trim(text);
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    if (i == t.size()) return false;
    for (size_t j = i; j < t.size(); ++j) {
        if (t[j] == '/' && !seen_slash && j > i && j + 1 < t.size()) {
            seen_slash = true;
        } else if (!std::isdigit((unsigned char)t[j])) {
            return false;
        }
    }
    mpq_class q(t);
    q.canonicalize();
    if (out) *out = q;
    return true;
}

// rational-aware equality so "7" matches "7/1"
bool values_match(const std::string& expected, const std::string& got) {
    mpq_class a, b;
    if (parse_rat(expected, &a) && parse_rat(got, &b)) return a == b;
    return trim(expected) == trim(got);
}

std::vector<fq::u64> parse_u64_list(const std::string& text) {
    std::vector<fq::u64> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw InputError("empty element in list: " + text);
        out.push_back(std::stoull(tok));
    }
    return out;
}

bool starts_with(const std::string& s, const std::string& p) {
    return s.rfind(p, 0) == 0;
}

const CheckResult* find_check(const CurveReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

// values the verifier can compute for a pipeline run; filled lazily per the
// keys the entry actually expects
struct GotValues {
    std::map<std::string, std::string> vals;
    void put(const std::string& k, const std::string& v) { vals[k] = v; }
    void put(const std::string& k, long long v) { vals[k] = std::to_string(v); }
    void put(const std::string& k, const mpq_class& v) { vals[k] = v.get_str(); }
};

void fill_from_report(const CatalogEntry& e, const CurveReport& rep, GotValues* g) {
    const MultSeq& seq = rep.sequence;
    for (const auto& [key, val] : e.expect) {
        (void)val;
        if (key == "sequence") g->put(key, seq.str());
        else if (key == "H") g->put(key, rep.H);
        else if (key == "H_actual")
            g->put(key, rep.H_actual ? rep.H_actual->get_str() : std::string("none"));
        else if (key == "degree") g->put(key, (long long)seq.degree);
        else if (key == "actual_points") g->put(key, (long long)seq.r_actual());
        else if (key == "delta_total") g->put(key, rep.delta_total);
        else if (key == "mu_total")
            g->put(key, rep.mu_total ? std::to_string(*rep.mu_total) : std::string("none"));
        else if (key == "genus")
            g->put(key, rep.genus ? std::to_string(*rep.genus) : std::string("none"));
        else if (key == "euler")
            g->put(key, rep.euler ? std::to_string(*rep.euler) : std::string("none"));
        else if (key == "chain_bound") {
            mpq_class b((long)(seq.degree - seq.sum_mult()), (long)seq.r());
            b.canonicalize();
            g->put(key, b);
        } else if (starts_with(key, "sigma_")) {
            g->put(key, sigma_k(seq, std::stoll(key.substr(6))));
        } else if (key == "cor0" || key == "hirzebruch" || key == "eqNew") {
            const CheckResult* c = find_check(rep, key);
            g->put(key, c ? c->status_str() : std::string("absent"));
        } else if (key == "cor0_margin") {
            const CheckResult* c = find_check(rep, "cor0");
            g->put(key, c ? c->margin.get_str() : std::string("absent"));
        }
    }
}

void fill_from_analysis(const CatalogEntry& e, const CurveAnalysis& an, GotValues* g) {
    for (const auto& [key, val] : e.expect) {
        (void)val;
        if (key == "points") {
            g->put(key, (long long)an.points.size());
        } else if (key == "nodes") {
            long long n = 0;
            for (const auto& p : an.points)
                if (p.mult_sequence == std::vector<unsigned>{2}) ++n;
            g->put(key, n);
        } else if (key == "ordinary") {
            bool all = true;
            for (const auto& p : an.points) all = all && p.ordinary;
            g->put(key, std::string(all ? "true" : "false"));
        } else if (starts_with(key, "branches_at_")) {
            unsigned m = (unsigned)std::stoul(key.substr(12));
            std::set<unsigned> counts;
            for (const auto& p : an.points)
                if (p.tree.multiplicity == m) counts.insert(p.branches);
            if (counts.empty()) g->put(key, std::string("no such point"));
            else if (counts.size() > 1) g->put(key, std::string("mixed"));
            else g->put(key, (long long)*counts.begin());
        } else if (key == "delta_each" || key == "mu_each") {
            std::set<unsigned> vals;
            for (const auto& p : an.points)
                vals.insert(key[0] == 'd' ? p.delta : p.mu);
            if (vals.empty()) g->put(key, std::string("no points"));
            else if (vals.size() > 1) g->put(key, std::string("mixed"));
            else g->put(key, (long long)*vals.begin());
        } else if (key == "points_at") {
            // semicolon-separated integer triples, normalized last-nonzero = 1
            std::vector<std::string> missing;
            std::stringstream ss(val);
            std::string triple;
            while (std::getline(ss, triple, ';')) {
                auto nums = parse_u64_list(trim(triple));
                if (nums.size() != 3) throw InputError("points_at wants triples");
                bool found = false;
                for (const auto& p : an.points) {
                    if (p.point.level != 1 || p.point.coords.size() != 3) continue;
                    bool eq = true;
                    for (size_t i = 0; i < 3 && eq; ++i)
                        eq = p.point.coords[i] ==
                             FieldElem::from_int(p.point.field, (long long)nums[i]);
                    if (eq) { found = true; break; }
                }
                if (!found) missing.push_back(trim(triple));
            }
            if (missing.empty()) {
                g->put(key, val);
            } else {
                std::string miss = "missing ";
                for (size_t i = 0; i < missing.size(); ++i)
                    miss += (i ? "; " : "") + missing[i];
                g->put(key, miss);
            }
        }
    }
}

void compare(const CatalogEntry& e, const GotValues& g, EntryResult* res) {
    for (const auto& [key, expected] : e.expect) {
        auto it = g.vals.find(key);
        if (it == g.vals.end()) {
            res->mismatches.push_back(key + ": not computed for kind '" + e.kind + "'");
        } else if (!values_match(expected, it->second)) {
            res->mismatches.push_back(key + ": expected " + expected + ", got " + it->second);
        }
    }
}

void run_curve(const CatalogEntry& e, const VerifyOptions& opt, EntryResult* res) {
    FieldPtr f = make_field(e.field_spec.empty() ? "Q" : e.field_spec);
    std::vector<std::string> vars = {"x", "y", "z"};
    if (e.source.empty()) throw InputError("curve entry without factors: " + e.id);
    MultiPoly prod = MultiPoly::constant(f, vars, FieldElem::one(f));
    for (const auto& text : e.source) prod = prod * parse_poly(text, f, vars);

    ResolutionOptions ropt;
    ropt.ext_bound = opt.ext_bound;
    if (!e.primes.empty()) ropt.primes = e.primes;
    CurveAnalysis an = f->characteristic == 0 ? analyze_curve(prod, ropt)
                                              : analyze_curve_finite(prod, ropt);
    std::optional<unsigned> comps = e.components;
    if (!comps && e.source.size() > 1) comps = (unsigned)e.source.size();
    CurveReport rep = report_from_analysis(an, comps);

    GotValues g;
    fill_from_report(e, rep, &g);
    fill_from_analysis(e, an, &g);
    compare(e, g, res);
}

void run_arrangement(const CatalogEntry& e, const VerifyOptions& opt, EntryResult* res) {
    if (e.source.empty()) throw InputError("arrangement entry without generator: " + e.id);
    std::stringstream ss(e.source.front());
    std::string gen;
    ss >> gen;
    LineSet ls;
    if (gen == "finite_plane") {
        fq::u64 q = 0;
        ss >> q;
        ls = finite_plane_lines(q);
    } else if (gen == "finite_plane_avoid") {
        fq::u64 q = 0;
        std::string coords;
        ss >> q >> coords;
        auto nums = parse_u64_list(coords);
        ls = finite_plane_lines_avoiding(
            q, std::vector<long long>(nums.begin(), nums.end()));
    } else if (gen == "fermat") {
        unsigned n = 0;
        ss >> n;
        FieldPtr f = make_field(e.field_spec.empty() ? "Q" : e.field_spec);
        ls = fermat_arrangement(n, f, opt.ext_bound);
    } else {
        throw InputError("unknown arrangement generator: " + gen);
    }
    CurveReport rep = arrangement_report(ls);
    GotValues g;
    fill_from_report(e, rep, &g);
    if (e.expect.count("points")) g.put("points", (long long)rep.sequence.r());
    if (e.expect.count("lines")) g.put("lines", (long long)ls.lines.size());
    compare(e, g, res);
}

void run_implicitize(const CatalogEntry& e, const VerifyOptions& opt, EntryResult* res) {
    FieldPtr f = make_field(e.field_spec);
    if (f->characteristic == 0) throw InputError("implicitize entries need a finite field");
    if (e.degree < 3) throw InputError("implicitize entry needs degree >= 3: " + e.id);
    NodalOutcome out = nodal_image(f->characteristic, e.degree,
                                   e.seed ? e.seed : opt.seed, opt.max_retries,
                                   opt.ext_bound);
    CurveReport rep = report_from_analysis(out.analysis, 1u);
    GotValues g;
    fill_from_report(e, rep, &g);
    fill_from_analysis(e, out.analysis, &g);
    if (e.expect.count("image_degree"))
        g.put("image_degree", (long long)out.curve.total_degree());
    compare(e, g, res);
}

void run_cremona(const CatalogEntry& e, EntryResult* res) {
    if (e.source.empty()) throw InputError("cremona entry without sequence: " + e.id);
    ReductionChain rc = homaloidal_reduce(parse_sequence(e.source.front()));
    std::string chain;
    for (size_t i = 0; i < rc.chain.size(); ++i)
        chain += (i ? " > " : "") + rc.chain[i].str();
    GotValues g;
    g.put("chain", chain);
    g.put("reduced", std::string(rc.reduced ? "true" : "false"));
    compare(e, g, res);
}

void run_group(const CatalogEntry& e, EntryResult* res) {
    FieldPtr f = rationals();
    std::map<std::string, NodalParam> params;
    for (const auto& line : e.source) {
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw InputError("bad param line: " + line);
        params.emplace(trim(line.substr(0, eq)),
                       NodalParam::parse(f, trim(line.substr(eq + 1))));
    }
    ConstructionResult cr = verify_construction(params);
    GotValues g;
    g.put("p3", cr.p3.str());
    g.put("p6", cr.p6.str());
    g.put("construction", std::string(cr.ok() ? "pass" : "fail"));
    if (e.expect.count("f1_order")) {
        NodalParam f1 = NodalParam::from_int(f, 0);
        long long order = 0;
        NodalParam acc = f1;
        for (long long n = 1; n <= 6 && order == 0; ++n) {
            if (acc.is_identity()) order = n;
            acc = add(acc, f1);
        }
        g.put("f1_order", order);
    }
    compare(e, g, res);
}

}  // namespace

std::string default_catalog_path() {
    return std::string(HCONST_DATA_DIR) + "/catalog.txt";
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open catalog file: " + path);
    std::vector<CatalogEntry> entries;
    std::set<std::string> seen;
    std::string line;
    size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw InputError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated entry header");
            std::string id = trim(line.substr(1, line.size() - 2));
            if (id.empty()) fail("empty entry id");
            if (!seen.insert(id).second) fail("duplicate entry id: " + id);
            entries.push_back({});
            entries.back().id = id;
            continue;
        }
        if (entries.empty()) fail("key line before the first entry header");
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        CatalogEntry& e = entries.back();
        if (starts_with(key, "expect ")) {
            e.expect[trim(key.substr(7))] = val;
        } else if (starts_with(key, "param ")) {
            e.source.push_back(trim(key.substr(6)) + " = " + val);
        } else if (key == "kind") {
            e.kind = val;
        } else if (key == "field") {
            e.field_spec = val;
        } else if (key == "primes") {
            e.primes = parse_u64_list(val);
        } else if (key == "factor" || key == "generator" || key == "sequence") {
            e.source.push_back(val);
        } else if (key == "components") {
            e.components = (unsigned)std::stoul(val);
        } else if (key == "degree") {
            e.degree = (unsigned)std::stoul(val);
        } else if (key == "seed") {
            e.seed = std::stoull(val);
        } else if (key == "anchor") {
            e.anchor = val;
        } else {
            fail("unknown key: " + key);
        }
    }
    static const std::set<std::string> kinds = {"curve", "arrangement", "implicitize",
                                                "cremona", "group"};
    for (const auto& e : entries) {
        if (!kinds.count(e.kind))
            throw InputError("entry " + e.id + ": unknown kind '" + e.kind + "'");
        // internal consistency of the expectations
        auto seq_it = e.expect.find("sequence");
        if (seq_it != e.expect.end()) {
            MultSeq seq = parse_sequence(seq_it->second);
            auto h_it = e.expect.find("H");
            mpq_class h;
            if (h_it != e.expect.end() && parse_rat(h_it->second, &h) &&
                h_constant(seq) != h)
                throw InputError("entry " + e.id + ": expected H does not match " +
                                 "the expected sequence");
            if (e.components) {
                seq.components = e.components;
                if (genus_sum(seq) < 0)
                    throw InputError("entry " + e.id +
                                     ": expected sequence is genus-infeasible");
            }
        }
    }
    return entries;
}

std::vector<CatalogEntry> shipped_catalog() {
    return load_catalog(default_catalog_path());
}

CurveReport report_from_analysis(const CurveAnalysis& an,
                                 std::optional<unsigned> components,
                                 const ReportOptions& opt) {
    MultSeq seq = seq_from_analysis(an);
    seq.components = components;
    ReportOptions o = opt;
    if (!o.mu_total) {
        long long mu = 0;
        for (const auto& p : an.points) mu += p.mu;
        o.mu_total = mu;
    }
    return make_report(seq, o);
}

NodalOutcome nodal_image(fq::u64 prime, unsigned degree, fq::u64 seed,
                         unsigned max_retries, unsigned ext_bound) {
    FieldPtr f = finite_field(prime);
    std::vector<std::string> st = {"s", "t"};
    for (unsigned attempt = 0; attempt <= max_retries; ++attempt) {
        std::mt19937_64 rng(seed + attempt);
        std::uniform_int_distribution<fq::u64> dist(0, prime - 1);
        auto form = [&]() {
            MultiPoly g = MultiPoly::zero(f, st);
            for (unsigned i = 0; i <= degree; ++i) {
                fq::u64 c = dist(rng);
                if (c == 0) continue;
                g = g + MultiPoly::monomial(f, st, {degree - i, i},
                                            FieldElem::from_int(f, (long long)c));
            }
            return g;
        };
        MultiPoly fx = form(), fy = form(), fz = form();
        try {
            ImplicitizeResult im = implicitize(fx, fy, fz);
            if (im.degenerate || im.map_degree != 1 || im.image_degree != degree)
                continue;
            if (!is_squarefree_curve(im.curve, ext_bound)) continue;
            ResolutionOptions ropt;
            ropt.ext_bound = ext_bound;
            CurveAnalysis an = analyze_curve_finite(im.curve, ropt);
            // genericity: exactly (d-1)(d-2)/2 ordinary double points
            unsigned expected = (degree - 1) * (degree - 2) / 2;
            if (an.points.size() != expected) continue;
            bool nodal = true;
            for (const auto& p : an.points)
                nodal = nodal && p.mult_sequence == std::vector<unsigned>{2} &&
                        p.branches == 2;
            if (!nodal) continue;
            return {im.curve, std::move(an), seed + attempt, attempt + 1};
        } catch (const InputError&) {
            continue;
        } catch (const ExtensionExceeded&) {
            continue;
        }
    }
    throw InputError("no birational squarefree image of degree " +
                     std::to_string(degree) + " within " +
                     std::to_string(max_retries + 1) + " attempts from seed " +
                     std::to_string(seed));
}

EntryResult verify_entry(const CatalogEntry& e, const VerifyOptions& opt) {
    EntryResult res;
    res.id = e.id;
    res.anchor = e.anchor;
    try {
        if (e.kind == "curve") run_curve(e, opt, &res);
        else if (e.kind == "arrangement") run_arrangement(e, opt, &res);
        else if (e.kind == "implicitize") run_implicitize(e, opt, &res);
        else if (e.kind == "cremona") run_cremona(e, &res);
        else if (e.kind == "group") run_group(e, &res);
        else throw InputError("unknown kind '" + e.kind + "'");
    } catch (const std::exception& err) {
        res.mismatches.push_back(std::string("pipeline error [") + e.id + "]: " +
                                 err.what());
    }
    res.passed = res.mismatches.empty();
    return res;
}

VerifySummary verify_all(const std::vector<CatalogEntry>& entries,
                         const VerifyOptions& opt) {
    VerifySummary sum;
    if (opt.parallel) {
        std::vector<std::future<EntryResult>> futs;
        futs.reserve(entries.size());
        for (const auto& e : entries)
            futs.push_back(std::async(std::launch::async,
                                      [&e, &opt] { return verify_entry(e, opt); }));
        for (auto& fu : futs) sum.results.push_back(fu.get());
    } else {
        for (const auto& e : entries) sum.results.push_back(verify_entry(e, opt));
    }
    std::sort(sum.results.begin(), sum.results.end(),
              [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; });
    for (const auto& r : sum.results) (r.passed ? sum.passed : sum.failed)++;
    return sum;
}

}  // namespace hconst
