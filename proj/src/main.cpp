// Command-line surface: analyze / enumerate / cremona / arrangement / cubic /
// implicitize / verify-catalog. Reports are exact (rationals as "a/b"); JSON
// output follows docs/report.schema.json. Exit codes: 0 ok, 1 check or verify
// failure (including cross-prime disagreement), 2 input error, 3 extension
// bound exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hconst/catalog.hpp"
#include "hconst/curve_file.hpp"

using namespace hconst;
using nlohmann::json;

namespace {

std::string rat(const mpq_class& q) { return q.get_str(); }

json seq_to_json(const MultSeq& s) {
    json entries = json::array();
    for (const auto& e : s.entries)
        entries.push_back({{"mult", e.mult}, {"actual", e.actual}});
    json j = {{"degree", s.degree}, {"text", s.str()}, {"entries", entries}};
    if (s.components) j["components"] = *s.components;
    return j;
}

json check_to_json(const CheckResult& c) {
    return {{"name", c.name},     {"status", c.status_str()}, {"lhs", rat(c.lhs)},
            {"rhs", rat(c.rhs)},  {"margin", rat(c.margin)},  {"note", c.note}};
}

json report_to_json(const CurveReport& r) {
    json sigma = json::object();
    for (const auto& [k, v] : r.sigma) sigma[std::to_string(k)] = v;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    json j = {{"sequence", seq_to_json(r.sequence)},
              {"H", rat(r.H)},
              {"sigma", sigma},
              {"delta_total", r.delta_total},
              {"checks", checks}};
    if (r.H_actual) j["H_actual"] = rat(*r.H_actual);
    if (r.mu_total) j["mu_total"] = *r.mu_total;
    if (r.genus) j["genus"] = *r.genus;
    if (r.euler) j["euler"] = *r.euler;
    return j;
}

json points_to_json(const CurveAnalysis& an) {
    json pts = json::array();
    for (const auto& p : an.points) {
        json seq = json::array();
        for (auto m : p.mult_sequence) seq.push_back(m);
        pts.push_back({{"point", p.point.str()},
                       {"level", p.point.level},
                       {"mult_sequence", seq},
                       {"delta", p.delta},
                       {"branches", p.branches},
                       {"mu", p.mu},
                       {"ordinary", p.ordinary}});
    }
    return pts;
}

void print_report(std::ostream& os, const CurveReport& r) {
    os << "sequence     " << r.sequence.str() << "\n";
    os << "H            " << rat(r.H) << "\n";
    if (r.H_actual) os << "H_actual     " << rat(*r.H_actual) << "\n";
    for (const auto& [k, v] : r.sigma) os << "sigma_" << k << "      " << v << "\n";
    os << "delta_total  " << r.delta_total << "\n";
    if (r.mu_total) os << "mu_total     " << *r.mu_total << "\n";
    if (r.genus) os << "genus        " << *r.genus << "\n";
    if (r.euler) os << "euler        " << *r.euler << "\n";
    os << "checks:\n";
    for (const auto& c : r.checks) {
        os << "  " << c.name << ": " << c.status_str() << "  (lhs " << rat(c.lhs)
           << ", rhs " << rat(c.rhs) << ", margin " << rat(c.margin) << ")";
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << "\n";
    }
}

// --json - writes to stdout, --json PATH to the file; empty means human text
void emit(const std::string& json_out, const json& doc,
          const std::function<void(std::ostream&)>& human) {
    if (json_out.empty()) {
        human(std::cout);
    } else if (json_out == "-") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(json_out);
        if (!f) throw InputError("cannot write " + json_out);
        f << doc.dump(2) << "\n";
    }
}

std::vector<long long> parse_ll_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

int cmd_analyze(const std::string& file, const std::vector<long long>& sigma,
                const std::vector<fq::u64>& primes, unsigned ext_bound,
                const std::string& json_out) {
    CurveFile cf = load_curve_file(file);
    ResolutionOptions ropt;
    ropt.ext_bound = ext_bound;
    if (!primes.empty()) ropt.primes = primes;
    else if (!cf.primes.empty()) ropt.primes = cf.primes;
    MultiPoly f = cf.product();
    CurveAnalysis an = cf.field->characteristic == 0 ? analyze_curve(f, ropt)
                                                     : analyze_curve_finite(f, ropt);
    std::optional<unsigned> comps = cf.components;
    if (!comps) comps = (unsigned)cf.factors.size();
    ReportOptions o;
    o.extra_k = sigma;
    CurveReport rep = report_from_analysis(an, comps, o);
    json doc = {{"command", "analyze"}, {"input", file},
                {"report", report_to_json(rep)}, {"points", points_to_json(an)}};
    emit(json_out, doc, [&](std::ostream& os) {
        print_report(os, rep);
        os << "points:\n";
        for (const auto& p : an.points) {
            os << "  " << p.point.str() << "  seq ";
            for (size_t i = 0; i < p.mult_sequence.size(); ++i)
                os << (i ? "," : "") << p.mult_sequence[i];
            os << "  delta " << p.delta << "  branches " << p.branches << "  mu "
               << p.mu << (p.ordinary ? "  ordinary" : "") << "\n";
        }
    });
    return 0;
}

int cmd_enumerate(const SearchConstraints& sc, const std::string& json_out) {
    auto out = enumerate_candidates(sc);
    auto known = known_sequences();
    json arr = json::array();
    for (const auto& c : out) {
        json feas = json::array();
        for (auto [s, g] : c.feasible_s) feas.push_back({{"s", s}, {"genus_sum", g}});
        json realizations = json::array();
        for (const auto& k : known_lookup(c.seq, known))
            realizations.push_back({{"characteristic", k.characteristic},
                                    {"irreducible", k.irreducible},
                                    {"description", k.description}});
        arr.push_back({{"sequence", c.seq.str()}, {"feasible", feas},
                       {"known", realizations}});
    }
    json doc = {{"command", "enumerate"}, {"candidates", arr}};
    emit(json_out, doc, [&](std::ostream& os) {
        for (const auto& c : out) {
            os << c.seq.str() << "   s/genus:";
            for (auto [s, g] : c.feasible_s) os << " " << s << "/" << g;
            auto r = known_lookup(c.seq, known);
            if (!r.empty()) {
                os << "   known:";
                for (const auto& k : r) os << " [" << k.characteristic << "]";
            }
            os << "\n";
        }
        os << out.size() << " candidate sequence(s)\n";
    });
    return 0;
}

int cmd_cremona(const std::string& seq_text, bool greedy,
                const std::string& centers_text, const std::string& json_out) {
    MultSeq seq = parse_sequence(seq_text);
    if (!centers_text.empty()) {
        auto cs = parse_ll_list(centers_text);
        if (cs.size() != 3) throw InputError("--centers wants three multiplicities");
        MultSeq out = cremona_transform(seq, {cs[0], cs[1], cs[2]});
        json doc = {{"command", "cremona"}, {"input", seq.str()},
                    {"transformed", out.str()}};
        emit(json_out, doc,
             [&](std::ostream& os) { os << seq.str() << " > " << out.str() << "\n"; });
        return 0;
    }
    (void)greedy;  // the default strategy is the greedy one
    ReductionChain rc = homaloidal_reduce(seq);
    json chain = json::array();
    for (const auto& s : rc.chain) chain.push_back(s.str());
    json doc = {{"command", "cremona"}, {"input", seq.str()},
                {"chain", chain}, {"reduced", rc.reduced}};
    if (!rc.reduced) doc["halt_reason"] = rc.halt_reason;
    emit(json_out, doc, [&](std::ostream& os) {
        for (size_t i = 0; i < rc.chain.size(); ++i)
            os << (i ? " > " : "") << rc.chain[i].str();
        os << "\n";
        if (!rc.reduced) os << "not reduced to a line: " << rc.halt_reason << "\n";
    });
    return 0;
}

int cmd_arrangement(fq::u64 finite_plane, const std::string& avoid,
                    unsigned fermat_n, const std::string& field_spec,
                    unsigned ext_bound, const std::string& json_out) {
    LineSet ls;
    if (finite_plane) {
        if (avoid.empty()) {
            ls = finite_plane_lines(finite_plane);
        } else {
            ls = finite_plane_lines_avoiding(finite_plane, parse_ll_list(avoid));
        }
    } else if (fermat_n) {
        ls = fermat_arrangement(fermat_n, make_field(field_spec), ext_bound);
    } else {
        throw InputError("choose one of --finite-plane or --fermat");
    }
    CurveReport rep = arrangement_report(ls);
    IncidenceData inc = incidence_data(ls);
    json tvec = json::object();
    for (const auto& [k, v] : inc.t) tvec[std::to_string(k)] = v;
    json doc = {{"command", "arrangement"}, {"lines", ls.lines.size()},
                {"t", tvec}, {"report", report_to_json(rep)}};
    emit(json_out, doc, [&](std::ostream& os) {
        os << ls.lines.size() << " lines\n";
        for (const auto& [k, v] : inc.t) os << "  t_" << k << " = " << v << "\n";
        print_report(os, rep);
    });
    return 0;
}

int cmd_cubic(const std::map<std::string, std::string>& params,
              const std::string& json_out) {
    FieldPtr f = rationals();
    std::map<std::string, NodalParam> ps;
    for (const auto& [k, v] : params)
        if (!v.empty()) ps.emplace(k, NodalParam::parse(f, v));
    ConstructionResult cr = verify_construction(ps);
    json checks = json::array();
    for (const auto& c : cr.checks) checks.push_back(check_to_json(c));
    json doc = {{"command", "cubic"}, {"p3", cr.p3.str()}, {"p6", cr.p6.str()},
                {"ok", cr.ok()}, {"checks", checks}};
    if (cr.p9) doc["p9"] = cr.p9->str();
    emit(json_out, doc, [&](std::ostream& os) {
        os << "p3 = " << cr.p3.str() << "\np6 = " << cr.p6.str() << "\n";
        if (cr.p9) os << "p9 = " << cr.p9->str() << "\n";
        for (const auto& c : cr.checks) {
            os << "  " << c.name << ": " << c.status_str();
            if (!c.note.empty()) os << "  [" << c.note << "]";
            os << "\n";
        }
    });
    return cr.ok() ? 0 : 1;
}

int cmd_implicitize(unsigned degree, const std::string& field_spec, fq::u64 seed,
                    unsigned retries, unsigned ext_bound,
                    const std::string& json_out) {
    FieldPtr f = make_field(field_spec);
    if (f->characteristic == 0)
        throw InputError("implicitize works over a finite field");
    NodalOutcome out =
        nodal_image(f->characteristic, degree, seed, retries, ext_bound);
    CurveReport rep = report_from_analysis(out.analysis, 1u);
    json doc = {{"command", "implicitize"}, {"curve", out.curve.str()},
                {"seed_used", out.seed_used}, {"attempts", out.attempts},
                {"report", report_to_json(rep)},
                {"points", points_to_json(out.analysis)}};
    emit(json_out, doc, [&](std::ostream& os) {
        os << "curve: " << out.curve.str() << "\n";
        os << "attempts " << out.attempts << " (seed " << out.seed_used << ")\n";
        print_report(os, rep);
    });
    return 0;
}

int cmd_verify_catalog(const std::string& path, bool parallel, fq::u64 seed,
                       unsigned ext_bound, const std::string& json_out) {
    auto entries = path.empty() ? shipped_catalog() : load_catalog(path);
    VerifyOptions opt;
    opt.parallel = parallel;
    opt.seed = seed;
    opt.ext_bound = ext_bound;
    VerifySummary sum = verify_all(entries, opt);
    json results = json::array();
    for (const auto& r : sum.results) {
        json mism = json::array();
        for (const auto& m : r.mismatches) mism.push_back(m);
        results.push_back({{"id", r.id}, {"passed", r.passed},
                           {"anchor", r.anchor}, {"mismatches", mism}});
    }
    json doc = {{"command", "verify-catalog"}, {"passed", sum.passed},
                {"failed", sum.failed}, {"results", results}};
    emit(json_out, doc, [&](std::ostream& os) {
        for (const auto& r : sum.results) {
            os << (r.passed ? "PASS " : "FAIL ") << r.id << "\n";
            if (!r.passed) {
                os << "  anchor: " << r.anchor << "\n";
                for (const auto& m : r.mismatches) os << "  " << m << "\n";
            }
        }
        os << sum.passed << " passed, " << sum.failed << " failed\n";
    });
    return sum.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of singular plane curves"};
    app.require_subcommand(1);

    std::string json_out;
    unsigned ext_bound = kDefaultExtBound;
    app.add_option("--json", json_out, "write the JSON report to a file ('-' = stdout)");
    app.add_option("--ext-bound", ext_bound, "largest field extension degree searched");

    auto* an = app.add_subcommand("analyze", "resolve a curve file and report invariants");
    std::string curve_path, sigma_text, primes_text;
    an->add_option("file", curve_path, "curve file")->required();
    an->add_option("--sigma", sigma_text, "extra sigma_k values, comma separated");
    an->add_option("--primes", primes_text, "reduction primes for curves over Q");

    auto* en = app.add_subcommand("enumerate", "candidate multiplicity sequences");
    SearchConstraints sc;
    long long only_mult = 0, max_double = -1;
    en->add_option("--d-max", sc.d_max, "largest degree")->required();
    en->add_option("--mult-bound", sc.mult_bound, "largest multiplicity");
    en->add_option("--genus-bound", sc.genus_bound, "largest genus sum");
    en->add_option("--only-mult", only_mult, "restrict to one multiplicity value");
    en->add_option("--max-double", max_double, "cap on the number of double points");
    en->add_option("--s-min", sc.s_min, "fewest components");
    en->add_option("--s-max", sc.s_max, "most components");
    en->add_flag("--irreducible", sc.irreducible_only, "irreducible candidates only");

    auto* cr = app.add_subcommand("cremona", "quadratic transformations of sequences");
    std::string seq_text, centers_text;
    bool greedy = false;
    cr->add_option("--sequence", seq_text, "multiplicity sequence")->required();
    cr->add_flag("--greedy", greedy, "greedy homaloidal reduction (the default)");
    cr->add_option("--centers", centers_text, "three center multiplicities");

    auto* ar = app.add_subcommand("arrangement", "line arrangement reports");
    fq::u64 finite_plane = 0;
    unsigned fermat_n = 0;
    std::string avoid, field_spec = "Q";
    ar->add_option("--finite-plane", finite_plane, "all lines over F_q");
    ar->add_option("--avoid-point", avoid, "drop the lines through a,b,c");
    ar->add_option("--fermat", fermat_n, "difference-of-powers arrangement");
    ar->add_option("--field", field_spec, "base field for --fermat");

    auto* cu = app.add_subcommand("cubic", "nodal cubic group-law constructions");
    std::map<std::string, std::string> cubic_params;
    for (const char* name : {"p1", "p2", "p4", "p5", "p7", "p8"})
        cu->add_option(std::string("--") + name, cubic_params[name],
                       "parameter of the named point");

    auto* im = app.add_subcommand("implicitize", "random nodal rational image");
    unsigned degree = 0, retries = 5;
    fq::u64 seed = 1;
    std::string im_field = "GF(101)";
    im->add_option("--degree", degree, "degree of the parameterization")->required();
    im->add_option("--field", im_field, "finite base field");
    im->add_option("--seed", seed, "seed of the pseudo-random coefficients");
    im->add_option("--retries", retries, "extra attempts allowed for genericity");

    auto* vc = app.add_subcommand("verify-catalog", "run the example corpus");
    std::string catalog_path;
    bool no_parallel = false;
    vc->add_option("--catalog", catalog_path, "catalog file (default: shipped)");
    vc->add_flag("--no-parallel", no_parallel, "verify entries sequentially");
    vc->add_option("--seed", seed, "base seed for implicitize entries");

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) {
            std::vector<long long> sig;
            if (!sigma_text.empty()) sig = parse_ll_list(sigma_text);
            std::vector<fq::u64> primes;
            if (!primes_text.empty())
                for (auto v : parse_ll_list(primes_text)) primes.push_back((fq::u64)v);
            return cmd_analyze(curve_path, sig, primes, ext_bound, json_out);
        }
        if (en->parsed()) {
            if (only_mult) sc.only_multiplicity = (unsigned)only_mult;
            if (max_double >= 0) sc.max_double_points = (unsigned)max_double;
            return cmd_enumerate(sc, json_out);
        }
        if (cr->parsed()) return cmd_cremona(seq_text, greedy, centers_text, json_out);
        if (ar->parsed())
            return cmd_arrangement(finite_plane, avoid, fermat_n, field_spec,
                                   ext_bound, json_out);
        if (cu->parsed()) return cmd_cubic(cubic_params, json_out);
        if (im->parsed())
            return cmd_implicitize(degree, im_field, seed, retries, ext_bound,
                                   json_out);
        if (vc->parsed())
            return cmd_verify_catalog(catalog_path, !no_parallel, seed, ext_bound,
                                      json_out);
    } catch (const DisagreementError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ExtensionExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
