#include "hconst/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace hconst {

namespace {

long long binom2(long long m) { return m * (m - 1) / 2; }

mpq_class qq(long long n, long long d = 1) {
    mpq_class q((long)n, (long)d);
    q.canonicalize();
    return q;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const SearchConstraints& c) {
    std::vector<Candidate> out;
    for (unsigned d = 2; d <= c.d_max; d++) {
        unsigned m_hi = c.mult_bound ? std::min(c.mult_bound, d) : d;
        unsigned s_hi = c.irreducible_only ? 1 : (c.s_max ? std::min(c.s_max, d) : d);
        unsigned s_lo = c.irreducible_only ? 1 : c.s_min;
        if (s_lo > s_hi) continue;
        // delta budget for the largest feasible component count
        long long budget = binom2((long long)d - 1) + (long long)s_hi - 1;

        std::vector<unsigned> mults;
        auto flush = [&]() {
            if (mults.empty()) return;
            MultSeq seq;
            seq.degree = d;
            for (unsigned m : mults) seq.entries.push_back({m, true});
            if (c.max_double_points && seq.count_mult(2) > *c.max_double_points)
                return;
            Candidate cand;
            cand.seq = seq;
            for (unsigned s = s_lo; s <= s_hi; s++) {
                seq.components = s;
                long long g = genus_sum(seq);
                if (g >= 0 && g <= c.genus_bound * (long long)s)
                    cand.feasible_s.push_back({s, g});
            }
            cand.seq.components.reset();
            if (!cand.feasible_s.empty()) out.push_back(std::move(cand));
        };

        // non-increasing multiplicity lists within the delta budget
        std::function<void(unsigned, long long)> rec = [&](unsigned cap, long long left) {
            flush();
            for (unsigned m = std::min(cap, m_hi); m >= 2; m--) {
                if (c.only_multiplicity && m != *c.only_multiplicity) continue;
                if (binom2(m) > left) continue;
                mults.push_back(m);
                rec(m, left - binom2(m));
                mults.pop_back();
            }
        };
        rec(m_hi, budget);
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.seq.degree != b.seq.degree) return a.seq.degree < b.seq.degree;
        return a.seq.str() < b.seq.str();
    });
    return out;
}

MultSeq cremona_transform(const MultSeq& seq, std::array<long long, 3> centers) {
    long long d = seq.degree;
    MultSeq res;
    std::vector<MultEntry> pool = seq.entries;
    for (long long c : centers) {
        if (c < 0 || c > d)
            throw InputError("center multiplicity " + std::to_string(c) +
                             " is out of range");
        if (c >= 2) {
            auto it = std::find_if(pool.begin(), pool.end(), [&](const MultEntry& e) {
                return e.mult == (unsigned)c && e.actual;
            });
            if (it == pool.end())
                throw InputError("no actual entry of multiplicity " + std::to_string(c));
            pool.erase(it);
        }
    }
    long long dp = 2 * d - centers[0] - centers[1] - centers[2];
    if (dp <= 0) throw InputError("transformed degree would not be positive");
    long long total = centers[0] + centers[1] + centers[2];
    for (long long c : centers) {
        long long nm = d - (total - c);
        if (nm < 0)
            throw InputError("transform is not valid: a center would get "
                             "multiplicity " + std::to_string(nm));
        if (nm >= 2) res.entries.push_back({(unsigned)nm, true});
    }
    res.degree = (unsigned)dp;
    for (const auto& e : pool) res.entries.push_back(e);
    res.components = seq.components;
    res.normalize();
    return res;
}

ReductionChain homaloidal_reduce(const MultSeq& seq) {
    ReductionChain rc;
    MultSeq cur = seq;
    cur.normalize();
    rc.chain.push_back(cur);
    for (int step = 0; step < 100; step++) {
        if (cur.degree == 1) {
            rc.reduced = true;
            return rc;
        }
        // prefer the largest multiplicity that occurs three times, so that
        // equal-multiplicity triples are consumed together
        std::array<long long, 3> centers = {1, 1, 1};
        unsigned triple = 0;
        for (const auto& e : cur.entries)
            if (cur.count_mult(e.mult) >= 3) triple = std::max(triple, e.mult);
        if (triple) {
            centers = {triple, triple, triple};
        } else {
            for (size_t i = 0; i < 3 && i < cur.entries.size(); i++)
                centers[i] = cur.entries[i].mult;
        }
        MultSeq next;
        try {
            next = cremona_transform(cur, centers);
        } catch (const InputError& e) {
            rc.halt_reason = e.what();
            return rc;
        }
        if (next.degree >= cur.degree) {
            rc.halt_reason = "greedy transform does not decrease the degree";
            return rc;
        }
        cur = next;
        rc.chain.push_back(cur);
    }
    rc.halt_reason = "step limit reached";
    return rc;
}

std::string default_data_dir() {
#ifdef HCONST_DATA_DIR
    return HCONST_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<KnownEntry> load_known_sequences(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file " + path);
    std::vector<KnownEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        while (!line.empty() && isspace((unsigned char)line.back())) line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string seq_text, chr, irr, desc;
        if (!std::getline(ls, seq_text, '|') || !std::getline(ls, chr, '|') ||
            !std::getline(ls, irr, '|') || !std::getline(ls, desc))
            throw InputError("malformed known-sequence line: " + line);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        KnownEntry e;
        e.seq = parse_sequence(strip(seq_text));
        e.characteristic = strip(chr);
        std::string f = strip(irr);
        if (f != "irreducible" && f != "reducible")
            throw InputError("expected irreducible/reducible, got " + f);
        e.irreducible = f == "irreducible";
        e.description = strip(desc);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<KnownEntry> known_sequences() {
    return load_known_sequences(default_data_dir() + "/known_sequences.txt");
}

std::vector<KnownEntry> known_lookup(const MultSeq& seq,
                                     const std::vector<KnownEntry>& table) {
    std::string key = seq.str();
    std::vector<KnownEntry> out;
    for (const auto& e : table)
        if (e.seq.str() == key) out.push_back(e);
    return out;
}

std::vector<KnownEntry> known_lookup(const MultSeq& seq) {
    return known_lookup(seq, known_sequences());
}

std::vector<AsymptoticRow> asymptotic_tables(unsigned d_min, unsigned d_max) {
    if (d_min < 3) throw InputError("asymptotic tables start at degree 3");
    std::vector<AsymptoticRow> out;
    for (unsigned d = d_min; d <= d_max; d++) {
        long long b = binom2((long long)d - 1);
        AsymptoticRow row;
        row.d = d;
        row.nodal_H = qq(-2) + qq(d, b);
        row.triple_H = qq(-3) + qq(3 * (3LL * d - 2), b);
        row.nodal_H.canonicalize();
        row.triple_H.canonicalize();
        out.push_back(row);
    }
    return out;
}

}  // namespace hconst
