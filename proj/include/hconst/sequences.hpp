#pragma once

// Combinatorics of multiplicity sequences: a necessary-condition enumerator
// for candidate sequences, quadratic (Cremona) transforms with greedy
// homaloidal reduction, the catalog of known realized sequences, and the
// asymptotic H-constant tables for the nodal and triple-point families.

#include <array>

#include "hconst/invariants.hpp"

namespace hconst {

struct SearchConstraints {
    unsigned d_max = 9;
    unsigned mult_bound = 0;         // 0 means no bound beyond the degree
    long long genus_bound = 0;       // per-component genus bound g
    std::optional<unsigned> max_double_points;  // bound on n_2
    std::optional<unsigned> only_multiplicity;
    unsigned s_min = 1;
    unsigned s_max = 0;              // 0 means up to d
    bool irreducible_only = false;
};

struct Candidate {
    MultSeq seq;
    // feasible component counts with their genus sums, 0 <= genus <= g*s
    std::vector<std::pair<unsigned, long long>> feasible_s;
};

// every sequence passing the necessary conditions, ordered by degree then
// canonical text; a superset of the realizable sequences
std::vector<Candidate> enumerate_candidates(const SearchConstraints& c);

// quadratic transform centered at three points of the given multiplicities:
// existing entries (>= 2, consumed), smooth curve points (1), or off-curve
// points (0). Centers reappear with multiplicity d minus the other two;
// entries of new multiplicity <= 1 are dropped. Combinatorial action only.
MultSeq cremona_transform(const MultSeq& seq, std::array<long long, 3> centers);

struct ReductionChain {
    bool reduced = false;            // reached a line
    std::vector<MultSeq> chain;      // starts at the input
    std::string halt_reason;         // set when not reduced
};

// greedy strategy: transform at the largest multiplicity present three
// times, else at the three largest entries padded with smooth points;
// bounded at 100 steps
ReductionChain homaloidal_reduce(const MultSeq& seq);

struct KnownEntry {
    MultSeq seq;
    std::string characteristic;  // "any", "=p", "!=p" (p = 0 means char 0)
    bool irreducible = false;
    std::string description;
};

std::vector<KnownEntry> load_known_sequences(const std::string& path);
std::vector<KnownEntry> known_sequences();  // the shipped data file

// realizations of the sequence, empty when unknown; never "impossible"
std::vector<KnownEntry> known_lookup(const MultSeq& seq);
std::vector<KnownEntry> known_lookup(const MultSeq& seq,
                                     const std::vector<KnownEntry>& table);

struct AsymptoticRow {
    unsigned d = 0;
    mpq_class nodal_H;   // rational nodal family, -2 + d / C(d-1,2)
    mpq_class triple_H;  // all-triple-points family, -3 + 3(3d-2) / C(d-1,2)
};

std::vector<AsymptoticRow> asymptotic_tables(unsigned d_min, unsigned d_max);

std::string default_data_dir();

}  // namespace hconst
