#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hconst/sequences.hpp"

using namespace hconst;

TEST_CASE("cremona transform") {
    MultSeq oct = parse_sequence("8;3^7");
    CHECK(cremona_transform(oct, {3, 3, 3}).str() == "7;3^4,2^3");

    MultSeq rose = parse_sequence("4;3");
    CHECK(cremona_transform(rose, {3, 1, 1}).str() == "3;2");

    CHECK(cremona_transform(parse_sequence("2"), {1, 1, 1}).str() == "1");

    // off-curve centers lift the degree
    CHECK(cremona_transform(parse_sequence("3;2"), {0, 0, 0}).str() == "6;3^3,2");

    // centers must be available entries
    CHECK_THROWS_AS(cremona_transform(rose, {3, 3, 1}), InputError);
    CHECK_THROWS_AS(cremona_transform(rose, {2, 1, 1}), InputError);
    // transformed degree must stay positive
    CHECK_THROWS_AS(cremona_transform(parse_sequence("1"), {1, 1, 1}), InputError);
    // a center may not end up with negative multiplicity
    CHECK_THROWS_AS(cremona_transform(parse_sequence("3;3"), {3, 1, 1}), InputError);
}

TEST_CASE("homaloidal reduction chain") {
    ReductionChain rc = homaloidal_reduce(parse_sequence("8;3^7"));
    CHECK(rc.reduced);
    std::vector<std::string> want = {"8;3^7", "7;3^4,2^3", "5;3,2^3",
                                     "4;3", "3;2", "2", "1"};
    REQUIRE(rc.chain.size() == want.size());
    for (size_t i = 0; i < want.size(); i++) CHECK(rc.chain[i].str() == want[i]);

    ReductionChain triv = homaloidal_reduce(parse_sequence("1"));
    CHECK(triv.reduced);
    CHECK(triv.chain.size() == 1);

    // the four-conic pencil sequence is not reduced by the greedy strategy
    ReductionChain stuck = homaloidal_reduce(parse_sequence("6;3^4"));
    CHECK_FALSE(stuck.reduced);
    CHECK(stuck.chain.back().str() == "3;3");
    CHECK_FALSE(stuck.halt_reason.empty());
}

TEST_CASE("cremona involution and genus invariance") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 1000) {
        MultSeq seq;
        seq.degree = 3 + (unsigned)(rng() % 28);
        unsigned r = (unsigned)(rng() % 6);
        for (unsigned i = 0; i < r; i++)
            seq.entries.push_back({2 + (unsigned)(rng() % (seq.degree - 1)), true});
        seq.normalize();

        std::array<long long, 3> centers;
        for (auto& c : centers) {
            unsigned pick = (unsigned)(rng() % 3);
            if (pick == 0 || seq.entries.empty())
                c = (long long)(rng() % 2);
            else
                c = seq.entries[rng() % seq.entries.size()].mult;
        }
        // a center value occurring twice among the choices must occur at
        // least twice in the sequence; let the transform reject bad draws
        MultSeq img;
        try {
            img = cremona_transform(seq, centers);
        } catch (const InputError&) {
            continue;
        }
        done++;

        long long d = seq.degree;
        long long total = centers[0] + centers[1] + centers[2];
        std::array<long long, 3> back = {d - total + centers[0],
                                         d - total + centers[1],
                                         d - total + centers[2]};
        CHECK(cremona_transform(img, back).str() == seq.str());

        // C(d-1,2) - sum C(m_i,2) is preserved for irreducible sequences
        MultSeq a = seq, b = img;
        a.components = 1;
        b.components = 1;
        CHECK(genus_sum(a) == genus_sum(b));
    }
}

TEST_CASE("enumerator") {
    SearchConstraints c;
    c.d_max = 4;
    c.only_multiplicity = 3;
    c.genus_bound = 0;
    c.irreducible_only = true;
    std::vector<Candidate> out = enumerate_candidates(c);
    REQUIRE(out.size() == 1);
    CHECK(out[0].seq.str() == "4;3");
    REQUIRE(out[0].feasible_s.size() == 1);
    CHECK(out[0].feasible_s[0] == std::pair<unsigned, long long>{1, 0});

    c.d_max = 9;
    c.irreducible_only = false;
    out = enumerate_candidates(c);
    std::set<std::string> got;
    for (const auto& cand : out) got.insert(cand.seq.str());
    for (const char* want : {"3;3", "5;3^3", "6;3^4", "7;3^7", "8;3^7",
                             "8;3^8", "9;3^10", "9;3^12"})
        CHECK(got.count(want) == 1);

    // every output has a feasible s within the delta budget
    for (const auto& cand : out) {
        CHECK_FALSE(cand.feasible_s.empty());
        for (auto [s, g] : cand.feasible_s) {
            CHECK(g >= 0);
            CHECK(g <= c.genus_bound * (long long)s);
            long long d = cand.seq.degree;
            CHECK(cand.seq.sum_binom2() <= (d - 1) * (d - 2) / 2 + (long long)s - 1);
        }
    }

    // minimal node count for a rational irreducible quintic is six
    SearchConstraints nodal;
    nodal.d_max = 5;
    nodal.only_multiplicity = 2;
    nodal.genus_bound = 0;
    nodal.irreducible_only = true;
    unsigned best = 1000;
    for (const auto& cand : enumerate_candidates(nodal))
        if (cand.seq.degree == 5) best = std::min(best, cand.seq.r());
    CHECK(best == 6);
}

TEST_CASE("known sequence lookup") {
    std::vector<KnownEntry> table = known_sequences();
    CHECK(table.size() >= 9);

    auto fano = known_lookup(parse_sequence("7;3^7"), table);
    REQUIRE(fano.size() == 1);
    CHECK(fano[0].characteristic == "=2");
    CHECK_FALSE(fano[0].irreducible);

    // two realizations in different characteristics
    auto twelve = known_lookup(parse_sequence("9;3^12"), table);
    REQUIRE(twelve.size() == 2);
    std::set<std::string> chars = {twelve[0].characteristic, twelve[1].characteristic};
    CHECK(chars == std::set<std::string>{"=0", "=3"});

    CHECK(known_lookup(parse_sequence("10;3^11"), table).empty());

    // every table entry passes genus feasibility and is found by the
    // enumerator under its own bounds
    for (const auto& e : table) {
        SearchConstraints c;
        c.d_max = e.seq.degree;
        c.only_multiplicity = 3;
        c.genus_bound = 0;
        bool found = false;
        for (const auto& cand : enumerate_candidates(c))
            if (cand.seq.str() == e.seq.str()) found = true;
        CHECK(found);
    }
}

TEST_CASE("asymptotic tables") {
    std::vector<AsymptoticRow> t = asymptotic_tables(3, 40);
    CHECK(t[2].d == 5);
    CHECK(t[2].nodal_H == mpq_class(-7, 6));
    CHECK(t[4].d == 7);
    CHECK(t[4].triple_H == mpq_class(4, 5));
    for (size_t i = 0; i < t.size(); i++) {
        CHECK(t[i].nodal_H > -2);
        CHECK(t[i].triple_H > -3);
        // nodal family decreases towards -2 from d = 6 on
        if (i > 0 && t[i].d >= 7) CHECK(t[i].nodal_H < t[i - 1].nodal_H);
    }
    CHECK_THROWS_AS(asymptotic_tables(2, 5), InputError);
}
