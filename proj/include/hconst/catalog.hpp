#pragma once

// Curated corpus of example curves, arrangements, Cremona chains and group-law
// constructions with their expected invariants, plus the regression verifier
// that runs the full pipeline against those expectations.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hconst/arrangements.hpp"
#include "hconst/cubic_group.hpp"
#include "hconst/resolution.hpp"
#include "hconst/sequences.hpp"

namespace hconst {

// One catalog entry. `kind` selects the pipeline:
//   curve        - source lines are factors; resolved over `field` (finite)
//                  or over Q via multi-prime reduction (`primes`)
//   arrangement  - source line is a generator: "finite_plane q",
//                  "finite_plane_avoid q a,b,c" or "fermat n"
//   implicitize  - random rational image of the given degree over `field`
//   cremona      - source line is a sequence; greedy homaloidal reduction
//   group        - source lines are "name = param" pairs for the nodal cubic
struct CatalogEntry {
    std::string id;
    std::string kind;
    std::string field_spec;                    // "Q", "GF(p)", ... ("" = Q)
    std::vector<fq::u64> primes;               // reduction primes for Q-curves
    std::vector<std::string> source;
    std::optional<unsigned> components;        // declared s for curve entries
    unsigned degree = 0;                       // implicitize entries
    fq::u64 seed = 1;                          // implicitize entries
    std::map<std::string, std::string> expect; // expectation key -> value
    std::string anchor;                        // printed on failure
};

// Parses the catalog file format: one `[id]` block per entry with
// `key = value` lines; `factor`/`generator`/`sequence`/`param` lines feed
// `source`; `expect <key> = <value>` lines feed the expectation map.
// Validates internal consistency of the expectations (H matches the expected
// sequence, genus feasibility when s is declared).
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::vector<CatalogEntry> shipped_catalog();  // data/catalog.txt
std::string default_catalog_path();

struct EntryResult {
    std::string id;
    bool passed = false;
    std::vector<std::string> mismatches;  // "key: expected ..., got ..."
    std::string anchor;
};

struct VerifySummary {
    std::vector<EntryResult> results;  // merged deterministically by id
    unsigned passed = 0;
    unsigned failed = 0;
    bool ok() const { return failed == 0; }
};

struct VerifyOptions {
    unsigned ext_bound = kDefaultExtBound;
    bool parallel = false;
    fq::u64 seed = 1;          // base seed for implicitize entries without one
    unsigned max_retries = 5;  // implicitize genericity retries
};

EntryResult verify_entry(const CatalogEntry& e, const VerifyOptions& opt = {});
VerifySummary verify_all(const std::vector<CatalogEntry>& entries,
                         const VerifyOptions& opt = {});

// Image of P^1 under a pseudo-random degree-d map into P^2 over F_p, retried
// (with consecutive seeds) until the image is a birational squarefree curve of
// degree d whose singularities are exactly (d-1)(d-2)/2 ordinary double points.
struct NodalOutcome {
    MultiPoly curve;
    CurveAnalysis analysis;
    fq::u64 seed_used = 0;
    unsigned attempts = 0;
};
NodalOutcome nodal_image(fq::u64 prime, unsigned degree, fq::u64 seed,
                         unsigned max_retries = 5,
                         unsigned ext_bound = kDefaultExtBound);

// Report assembly shared by the verifier and the CLI: multiplicity sequence
// from the resolved curve, total mu, and the full check suite.
CurveReport report_from_analysis(const CurveAnalysis& an,
                                 std::optional<unsigned> components,
                                 const ReportOptions& opt = {});

}  // namespace hconst
