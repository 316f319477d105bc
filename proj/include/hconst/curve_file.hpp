#pragma once

// The curve file format: a `field:` line, a `factors:` line followed by one
// polynomial per line (the curve is their product), and optional
// `components:` and `primes:` lines.

#include <optional>
#include <string>
#include <vector>

#include "hconst/poly.hpp"

namespace hconst {

struct CurveFile {
    FieldPtr field;
    std::vector<MultiPoly> factors;            // in the variables x, y, z
    std::optional<unsigned> components;
    std::vector<fq::u64> primes;               // reduction primes for Q curves

    MultiPoly product() const;
};

CurveFile load_curve_file(const std::string& path);
CurveFile parse_curve_file(const std::string& text, const std::string& origin);

}  // namespace hconst
