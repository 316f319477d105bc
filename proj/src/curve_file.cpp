#include "hconst/curve_file.hpp"

#include <fstream>
#include <sstream>

namespace hconst {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

MultiPoly CurveFile::product() const {
    if (factors.empty()) throw InputError("curve file declared no factors");
    MultiPoly prod = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) prod = prod * factors[i];
    return prod;
}

CurveFile parse_curve_file(const std::string& text, const std::string& origin) {
    CurveFile cf;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    bool in_factors = false;
    std::vector<std::string> factor_texts;
    auto fail = [&](const std::string& msg) {
        throw InputError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "factors:") {
            in_factors = true;
            continue;
        }
        size_t colon = line.find(':');
        std::string key = colon == std::string::npos ? "" : trim(line.substr(0, colon));
        if (key == "field") {
            cf.field = make_field(trim(line.substr(colon + 1)));
            in_factors = false;
        } else if (key == "components") {
            cf.components = (unsigned)std::stoul(trim(line.substr(colon + 1)));
            in_factors = false;
        } else if (key == "primes") {
            std::stringstream ss(line.substr(colon + 1));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) fail("empty entry in primes list");
                cf.primes.push_back(std::stoull(tok));
            }
            in_factors = false;
        } else if (in_factors) {
            factor_texts.push_back(line);
        } else {
            fail("expected 'field:', 'factors:', 'components:' or 'primes:'");
        }
    }
    if (!cf.field) throw InputError(origin + ": missing field: line");
    if (factor_texts.empty()) throw InputError(origin + ": missing factors");
    std::vector<std::string> vars = {"x", "y", "z"};
    for (const auto& t : factor_texts)
        cf.factors.push_back(parse_poly(t, cf.field, vars));
    if (!cf.primes.empty() && cf.field->characteristic != 0)
        throw InputError(origin + ": primes: only applies to curves over Q");
    return cf;
}

CurveFile load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open curve file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_curve_file(buf.str(), path);
}

}  // namespace hconst
