#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "decoupling/chaos.hpp"
#include "decoupling/gauss_model.hpp"

namespace decoupling::io {

/// Malformed input file. `where` carries "origin:line" or "origin: field".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& message)
        : std::runtime_error(where + ": " + message), where(where) {}

    std::string where;
};

/// Model spec document:
///   { "dims": [d1, ..., dN],
///     "cross": [ {"a": 1, "b": 2, "matrix": [[...], ...]}, ... ] }
/// with 1-based pairs a < b; "cross" may be omitted (independent vectors).
BlockGaussianSpec parse_spec(const std::string& text, const std::string& origin = "<string>");
BlockGaussianSpec load_spec(const std::string& path);

/// Expansion document:
///   { "vectors": [ {"alpha": 1, "terms": [{"index": [k1, ...], "coeff": x},
///     ...]}, ... ] }
/// with 1-based alpha; degree-0 indices are rejected at parse time.
ChaosExpansion parse_expansion(const std::string& text, const BlockGaussianSpec& spec,
                               const std::string& origin = "<string>");
ChaosExpansion load_expansion(const std::string& path, const BlockGaussianSpec& spec);

/// Shortest decimal form with at most `significant` significant digits
/// (printf %g).
std::string format_real(double value, int significant);

/// Deterministic JSON serialization: two-space indent, keys in nlohmann's
/// (alphabetical) order, reals at 17 significant digits so that
/// parse(write(x)) == x and write(parse(write(x))) == write(x) byte for byte.
std::string write_json(const nlohmann::json& value, int indent = 2);

}  // namespace decoupling::io
