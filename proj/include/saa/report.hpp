#pragma once

// JSON instance files and analysis reports.
//
// Instance: {"T": [[a,b],[c,d]], "D": [[x,y], ...], "label": "optional"}
// Reports use sorted keys and lexicographically sorted vector lists, so a
// report serializes deterministically.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "saa/decide.hpp"

namespace saa {

class InstanceParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InstanceSpec {
    IntMatrix2 matrix;
    DigitSet digits;
    std::optional<std::string> label;
};

/// Throws InstanceParseError on malformed JSON, schema violations or
/// duplicate digits.
InstanceSpec parse_instance(const std::string& text);
InstanceSpec load_instance(const std::string& path);
nlohmann::json instance_to_json(const InstanceSpec& spec);

nlohmann::json to_json(const DigitVector& v);
nlohmann::json to_json(const DigitSet& d);
nlohmann::json to_json(const NeighborSet& n);  // sorted [[x,y], ...]
nlohmann::json to_json(const IntMatrix2& t);
nlohmann::json to_json(const Rational& r);     // "p/q" or integer string
nlohmann::json to_json(const DimensionTest& dt);
nlohmann::json to_json(const Certificate& c);

/// Classification block: trace, det, discriminant, expanding, reducible,
/// normal form.
nlohmann::json classify_matrix(const IntMatrix2& t);

nlohmann::json analysis_report(const InstanceSpec& spec, const Decision& decision, double timing_ms);

}  // namespace saa
