#pragma once

// JSON model specifications, truncation point parsing and CSV output.
//
// Generators: {"family": "clayton", "theta": 2.0}, optionally with
// "outer_alpha" in (0, 1]. Models carry a "type":
//   {"type": "independence", "dim": 2}
//   {"type": "comonotone", "dim": 2}
//   {"type": "archimedean", "generator": {...}, "dim": 2}
//   {"type": "nested", "root": {...}, "sectors": [{"generator": {...}, "dim": 2}, ...]}
//   {"type": "marshall_olkin", "alpha1": 0.2, "alpha2": 0.7}
//   {"type": "survival", "inner": {...}}
// A model document additionally has "schema": "trunca/1" at the top level.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trunca/analytics.hpp"
#include "trunca/copulas.hpp"
#include "trunca/generators.hpp"
#include "trunca/sampling.hpp"

namespace trunca {

inline constexpr std::string_view kSchemaVersion = "trunca/1";

nlohmann::json generator_to_json(const OuterPowerGenerator& g);
/// Throws SpecError for malformed input, std::domain_error for parameters
/// out of range.
OuterPowerGenerator generator_from_json(const nlohmann::json& j);

/// Model without the schema field.
nlohmann::json model_to_json(const CopulaModel& m);
/// Model document with the schema field.
nlohmann::json model_document(const CopulaModel& m);
CopulaModel model_from_json(const nlohmann::json& j);
/// Parses a model document; the schema field must be "trunca/1".
CopulaModel model_from_document(const nlohmann::json& doc);
CopulaModel load_model(const std::filesystem::path& path);

/// "0.5,0.8" -> {0.5, 0.8}. Throws SpecError on malformed lists.
std::vector<double> parse_real_list(std::string_view text);

/// Header u1,...,ud and one row per observation, 17 significant digits.
void write_csv(std::ostream& os, const SampleMatrix& s);
SampleMatrix read_csv(std::istream& is);
std::string format_real(double x);

nlohmann::json meta_to_json(const SampleMeta& meta);
nlohmann::json tail_dep_to_json(const TailDepReport& r);

}  // namespace trunca
