#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "coxskel/cohomology.hpp"
#include "coxskel/monads.hpp"

namespace coxskel {

using Json = nlohmann::json;

/**
 * Parsed input file. The root is either a variety object or {"variety": ..., "complex": ...}.
 * Variety, fan mode: {"mode":"fan", "dim", "rays", "cones", "multipliers"?, "class_basis"?, "name"?}
 * Variety, cox mode: {"mode":"cox", "degrees", "torsion"?, "torsion_degrees"?, "name"?}
 * Complex: {"lowest", "terms": [[{"class", "mult"}...]...], "maps": [[["poly"...]...]...]}
 * Integers are JSON integers or decimal strings.
 */
struct InputDocument {
    ToricData td;
    std::optional<ThetaComplex> complex;
    std::string digest;  // FNV-1a of the raw bytes, hex
};

/** Schema errors carry a line:column or a JSON pointer to the offending field. */
InputDocument parse_input(const std::string& text);
InputDocument read_input_file(const std::string& path);

ToricData parse_variety(const Json& j, const std::string& where = "");
ThetaComplex parse_complex(const Json& j, const ToricData& td, const std::string& where = "/complex");

/** Cox-mode document carrying the degree matrix of td (free and torsion parts). */
Json cox_document(const ToricData& td);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

Json to_json(const Int& v);
Json to_json(const Rat& v);
Json to_json(const ZVec& v);
Json to_json(const QVec& v);
Json to_json(const Dim& d);
Json to_json(const Poly& p);

}  // namespace coxskel
