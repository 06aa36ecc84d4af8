#pragma once

#include <json.hpp>
#include <string>

#include "sdr/model.hpp"

namespace sdr {

// Parses an instance document, throwing ParseError with a path-addressed
// message on schema violations and on validate_instance diagnostics.
Instance parse_instance(const std::string& document);

nlohmann::json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);  // pretty, trailing newline

nlohmann::json assignment_to_json(const Instance& inst, const SdrAssignment& a);

// Deterministic SVG of a geometric instance: one element per member, in
// member-table order, each tagged with its id.
std::string render_svg(const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sdr
