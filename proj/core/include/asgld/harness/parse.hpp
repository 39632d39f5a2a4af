#pragma once

#include <string>

#include "asgld/harness/spec.hpp"

namespace asgld::harness {

/// Parses the flat sectioned key-value experiment format (see the format
/// notes in the README). Unknown sections and keys are rejected with the
/// offending name and line; missing required keys are reported by name.
/// A `preset = <name>` entry in [run] imports that preset's method list
/// ahead of the spec's own [method] sections.
ExperimentSpec parse_spec(const std::string& text);

ExperimentSpec parse_spec_file(const std::string& path);

/// Canonical serialization; parse_spec(serialize_spec(s)) == s for every
/// valid spec. Only keys relevant to the problem kind and method are
/// emitted.
std::string serialize_spec(const ExperimentSpec& spec);

/// Shortest decimal string that parses back to exactly this double.
std::string format_double_short(double v);

}  // namespace asgld::harness
