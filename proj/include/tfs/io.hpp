#pragma once

#include <string>

#include <json.hpp>

#include "tfs/config.hpp"
#include "tfs/frame.hpp"

namespace tfs {

// Field order in emitted documents is fixed, which is what makes repeated
// runs byte-identical.
using Json = nlohmann::ordered_json;

// Frame files:
//   {"field": "R" | "C", "n": 2, "unit_norm": true, "vectors": [[...], ...]}
// Real vectors are arrays of numbers; complex vectors are arrays of
// [re, im] pairs.  Throws ParseError (with location) on malformed input and
// NormViolation (with index and norm) when unit_norm is claimed but not met;
// renormalize = true divides the offending vectors instead.
Frame parse_frame(const std::string& text, bool renormalize = false,
                  const Config& cfg = {});

std::string emit_frame(const Frame& F);

// FNV-1a (64-bit) over the raw input bytes, 16 hex digits.  Ties a result
// document to the exact input it was computed from.
std::string fnv1a_hex(const std::string& bytes);

// Common envelope for --json output: tool, version, command, input digest,
// and the tolerances in force.  Subcommands add their payload under "result".
Json result_envelope(const std::string& command, const std::string& digest,
                     const Config& cfg);

// Overlay a JSON config file ({"tol_unit": ..., "max_hull_iterations": ...})
// onto cfg; unknown keys are a ParseError so typos do not silently lose
// tolerances.
void load_config_overlay(const std::string& text, Config& cfg);

// Helpers shared by the CLI and tests.
Json json_real_vector(const Eigen::VectorXd& v);
Json json_complex_vector(const Eigen::VectorXcd& v);  // [re, im] pairs
Json json_real_matrix(const Eigen::MatrixXd& m);
Json json_complex_matrix(const Eigen::MatrixXcd& m);
std::string format_double(double x);  // %.17g, round-trip exact

}  // namespace tfs
