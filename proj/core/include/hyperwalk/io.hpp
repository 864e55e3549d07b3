#pragma once

#include <string>
#include <vector>

#include "hyperwalk/diagnostics.hpp"
#include "hyperwalk/radial_density.hpp"

namespace hyperwalk::io {

std::string version();

// Shortest round-trip decimal form, '.' separator, no locale.
std::string format_double(double v);

// "bump:<eta_max>" or a JSON document
//   {"family":"bump","eta_max":1.0,"dim":3}
//   {"family":"table","etas":[...],"values":[...],"dim":3}
// `dim` applies when the document carries none; a conflicting value throws.
RadialProfile parse_density(const std::string& spec, int dim);

// Verdict as JSON; `config_json` (a JSON object) is embedded under "config".
std::string verdict_to_json(const Verdict& v, const std::string& config_json = "{}");

// CSV with a single header row. Every row must match the header width.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace hyperwalk::io
