#pragma once

#include "mcnet/graph.hpp"
#include "mcnet/state.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace mcnet {

using Json = nlohmann::ordered_json;

// {"alpha": [...] | x, "beta": [...] | x, "gamma01": x, "gamma10": y}.
// Scalars broadcast to length n.
ChainParams parse_params(std::string_view text, Index n, const std::string& source = "<string>");
ChainParams load_params_file(const std::string& path, Index n);
Json params_json(const ChainParams& params);

// Accepts a bare array or an object with a "p_bar" array (a steady report).
StateVector parse_state(std::string_view text, const std::string& source = "<string>");
StateVector load_state_file(const std::string& path);

// Steady-state report: p_bar, residual, method, iterations, lambda1,
// variance, variance_bound, extremum_check {node_max, node_min, R_max, R_min}.
Json steady_report(const WeightedGraph& g, const ChainParams& params, const SteadyState& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

// Fixed formatting: two-space indent and a trailing newline.
std::string dump_json(const Json& j);

}  // namespace mcnet
