#include "mcnet/io.hpp"

#include "mcnet/steady.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mcnet {

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, line_of(text, e.byte), "invalid JSON");
  }
}

Vector broadcast(const Json& j, const char* key, Index n, const std::string& source) {
  if (!j.contains(key)) throw ParseError(source, 1, std::string("missing \"") + key + "\"");
  const Json& v = j.at(key);
  if (v.is_number()) return Vector::Constant(n, v.get<double>());
  if (!v.is_array()) {
    throw ParseError(source, 1, std::string("\"") + key + "\" must be a number or an array");
  }
  if (static_cast<Index>(v.size()) != n) {
    throw ParseError(source, 1,
                     std::string("\"") + key + "\" has " + std::to_string(v.size()) +
                         " entries but the graph has " + std::to_string(n) + " nodes");
  }
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number()) {
      throw ParseError(source, 1, std::string("\"") + key + "\" entries must be numbers");
    }
    out(i) = v[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

double scalar(const Json& j, const char* key, const std::string& source) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(source, 1, std::string("\"") + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace

ChainParams parse_params(std::string_view text, Index n, const std::string& source) {
  const Json j = parse_json(text, source);
  if (!j.is_object()) throw ParseError(source, 1, "params must be a JSON object");
  ChainParams p;
  p.alpha = broadcast(j, "alpha", n, source);
  p.beta = broadcast(j, "beta", n, source);
  p.gamma01 = scalar(j, "gamma01", source);
  p.gamma10 = scalar(j, "gamma10", source);
  try {
    p.validate(n);
  } catch (const DomainError& e) {
    throw ParseError(source, 1, e.what());
  }
  return p;
}

ChainParams load_params_file(const std::string& path, Index n) {
  return parse_params(read_text_file(path), n, path);
}

Json params_json(const ChainParams& params) {
  Json j;
  j["alpha"] = vector_json(params.alpha);
  j["beta"] = vector_json(params.beta);
  j["gamma01"] = params.gamma01;
  j["gamma10"] = params.gamma10;
  return j;
}

StateVector parse_state(std::string_view text, const std::string& source) {
  const Json j = parse_json(text, source);
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("p_bar")) throw ParseError(source, 1, "state object needs a \"p_bar\" array");
    arr = &j.at("p_bar");
  }
  if (!arr->is_array()) throw ParseError(source, 1, "state must be an array of numbers");
  Vector v(static_cast<Index>(arr->size()));
  for (std::size_t i = 0; i < arr->size(); ++i) {
    if (!(*arr)[i].is_number()) throw ParseError(source, 1, "state entries must be numbers");
    v(static_cast<Index>(i)) = (*arr)[i].get<double>();
  }
  try {
    return StateVector(std::move(v));
  } catch (const DomainError& e) {
    throw ParseError(source, 1, e.what());
  }
}

StateVector load_state_file(const std::string& path) {
  return parse_state(read_text_file(path), path);
}

Json steady_report(const WeightedGraph& g, const ChainParams& params, const SteadyState& s) {
  Json j;
  j["p_bar"] = vector_json(s.p_bar.p());
  j["residual"] = s.residual;
  j["method"] = to_string(s.method);
  j["iterations"] = s.iterations;

  std::optional<double> lambda1;
  if (g.size() > 1 && is_connected(g)) lambda1 = lambda_1(g);
  j["lambda1"] = lambda1 ? Json(*lambda1) : Json(nullptr);
  j["variance"] = variance(s.p_bar.p());
  const double gh = params.gamma_hat();
  if (lambda1 && gh > 0.0) {
    j["variance_bound"] = params.beta.mean() / (*lambda1 * gh);
  } else if (lambda1 && gh < 0.0) {
    j["variance_bound"] = -params.alpha.mean() / (*lambda1 * gh);
  } else {
    j["variance_bound"] = nullptr;
  }
  const ExtremumCheck ec = extremum_bounds_check(g, params, s);
  j["extremum_check"] = {{"node_max", ec.node_max},
                         {"node_min", ec.node_min},
                         {"R_max", ec.r_max},
                         {"R_min", ec.r_min}};
  if (!s.fallback_log.empty()) j["fallback"] = s.fallback_log;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mcnet
