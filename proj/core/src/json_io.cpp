#include "ctxbounds/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ctxbounds/errors.hpp"
#include "json.hpp"

namespace ctxbounds {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& field(const json& j, const char* name, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field '" + name + "'");
  return *it;
}

int int_field(const json& j, const char* name, const char* what) {
  const auto& v = field(j, name, what);
  if (!v.is_number_integer())
    throw InputError(std::string(what) + ": field '" + name + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > 1'000'000)
    throw InputError(std::string(what) + ": field '" + name + "' out of range");
  return static_cast<int>(x);
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError(where + " must contain integers only");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(where + " must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Graph parse_graph_json(const std::string& text) {
  const json j = parse(text, "graph");
  const int n = int_field(j, "n", "graph");
  const auto& edges = field(j, "edges", "graph");
  if (!edges.is_array()) throw InputError("graph: field 'edges' must be an array");
  std::vector<Edge> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto pair = int_list(edges[k], "graph: edges[" + std::to_string(k) + "]");
    if (pair.size() != 2)
      throw InputError("graph: edges[" + std::to_string(k) + "] must have exactly two vertices");
    list.push_back({pair[0], pair[1]});
  }
  return Graph(n, list);
}

std::string graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.num_vertices();
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
  return j.dump();
}

ContextHypergraph parse_hypergraph_json(const std::string& text) {
  const json j = parse(text, "hypergraph");
  const int n = int_field(j, "n", "hypergraph");
  const auto& contexts = field(j, "contexts", "hypergraph");
  if (!contexts.is_array()) throw InputError("hypergraph: field 'contexts' must be an array");
  std::vector<std::vector<int>> list;
  for (std::size_t k = 0; k < contexts.size(); ++k)
    list.push_back(int_list(contexts[k], "hypergraph: contexts[" + std::to_string(k) + "]"));
  return ContextHypergraph(n, std::move(list));
}

std::string hypergraph_to_json(const ContextHypergraph& h) {
  json j;
  j["n"] = h.num_vertices();
  j["contexts"] = h.contexts();
  return j.dump();
}

BellFunctional parse_scenario_json(const std::string& text) {
  const json j = parse(text, "scenario");
  BellFunctional f;
  f.scenario.num_a = int_field(j, "nA", "scenario");
  f.scenario.num_b = int_field(j, "nB", "scenario");
  f.scenario.num_x = int_field(j, "nX", "scenario");
  f.scenario.num_y = int_field(j, "nY", "scenario");
  f.scenario.validate();
  f.coefficients = number_list(field(j, "lambda", "scenario"), "scenario: field 'lambda'");
  if (static_cast<int>(f.coefficients.size()) != f.scenario.num_events())
    throw InputError("scenario: field 'lambda' has " + std::to_string(f.coefficients.size()) +
                     " entries, expected nA*nB*nX*nY = " +
                     std::to_string(f.scenario.num_events()));
  if (auto it = j.find("offset"); it != j.end()) {
    if (!it->is_number()) throw InputError("scenario: field 'offset' must be a number");
    f.offset = it->get<double>();
  }
  return f;
}

std::string scenario_to_json(const BellFunctional& f) {
  json j;
  j["nA"] = f.scenario.num_a;
  j["nB"] = f.scenario.num_b;
  j["nX"] = f.scenario.num_x;
  j["nY"] = f.scenario.num_y;
  j["lambda"] = f.coefficients;
  j["offset"] = f.offset;
  return j.dump();
}

std::vector<double> parse_point_json(const std::string& text) {
  const json j = parse(text, "point");
  if (j.is_array()) return number_list(j, "point");
  return number_list(field(j, "p", "point"), "point: field 'p'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ctxbounds
