#pragma once

#include <string>
#include <vector>

#include "ctxbounds/bell.hpp"
#include "ctxbounds/graph.hpp"

namespace ctxbounds {

// All parsers throw InputError naming the offending field on malformed
// input, duplicate entries, or out-of-range indices.

/// {"n": <int>, "edges": [[i, j], ...]}
Graph parse_graph_json(const std::string& text);
std::string graph_to_json(const Graph& g);

/// {"n": <int>, "contexts": [[...], ...]}
ContextHypergraph parse_hypergraph_json(const std::string& text);
std::string hypergraph_to_json(const ContextHypergraph& h);

/// {"nA":.., "nB":.., "nX":.., "nY":.., "lambda": [...], "offset": 0.0}
/// "offset" is optional. Coefficients follow the a-fastest event order.
BellFunctional parse_scenario_json(const std::string& text);
std::string scenario_to_json(const BellFunctional& f);

/// {"p": [...]} or a bare array of probabilities.
std::vector<double> parse_point_json(const std::string& text);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace ctxbounds
