#pragma once

#include <string>

#include <json.hpp>

#include "sidlab/graphs.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/local_density.hpp"
#include "sidlab/search.hpp"
#include "sidlab/step_graphon.hpp"

namespace sidlab {

using Json = nlohmann::json;

// Graph: {"n": int, "edges": [[u,v],...]}
Json to_json(const Graph &g);
Graph graph_from_json(const Json &j);

// RootedGraph: Graph fields plus "roots": [r1, r2]
Json to_json(const RootedGraph &g);
RootedGraph rooted_graph_from_json(const Json &j);

// {"edges": [[u,v],...], "lengths": [[{"k":int,"count":int},...],...]}
Json to_json(const ReplacementSpec &spec);
ReplacementSpec replacement_spec_from_json(const Json &j);

Json to_json(const TreeDecomposition &td);

// {"n": int, "values": [["p/q",...],...]}; the float export carries
// decimals and "mode": "float".
Json to_json(const StepGraphon &w);
Json to_float_json(const StepGraphon &w);
// Decimal entries are accepted only with allow_decimal.
StepGraphon graphon_from_json(const Json &j, bool allow_decimal = false);

// {"mode": "exact"|"float", "value": "p/q"|decimal, "vH": int}
Json to_json(const DensityValue &v);

Json to_json(const LocalDensityReport &r);
Json to_json(const SearchResult &r);

Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

} // namespace sidlab
