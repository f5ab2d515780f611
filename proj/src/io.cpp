#include "sidlab/io.hpp"

#include <fstream>
#include <sstream>

#include "sidlab/error.hpp"

namespace sidlab {

namespace {

template <typename F> auto parse_guard(const char *what, F &&f) {
  try {
    return f();
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::Parse, std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<Edge> edges_from_json(const Json &j) {
  std::vector<Edge> edges;
  for (const auto &e : j) {
    if (!e.is_array() || e.size() != 2)
      throw Error(ErrorCode::Parse, "edge must be a pair [u, v]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

Rational rational_from_json(const Json &j, bool allow_decimal) {
  if (j.is_string())
    return parse_rational(j.get<std::string>(), allow_decimal);
  if (j.is_number_integer())
    return Rational(j.get<long>());
  if (j.is_number() && allow_decimal)
    return from_double(j.get<double>());
  throw Error(ErrorCode::Parse, "expected rational string 'p/q'");
}

} // namespace

Json to_json(const Graph &g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges())
    edges.push_back({u, v});
  return {{"n", g.n_vertices()}, {"edges", edges}};
}

Graph graph_from_json(const Json &j) {
  return parse_guard("graph", [&] {
    return Graph(j.at("n").get<int>(), edges_from_json(j.at("edges")));
  });
}

Json to_json(const RootedGraph &g) {
  Json out = to_json(g.graph());
  out["roots"] = {g.root1(), g.root2()};
  return out;
}

RootedGraph rooted_graph_from_json(const Json &j) {
  return parse_guard("rooted graph", [&] {
    const auto &roots = j.at("roots");
    if (!roots.is_array() || roots.size() != 2)
      throw Error(ErrorCode::Parse, "roots must be a pair");
    return RootedGraph(graph_from_json(j), roots[0].get<int>(), roots[1].get<int>());
  });
}

Json to_json(const ReplacementSpec &spec) {
  Json edges = Json::array(), lengths = Json::array();
  for (std::size_t i = 0; i < spec.host_edges().size(); ++i) {
    edges.push_back({spec.host_edges()[i].first, spec.host_edges()[i].second});
    Json ms = Json::array();
    for (auto [k, c] : spec.lengths()[i])
      ms.push_back({{"k", k}, {"count", c}});
    lengths.push_back(ms);
  }
  return {{"edges", edges}, {"lengths", lengths}};
}

ReplacementSpec replacement_spec_from_json(const Json &j) {
  return parse_guard("replacement spec", [&] {
    std::vector<ReplacementSpec::Multiset> lengths;
    for (const auto &ms : j.at("lengths")) {
      ReplacementSpec::Multiset m;
      for (const auto &entry : ms)
        m[entry.at("k").get<int>()] += entry.at("count").get<int>();
      lengths.push_back(std::move(m));
    }
    return ReplacementSpec(edges_from_json(j.at("edges")), std::move(lengths));
  });
}

Json to_json(const TreeDecomposition &td) {
  Json tree = Json::array();
  for (auto [a, b] : td.tree_edges)
    tree.push_back({a, b});
  return {{"bags", td.bags}, {"tree_edges", tree}};
}

Json to_json(const StepGraphon &w) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.n(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < w.n(); ++j)
      row.push_back(format_rational(w(i, j)));
    rows.push_back(row);
  }
  return {{"n", w.n()}, {"values", rows}};
}

Json to_float_json(const StepGraphon &w) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.n(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < w.n(); ++j)
      row.push_back(w.float_values()(i, j));
    rows.push_back(row);
  }
  return {{"n", w.n()}, {"mode", "float"}, {"values", rows}};
}

StepGraphon graphon_from_json(const Json &j, bool allow_decimal) {
  return parse_guard("graphon", [&] {
    const auto n = j.at("n").get<std::size_t>();
    const auto &rows = j.at("values");
    if (!rows.is_array() || rows.size() != n)
      throw Error(ErrorCode::Parse, "graphon values must have n rows");
    Matrix<Rational> m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n)
        throw Error(ErrorCode::Parse, "graphon rows must have n entries");
      for (std::size_t k = 0; k < n; ++k)
        m(i, k) = rational_from_json(rows[i][k], allow_decimal);
    }
    return StepGraphon(std::move(m));
  });
}

Json to_json(const DensityValue &v) {
  Json out{{"mode", to_string(v.mode)}, {"vH", v.vH}};
  if (v.mode == EvalMode::Exact)
    out["value"] = format_rational(v.exact);
  else
    out["value"] = v.approx;
  return out;
}

Json to_json(const LocalDensityReport &r) {
  return {{"target_d", format_rational(r.target_d)},
          {"deficit", r.deficit},
          {"witness", r.witness},
          {"method", to_string(r.method)},
          {"certified_violation", r.certified_violation},
          {"status", r.status()}};
}

Json to_json(const SearchResult &r) {
  Json out{{"best_deficit", r.best_deficit},
           {"best_W", to_float_json(r.best_w)},
           {"trace", r.trace},
           {"starts", r.starts},
           {"best_start", r.best_start},
           {"seed", r.seed},
           {"violation_certified", r.certificate.has_value()}};
  if (r.certificate) {
    out["certificate"] = {{"witness", to_json(r.certificate->witness)},
                          {"t_H", format_rational(r.certificate->density)},
                          {"baseline", format_rational(r.certificate->baseline)},
                          {"deficit", format_rational(r.certificate->deficit)}};
  }
  return out;
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::Parse, "invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  out << text;
  if (!out)
    throw Error(ErrorCode::Parse, "failed writing '" + path + "'");
}

} // namespace sidlab
