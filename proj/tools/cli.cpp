#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sidlab/error.hpp"
#include "sidlab/generators.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/io.hpp"
#include "sidlab/local_density.hpp"
#include "sidlab/search.hpp"
#include "sidlab/verify.hpp"

namespace sidlab::cli {

namespace {

struct Options {
  // construct
  std::string family;
  std::vector<int> lengths;
  std::string parity = "any";
  int h = 3;
  int l1 = 1;
  int l2 = 1;
  int times = 1;
  std::string graph2_path;
  std::string spec_path;
  std::vector<int> independent;
  int a = 0;
  int k = 1;
  // density
  std::string graph_path;
  std::string graphon_path;
  std::string mode = "exact";
  std::string strategy = "eliminate";
  std::vector<std::string> pins;
  std::string baseline;
  std::string local_density;
  bool allow_float = false;
  // verify
  std::string suite;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t max_n = 0;
  bool timing = false;
  // search
  std::size_t n = 4;
  std::string d;
  int starts = 32;
  int iters = 500;
  double step = 0.05;
  std::string trace_path;
  // report
  std::vector<std::string> inputs;
  std::string format = "csv";
  // shared
  std::string out_path;
  unsigned jobs = 1;
};

Parity parse_parity(const std::string &p) {
  if (p == "even")
    return Parity::Even;
  if (p == "odd")
    return Parity::Odd;
  return Parity::Any;
}

Rational parse_cli_rational(const std::string &text, bool allow_float) {
  return parse_rational(text, allow_float);
}

Json header(const std::string &command, std::optional<std::uint64_t> seed, Json config) {
  return {{"tool", "sidlab"},
          {"version", kVersion},
          {"command", command},
          {"seed", seed ? Json(*seed) : Json(nullptr)},
          {"config", std::move(config)}};
}

void emit(const Options &o, std::ostream &out, const std::string &text) {
  if (o.out_path.empty())
    out << text;
  else
    write_text_file(o.out_path, text);
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

int do_construct(const Options &o, std::ostream &out) {
  Json config{{"family", o.family}};
  Json body;
  const auto &f = o.family;
  auto need_lengths = [&] {
    if (o.lengths.empty())
      throw CLI::ValidationError("--lengths", "required for family " + f);
  };
  if (f == "path") {
    need_lengths();
    body = to_json(path_graph(o.lengths.at(0)));
  } else if (f == "cycle") {
    need_lengths();
    body = to_json(cycle_graph(o.lengths.at(0)));
  } else if (f == "complete") {
    body = to_json(complete_graph(o.h));
    config["h"] = o.h;
  } else if (f == "multipartite") {
    need_lengths();
    body = to_json(complete_multipartite(o.lengths));
  } else if (f == "star") {
    need_lengths();
    body = to_json(star_of_paths(o.lengths));
  } else if (f == "theta") {
    need_lengths();
    body = to_json(generalized_theta(o.lengths, parse_parity(o.parity)));
    config["parity"] = o.parity;
  } else if (f == "flower") {
    need_lengths();
    body = to_json(flower(o.lengths));
  } else if (f == "odd_theta") {
    need_lengths();
    const auto dec = odd_theta_decomposition(o.lengths);
    body = to_json(dec.graph);
    body["roots"] = {dec.root_s, dec.root_t};
    body["decomposition"] = to_json(dec.decomposition);
    body["decomposition_valid"] = check_tree_decomposition(dec.graph, dec.decomposition).valid();
  } else if (f == "clique_split") {
    body = to_json(clique_split_subdivision(o.h, o.l1, o.l2));
    config.update({{"h", o.h}, {"l1", o.l1}, {"l2", o.l2}});
  } else if (f == "subdivide") {
    body = to_json(subdivide(graph_from_json(read_json_file(o.graph_path)), o.times));
    config.update({{"graph", o.graph_path}, {"times", o.times}});
  } else if (f == "replace") {
    const Graph host = graph_from_json(read_json_file(o.graph_path));
    const Json gadget = read_json_file(o.spec_path);
    if (gadget.contains("roots"))
      body = to_json(replace_edges(host, rooted_graph_from_json(gadget)));
    else
      body = to_json(replace_edges_nonuniform(host, replacement_spec_from_json(gadget)));
    config.update({{"graph", o.graph_path}, {"spec", o.spec_path}});
  } else if (f == "semidirect") {
    const Graph h1 = graph_from_json(read_json_file(o.graph_path));
    const Graph h2 = graph_from_json(read_json_file(o.graph2_path));
    body = to_json(semidirect_product(h1, o.independent, o.a, h2, o.k));
    config.update({{"graph", o.graph_path},
                   {"graph2", o.graph2_path},
                   {"independent", o.independent},
                   {"a", o.a},
                   {"k", o.k}});
  } else {
    throw CLI::ValidationError("--family", "unknown family '" + f + "'");
  }
  if (!o.lengths.empty())
    config["lengths"] = o.lengths;
  body["header"] = header("construct", std::nullopt, config);
  emit(o, out, dump(body));
  return Ok;
}

int do_density(const Options &o, std::ostream &out) {
  const Json gj = read_json_file(o.graph_path);
  const Graph h = graph_from_json(gj);
  const StepGraphon w = graphon_from_json(read_json_file(o.graphon_path), o.allow_float);
  Json config{{"graph", o.graph_path},
              {"graphon", o.graphon_path},
              {"mode", o.mode},
              {"strategy", o.strategy}};
  Json body;
  int code = Ok;
  if (!o.local_density.empty()) {
    LocalDensityConfig cfg;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    const auto report =
        local_density_deficit(w, parse_cli_rational(o.local_density, o.allow_float), cfg);
    body = to_json(report);
    config["local_density"] = o.local_density;
    if (report.certified_violation)
      code = Failure;
  } else {
    DensityOptions opts;
    opts.mode = o.mode == "float" ? EvalMode::Float : EvalMode::Exact;
    opts.strategy = o.strategy == "bruteforce" ? Strategy::BruteForce : Strategy::Eliminate;
    for (const auto &p : o.pins) {
      const auto eq = p.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--pin", "expected vertex=step, got '" + p + "'");
      opts.pins[std::stoi(p.substr(0, eq))] = std::stoul(p.substr(eq + 1));
    }
    body = to_json(hom_density(h, w, opts));
    if (!opts.pins.empty())
      config["pins"] = o.pins;
    if (!o.baseline.empty()) {
      Baseline base = Baseline::sidorenko();
      if (o.baseline == "knrs") {
        if (o.d.empty())
          throw CLI::ValidationError("--d", "required with --baseline knrs");
        base = Baseline::knrs(parse_cli_rational(o.d, o.allow_float));
        config["d"] = o.d;
      }
      const auto def = deficit(h, w, base, opts.mode);
      body["deficit"] = def.exact ? Json(format_rational(*def.exact)) : Json(def.value);
      config["baseline"] = o.baseline;
    }
  }
  body["header"] = header("density", o.local_density.empty() ? std::nullopt
                                                               : std::optional(o.seed),
                          config);
  emit(o, out, dump(body));
  return code;
}

int do_verify(const Options &o, std::ostream &out) {
  SuiteOptions opts;
  opts.jobs = o.jobs;
  opts.max_n = o.max_n;
  const SuiteReport report = run_suite(o.suite, o.trials, o.seed, opts);
  Json body = to_json(report, o.timing);
  body["header"] = header("verify", o.seed,
                          {{"suite", o.suite}, {"trials", o.trials}, {"max_n", report.max_n}});
  emit(o, out, dump(body));
  return report.passed() ? Ok : Failure;
}

int do_search(const Options &o, std::ostream &out) {
  const Graph h = graph_from_json(read_json_file(o.graph_path));
  SearchOptions opts;
  opts.starts = o.starts;
  opts.iters = o.iters;
  opts.initial_step = o.step;
  opts.seed = o.seed;
  opts.jobs = o.jobs;
  const Rational d = parse_cli_rational(o.d, o.allow_float);
  const SearchResult result = search_counterexample(h, o.n, d, opts);
  Json body = to_json(result);
  body["header"] = header("search", o.seed,
                          {{"graph", o.graph_path},
                           {"n", o.n},
                           {"d", format_rational(d)},
                           {"starts", o.starts},
                           {"iters", o.iters},
                           {"step", o.step}});
  emit(o, out, dump(body));
  if (!o.trace_path.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "iteration,deficit\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i)
      csv << i << ',' << result.trace[i] << '\n';
    write_text_file(o.trace_path, csv.str());
  }
  return result.certificate ? Failure : Ok;
}

int do_report(const Options &o, std::ostream &out) {
  std::vector<SuiteReport> reports;
  for (const auto &path : o.inputs)
    reports.push_back(suite_report_from_json(read_json_file(path)));
  if (o.format == "csv") {
    emit(o, out, suite_summary_csv(reports));
    return Ok;
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const SuiteReport &a, const SuiteReport &b) { return a.suite < b.suite; });
  Json rows = Json::array();
  for (const auto &r : reports)
    rows.push_back({{"suite", r.suite},
                    {"trials", r.trials},
                    {"failures", r.failures.size()},
                    {"max_gap", r.max_gap},
                    {"runtime_ms", r.runtime_ms}});
  Json body{{"header", header("report", std::nullopt, {{"inputs", o.inputs}})},
            {"suites", rows}};
  emit(o, out, dump(body));
  return Ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Homomorphism densities and Sidorenko-type checks on step graphons", "sidlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto *construct = app.add_subcommand("construct", "Build a graph family and write Graph JSON");
  construct->set_help_flag("--help", "Print this help message and exit");
  construct->add_option("--family", o.family, "path|cycle|complete|multipartite|star|theta|flower|"
                                              "odd_theta|clique_split|subdivide|replace|semidirect")
      ->required();
  construct->add_option("--lengths", o.lengths, "Comma-separated lengths")->delimiter(',');
  construct->add_option("--parity", o.parity, "Theta parity")
      ->check(CLI::IsMember({"even", "odd", "any"}));
  construct->add_option("--h", o.h, "Clique size");
  construct->add_option("--l1", o.l1);
  construct->add_option("--l2", o.l2);
  construct->add_option("--times", o.times, "Subdivision count");
  construct->add_option("--graph", o.graph_path, "Input graph (subdivide, replace, semidirect)");
  construct->add_option("--graph2", o.graph2_path, "Second factor (semidirect)");
  construct->add_option("--spec", o.spec_path, "Rooted gadget or replacement spec (replace)");
  construct->add_option("--independent", o.independent)->delimiter(',');
  construct->add_option("--a", o.a);
  construct->add_option("--k", o.k);
  construct->add_option("--out", o.out_path);

  auto *density = app.add_subcommand("density", "Evaluate t_H(W)");
  density->add_option("--graph", o.graph_path)->required();
  density->add_option("--graphon", o.graphon_path)->required();
  density->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "float"}));
  density->add_option("--strategy", o.strategy)
      ->check(CLI::IsMember({"eliminate", "bruteforce"}));
  density->add_option("--pin", o.pins, "vertex=step, repeatable");
  density->add_option("--baseline", o.baseline, "Also report a deficit")
      ->check(CLI::IsMember({"sidorenko", "knrs"}));
  density->add_option("--d", o.d, "Density for the knrs baseline");
  density->add_option("--local-density", o.local_density,
                      "Check d-local density of the graphon instead");
  density->add_option("--seed", o.seed);
  density->add_flag("--float", o.allow_float, "Accept decimal inputs");
  density->add_option("--out", o.out_path);

  auto *verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> names = suite_names();
  names.push_back("lemma31");
  verify->add_option("--suite", o.suite)->required()->check(CLI::IsMember(names));
  verify->add_option("--trials", o.trials);
  verify->add_option("--seed", o.seed);
  verify->add_option("--max-n", o.max_n, "Largest graphon step count (0 = suite default)");
  verify->add_flag("--timing", o.timing, "Include runtime_ms in the report");
  verify->add_option("--out", o.out_path);

  auto *search = app.add_subcommand("search", "Search for a Sidorenko violation");
  search->add_option("--graph", o.graph_path)->required();
  search->add_option("--n", o.n)->check(CLI::PositiveNumber);
  search->add_option("--d", o.d)->required();
  search->add_option("--seed", o.seed);
  search->add_option("--starts", o.starts)->check(CLI::PositiveNumber);
  search->add_option("--iters", o.iters)->check(CLI::PositiveNumber);
  search->add_option("--step", o.step)->check(CLI::PositiveNumber);
  search->add_flag("--float", o.allow_float, "Accept a decimal --d");
  search->add_option("--trace", o.trace_path, "CSV trace output");
  search->add_option("--out", o.out_path);

  auto *report = app.add_subcommand("report", "Aggregate suite reports");
  report->add_option("inputs", o.inputs, "SuiteReport JSON files");
  report->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", o.out_path);

  for (auto *sub : {density, verify, search})
    sub->add_option("--jobs", o.jobs, "Worker threads")->envname("SIDLAB_JOBS");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*construct)
      return do_construct(o, out);
    if (*density)
      return do_density(o, out);
    if (*verify)
      return do_verify(o, out);
    if (*search)
      return do_search(o, out);
    return do_report(o, out);
  } catch (const CLI::Error &e) {
    err << "sidlab: " << e.what() << "\n";
    return Usage;
  } catch (const Error &e) {
    err << "sidlab: " << to_string(e.code()) << ": " << e.what() << "\n";
    return Format;
  } catch (const std::exception &e) {
    err << "sidlab: " << e.what() << "\n";
    return Format;
  }
}

} // namespace sidlab::cli
