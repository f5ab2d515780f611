#include "sidlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "sidlab/error.hpp"
#include "sidlab/generators.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/io.hpp"
#include "sidlab/step_graphon.hpp"

namespace sidlab {

using Json = nlohmann::json;

// ---------------------------------------------------------------- harness

namespace {

TrialOutcome guarded(const TrialFn &trial, std::size_t index, std::uint64_t seed,
                     std::size_t max_n) {
  try {
    return trial(index, seed, max_n);
  } catch (const std::exception &e) {
    TrialOutcome out;
    out.failed = true;
    out.inputs = {{"error", e.what()}};
    out.label = "error";
    return out;
  }
}

// Smallest n first, then smallest v(H) among failures at that n.
void minimize(const TrialFn &trial, SuiteFailure &f) {
  f.minimized = f.outcome;
  f.minimized_seed = f.seed;
  f.minimized_max_n = f.outcome.n;
  constexpr int kAttempts = 24;
  for (std::size_t m = 1; m < f.outcome.n; ++m) {
    std::optional<std::pair<std::uint64_t, TrialOutcome>> best;
    for (int a = 0; a < kAttempts; ++a) {
      const std::uint64_t s = derive_seed(f.seed, m * 1000 + a);
      TrialOutcome o = guarded(trial, f.trial, s, m);
      if (o.failed && (!best || o.vH < best->second.vH))
        best.emplace(s, std::move(o));
    }
    if (best) {
      f.minimized_seed = best->first;
      f.minimized_max_n = m;
      f.minimized = std::move(best->second);
      return;
    }
  }
}

} // namespace

SuiteReport run_trials(const std::string &suite, std::size_t trials, std::uint64_t seed,
                       std::size_t max_n, const TrialFn &trial, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < trials;)
      outcomes[i] = guarded(trial, i, derive_seed(seed, i), max_n);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto &th : pool)
      th.join();
  }

  SuiteReport report;
  report.suite = suite;
  report.trials = trials;
  report.seed = seed;
  report.max_n = max_n;
  std::map<std::string, std::pair<std::size_t, double>> per_label;
  double min_gap = trials ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto &o = outcomes[i];
    min_gap = std::min(min_gap, o.gap);
    auto [it, fresh] = per_label.try_emplace(o.label, 0, o.gap);
    ++it->second.first;
    it->second.second = std::min(it->second.second, o.gap);
    if (o.failed) {
      SuiteFailure f;
      f.trial = i;
      f.seed = derive_seed(seed, i);
      f.outcome = o;
      report.failures.push_back(std::move(f));
    }
  }
  for (auto &f : report.failures)
    minimize(trial, f);
  report.min_gap = min_gap;
  report.max_gap = min_gap == 0.0 ? 0.0 : -min_gap;
  Json labels = Json::object();
  for (const auto &[label, v] : per_label)
    labels[label.empty() ? "all" : label] = {{"trials", v.first}, {"min_gap", v.second}};
  report.stats["labels"] = labels;
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------- samplers

namespace {

Rational rand_fraction(Rng &rng, long lo, long hi, long den) {
  Rational r(rng.uniform_int(lo, hi), den);
  r.canonicalize();
  return r;
}

std::size_t pick_n(Rng &rng, std::size_t max_n) {
  return static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_n)));
}

Graph random_graph(Rng &rng, int max_v, bool need_edge) {
  for (;;) {
    const int v = static_cast<int>(rng.uniform_int(need_edge ? 2 : 1, max_v));
    std::vector<Edge> edges;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b)
        if (rng.coin())
          edges.emplace_back(a, b);
    if (!need_edge || !edges.empty())
      return Graph(v, std::move(edges));
  }
}

Graph random_tree(Rng &rng, int v) {
  std::vector<Edge> edges;
  for (int x = 1; x < v; ++x)
    edges.emplace_back(static_cast<int>(rng.uniform_int(0, x - 1)), x);
  return Graph(v, std::move(edges));
}

// Path lengths for a theta; at most one path of length 1.
std::vector<int> random_theta_lengths(Rng &rng, const std::vector<int> &choices, int max_paths) {
  const int paths = static_cast<int>(rng.uniform_int(1, max_paths));
  std::vector<int> lengths;
  bool have_one = false;
  while (static_cast<int>(lengths.size()) < paths) {
    const int l = choices[rng.uniform_int(0, static_cast<std::int64_t>(choices.size()) - 1)];
    if (l == 1 && have_one)
      continue;
    have_one |= l == 1;
    lengths.push_back(l);
  }
  return lengths;
}

// Random d-regular step graphon with at most max_n steps.
StepGraphon random_regular_step(Rng &rng, std::size_t max_n, std::string *kind = nullptr) {
  const std::size_t n = pick_n(rng, max_n);
  const auto choice = rng.uniform_int(0, 3);
  auto tag = [&](const char *k) {
    if (kind)
      *kind = k;
  };
  if (choice == 0 || (choice == 1 && n < 2)) {
    tag("random_regular");
    return random_regular_graphon(n, rng.next());
  }
  if (choice == 1) {
    std::vector<int> degs;
    for (int d = 0; d < static_cast<int>(n); ++d)
      if ((static_cast<int>(n) * d) % 2 == 0)
        degs.push_back(d);
    tag("regular_graph");
    const int deg = degs[rng.uniform_int(0, static_cast<std::int64_t>(degs.size()) - 1)];
    return regular_graph_graphon(static_cast<int>(n), deg, rng.next());
  }
  if (choice == 2) {
    std::vector<Rational> profile(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      profile[k] = rand_fraction(rng, 0, 8, 8);
      profile[(n - k) % n] = profile[k];
    }
    tag("circulant");
    return circulant_graphon(profile);
  }
  tag("constant");
  return constant_graphon(n, rand_fraction(rng, 0, 12, 12));
}

double float_density(const Graph &h, const StepGraphon &w) {
  DensityOptions opts;
  opts.mode = EvalMode::Float;
  return hom_density(h, w, opts).approx;
}

Rational exact_density(const Graph &h, const StepGraphon &w,
                       Strategy strategy = Strategy::Eliminate) {
  DensityOptions opts;
  opts.strategy = strategy;
  return hom_density(h, w, opts).exact;
}

// Float inequality lhs >= rhs with relative tolerance.
TrialOutcome inequality(double lhs, double rhs, double rel_tol) {
  TrialOutcome o;
  o.lhs = lhs;
  o.rhs = rhs;
  o.gap = lhs - rhs;
  o.failed = !(o.gap >= -rel_tol * std::abs(rhs));
  return o;
}

TrialOutcome exact_comparison(const Rational &lhs, const Rational &rhs, bool equality) {
  TrialOutcome o;
  o.lhs = lhs.get_d();
  o.rhs = rhs.get_d();
  const Rational diff = lhs - rhs;
  o.gap = diff.get_d();
  o.failed = equality ? diff != 0 : diff < 0;
  o.inputs["lhs_exact"] = format_rational(lhs);
  o.inputs["rhs_exact"] = format_rational(rhs);
  return o;
}

void attach(TrialOutcome &o, const char *key, Json value) { o.inputs[key] = std::move(value); }

} // namespace

// ---------------------------------------------------------------- families

const char *to_string(Family f) {
  switch (f) {
  case Family::C6:
    return "c6";
  case Family::ThetaClique:
    return "theta_clique";
  case Family::ThetaMultipartite:
    return "theta_multipartite";
  case Family::MixedReplacement:
    return "mixed_replacement";
  case Family::CliqueSplit:
    return "clique_split";
  case Family::Semidirect:
    return "semidirect";
  case Family::Subdivision:
    return "subdivision";
  case Family::OddTheta:
    return "odd_theta";
  case Family::Tree:
    return "tree";
  }
  return "?";
}

std::vector<Family> all_families() {
  return {Family::C6,          Family::ThetaClique, Family::ThetaMultipartite,
          Family::MixedReplacement, Family::CliqueSplit, Family::Semidirect,
          Family::Subdivision, Family::OddTheta,    Family::Tree};
}

namespace {

Graph random_sidorenko_base(Rng &rng, std::string &name) {
  switch (rng.uniform_int(0, 5)) {
  case 0: {
    const int l = static_cast<int>(rng.uniform_int(1, 3));
    name = "path" + std::to_string(l);
    return path_graph(l);
  }
  case 1:
    name = "C4";
    return cycle_graph(4);
  case 2:
    name = "C6";
    return cycle_graph(6);
  case 3:
    name = "K23";
    return complete_multipartite({2, 3});
  case 4:
    name = "star3";
    return star_of_paths({1, 1, 1});
  default: {
    const int v = static_cast<int>(rng.uniform_int(1, 5));
    name = "tree" + std::to_string(v);
    return random_tree(rng, v);
  }
  }
}

FamilyInstance sample_mixed_replacement(Rng &rng) {
  FamilyInstance inst;
  inst.family = Family::MixedReplacement;
  for (;;) {
    const int h = static_cast<int>(rng.uniform_int(2, 4));
    std::vector<Edge> edges;
    for (int a = 0; a < h; ++a)
      for (int b = a + 1; b < h; ++b)
        if (rng.uniform_int(0, 3) != 0)
          edges.emplace_back(a, b);
    if (edges.empty())
      edges.emplace_back(0, 1);
    const Graph host(h, edges);
    std::vector<ReplacementSpec::Multiset> lengths;
    const bool single = rng.coin();
    const int single_len = static_cast<int>(2 * rng.uniform_int(1, 2));
    for (std::size_t e = 0; e < host.n_edges(); ++e) {
      ReplacementSpec::Multiset m;
      if (single) {
        m[single_len] = static_cast<int>(rng.uniform_int(1, 3));
      } else {
        const int classes = static_cast<int>(rng.uniform_int(1, 2));
        for (int c = 0; c < classes; ++c)
          m[static_cast<int>(2 * rng.uniform_int(1, 3))] += static_cast<int>(rng.uniform_int(1, 2));
      }
      lengths.push_back(std::move(m));
    }
    ReplacementSpec spec(host.edges(), std::move(lengths));
    const auto cls = classify_replacement(host, spec);
    if (cls.result == ReplacementCase::NotCovered) {
      ++inst.rejected;
      continue;
    }
    inst.graph = replace_edges_nonuniform(host, spec);
    inst.description = {{"host", to_json(host)},
                        {"spec", to_json(spec)},
                        {"case", to_string(cls.result)}};
    inst.host = host;
    inst.spec = std::move(spec);
    return inst;
  }
}

} // namespace

FamilyInstance sample_family_instance(Family family, Rng &rng) {
  FamilyInstance inst;
  inst.family = family;
  switch (family) {
  case Family::C6:
    inst.graph = cycle_graph(6);
    inst.description = {{"graph", "C6"}};
    break;
  case Family::ThetaClique: {
    const int h = static_cast<int>(rng.uniform_int(3, 4));
    const auto lengths = random_theta_lengths(rng, {2, 4}, 3);
    inst.graph = replace_edges(complete_graph(h), generalized_theta(lengths, Parity::Even));
    inst.description = {{"host", "K" + std::to_string(h)}, {"theta", lengths}};
    break;
  }
  case Family::ThetaMultipartite: {
    static const std::vector<std::vector<int>> hosts = {
        {2, 2}, {1, 1, 2}, {1, 2, 2}, {2, 3}, {1, 1, 1, 2}};
    const auto &parts = hosts[rng.uniform_int(0, static_cast<std::int64_t>(hosts.size()) - 1)];
    const auto lengths = random_theta_lengths(rng, {2, 4}, 2);
    inst.graph =
        replace_edges(complete_multipartite(parts), generalized_theta(lengths, Parity::Even));
    inst.description = {{"host_parts", parts}, {"theta", lengths}};
    break;
  }
  case Family::MixedReplacement:
    return sample_mixed_replacement(rng);
  case Family::CliqueSplit: {
    const int h = static_cast<int>(rng.uniform_int(2, 4));
    const int l1 = static_cast<int>(rng.uniform_int(1, 2));
    const int l2 = static_cast<int>(rng.uniform_int(1, 2));
    inst.graph = clique_split_subdivision(h, l1, l2);
    inst.description = {{"h", h}, {"l1", l1}, {"l2", l2}};
    break;
  }
  case Family::Semidirect: {
    std::string base_name;
    const Graph h1 = random_sidorenko_base(rng, base_name);
    const Vertex a = static_cast<Vertex>(rng.uniform_int(0, h1.n_vertices() - 1));
    std::vector<Vertex> candidates;
    for (Vertex x = 0; x < h1.n_vertices(); ++x)
      if (x != a)
        candidates.push_back(x);
    rng.shuffle(candidates);
    std::vector<Vertex> independent;
    const int want = static_cast<int>(rng.uniform_int(0, 2));
    for (Vertex x : candidates) {
      if (static_cast<int>(independent.size()) == want)
        break;
      auto trial = independent;
      trial.push_back(x);
      if (is_independent_set(h1, trial))
        independent = std::move(trial);
    }
    std::sort(independent.begin(), independent.end());
    static const std::vector<std::vector<int>> knrs = {{1, 1}, {1, 1, 1}, {1, 1, 2}};
    const auto &parts = knrs[rng.uniform_int(0, static_cast<std::int64_t>(knrs.size()) - 1)];
    const int k = static_cast<int>(rng.uniform_int(1, 2));
    inst.graph = semidirect_product(h1, independent, a, complete_multipartite(parts), k);
    inst.description = {{"h1", base_name}, {"h1_graph", to_json(h1)}, {"I", independent},
                        {"a", a},          {"h2_parts", parts},      {"k", k}};
    break;
  }
  case Family::Subdivision: {
    std::string base_name;
    const Graph base = random_sidorenko_base(rng, base_name);
    const int l = static_cast<int>(rng.uniform_int(0, 3));
    inst.graph = subdivide(base, l);
    inst.description = {{"base", base_name}, {"base_graph", to_json(base)}, {"l", l}};
    break;
  }
  case Family::OddTheta: {
    const auto lengths = random_theta_lengths(rng, {1, 3, 5}, 4);
    std::vector<int> ls = lengths;
    if (ls.size() == 1)
      ls.push_back(ls[0] == 1 ? 3 : 1);
    const auto dec = odd_theta_decomposition(ls);
    inst.graph = dec.graph;
    inst.description = {{"lengths", ls},
                        {"decomposition_valid",
                         check_tree_decomposition(dec.graph, dec.decomposition).valid()}};
    break;
  }
  case Family::Tree: {
    const int v = static_cast<int>(rng.uniform_int(1, 8));
    inst.graph = random_tree(rng, v);
    inst.description = {{"tree", to_json(inst.graph)}};
    break;
  }
  }
  return inst;
}

// ---------------------------------------------------------------- suites

SuiteReport verify_counting_identity(std::size_t trials, std::uint64_t seed,
                                     const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 4;
  auto trial = [](std::size_t, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    Graph h;
    std::string h_name;
    switch (rng.uniform_int(0, 5)) {
    case 0: h = complete_graph(2), h_name = "K2"; break;
    case 1: h = path_graph(2), h_name = "P3"; break;
    case 2: h = complete_graph(3), h_name = "K3"; break;
    case 3: h = cycle_graph(4), h_name = "C4"; break;
    case 4: h = complete_graph(4), h_name = "K4"; break;
    default: h = random_graph(rng, 5, false), h_name = "random"; break;
    }
    static const std::vector<std::vector<int>> fixed = {{2}, {4}, {2, 2}, {2, 4}};
    const auto pick = rng.uniform_int(0, 4);
    const auto lengths = pick < 4 ? fixed[pick] : random_theta_lengths(rng, {1, 2, 3, 4}, 3);
    const RootedGraph f = generalized_theta(lengths);
    const StepGraphon w = random_graphon(pick_n(rng, mn), rng.next());

    const Rational lhs = exact_density(replace_edges(h, f), w);
    const Rational rhs = exact_density(h, counting_kernel(w, f));
    TrialOutcome o = exact_comparison(lhs, rhs, true);
    o.label = h_name;
    o.n = w.n();
    o.vH = h.n_vertices();
    attach(o, "H", to_json(h));
    attach(o, "F", lengths);
    attach(o, "W", to_json(w));
    return o;
  };
  return run_trials("counting_identity", trials, seed, max_n, trial, options.jobs);
}

SuiteReport verify_oracle_equivalence(std::size_t trials, std::uint64_t seed,
                                      const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 4;
  auto trial = [](std::size_t, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    const Graph h = random_graph(rng, 6, false);
    const StepGraphon w = random_graphon(pick_n(rng, mn), rng.next());
    const Rational lhs = exact_density(h, w, Strategy::Eliminate);
    const Rational rhs = exact_density(h, w, Strategy::BruteForce);
    TrialOutcome o = exact_comparison(lhs, rhs, true);
    o.n = w.n();
    o.vH = h.n_vertices();
    attach(o, "H", to_json(h));
    attach(o, "W", to_json(w));
    return o;
  };
  return run_trials("oracle", trials, seed, max_n, trial, options.jobs);
}

SuiteReport verify_local_density(std::size_t trials, std::uint64_t seed,
                                 const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 6;
  LocalDensityConfig cfg = options.local;
  cfg.jobs = 1;
  auto trial = [cfg](std::size_t index, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    LocalDensityConfig local = cfg;
    local.seed = rng.next();
    std::string kind;
    const StepGraphon w = random_regular_step(rng, mn, &kind);
    const Rational d = edge_density(w);
    TrialOutcome o;
    StepGraphon kernel = w;
    Rational target;
    if (index % 2 == 0) {
      const auto lengths = random_theta_lengths(rng, {2, 4}, 3);
      const RootedGraph theta = generalized_theta(lengths, Parity::Even);
      kernel = counting_kernel(w, theta);
      target = pow(d, static_cast<unsigned>(theta.graph().n_edges()));
      o.label = "theta_kernel";
      attach(o, "theta", lengths);
      o.vH = theta.graph().n_vertices();
    } else {
      const Rational d1 = rand_fraction(rng, 0, 10, 10);
      const StepGraphon w1 =
          pointwise_dense(w.n(), d1, rand_fraction(rng, 0, 4, 4), rng.next());
      const int k = static_cast<int>(rng.uniform_int(1, 2));
      kernel = hadamard(w1, kernel_power(w, 2 * k));
      target = d1 * pow(d, static_cast<unsigned>(2 * k));
      o.label = "hadamard";
      attach(o, "W1", to_json(w1));
      attach(o, "k", k);
      o.vH = 2 * k;
    }
    const auto report = local_density_deficit(kernel, target, local);
    double mass = 0.0;
    for (double x : report.witness)
      mass += x;
    mass /= static_cast<double>(w.n());
    o.rhs = target.get_d() * mass * mass;
    o.lhs = o.rhs + report.deficit;
    o.gap = report.deficit;
    o.failed = report.deficit < -1e-9;
    o.n = w.n();
    attach(o, "W", to_json(w));
    attach(o, "W_kind", kind);
    attach(o, "target", format_rational(target));
    attach(o, "report", to_json(report));
    return o;
  };
  return run_trials("local_density", trials, seed, max_n, trial, options.jobs);
}

SuiteReport verify_sidorenko_families(std::size_t trials, std::uint64_t seed,
                                      const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 5;
  const auto families = all_families();
  auto trial = [families](std::size_t index, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    const Family fam = families[index % families.size()];
    const FamilyInstance inst = sample_family_instance(fam, rng);
    std::string kind;
    const StepGraphon w = random_regular_step(rng, mn, &kind);
    const auto e = static_cast<unsigned>(inst.graph.n_edges());
    TrialOutcome o;
    if (fam == Family::Tree) {
      o = exact_comparison(exact_density(inst.graph, w), pow(edge_density(w), e), true);
    } else {
      o = inequality(float_density(inst.graph, w), std::pow(edge_density(w).get_d(), e), 1e-12);
    }
    if (inst.description.contains("decomposition_valid") &&
        !inst.description["decomposition_valid"].get<bool>())
      o.failed = true;
    o.label = to_string(fam);
    o.n = w.n();
    o.vH = inst.graph.n_vertices();
    attach(o, "family", to_string(fam));
    attach(o, "instance", inst.description);
    attach(o, "H", to_json(inst.graph));
    attach(o, "W", to_json(w));
    attach(o, "W_kind", kind);
    if (inst.rejected)
      attach(o, "classifier_rejections", inst.rejected);
    return o;
  };
  auto report = run_trials("sidorenko_families", trials, seed, max_n, trial, options.jobs);
  return report;
}

SuiteReport verify_flower_knrs(std::size_t trials, std::uint64_t seed,
                               const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 5;
  auto trial = [](std::size_t, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    const int cycles = static_cast<int>(rng.uniform_int(1, 3));
    std::vector<int> lengths;
    for (int c = 0; c < cycles; ++c)
      lengths.push_back(static_cast<int>(rng.uniform_int(3, 6)));
    const Graph g = flower(lengths);
    const std::size_t n = pick_n(rng, mn);
    const Rational d = rand_fraction(rng, 1, 9, 10);
    StepGraphon w = constant_graphon(n, d);
    std::string kind;
    switch (rng.uniform_int(0, 2)) {
    case 0:
      kind = "constant";
      break;
    case 1:
      kind = "pointwise_dense";
      w = pointwise_dense(n, d, rand_fraction(rng, 1, 4, 4), rng.next());
      break;
    default: {
      kind = "mixture";
      const int parts = static_cast<int>(rng.uniform_int(2, 3));
      std::vector<StepGraphon> comps;
      std::vector<Rational> weights;
      Rational left = 1;
      for (int p = 0; p < parts; ++p) {
        comps.push_back(pointwise_dense(n, d, rand_fraction(rng, 0, 4, 4), rng.next()));
        Rational wt = p + 1 == parts ? left : left * rand_fraction(rng, 1, 3, 4);
        left -= wt;
        weights.push_back(wt);
      }
      w = mixture(weights, comps);
    }
    }
    const auto e = static_cast<unsigned>(g.n_edges());
    TrialOutcome o = inequality(float_density(g, w), std::pow(d.get_d(), e), 1e-12);
    o.label = kind;
    o.n = n;
    o.vH = g.n_vertices();
    attach(o, "flower", lengths);
    attach(o, "d", format_rational(d));
    attach(o, "W", to_json(w));
    return o;
  };
  return run_trials("flower_knrs", trials, seed, max_n, trial, options.jobs);
}

SuiteReport verify_holder(std::size_t trials, std::uint64_t seed, const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 4;
  auto trial = [](std::size_t index, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    const int h = static_cast<int>(rng.uniform_int(2, 4));
    const bool uniform = index % 3 == 0;
    std::vector<Edge> edges;
    for (int a = 0; a < h; ++a)
      for (int b = a + 1; b < h; ++b)
        if (uniform || rng.coin())
          edges.emplace_back(a, b);
    if (edges.empty())
      edges.emplace_back(0, 1);
    const Graph host(h, edges);
    auto random_multiset = [&] {
      ReplacementSpec::Multiset m;
      const int classes = static_cast<int>(rng.uniform_int(1, 2));
      for (int c = 0; c < classes; ++c)
        m[static_cast<int>(2 * rng.uniform_int(1, 2))] += static_cast<int>(rng.uniform_int(1, 2));
      return m;
    };
    std::vector<ReplacementSpec::Multiset> lengths;
    const auto shared = random_multiset();
    for (std::size_t e = 0; e < host.n_edges(); ++e)
      lengths.push_back(uniform ? shared : random_multiset());
    const ReplacementSpec spec(host.edges(), lengths);
    const Graph replaced = replace_edges_nonuniform(host, spec);
    std::string kind;
    const StepGraphon w = random_regular_step(rng, mn, &kind);
    const DensityValue bound = holder_lower_bound(host, spec, w);
    TrialOutcome o;
    if (bound.mode == EvalMode::Exact) {
      o = exact_comparison(exact_density(replaced, w), bound.exact, uniform);
    } else {
      o = inequality(float_density(replaced, w), bound.approx, 1e-12);
    }
    o.label = uniform ? "uniform_clique" : "random";
    o.n = w.n();
    o.vH = replaced.n_vertices();
    attach(o, "host", to_json(host));
    attach(o, "spec", to_json(spec));
    attach(o, "bound_mode", to_string(bound.mode));
    attach(o, "W", to_json(w));
    attach(o, "W_kind", kind);
    return o;
  };
  return run_trials("holder", trials, seed, max_n, trial, options.jobs);
}

SuiteReport verify_gradient(std::size_t trials, std::uint64_t seed, const SuiteOptions &options) {
  const std::size_t max_n = options.max_n ? options.max_n : 4;
  auto trial = [](std::size_t, std::uint64_t s, std::size_t mn) {
    Rng rng(s);
    const Graph h = random_graph(rng, 5, true);
    const std::size_t n = pick_n(rng, mn);
    Matrix<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        a(i, j) = a(j, i) = 0.1 + 0.8 * rng.uniform01();
    const Matrix<double> grad = density_gradient(h, a);
    constexpr double step = 1e-5;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Matrix<double> up = a, down = a;
        up(i, j) += step, up(j, i) = up(i, j);
        down(i, j) -= step, down(j, i) = down(i, j);
        const double fd =
            (hom_density_value(h, up) - hom_density_value(h, down)) / (2 * step);
        const double scale = std::max(std::abs(grad(i, j)), std::abs(fd));
        const double rel = scale > 0 ? std::abs(grad(i, j) - fd) / scale : 0.0;
        worst = std::max(worst, rel);
      }
    TrialOutcome o;
    o.lhs = 1e-6;
    o.rhs = worst;
    o.gap = 1e-6 - worst;
    o.failed = worst > 1e-6;
    o.n = n;
    o.vH = h.n_vertices();
    attach(o, "H", to_json(h));
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < n; ++j)
        row.push_back(a(i, j));
      rows.push_back(row);
    }
    attach(o, "A", rows);
    attach(o, "max_relative_error", worst);
    return o;
  };
  return run_trials("gradient", trials, seed, max_n, trial, options.jobs);
}

std::vector<std::string> suite_names() {
  return {"counting_identity", "oracle", "local_density", "sidorenko_families",
          "flower_knrs",       "holder", "gradient"};
}

SuiteReport run_suite(const std::string &name, std::size_t trials, std::uint64_t seed,
                      const SuiteOptions &options) {
  if (name == "counting_identity" || name == "lemma31")
    return verify_counting_identity(trials, seed, options);
  if (name == "oracle")
    return verify_oracle_equivalence(trials, seed, options);
  if (name == "local_density")
    return verify_local_density(trials, seed, options);
  if (name == "sidorenko_families")
    return verify_sidorenko_families(trials, seed, options);
  if (name == "flower_knrs")
    return verify_flower_knrs(trials, seed, options);
  if (name == "holder")
    return verify_holder(trials, seed, options);
  if (name == "gradient")
    return verify_gradient(trials, seed, options);
  throw Error(ErrorCode::OutOfRange, "unknown suite '" + name + "'");
}

// ---------------------------------------------------------------- reports

namespace {

Json outcome_json(const TrialOutcome &o) {
  return {{"inputs", o.inputs}, {"lhs", o.lhs}, {"rhs", o.rhs}, {"gap", o.gap},
          {"label", o.label},   {"n", o.n},     {"vH", o.vH}};
}

TrialOutcome outcome_from_json(const Json &j) {
  TrialOutcome o;
  o.inputs = j.value("inputs", Json::object());
  o.lhs = j.value("lhs", 0.0);
  o.rhs = j.value("rhs", 0.0);
  o.gap = j.value("gap", 0.0);
  o.label = j.value("label", "");
  o.n = j.value("n", std::size_t{0});
  o.vH = j.value("vH", 0);
  o.failed = true;
  return o;
}

} // namespace

Json to_json(const SuiteReport &r, bool include_timing) {
  Json failures = Json::array();
  for (const auto &f : r.failures)
    failures.push_back({{"trial", f.trial},
                        {"seed", f.seed},
                        {"outcome", outcome_json(f.outcome)},
                        {"minimized", {{"seed", f.minimized_seed},
                                       {"max_n", f.minimized_max_n},
                                       {"outcome", outcome_json(f.minimized)}}}});
  Json out{{"suite", r.suite},       {"trials", r.trials},   {"seed", r.seed},
           {"max_n", r.max_n},       {"passed", r.passed()}, {"failure_count", r.failures.size()},
           {"failures", failures},   {"min_gap", r.min_gap}, {"max_gap", r.max_gap},
           {"stats", r.stats}};
  if (include_timing)
    out["runtime_ms"] = r.runtime_ms;
  return out;
}

SuiteReport suite_report_from_json(const Json &j) {
  try {
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    r.trials = j.at("trials").get<std::size_t>();
    r.seed = j.value("seed", std::uint64_t{0});
    r.max_n = j.value("max_n", std::size_t{0});
    r.min_gap = j.value("min_gap", 0.0);
    r.max_gap = j.value("max_gap", 0.0);
    r.runtime_ms = j.value("runtime_ms", 0.0);
    r.stats = j.value("stats", Json::object());
    for (const auto &f : j.at("failures")) {
      SuiteFailure sf;
      sf.trial = f.value("trial", std::size_t{0});
      sf.seed = f.value("seed", std::uint64_t{0});
      sf.outcome = outcome_from_json(f.at("outcome"));
      if (f.contains("minimized")) {
        sf.minimized_seed = f["minimized"].value("seed", std::uint64_t{0});
        sf.minimized_max_n = f["minimized"].value("max_n", std::size_t{0});
        sf.minimized = outcome_from_json(f["minimized"].at("outcome"));
      }
      r.failures.push_back(std::move(sf));
    }
    return r;
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::Parse, std::string("malformed suite report: ") + e.what());
  }
}

std::string suite_summary_csv(std::vector<SuiteReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const SuiteReport &a, const SuiteReport &b) { return a.suite < b.suite; });
  std::ostringstream out;
  out << "suite,trials,failures,max_gap,runtime_ms\n";
  for (const auto &r : reports) {
    out << r.suite << ',' << r.trials << ',' << r.failures.size() << ',';
    out << std::setprecision(17) << (r.max_gap == 0.0 ? 0.0 : r.max_gap) << ',';
    out << std::fixed << std::setprecision(3) << r.runtime_ms << std::defaultfloat << '\n';
  }
  return out.str();
}

} // namespace sidlab
