#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sidlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sidlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name) const { return (path / name).string(); }
  std::string write(const std::string &name, const std::string &text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("construct writes graph JSON with a header") {
  TempDir tmp;
  const auto r = run({"construct", "--family", "theta", "--lengths", "2,2", "--out", tmp.file("g.json")});
  CHECK(r.code == 0);
  const auto g = json::parse(slurp(tmp.file("g.json")));
  CHECK(g["n"] == 4);
  CHECK(g["edges"].size() == 4);
  CHECK(g["roots"].size() == 2);
  CHECK(g["header"]["tool"] == "sidlab");
  CHECK(g["header"]["version"] == sidlab::cli::kVersion);
  CHECK(g["header"]["command"] == "construct");

  const auto bowtie = json::parse(run({"construct", "--family", "flower", "--lengths", "3,3"}).out);
  CHECK(bowtie["n"] == 5);
  CHECK(bowtie["edges"].size() == 6);

  const auto odd = json::parse(run({"construct", "--family", "odd_theta", "--lengths", "5,3,1"}).out);
  CHECK(odd["decomposition_valid"] == true);
}

TEST_CASE("density prints exact values") {
  TempDir tmp;
  run({"construct", "--family", "cycle", "--lengths", "4", "--out", tmp.file("C4.json")});
  const auto w = tmp.write("bipartite2.json", R"({"n":2,"values":[["0","1"],["1","0"]]})");
  const auto r = run({"density", "--graph", tmp.file("C4.json"), "--graphon", w, "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["value"] == "1/8");
  CHECK(j["mode"] == "exact");
  CHECK(j["vH"] == 4);

  const auto f = json::parse(
      run({"density", "--graph", tmp.file("C4.json"), "--graphon", w, "--mode", "float"}).out);
  CHECK(f["value"].get<double>() == doctest::Approx(0.125));

  const auto pinned = json::parse(run({"density", "--graph", tmp.file("C4.json"), "--graphon", w,
                                       "--pin", "0=0", "--pin", "2=0"})
                                      .out);
  CHECK(pinned["value"] == "1/4"); // vertices 1 and 3 are forced to step 1
  CHECK(pinned["vH"] == 2);

  const auto def = json::parse(run({"density", "--graph", tmp.file("C4.json"), "--graphon", w,
                                    "--baseline", "sidorenko"})
                                   .out);
  CHECK(def["deficit"] == "1/16");
}

TEST_CASE("decimals require --float") {
  TempDir tmp;
  run({"construct", "--family", "complete", "--h", "2", "--out", tmp.file("k2.json")});
  const auto w = tmp.write("w.json", R"({"n":1,"values":[["0.5"]]})");
  CHECK(run({"density", "--graph", tmp.file("k2.json"), "--graphon", w}).code == 3);
  const auto ok = run({"density", "--graph", tmp.file("k2.json"), "--graphon", w, "--float"});
  REQUIRE(ok.code == 0);
  CHECK(json::parse(ok.out)["value"] == "1/2");
}

TEST_CASE("local density flagging through the CLI") {
  TempDir tmp;
  run({"construct", "--family", "complete", "--h", "2", "--out", tmp.file("k2.json")});
  const auto w = tmp.write("w.json", R"({"n":2,"values":[["4/5","1/20"],["1/20","7/20"]]})");
  const auto r = run({"density", "--graph", tmp.file("k2.json"), "--graphon", w, "--local-density", "3/10"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["certified_violation"] == true);
}

TEST_CASE("verify runs a suite and reports") {
  TempDir tmp;
  const auto r = run({"verify", "--suite", "lemma31", "--trials", "200", "--seed", "7", "--out",
                      tmp.file("r.json")});
  CHECK(r.code == 0);
  const auto j = json::parse(slurp(tmp.file("r.json")));
  CHECK(j["failure_count"] == 0);
  CHECK(j["trials"] == 200);
  CHECK(j["header"]["seed"] == 7);
  CHECK_FALSE(j.contains("runtime_ms"));

  // Byte-identical artifacts for an identical command line.
  run({"verify", "--suite", "lemma31", "--trials", "200", "--seed", "7", "--out", tmp.file("r2.json")});
  CHECK(slurp(tmp.file("r.json")) == slurp(tmp.file("r2.json")));

  run({"verify", "--suite", "gradient", "--trials", "5", "--seed", "1", "--out", tmp.file("g.json")});
  const auto csv = run({"report", tmp.file("r.json"), tmp.file("g.json")});
  CHECK(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "suite,trials,failures,max_gap,runtime_ms");
  CHECK(first.rfind("counting_identity,200,0,", 0) == 0);
  CHECK(second.rfind("gradient,5,0,", 0) == 0);

  CHECK(run({"report"}).out == "suite,trials,failures,max_gap,runtime_ms\n");
  const auto rj = json::parse(run({"report", "--format", "json", tmp.file("g.json")}).out);
  CHECK(rj["suites"].size() == 1);
}

TEST_CASE("search writes a result and a trace") {
  TempDir tmp;
  run({"construct", "--family", "cycle", "--lengths", "4", "--out", tmp.file("h.json")});
  const auto r = run({"search", "--graph", tmp.file("h.json"), "--n", "4", "--d", "1/2", "--seed",
                      "3", "--starts", "4", "--iters", "50", "--trace", tmp.file("t.csv")});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["best_deficit"].get<double>() >= 0.0);
  CHECK(j["starts"] == 4);
  CHECK(j["header"]["seed"] == 3);
  CHECK(j["best_W"]["n"] == 4);
  CHECK(slurp(tmp.file("t.csv")).rfind("iteration,deficit\n", 0) == 0);
  CHECK(run({"search", "--graph", tmp.file("h.json"), "--n", "4", "--d", "0.5"}).code == 3);
}

TEST_CASE("exit codes for usage and format errors") {
  TempDir tmp;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"construct", "--family", "path", "--lengths", "2", "--bogus"}).code == 2);
  CHECK(run({"construct", "--family", "nonsense"}).code == 2);
  CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
  CHECK(run({"verify", "--suite", "oracle", "--trials", "abc"}).code == 2);
  CHECK(run({"density", "--graph", tmp.file("missing.json"), "--graphon", tmp.file("x.json")}).code == 3);
  const auto bad = tmp.write("bad.json", "{not json");
  CHECK(run({"density", "--graph", bad, "--graphon", bad}).code == 3);
  const auto badgraph = tmp.write("bg.json", R"({"n":2,"edges":[[0,0]]})");
  const auto w = tmp.write("w.json", R"({"n":1,"values":[["1"]]})");
  CHECK(run({"density", "--graph", badgraph, "--graphon", w}).code == 3);
  CHECK(run({"report", bad}).code == 3);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("jobs default comes from the environment") {
  ::setenv("SIDLAB_JOBS", "3", 1);
  const auto r = run({"verify", "--suite", "oracle", "--trials", "4"});
  CHECK(r.code == 0);
  ::setenv("SIDLAB_JOBS", "x", 1);
  CHECK(run({"verify", "--suite", "oracle", "--trials", "4"}).code == 2);
  ::unsetenv("SIDLAB_JOBS");
}

} // TEST_SUITE
