// Tests for JSON parsing/serialization and the command-line front end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "sinkstable/json_io.hpp"
#include "test_util.hpp"

using namespace sinkstable;
using io::json;

namespace {

struct CliRun {
  int code = 0;
  json out;
  std::string raw_out;
  std::string raw_err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.raw_out = out.str();
  r.raw_err = err.str();
  if (!r.raw_out.empty() && r.raw_out.front() == '{') r.out = json::parse(r.raw_out);
  return r;
}

std::string fig1 = test::data_file("fig1.json");
std::string fig2 = test::data_file("fig2.json");
std::string cube = test::data_file("cube.json");

}  // namespace

TEST_CASE("digraph JSON parsing") {
  Digraph d = io::parse_digraph(json::parse(
      R"({"n": 3, "names": ["x", "y", "z"], "edges": [[0, 1], [1, 2]]})"));
  CHECK(d.node_count() == 3);
  CHECK(d.edge_count() == 2);
  CHECK(d.names == std::vector<std::string>{"x", "y", "z"});
  CHECK_THROWS_AS(io::parse_digraph(json::parse(R"({"edges": [[0, 0]]})")), input_error);
  CHECK_THROWS_AS(io::parse_digraph(json::parse(R"({"n": 1, "edges": [[0, 1]]})")),
                  input_error);
}

TEST_CASE("node and edge literals") {
  Digraph d = io::parse_digraph(json::parse(
      R"({"n": 3, "names": ["a", "b", "c"], "edges": [[0, 1], [1, 2]]})"));
  NodeSet s = io::parse_node_csv("a,c", 3, d.names);
  CHECK(s == NodeSet::of(3, {0, 2}));
  CHECK(io::parse_node_csv("0,2", 3, d.names) == s);
  CHECK_THROWS_AS(io::parse_node_csv("q", 3, d.names), input_error);

  CHECK(io::parse_edge_csv("ab", d) == EdgeSet::of(2, {0}));
  CHECK(io::parse_edge_csv("a-b,1", d) == EdgeSet::of(2, {0, 1}));
  CHECK(io::parse_edge_csv("0", d) == EdgeSet::of(2, {0}));
  CHECK_THROWS_AS(io::parse_edge_csv("ac", d), input_error);

  CHECK(io::parse_weights(json::parse("[1, 2, 3]"), 3, d.names) ==
        std::vector<long long>{1, 2, 3});
  CHECK(io::parse_weights(json::parse(R"({"b": 5})"), 3, d.names) ==
        std::vector<long long>{0, 5, 0});
}

TEST_CASE("cli: certificates for the worked examples") {
  CliRun ok = run_cli({"check-sink-stable", fig1, "--set", "a", "--verify"});
  CHECK(ok.code == 0);
  CHECK(ok.out["schema"] == "sinkstable/1");
  CHECK(ok.out["kind"] == "dicut_family");
  CHECK(ok.out["stable"] == true);

  CliRun viol = run_cli({"check-sink-stable", fig1, "--set", "a,c"});
  CHECK(viol.code == 0);
  CHECK(viol.out["kind"] == "violating_circuit");
  CHECK(viol.out["intersection"] == 2);
  CHECK(viol.out["eta"] == 1);

  CliRun opt = run_cli({"max-sink-stable", fig2, "--verify"});
  CHECK(opt.code == 0);
  CHECK(opt.out["value"] == 3);
  CHECK(opt.out["primal"]["set"] == json::parse(R"(["b", "c", "d"])"));

  CliRun clar = run_cli({"clar", cube, "--verify"});
  CHECK(clar.code == 0);
  CHECK(clar.out["clar"] == 2);
  CHECK(clar.out["resonant_faces"].size() == 2);
}

TEST_CASE("cli: unstable inputs are answers, not errors") {
  CliRun r = run_cli({"check-sink-stable", fig1, "--set", "a,b"});
  CHECK(r.code == 0);
  CHECK(r.out["kind"] == "not_stable");
  CHECK(r.out["stable"] == false);
}

TEST_CASE("cli: text format and determinism") {
  CliRun a = run_cli({"max-sink-stable", fig2, "--format", "text"});
  CHECK(a.code == 0);
  CHECK(a.raw_out == "max sink-stable value 3\n");
  CliRun b = run_cli({"max-sink-stable", fig2});
  CliRun c = run_cli({"max-sink-stable", fig2});
  CHECK(b.raw_out == c.raw_out);
}

TEST_CASE("cli: oracle verb") {
  CliRun r = run_cli({"oracle", fig2, "--check", "max-sink"});
  CHECK(r.code == 0);
  CHECK(r.out["value"] == 3);
  CliRun guard = run_cli({"oracle", fig2, "--check", "max-sink", "--oracle-max-n", "3"});
  CHECK(guard.code == 1);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"no-such-verb", fig1}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"check-sink-stable", "/no/such/file.json", "--set", "a"}).code == 1);
  CHECK(run_cli({"check-sink-stable", fig1, "--set", "zz"}).code == 1);
  CHECK(run_cli({"max-sink-stable", fig1, "--format", "yaml"}).code == 2);
  // malformed JSON input
  CHECK(run_cli({"max-sink-stable", "/dev/null"}).code == 1);
}

TEST_CASE("cli: round trips through emitted JSON") {
  CliRun fam = run_cli({"dicut-union", fig1, "--edge-set", "ab,ad", "--verify"});
  CHECK(fam.code == 0);
  CHECK(fam.out["kind"] == "dicut_family");
  REQUIRE(fam.out["family"].size() == 1);
  CHECK(fam.out["family"][0].contains("level"));
  CHECK(fam.out["family"][0].contains("dicut"));

  CliRun gk = run_cli({"dicut-union", fig1, "--edge-set", "ab"});
  CHECK(gk.out["kind"] == "violating_circuit");
  CHECK(gk.out["phi_F"] != gk.out["beta_F"]);
}
