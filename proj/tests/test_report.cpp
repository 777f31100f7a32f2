#include "zipflag/report.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <set>

using namespace zf;
using json = nlohmann::ordered_json;

namespace {

const char* kC3 = R"({"group": {"preset": "C3"}, "p": 5, "I": [1, 3], "characters": [[1, 1, 0]], "w": "[351]"})";

RunOptions fmt(Format f) {
  RunOptions o;
  o.format = f;
  return o;
}

json run_json(const std::string& cmd, const std::string& cfg, RunOptions o = {}) {
  RunResult r = run_command(cmd, cfg, o);
  EXPECT_TRUE(r.exit_code == 0 || r.exit_code == 3) << r.diagnostic;
  return json::parse(r.output);
}

// Edge set of a DOT digraph as label pairs.
std::set<std::pair<std::string, std::string>> dot_edges(const std::string& dot, size_t* nodes) {
  std::map<std::string, std::string> label;
  std::regex node(R"re(^\s*(n\d+) \[label="([^"]*)"\];)re"), edge(R"(^\s*(n\d+) -> (n\d+);)");
  std::set<std::pair<std::string, std::string>> out;
  std::istringstream in(dot);
  std::string line;
  std::smatch m;
  EXPECT_TRUE(std::getline(in, line) && line.rfind("digraph ", 0) == 0);
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, node)) label[m[1]] = m[2];
    else if (std::regex_match(line, m, edge)) out.emplace(label.at(m[1]), label.at(m[2]));
  }
  *nodes = label.size();
  return out;
}

}  // namespace

TEST(Config, Diagnostics) {
  auto diag = [](const std::string& text) {
    try {
      parse_config(text, "cfg.json");
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(diag("{"), diag("{")) ;
  EXPECT_NE(diag("{").find("cfg.json: $: not valid JSON"), std::string::npos);
  EXPECT_EQ(diag(R"({"p": 2})"), "cfg.json: $.group: missing");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "I": [0]})"), "cfg.json: $.I[0]: simple-root indices are 1-based");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "I": [1], "mu": [0,0,0]})"), "cfg.json: $: give only one of I, mu and blocks");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "colour": 1})"), "cfg.json: $.colour: unknown key");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "characters": [[1, "a"]]})"),
            "cfg.json: $.characters[0][1]: expected an integer");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "lattice": "big"})"), "cfg.json: $.lattice: expected torus, levi or levi0");
  EXPECT_EQ(diag(R"({"group": {"preset": "C3"}, "galois": {"perm": [1, 4]}})"),
            "cfg.json: $.galois.perm[1]: expected a 1-based permutation");

  Config c = parse_config(R"({"group": {"preset": "C3"}, "p": "1000000007", "I": [3, 1], "I0": [1]})");
  EXPECT_EQ(c.I, (Subset{0, 2}));
  EXPECT_EQ(c.I0, (Subset{0}));
  EXPECT_EQ(c.p, BigInt(1000000007));
}

TEST(Commands, ExitCodes) {
  RunResult bad_prime = run_command("strata", R"({"group": {"preset": "C3"}, "p": 4, "I": [1, 3]})", {}, "a.json");
  EXPECT_EQ(bad_prime.exit_code, 2);
  EXPECT_EQ(bad_prime.diagnostic, "a.json: $.p: p must be a prime");
  RunResult bad_index = run_command("strata", R"({"group": {"preset": "C3"}, "I": [1, 7]})", {}, "a.json");
  EXPECT_EQ(bad_index.exit_code, 2);
  EXPECT_EQ(bad_index.diagnostic, "a.json: $.I: index 7 exceeds the 3 simple roots");
  EXPECT_EQ(run_command("strata", R"({"group": {"preset": "Q9"}})", {}).exit_code, 2);
  EXPECT_EQ(run_command("frobnicate", kC3, {}).exit_code, 2);
  EXPECT_EQ(run_command("strata", kC3, fmt(Format::Dot)).exit_code, 2);
  EXPECT_EQ(run_command("flag-strata", kC3, {}).exit_code, 2);
  RunResult not_label = run_command("n-alpha", R"({"group": {"preset": "C3"}, "I": [1, 3], "w": "[213]", "characters": [[1,1,0]]})", {});
  EXPECT_EQ(not_label.exit_code, 2);
  EXPECT_NE(not_label.diagnostic.find("$.w[0]"), std::string::npos);

  // The requested cone is infeasible at p = 2 and feasible at p = 5.
  const char* c3p2 = R"({"group": {"preset": "C3"}, "p": 2, "I": [1, 3], "w": "[351]"})";
  EXPECT_EQ(run_command("cone", c3p2, {}).exit_code, 3);
  EXPECT_EQ(run_command("cone", kC3, {}).exit_code, 0);
  EXPECT_EQ(run_command("purity", c3p2, {}).exit_code, 3);
  EXPECT_EQ(run_command("purity", kC3, {}).exit_code, 0);
}

TEST(Commands, DeterministicOutput) {
  for (const auto& cmd : subcommands()) {
    if (cmd == "flag-strata" || cmd == "coarse-strata" || cmd == "scan") continue;
    for (Format f : {Format::Json, Format::Text}) {
      RunResult a = run_command(cmd, kC3, fmt(f)), b = run_command(cmd, kC3, fmt(f));
      EXPECT_EQ(a.exit_code, 0) << cmd << " " << a.diagnostic;
      EXPECT_FALSE(a.output.empty()) << cmd;
      EXPECT_EQ(a.output, b.output) << cmd;
    }
  }
  const char* scan = R"({"group": {"preset": "GL4"}, "blocks": [2, 2], "primes": [2, 3, 5, 7]})";
  RunOptions one, three;
  three.workers = 3;
  EXPECT_EQ(run_command("scan", scan, one).output, run_command("scan", scan, three).output);
}

TEST(Commands, ReportHeader) {
  json j = run_json("describe", kC3);
  EXPECT_EQ(j["schema"], "zipflag-report/1");
  EXPECT_EQ(j["convention"]["reading"], "negated-coroot-side");
  EXPECT_EQ(j["convention"]["closure"], "standard");
  EXPECT_EQ(j["datum"]["z"], "[563]");
  EXPECT_EQ(j["datum"]["I"], json::array({1, 3}));
  EXPECT_EQ(j["num_strata"], 12);
}

TEST(Commands, HasseDotMatchesThePoset) {
  RunResult dot = run_command("hasse", kC3, fmt(Format::Dot));
  ASSERT_EQ(dot.exit_code, 0);
  size_t nodes = 0;
  auto edges = dot_edges(dot.output, &nodes);
  EXPECT_EQ(nodes, 12u);
  EXPECT_EQ(edges.size(), 16u);
  json j = run_json("hasse", kC3);
  std::set<std::pair<std::string, std::string>> from_json;
  for (const auto& e : j["edges"]) from_json.emplace(e[0], e[1]);
  EXPECT_EQ(edges, from_json);
  EXPECT_TRUE(edges.count({"[153]", "[351]"}));

  const char* flag = R"({"group": {"preset": "C3"}, "I": [1, 3], "I0": [1]})";
  for (const char* cmd : {"flag-strata", "coarse-strata"}) {
    RunResult d = run_command(cmd, flag, fmt(Format::Dot));
    ASSERT_EQ(d.exit_code, 0) << d.diagnostic;
    size_t n = 0;
    auto e = dot_edges(d.output, &n);
    json k = run_json(cmd, flag);
    EXPECT_EQ(n, k["nodes"].size());
    EXPECT_EQ(e.size(), k["edges"].size());
  }
}

TEST(Commands, StrataOfTheRegularGL4Datum) {
  json j = run_json("strata", R"({"group": {"preset": "GL4"}, "mu": [-3, -2, -1, 0]})");
  EXPECT_EQ(j["strata"].size(), 24u);
}

TEST(Commands, NAlphaSerializesDecimalStrings) {
  json j = run_json("n-alpha", R"({"group": {"preset": "C3"}, "p": 5, "I": [1, 3], "w": "[351]",
                                   "characters": [[1, 1, 0], [1, 0, 0]]})");
  ASSERT_EQ(j["sections"].size(), 2u);
  EXPECT_EQ(j["sections"][0]["normalized"], json::array({"4", "9", "3", "4"}));
  EXPECT_EQ(j["sections"][0]["verdict"], true);
  EXPECT_EQ(j["sections"][1]["values"], json::array({"496", "3720", "2976", "3100"}));
  // Values beyond 64 bits stay exact.
  json big = run_json("n-alpha", R"({"group": {"preset": "C3"}, "p": 1000000007, "n": 3, "I": [1, 3], "w": "[351]",
                                    "characters": [[1, 1, 0]]})");
  std::string v = big["sections"][0]["values"][1].get<std::string>();
  EXPECT_GT(v.size(), 40u);
}

TEST(Commands, Scan) {
  json c3 = run_json("scan", R"({"group": {"preset": "C3"}, "I": [1, 3], "primes": [2, 3, 5]})");
  ASSERT_EQ(c3["cells"].size(), 3u);
  EXPECT_EQ(c3["cells"][0]["principal"], false);
  EXPECT_EQ(c3["cells"][0]["failing_strata"], json::array({"[351]"}));
  EXPECT_EQ(c3["cells"][1]["uniform"], true);
  EXPECT_EQ(c3["cells"][2]["uniform"], true);
  EXPECT_EQ(c3["summary"][0]["first_uniform_prime"], 3);

  json gl = run_json("scan", R"({"group": {"preset": "GL4"}, "blocks": [2, 2], "primes": [2, 3, 5, 7, 11]})");
  for (const auto& cell : gl["cells"]) EXPECT_EQ(cell["uniform"], true);
  EXPECT_EQ(gl["summary"][0]["first_uniform_prime"], 2);

  json empty = run_json("scan", R"({"group": {"preset": "C3"}, "I": [1, 3], "primes": []})");
  EXPECT_TRUE(empty["cells"].empty());

  // A bad cell is reported and the others still run.
  json mixed = run_json("scan", R"({"group": {"preset": "C3"}, "I": [1, 3], "primes": [4, 3]})");
  EXPECT_TRUE(mixed["cells"][0].contains("error"));
  EXPECT_EQ(mixed["cells"][1]["uniform"], true);

  json types = run_json("scan", R"({"group": {"preset": "A2"}, "I": [1], "primes": [2, 3], "types": ["A2", "B2"]})");
  EXPECT_EQ(types["cells"].size(), 4u);
  EXPECT_EQ(types["summary"].size(), 2u);
}

TEST(Golden, PassesAndCatchesMutations) {
  RunResult ok = run_golden({});
  EXPECT_EQ(ok.exit_code, 0) << ok.output;

  RunOptions closure;
  closure.mutation.closure = ClosureDirection::Transposed;
  RunResult c = run_golden(closure);
  EXPECT_EQ(c.exit_code, 1);
  EXPECT_NE(c.output.find("$.hasse_edges"), std::string::npos);

  for (Reading r : {Reading::Verbatim, Reading::SwappedZ}) {
    RunOptions o;
    o.mutation.reading = r;
    RunResult m = run_golden(o);
    EXPECT_EQ(m.exit_code, 1) << reading_name(r);
    EXPECT_NE(m.output.find("$.n_alpha.p2.values"), std::string::npos) << reading_name(r);
  }
  // The twist side is invisible on split data; the twisted calibration catches it.
  RunOptions twist;
  twist.mutation.reading = Reading::PrintedTwistSide;
  RunResult t = run_golden(twist);
  EXPECT_EQ(t.exit_code, 1);
  EXPECT_NE(t.output.find("$.sufficient_condition_consistent"), std::string::npos);

  EXPECT_THROW(parse_mutation({"sideways"}), Error);
  EXPECT_EQ(parse_mutation({"closure-transposed", "verbatim"}).reading, Reading::Verbatim);
}
