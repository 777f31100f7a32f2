#include "zipflag/report.hpp"

#include "json.hpp"

#include <sstream>

namespace zf {

using json = nlohmann::ordered_json;

namespace {

// Expected values of the Sp6 worked example and the two GL4 claims. The n_alpha
// table is compared after dividing out the positive common factor, at the
// fundamental weight (1,1,0) of X*(L); the signs and ratios are what the
// verdicts depend on.
constexpr const char* kExpected = R"({
  "frame": {"z": "[563]", "w0": "[654]", "w0_length": 9, "w0L": "[214]", "w0L_length": 2},
  "strata": {"count": 12, "min_length": 0, "max_length": 7},
  "hasse_edges": [
    ["[123]", "[132]"], ["[132]", "[142]"], ["[132]", "[231]"], ["[142]", "[153]"],
    ["[142]", "[241]"], ["[153]", "[263]"], ["[153]", "[351]"], ["[231]", "[241]"],
    ["[241]", "[263]"], ["[241]", "[351]"], ["[263]", "[362]"], ["[351]", "[362]"],
    ["[351]", "[451]"], ["[362]", "[462]"], ["[451]", "[462]"], ["[462]", "[563]"]
  ],
  "closure_equals_bruhat": true,
  "n_alpha": {
    "w": "[351]",
    "roots": [[1, 0, -1], [1, 1, 0], [0, 1, -1], [0, 2, 0]],
    "p2": {"values": [1, 3, 0, 1], "verdict": false},
    "p3": {"values": [2, 5, 1, 2], "verdict": true},
    "p5": {"values": [4, 9, 3, 4], "verdict": true},
    "p7": {"values": [6, 13, 5, 6], "verdict": true}
  },
  "principal_purity": {"p2": false, "p3": true, "p5": true, "p7": true},
  "failing_strata_p2": ["[351]"],
  "gl4_blocks_2_2": {"lambda": [2, 2, 1, 1], "zip_ample": true, "orbitally_q_close": true},
  "gl4_borel_p2_uniform": false,
  "sufficient_condition_consistent": true
})";

json actual(const RunOptions& opt) {
  const Reading reading = opt.mutation.reading.value_or(default_reading());
  const ClosureDirection dir = opt.mutation.closure;
  auto W = make_group(RootDatum::preset("C3"));
  auto c3 = [&](long long p) { return zip_from_cochar(W, {0, 2}, 1, p); };
  json a;
  {
    ZipDatum Z = c3(2);
    int w0L = W->longest(Z.I);
    a["frame"] = {{"z", W->label(Z.z)},
                  {"w0", W->label(W->longest())},
                  {"w0_length", W->length(W->longest())},
                  {"w0L", W->label(w0L)},
                  {"w0L_length", W->length(w0L)}};
    auto strata = zip_strata(Z);
    int lo = strata.front().length, hi = strata.front().length;
    for (const auto& s : strata) {
      lo = std::min(lo, s.length);
      hi = std::max(hi, s.length);
    }
    a["strata"] = {{"count", strata.size()}, {"min_length", lo}, {"max_length", hi}};
    StrataPoset P = hasse_diagram(Z, dir);
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [x, y] : P.edges) edges.emplace_back(W->label(P.strata[x].w), W->label(P.strata[y].w));
    std::sort(edges.begin(), edges.end());
    json e = json::array();
    for (const auto& [x, y] : edges) e.push_back(json::array({x, y}));
    a["hasse_edges"] = e;
    bool eq = true;
    for (size_t x = 0; x < P.strata.size(); ++x)
      for (size_t y = 0; y < P.strata.size(); ++y)
        eq = eq && P.leq[x][y] == W->bruhat_leq(P.strata[x].w, P.strata[y].w);
    a["closure_equals_bruhat"] = eq;
  }
  {
    int w = W->from_bracket("[351]");
    json t;
    t["w"] = "[351]";
    json roots = json::array();
    for (int r : W->lower_reflections(w)) roots.push_back(W->rd().root(r));
    t["roots"] = roots;
    json purity;
    json failing = json::array();
    for (long long p : {2, 3, 5, 7}) {
      ZipDatum Z = c3(p);
      SectionVerdict v = char_section_verdict(Z, w, {1, 1, 0}, reading);
      BigInt g = 0;
      for (BigInt x : v.values) {
        if (x < 0) x = -x;
        while (x != 0) {
          BigInt r = g % x;
          g = x;
          x = r;
        }
      }
      json vals = json::array();
      for (const auto& x : v.values) vals.push_back(static_cast<long long>(g == 0 ? x : x / g));
      t["p" + std::to_string(p)] = {{"values", vals}, {"verdict", v.verdict}};
      PurityOptions po;
      po.reading = reading;
      PurityReport r = purity_report(Z, po);
      purity["p" + std::to_string(p)] = r.principal;
      if (p == 2)
        for (const auto& c : r.cones)
          if (!c.feasible) failing.push_back(W->label(c.w));
    }
    a["n_alpha"] = t;
    a["principal_purity"] = purity;
    a["failing_strata_p2"] = failing;
  }
  {
    GLCertificate cert = gln_certificate({2, 2}, 2);
    a["gl4_blocks_2_2"] = {{"lambda", cert.lambda},
                           {"zip_ample", cert.verdict.zip_ample},
                           {"orbitally_q_close", cert.verdict.tests.orbitally_q_close}};
    PurityOptions po;
    po.reading = reading;
    a["gl4_borel_p2_uniform"] = purity_report(zip_from_cochar(make_group(RootDatum::preset("GL4")), {}, 1, 2), po).uniform;
  }
  a["sufficient_condition_consistent"] = reading_check(reading).empty();
  return a;
}

void diff(const json& want, const json& got, const std::string& path, std::vector<std::string>& out) {
  if (want.is_object() && got.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) {
        out.push_back("- " + path + "." + it.key() + ": " + it.value().dump() + "\n+ " + path + "." + it.key() + ": (missing)");
        continue;
      }
      diff(it.value(), got[it.key()], path + "." + it.key(), out);
    }
    return;
  }
  if (want != got) out.push_back("- " + path + ": " + want.dump() + "\n+ " + path + ": " + got.dump());
}

}  // namespace

RunResult run_golden(const RunOptions& opt) {
  RunResult res;
  try {
    json want = json::parse(kExpected);
    json got = actual(opt);
    std::vector<std::string> lines;
    diff(want, got, "$", lines);
    std::ostringstream out;
    if (lines.empty()) {
      out << "golden: pass (" << want.size() << " groups)\n";
    } else {
      out << "golden: FAIL (" << lines.size() << " mismatches)\n";
      for (const auto& l : lines) out << l << "\n";
      res.exit_code = 1;
    }
    res.output = out.str();
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.diagnostic = std::string("golden: internal error: ") + e.what();
  }
  return res;
}

}  // namespace zf
