#include "zipflag/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace zf {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "zipflag-report/1";
constexpr const char* kVersion = "0.1.0";

// ---- config parsing ----

[[noreturn]] void bad(const std::string& source, const std::string& path, const std::string& why) {
  throw Error(ErrorCode::InvalidConfig, source + ": " + path + ": " + why);
}

long long get_int(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_number_integer()) bad(source, path, "expected an integer");
  return j.get<long long>();
}

BigInt get_big(const json& j, const std::string& source, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      bad(source, path, "expected a decimal integer");
    return BigInt(s);
  }
  bad(source, path, "expected an integer");
}

Vec get_vec(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array()) bad(source, path, "expected an integer list");
  Vec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(get_int(j[i], source, path + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<Vec> get_vecs(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array()) bad(source, path, "expected a list of integer lists");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(get_vec(j[i], source, path + "[" + std::to_string(i) + "]"));
  return out;
}

// 1-based in the file, sorted and 0-based in memory.
Subset get_subset(const json& j, const std::string& source, const std::string& path) {
  Vec v = get_vec(j, source, path);
  Subset s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) bad(source, path + "[" + std::to_string(i) + "]", "simple-root indices are 1-based");
    s.push_back(static_cast<int>(v[i] - 1));
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) bad(source, path, "repeated index");
  return s;
}

std::string get_string(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_string()) bad(source, path, "expected a string");
  return j.get<std::string>();
}

const std::vector<std::string> kKeys = {"schema", "group", "galois", "p", "n", "I", "mu", "blocks", "I0",
                                        "characters", "w", "lattice", "box", "hints", "primes", "types"};

// ---- JSON helpers ----

json big(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

json big_vec(const BigVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

json big_strings(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json subset_json(const Subset& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

json vec_json(const Vec& v) { return json(v); }

json matrix_json(const Mat& m) {
  json a = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

// ---- renderers ----

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  auto scalar_array = [](const json& a) {
    return std::all_of(a.begin(), a.end(), [](const json& x) { return !x.is_structured(); });
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !scalar_array(j) &&
             !std::all_of(j.begin(), j.end(), [&](const json& x) { return x.is_array() && scalar_array(x); })) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string render_text(const json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

struct DotGraph {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
};

std::string render_dot(const DotGraph& g) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(g.name) << "\" {\n  rankdir=BT;\n";
  for (size_t i = 0; i < g.labels.size(); ++i) out << "  n" << i << " [label=\"" << dot_escape(g.labels[i]) << "\"];\n";
  for (auto [a, b] : g.edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

// ---- datum construction ----

struct Built {
  ZipDatum Z;
  std::optional<FlaggedZipDatum> F;
  std::vector<Vec> hints;
};

Subset blocks_to_I(const std::vector<int>& blocks) {
  Subset I;
  int pos = 0;
  for (int b : blocks) {
    for (int k = 0; k + 1 < b; ++k) I.push_back(pos + k);
    pos += b;
  }
  return I;
}

Vec blocks_lambda(const std::vector<int>& blocks) {
  Vec lambda;
  int r = static_cast<int>(blocks.size());
  for (int b = 0; b < r; ++b)
    for (int k = 0; k < blocks[b]; ++k) lambda.push_back(r - b);
  return lambda;
}

Built build(const Config& c, const RootDatumSpec& group, const BigInt& p) {
  Built b;
  std::shared_ptr<const WeylGroup> W;
  try {
    W = make_group(RootDatum::build(group));
  } catch (const Error& e) {
    bad(c.source, "$.group", e.what());
  }
  const int r = W->rank();
  auto check_subset = [&](const Subset& s, const std::string& path) {
    for (int i : s)
      if (i >= r) bad(c.source, path, "index " + std::to_string(i + 1) + " exceeds the " + std::to_string(r) + " simple roots");
  };
  try {
    if (c.mu) {
      if (static_cast<int>(c.mu->size()) != W->rd().rank())
        bad(c.source, "$.mu", "length must equal the rank " + std::to_string(W->rd().rank()));
      b.Z = zip_from_mu(W, *c.mu, c.n, p);
    } else if (c.blocks) {
      int total = 0;
      for (int x : *c.blocks) total += x;
      if (total != W->rd().rank() || total != r + 1)
        bad(c.source, "$.blocks", "block sizes must sum to N for a GL_N group");
      b.Z = zip_from_cochar(W, blocks_to_I(*c.blocks), c.n, p);
      b.hints.push_back(blocks_lambda(*c.blocks));
    } else {
      Subset I = c.I.value_or(Subset{});
      check_subset(I, "$.I");
      b.Z = zip_from_cochar(W, I, c.n, p);
    }
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(c.source + ": ", 0) == 0) throw;
    std::string path = c.mu ? "$.mu" : c.blocks ? "$.blocks" : "$";
    if (std::string(e.what()).find("prime") != std::string::npos) path = "$.p";
    bad(c.source, path, e.what());
  }
  if (c.I0) {
    check_subset(*c.I0, "$.I0");
    if (!subset_includes(b.Z.I, *c.I0)) bad(c.source, "$.I0", "must be contained in I = " + format_subset(b.Z.I));
    b.F = flag_datum(b.Z, *c.I0);
  }
  for (size_t i = 0; i < c.characters.size(); ++i)
    if (static_cast<int>(c.characters[i].size()) != W->rd().rank())
      bad(c.source, "$.characters[" + std::to_string(i) + "]", "length must equal the rank " + std::to_string(W->rd().rank()));
  for (size_t i = 0; i < c.hints.size(); ++i) {
    if (static_cast<int>(c.hints[i].size()) != W->rd().rank())
      bad(c.source, "$.hints[" + std::to_string(i) + "]", "length must equal the rank");
    b.hints.push_back(c.hints[i]);
  }
  return b;
}

std::vector<int> requested_labels(const Config& c, const ZipDatum& Z) {
  std::vector<int> out;
  for (size_t i = 0; i < c.w.size(); ++i) {
    const std::string path = "$.w[" + std::to_string(i) + "]";
    int w;
    try {
      w = Z.W->parse_label(c.w[i]);
    } catch (const Error& e) {
      bad(c.source, path, e.what());
    }
    if (w < 0) bad(c.source, path, "'" + c.w[i] + "' is not an element of W");
    if (!is_stratum_label(Z, w)) bad(c.source, path, "'" + c.w[i] + "' is not a stratum label (not in ^IW)");
    out.push_back(w);
  }
  return out;
}

// ---- report sections ----

json datum_json(const ZipDatum& Z) {
  const WeylGroup& W = *Z.W;
  const RootDatum& rd = Z.rd();
  json g;
  g["name"] = rd.name().empty() ? "explicit" : rd.name();
  g["rank"] = rd.rank();
  g["simple_roots"] = rd.simple_roots();
  g["simple_coroots"] = rd.simple_coroots();
  g["cartan"] = rd.cartan();
  g["num_roots"] = rd.num_roots();
  g["weyl_order"] = W.size();
  json gal;
  json perm = json::array();
  for (int s = 0; s < rd.num_simple(); ++s) perm.push_back(rd.galois_simple(1, s) + 1);
  gal["perm"] = perm;
  gal["order"] = rd.galois_order();
  gal["matrix"] = matrix_json(rd.galois_matrix());
  json d;
  d["group"] = g;
  d["galois"] = gal;
  d["p"] = big(Z.p);
  d["n"] = Z.n;
  d["q"] = big(Z.q);
  d["I"] = subset_json(Z.I);
  d["J"] = subset_json(Z.J);
  if (Z.mu) d["mu"] = vec_json(*Z.mu);
  d["z"] = W.label(Z.z);
  d["z_length"] = W.length(Z.z);
  d["w0"] = W.label(W.longest());
  d["w0_length"] = W.length(W.longest());
  int w0L = W.longest(Z.I);
  d["w0L"] = W.label(w0L);
  d["w0L_length"] = W.length(w0L);
  json issues = json::array();
  for (const auto& s : validate_frame(Z)) issues.push_back(s);
  d["frame_issues"] = issues;
  return d;
}

json dims_json(const DimReport& r) {
  json d;
  d["dim_G"] = r.dim_G;
  d["dim_B"] = r.dim_B;
  d["dim_P"] = r.dim_P;
  d["dim_E"] = r.dim_E;
  if (r.flagged) {
    d["dim_P0"] = r.dim_P0;
    d["dim_P_over_P0"] = r.dim_P_over_P0;
    d["dim_L_over_P0L"] = r.dim_L_over_P0L;
    d["dim_E_hat"] = r.dim_E_hat;
    d["dim_E_Z0"] = r.dim_E_Z0;
    d["dim_M_cap_V0"] = r.dim_M_cap_V0;
  }
  return d;
}

json stratum_json(const WeylGroup& W, const Stratum& s) {
  json j;
  j["label"] = W.label(s.w);
  j["length"] = s.length;
  j["variety_dim"] = s.variety_dim;
  j["stack_dim"] = s.stack_dim;
  return j;
}

json edges_json(const std::vector<std::pair<int, int>>& edges, const std::vector<std::string>& labels) {
  json a = json::array();
  for (auto [x, y] : edges) a.push_back(json::array({labels[x], labels[y]}));
  return a;
}

json tests_json(const RootDatum& rd, const CharacterTests& t) {
  json j;
  j["q_small"] = t.q_small;
  j["orbitally_q_close"] = t.orbitally_q_close;
  if (t.q_small_witness >= 0) j["q_small_witness"] = vec_json(rd.root(t.q_small_witness));
  if (t.orbit_witness.first >= 0)
    j["orbit_witness"] = json::array({vec_json(rd.root(t.orbit_witness.first)), vec_json(rd.root(t.orbit_witness.second))});
  return j;
}

json verdict_json(const RootDatum& rd, const CharacterVerdict& v) {
  json j;
  j["chi"] = vec_json(v.chi);
  j["q"] = big(v.q);
  j["tests"] = tests_json(rd, v.tests);
  j["zip_ample"] = v.zip_ample;
  if (v.flag_ample) j["flag_ample"] = *v.flag_ample;
  j["witnesses"] = v.witnesses;
  return j;
}

BigInt gcd_all(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (BigInt x : v) {
    if (x < 0) x = -x;
    while (x != 0) {
      BigInt t = g % x;
      g = x;
      x = t;
    }
  }
  return g;
}

json section_json(const ZipDatum& Z, const SectionVerdict& v) {
  const RootDatum& rd = Z.rd();
  json j;
  j["w"] = Z.W->label(v.w);
  j["chi"] = vec_json(v.chi);
  json roots = json::array();
  for (int a : v.roots) roots.push_back(vec_json(rd.root(a)));
  j["roots"] = roots;
  j["values"] = big_strings(v.values);
  BigInt g = gcd_all(v.values);
  if (g > 1) {
    std::vector<BigInt> norm;
    for (const auto& x : v.values) norm.push_back(x / g);
    j["common_factor"] = g.str();
    j["normalized"] = big_strings(norm);
  }
  j["verdict"] = v.verdict;
  j["r_w"] = v.period_info.r_w;
  j["m"] = v.period_info.m;
  j["period"] = v.period;
  return j;
}

json cone_json(const ZipDatum& Z, const SectionCone& c, Reading reading) {
  const RootDatum& rd = Z.rd();
  json j;
  j["w"] = Z.W->label(c.w);
  j["lattice"] = lattice_name(c.lattice);
  j["equal_on"] = subset_json(c.equal_on);
  json basis = json::array();
  for (const auto& b : c.basis) basis.push_back(big_vec(b));
  j["basis"] = basis;
  json roots = json::array();
  for (int a : c.roots) roots.push_back(vec_json(rd.root(a)));
  j["roots"] = roots;
  json forms = json::array();
  for (const auto& f : c.forms) forms.push_back(big_vec(f));
  j["forms"] = forms;
  j["feasible"] = c.feasible;
  if (c.feasible) {
    if (c.witness) j["witness"] = vec_json(*c.witness);
    j["witness_from_hint"] = c.witness_from_hint;
    j["witness_verified"] = witness_verifies(Z, c, reading);
  } else {
    j["certificate"] = big_vec(c.certificate);
    j["certificate_replays"] = replay_infeasibility(c);
  }
  return j;
}

json purity_json(const ZipDatum& Zc, const PurityReport& r) {
  json j;
  j["lattice"] = lattice_name(r.lattice);
  j["flagged"] = r.flagged;
  j["principal"] = r.principal;
  j["uniform"] = r.uniform;
  if (r.uniform_witness) j["uniform_witness"] = vec_json(*r.uniform_witness);
  if (!r.uniform) {
    json forms = json::array();
    for (const auto& f : r.uniform_forms) forms.push_back(big_vec(f));
    j["uniform_forms"] = forms;
    j["uniform_certificate"] = big_vec(r.uniform_certificate);
    j["uniform_certificate_replays"] = replay_uniform_infeasibility(r);
  }
  if (r.sufficient) j["sufficient_character"] = vec_json(*r.sufficient);
  else j["sufficient_character"] = nullptr;
  j["sufficient_consistent"] = r.sufficient_consistent;
  json strata = json::array();
  for (const auto& c : r.cones) {
    json s;
    s["w"] = Zc.W->label(c.w);
    s["feasible"] = c.feasible;
    if (c.witness) s["witness"] = vec_json(*c.witness);
    if (!c.feasible) s["certificate"] = big_vec(c.certificate);
    strata.push_back(s);
  }
  j["strata"] = strata;
  return j;
}

json header(const std::string& command, const RunOptions& opt, Reading reading) {
  json h;
  h["schema"] = kSchema;
  h["tool"] = {{"name", "zipflag"}, {"version", kVersion}};
  CalibrationReport cal = calibrate();
  json conv;
  conv["reading"] = reading_name(reading);
  conv["calibrated_reading"] = reading_name(cal.selected);
  json rejected = json::array();
  for (const auto& [rd, why] : cal.rejected) rejected.push_back({{"reading", reading_name(rd)}, {"failure", why}});
  conv["rejected"] = rejected;
  conv["closure"] = opt.mutation.closure == ClosureDirection::Standard ? "standard" : "transposed";
  h["convention"] = conv;
  h["command"] = command;
  return h;
}

struct Output {
  json report;
  std::optional<DotGraph> dot;
  int exit_code = 0;
};

Output compute(const std::string& cmd, const Config& c, const RunOptions& opt);

Output scan(const Config& c, const RunOptions& opt, Reading reading) {
  Output out;
  std::vector<std::string> types = c.types;
  if (types.empty()) types.push_back(c.group.preset.empty() ? std::string() : c.group.preset);
  struct Cell {
    std::string type;
    BigInt p;
    json result;
  };
  std::vector<Cell> cells;
  for (const auto& t : types)
    for (const auto& p : c.primes) cells.push_back({t, p, json()});

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < cells.size();) {
      Cell& cell = cells[i];
      json r;
      r["type"] = cell.type.empty() ? "explicit" : cell.type;
      r["p"] = big(cell.p);
      try {
        RootDatumSpec g = c.group;
        if (!cell.type.empty()) g.preset = cell.type;
        Built b = build(c, g, cell.p);
        PurityOptions po;
        po.lattice = opt.lattice ? opt.lattice : c.lattice;
        po.box = opt.box.value_or(c.box.value_or(2));
        po.hints = b.hints;
        po.reading = reading;
        PurityReport rep = b.F ? purity_report(*b.F, po) : purity_report(b.Z, po);
        r["principal"] = rep.principal;
        r["uniform"] = rep.uniform;
        r["uniform_witness"] = rep.uniform_witness ? vec_json(*rep.uniform_witness) : json(nullptr);
        r["sufficient_character"] = rep.sufficient ? vec_json(*rep.sufficient) : json(nullptr);
        json failing = json::array();
        const ZipDatum& Zc = b.F ? b.F->Z0 : b.Z;
        for (const auto& cone : rep.cones)
          if (!cone.feasible) failing.push_back(Zc.W->label(cone.w));
        r["failing_strata"] = failing;
      } catch (const std::exception& e) {
        r["error"] = e.what();
      }
      cell.result = r;
    }
  };
  int k = std::max(1, std::min<int>(opt.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < k; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json cells_json = json::array();
  std::map<std::string, json> first;
  for (const auto& t : types) first[t] = {{"first_principal", nullptr}, {"first_uniform", nullptr}};
  for (const auto& cell : cells) {
    cells_json.push_back(cell.result);
    json& f = first[cell.type];
    if (cell.result.contains("error")) continue;
    if (f["first_principal"].is_null() && cell.result["principal"].get<bool>()) f["first_principal"] = big(cell.p);
    if (f["first_uniform"].is_null() && cell.result["uniform"].get<bool>()) f["first_uniform"] = big(cell.p);
  }
  json summary = json::array();
  for (const auto& t : types) {
    json s;
    s["type"] = t.empty() ? "explicit" : t;
    s["first_principal_prime"] = first[t]["first_principal"];
    s["first_uniform_prime"] = first[t]["first_uniform"];
    summary.push_back(s);
  }
  out.report["cells"] = cells_json;
  out.report["summary"] = summary;
  return out;
}

Output compute(const std::string& cmd, const Config& c, const RunOptions& opt) {
  Output out;
  const Reading reading = opt.mutation.reading.value_or(default_reading());
  const ClosureDirection dir = opt.mutation.closure;
  if (cmd == "scan") return scan(c, opt, reading);

  Built b = build(c, c.group, c.p);
  const ZipDatum& Z = b.Z;
  const WeylGroup& W = *Z.W;
  json& r = out.report;
  r["datum"] = datum_json(Z);
  if (b.F) {
    r["datum"]["I0"] = subset_json(b.F->I0);
    r["datum"]["J0"] = subset_json(b.F->J0);
  }
  auto need_flag = [&] {
    if (!b.F) bad(c.source, "$.I0", "required by '" + cmd + "'");
  };

  if (cmd == "describe") {
    r["dims"] = b.F ? dims_json(dims(*b.F)) : dims_json(dims(Z));
    r["num_strata"] = static_cast<long long>(zip_strata(Z).size());
  } else if (cmd == "strata") {
    json a = json::array();
    for (const auto& s : zip_strata(Z)) {
      json j = stratum_json(W, s);
      j["J_label"] = W.label(cross_label(Z, s.w));
      a.push_back(j);
    }
    r["strata"] = a;
  } else if (cmd == "hasse" || cmd == "flag-strata") {
    StrataPoset P;
    if (cmd == "hasse") {
      P = hasse_diagram(Z, dir);
    } else {
      need_flag();
      P = fine_poset(*b.F, dir);
    }
    std::vector<std::string> labels;
    json nodes = json::array();
    for (const auto& s : P.strata) {
      labels.push_back(W.label(s.w));
      nodes.push_back(stratum_json(W, s));
    }
    r["nodes"] = nodes;
    r["edges"] = edges_json(P.edges, labels);
    out.dot = DotGraph{cmd, labels, P.edges};
  } else if (cmd == "coarse-strata") {
    need_flag();
    auto cs = coarse_strata(*b.F);
    std::vector<std::string> labels;
    json nodes = json::array();
    for (const auto& s : cs) {
      labels.push_back(W.label(s.w));
      json j;
      j["label"] = labels.back();
      j["length"] = s.length;
      j["I_w"] = subset_json(s.I_w);
      j["formula_dim"] = s.formula_dim;
      j["derived_dim"] = s.derived_dim;
      nodes.push_back(j);
    }
    auto edges = coarse_edges(*b.F);
    r["nodes"] = nodes;
    r["edges"] = edges_json(edges, labels);
    out.dot = DotGraph{cmd, labels, edges};
  } else if (cmd == "char-test") {
    json a = json::array();
    for (const auto& chi : c.characters) {
      CharacterVerdict v = b.F ? character_verdict(*b.F, chi) : character_verdict(Z, chi);
      a.push_back(verdict_json(Z.rd(), v));
    }
    r["characters"] = a;
  } else if (cmd == "n-alpha") {
    std::vector<int> ws = requested_labels(c, Z);
    if (ws.empty())
      for (const auto& s : zip_strata(Z)) ws.push_back(s.w);
    json a = json::array();
    for (int w : ws)
      for (const auto& chi : c.characters) a.push_back(section_json(Z, char_section_verdict(Z, w, chi, reading)));
    r["sections"] = a;
  } else if (cmd == "cone") {
    std::vector<int> ws = requested_labels(c, Z);
    if (ws.empty())
      for (const auto& s : zip_strata(Z)) ws.push_back(s.w);
    ConeOptions co;
    co.lattice = opt.lattice.value_or(c.lattice.value_or(Lattice::Levi));
    if (co.lattice == Lattice::Levi0) {
      need_flag();
      co.I0 = b.F->I0;
    }
    co.hints = b.hints;
    co.reading = reading;
    json a = json::array();
    bool all = true;
    for (int w : ws) {
      SectionCone cone = section_cone(Z, w, co);
      all = all && cone.feasible;
      a.push_back(cone_json(Z, cone, reading));
    }
    r["cones"] = a;
    if (!all && !c.w.empty()) out.exit_code = 3;
  } else if (cmd == "purity") {
    PurityOptions po;
    po.lattice = opt.lattice ? opt.lattice : c.lattice;
    po.box = opt.box.value_or(c.box.value_or(2));
    po.hints = b.hints;
    po.workers = opt.workers;
    po.reading = reading;
    PurityReport rep = b.F ? purity_report(*b.F, po) : purity_report(Z, po);
    r["purity"] = purity_json(b.F ? b.F->Z0 : Z, rep);
    if (!rep.uniform) out.exit_code = 3;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown subcommand '" + cmd + "'");
  }
  return out;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(source, "$", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad(source, "$", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(kKeys.begin(), kKeys.end(), it.key()) == kKeys.end()) bad(source, "$." + it.key(), "unknown key");

  Config c;
  c.source = source;
  if (j.contains("schema") && get_string(j["schema"], source, "$.schema") != "zipflag-config/1")
    bad(source, "$.schema", "unsupported schema (expected zipflag-config/1)");

  if (!j.contains("group")) bad(source, "$.group", "missing");
  const json& g = j["group"];
  if (!g.is_object()) bad(source, "$.group", "expected an object");
  if (g.contains("preset")) {
    c.group.preset = get_string(g["preset"], source, "$.group.preset");
    for (auto it = g.begin(); it != g.end(); ++it)
      if (it.key() != "preset" && it.key() != "extra_torus") bad(source, "$.group." + it.key(), "not allowed with a preset");
  } else {
    for (auto it = g.begin(); it != g.end(); ++it)
      if (it.key() != "rank" && it.key() != "simple_roots" && it.key() != "simple_coroots" && it.key() != "extra_torus")
        bad(source, "$.group." + it.key(), "unknown key");
    if (!g.contains("rank")) bad(source, "$.group.rank", "missing (explicit data needs rank, simple_roots, simple_coroots)");
    c.group.rank = static_cast<int>(get_int(g["rank"], source, "$.group.rank"));
    if (!g.contains("simple_roots")) bad(source, "$.group.simple_roots", "missing");
    if (!g.contains("simple_coroots")) bad(source, "$.group.simple_coroots", "missing");
    c.group.simple_roots = get_vecs(g["simple_roots"], source, "$.group.simple_roots");
    c.group.simple_coroots = get_vecs(g["simple_coroots"], source, "$.group.simple_coroots");
  }
  if (g.contains("extra_torus")) c.group.extra_torus = static_cast<int>(get_int(g["extra_torus"], source, "$.group.extra_torus"));

  if (j.contains("galois")) {
    const json& ga = j["galois"];
    if (!ga.is_object()) bad(source, "$.galois", "expected an object");
    for (auto it = ga.begin(); it != ga.end(); ++it)
      if (it.key() != "perm" && it.key() != "order" && it.key() != "matrix") bad(source, "$.galois." + it.key(), "unknown key");
    if (ga.contains("perm")) {
      Vec perm = get_vec(ga["perm"], source, "$.galois.perm");
      for (size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] < 1 || perm[i] > static_cast<long long>(perm.size()))
          bad(source, "$.galois.perm[" + std::to_string(i) + "]", "expected a 1-based permutation");
        c.group.galois.perm.push_back(static_cast<int>(perm[i] - 1));
      }
    }
    if (ga.contains("order")) c.group.galois.order = static_cast<int>(get_int(ga["order"], source, "$.galois.order"));
    if (ga.contains("matrix")) {
      auto rows = get_vecs(ga["matrix"], source, "$.galois.matrix");
      Mat m(static_cast<int>(rows.size()));
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) bad(source, "$.galois.matrix", "expected a square matrix");
        for (size_t k = 0; k < rows.size(); ++k) m(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
      }
      c.group.galois.matrix = m;
    }
  }

  if (j.contains("p")) c.p = get_big(j["p"], source, "$.p");
  if (j.contains("n")) {
    c.n = static_cast<int>(get_int(j["n"], source, "$.n"));
    if (c.n < 1) bad(source, "$.n", "must be at least 1");
  }
  int sources = j.contains("I") + j.contains("mu") + j.contains("blocks");
  if (sources > 1) bad(source, "$", "give only one of I, mu and blocks");
  if (j.contains("I")) c.I = get_subset(j["I"], source, "$.I");
  if (j.contains("mu")) c.mu = get_vec(j["mu"], source, "$.mu");
  if (j.contains("blocks")) {
    Vec bl = get_vec(j["blocks"], source, "$.blocks");
    std::vector<int> blocks;
    for (size_t i = 0; i < bl.size(); ++i) {
      if (bl[i] < 1) bad(source, "$.blocks[" + std::to_string(i) + "]", "block sizes are positive");
      blocks.push_back(static_cast<int>(bl[i]));
    }
    if (blocks.empty()) bad(source, "$.blocks", "empty");
    c.blocks = blocks;
  }
  if (j.contains("I0")) c.I0 = get_subset(j["I0"], source, "$.I0");
  if (j.contains("characters")) c.characters = get_vecs(j["characters"], source, "$.characters");
  if (j.contains("w")) {
    const json& w = j["w"];
    if (w.is_string()) {
      c.w.push_back(w.get<std::string>());
    } else if (w.is_array()) {
      for (size_t i = 0; i < w.size(); ++i) c.w.push_back(get_string(w[i], source, "$.w[" + std::to_string(i) + "]"));
    } else {
      bad(source, "$.w", "expected a label or a list of labels");
    }
  }
  if (j.contains("lattice")) {
    auto l = parse_lattice(get_string(j["lattice"], source, "$.lattice"));
    if (!l) bad(source, "$.lattice", "expected torus, levi or levi0");
    c.lattice = l;
  }
  if (j.contains("box")) {
    c.box = static_cast<int>(get_int(j["box"], source, "$.box"));
    if (*c.box < 0) bad(source, "$.box", "must be nonnegative");
  }
  if (j.contains("hints")) c.hints = get_vecs(j["hints"], source, "$.hints");
  if (j.contains("primes")) {
    const json& ps = j["primes"];
    if (!ps.is_array()) bad(source, "$.primes", "expected a list");
    for (size_t i = 0; i < ps.size(); ++i) c.primes.push_back(get_big(ps[i], source, "$.primes[" + std::to_string(i) + "]"));
  }
  if (j.contains("types")) {
    const json& ts = j["types"];
    if (!ts.is_array()) bad(source, "$.types", "expected a list of preset names");
    for (size_t i = 0; i < ts.size(); ++i) c.types.push_back(get_string(ts[i], source, "$.types[" + std::to_string(i) + "]"));
  }
  return c;
}

Mutation parse_mutation(const std::vector<std::string>& items) {
  Mutation m;
  for (const auto& s : items) {
    if (s == "closure-transposed") {
      m.closure = ClosureDirection::Transposed;
    } else if (auto r = parse_reading(s)) {
      m.reading = r;
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown mutation '" + s + "'");
    }
  }
  return m;
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  if (s == "dot") return Format::Dot;
  return std::nullopt;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"describe",  "strata", "flag-strata", "coarse-strata",
                                                 "hasse",     "char-test", "n-alpha",   "cone",
                                                 "purity",    "scan"};
  return names;
}

RunResult run_command(const std::string& subcommand, const Config& config, const RunOptions& opt) {
  RunResult res;
  try {
    if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end())
      throw Error(ErrorCode::InvalidConfig, "unknown subcommand '" + subcommand + "'");
    if (opt.workers < 1) throw Error(ErrorCode::InvalidConfig, "workers must be at least 1");
    const Reading reading = opt.mutation.reading.value_or(default_reading());
    Output out = compute(subcommand, config, opt);
    json full = header(subcommand, opt, reading);
    for (auto it = out.report.begin(); it != out.report.end(); ++it) full[it.key()] = it.value();
    switch (opt.format) {
      case Format::Json:
        res.output = full.dump(2) + "\n";
        break;
      case Format::Text:
        res.output = render_text(full);
        break;
      case Format::Dot:
        if (!out.dot) throw Error(ErrorCode::InvalidConfig, "format dot is only available for hasse, flag-strata and coarse-strata");
        res.output = render_dot(*out.dot);
        break;
    }
    res.exit_code = out.exit_code;
    if (res.exit_code == 3) res.diagnostic = "requested witness is infeasible";
  } catch (const Error& e) {
    res.output.clear();
    res.diagnostic = e.what();
    res.exit_code = (e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::InvalidArgument) ? 2 : 1;
  } catch (const std::exception& e) {
    res.output.clear();
    res.diagnostic = std::string("internal error: ") + e.what();
    res.exit_code = 1;
  }
  return res;
}

RunResult run_command(const std::string& subcommand, const std::string& config_text, const RunOptions& opt,
                      const std::string& source) {
  Config c;
  try {
    c = parse_config(config_text, source);
  } catch (const Error& e) {
    return RunResult{2, "", e.what()};
  }
  return run_command(subcommand, c, opt);
}

std::string version() { return kVersion; }

}  // namespace zf
