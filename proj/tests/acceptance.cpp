// One line per acceptance criterion: PASS/FAIL, elapsed time against its
// budget, and the first discrepancy when it fails.

#include "zipflag/report.hpp"

#include "battery.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace zf;
using zf::testing::all_subsets;
using zf::testing::battery;

namespace {

// Time budgets in seconds.
constexpr double kBudget1 = 1.0;
constexpr double kBudget2 = 1.0;
constexpr double kBudget3 = 1.0;
constexpr double kBudget4 = 5.0;
constexpr double kBudget5 = 5.0;
constexpr double kBudget6 = 60.0;
constexpr double kBudget7 = 5.0;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string show(const std::vector<BigInt>& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

ZipDatum sp6(long long p) { return zip_from_cochar(make_group(RootDatum::preset("C3")), {0, 2}, 1, p); }

void criterion1() {
  ZipDatum Z = sp6(2);
  const WeylGroup& W = *Z.W;
  require(W.label(Z.z) == "[563]", "z = " + W.label(Z.z));
  require(W.label(W.longest()) == "[654]" && W.length(W.longest()) == 9,
          "w0 = " + W.label(W.longest()) + " of length " + std::to_string(W.length(W.longest())));
  int w0L = W.longest(Z.I);
  require(W.label(w0L) == "[214]" && W.length(w0L) == 2, "w0L = " + W.label(w0L));
}

void criterion2() {
  ZipDatum Z = sp6(2);
  const WeylGroup& W = *Z.W;
  auto strata = zip_strata(Z);
  require(strata.size() == 12, std::to_string(strata.size()) + " strata");
  std::set<int> lengths;
  for (const auto& s : strata) lengths.insert(s.length);
  require(*lengths.begin() == 0 && *lengths.rbegin() == 7, "lengths outside 0..7");
  const std::set<std::pair<std::string, std::string>> printed = {
      {"[123]", "[132]"}, {"[132]", "[142]"}, {"[132]", "[231]"}, {"[231]", "[241]"},
      {"[142]", "[241]"}, {"[142]", "[153]"}, {"[153]", "[351]"}, {"[153]", "[263]"},
      {"[241]", "[263]"}, {"[241]", "[351]"}, {"[263]", "[362]"}, {"[351]", "[362]"},
      {"[351]", "[451]"}, {"[362]", "[462]"}, {"[451]", "[462]"}, {"[462]", "[563]"}};
  StrataPoset P = hasse_diagram(Z);
  std::set<std::pair<std::string, std::string>> got;
  for (auto [a, b] : P.edges) got.emplace(W.label(P.strata[a].w), W.label(P.strata[b].w));
  require(got == printed, "Hasse diagram has " + std::to_string(got.size()) + " arrows, not the printed 16");
  for (size_t a = 0; a < P.strata.size(); ++a)
    for (size_t b = 0; b < P.strata.size(); ++b)
      require(P.leq[a][b] == W.bruhat_leq(P.strata[a].w, P.strata[b].w),
              "closure order differs from Bruhat at " + W.label(P.strata[a].w) + ", " + W.label(P.strata[b].w));
}

void criterion3() {
  for (long long p : {2, 3, 5, 7}) {
    ZipDatum Z = sp6(p);
    int w = Z.W->from_bracket("[351]");
    SectionVerdict v = char_section_verdict(Z, w, {1, 0, 0});
    std::vector<BigInt> want = {p - 1, 2 * p - 1, p - 2, p - 1};
    if (v.values != want) {
      // Context for the failure line: the same stratum at the character (1,1,0) of X*(L).
      SectionVerdict u = char_section_verdict(Z, w, {1, 1, 0});
      BigInt g = u.values[0] / want[0];
      std::vector<BigInt> scaled;
      for (const auto& x : u.values) scaled.push_back(x / g);
      throw Failure{"p=" + std::to_string(p) + ": chi=(1,0,0) gives " + show(v.values) + ", expected " + show(want) +
                    "; chi=(1,1,0) gives " + show(u.values) + " = " + g.str() + "*" + show(scaled)};
    }
    if (p == 2) require(!v.verdict && v.values[2] == 0, "p=2 verdict is not false with a zero third value");
  }
}

void criterion4() {
  for (long long p : {2, 3, 5, 7}) {
    ZipDatum Z = sp6(p);
    int w = Z.W->from_bracket("[351]");
    SectionCone c = section_cone(Z, w);
    if (p == 2) {
      require(!c.feasible, "p=2 cone is feasible");
      require(replay_infeasibility(c), "p=2 certificate does not replay");
    } else {
      require(c.feasible && c.witness.has_value(), "p=" + std::to_string(p) + " cone is infeasible");
      require(char_section_verdict(Z, w, *c.witness).verdict, "p=" + std::to_string(p) + " witness fails its verdict");
    }
  }
}

bool proportional(const Vec& a, const Vec& b) {
  // a = t b with t > 0
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) return (a[i] > 0) == (b[i] > 0);
  return false;
}

void criterion5() {
  const Vec lambda = {2, 2, 1, 1};
  // Zip-ampleness does not involve q; orbital closeness only tightens as q grows.
  for (long long p : {2, 3, 5, 7})
    for (int n : {1, 2, 3}) {
      GLCertificate cert = gln_certificate({2, 2}, p, n);
      require(cert.lambda == lambda, "lambda = " + format_vec(cert.lambda));
      require(cert.verdict.zip_ample, "not zip-ample at p=" + std::to_string(p) + " n=" + std::to_string(n));
      require(cert.verdict.tests.orbitally_q_close, "not orbitally q-close at q=" + cert.verdict.q.str());
    }
  const RootDatum gl4 = RootDatum::preset("GL4");
  for (int q = 2; q <= 64; ++q)
    require(character_tests(gl4, lambda, q).orbitally_q_close, "not orbitally q-close at q=" + std::to_string(q));

  for (long long p : {2, 3, 5, 7}) {
    GLCertificate cert = gln_certificate({2, 2}, p);
    PurityOptions o;
    o.hints = {lambda};
    PurityReport r = purity_report(cert.Z, o);
    require(r.uniform && r.uniform_witness && proportional(*r.uniform_witness, lambda),
            "p=" + std::to_string(p) + " not uniformly principally pure with a lambda witness");
    for (const auto& c : r.cones) {
      require(c.feasible, "p=" + std::to_string(p) + " stratum " + cert.Z.W->label(c.w) + " infeasible");
      if (!c.roots.empty())
        require(c.witness && proportional(*c.witness, lambda),
                "p=" + std::to_string(p) + " stratum " + cert.Z.W->label(c.w) + " witness not proportional to lambda");
      require(char_section_verdict(cert.Z, c.w, lambda).verdict,
              "p=" + std::to_string(p) + " lambda fails on " + cert.Z.W->label(c.w));
    }
  }
}

// Subword oracle for Bruhat order.
std::vector<std::vector<bool>> subword_oracle(const WeylGroup& W) {
  std::vector<std::vector<bool>> below(W.size(), std::vector<bool>(W.size(), false));
  for (int w = 0; w < W.size(); ++w) {
    std::set<int> acc{W.identity()};
    for (int s : W.word(w)) {
      std::set<int> next = acc;
      for (int v : acc) next.insert(W.rmul(v, s));
      acc = std::move(next);
    }
    for (int v : acc) below[v][w] = true;
  }
  return below;
}

void criterion6() {
  for (const char* name : {"A1", "A2", "B2", "A3", "C3"}) {
    auto W = make_group(RootDatum::preset(name));
    auto below = subword_oracle(*W);
    for (int a = 0; a < W->size(); ++a)
      for (int b = 0; b < W->size(); ++b)
        require(W->bruhat_leq(a, b) == below[a][b], std::string(name) + ": Bruhat differs from the subword oracle");
    for (const auto& K : all_subsets(W->rank()))
      require(W->coset_reps(K, CosetSide::Left).size() * W->parabolic(K).size() == static_cast<size_t>(W->size()),
              std::string(name) + ": |^KW| |W_K| != |W|");
  }

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& [name, Z] : battery(false)) {
    const WeylGroup& W = *Z.W;
    const RootDatum& rd = Z.rd();
    DimReport d = dims(Z);

    // Closure order: partial order, unique bottom e, unique top of the expected length.
    StrataPoset P = hasse_diagram(Z);
    const size_t N = P.strata.size();
    int bottoms = 0, tops = 0, lmax = 0;
    for (size_t a = 0; a < N; ++a) {
      lmax = std::max(lmax, P.strata[a].length);
      require(P.leq[a][a], name + ": not reflexive");
      bool bottom = true, top = true;
      for (size_t b = 0; b < N; ++b) {
        require(!(a != b && P.leq[a][b] && P.leq[b][a]), name + ": not antisymmetric");
        for (size_t c = 0; c < N; ++c)
          require(!(P.leq[a][b] && P.leq[b][c] && !P.leq[a][c]), name + ": not transitive");
        bottom = bottom && P.leq[a][b];
        top = top && P.leq[b][a];
      }
      if (bottom) {
        ++bottoms;
        require(P.strata[a].w == W.identity(), name + ": bottom is not e");
      }
      if (top) {
        ++tops;
        require(P.strata[a].length == W.length(W.longest()) - W.length(W.longest(Z.I)), name + ": top has the wrong length");
      }
    }
    require(bottoms == 1 && tops == 1, name + ": bottom or top not unique");
    require(lmax + d.dim_P == d.dim_G, name + ": l_max + dim P != dim G");

    for (const auto& I0 : all_subsets(W.rank())) {
      if (!subset_includes(Z.I, I0)) continue;
      FlaggedZipDatum F = flag_datum(Z, I0);
      auto fine = fine_strata(F);
      long long open = fine.front().stack_dim;
      for (const auto& s : fine) open = std::max(open, s.stack_dim);
      require(open == dims(F).dim_P_over_P0, name + " I0=" + format_subset(I0) + ": open fine stratum dimension");
      if (I0.empty()) {
        auto coarse = coarse_strata(F);
        require(coarse.size() == fine.size(), name + ": coarse and fine counts differ at I0 = {}");
        for (size_t i = 0; i < coarse.size(); ++i) {
          require(coarse[i].w == fine[i].w, name + ": coarse and fine labels differ at I0 = {}");
          require(coarse[i].derived_dim == fine[i].variety_dim, name + ": coarse and fine dims differ at I0 = {}");
        }
        require(coarse_edges(F) == fine_poset(F).edges, name + ": coarse and fine posets differ at I0 = {}");
      }
      for (const auto& I1 : all_subsets(W.rank())) {
        if (!subset_includes(I0, I1)) continue;
        FlaggedZipDatum twice = flag_datum(F.Z0, I1), once = flag_datum(Z, I1);
        require(twice.Z0.I == once.Z0.I && twice.Z0.J == once.Z0.J && twice.Z0.z == once.Z0.z &&
                    twice.Z0.q_roots == once.Z0.q_roots,
                name + ": tower incoherent at I0=" + format_subset(I0) + " I1=" + format_subset(I1));
      }
    }

    // n_alpha linearity and period stability; cone witnesses and certificates.
    for (const auto& s : zip_strata(Z)) {
      Vec c1(rd.rank()), c2(rd.rank());
      for (auto& x : c1) x = coef(rng);
      for (auto& x : c2) x = coef(rng);
      long long a = coef(rng), b = coef(rng);
      int y = W.compose(s.w, W.inverse(Z.z));
      int period = zf::period(Z, s.w, default_reading());
      for (int alpha : W.lower_reflections(s.w)) {
        BigInt v1 = n_alpha(Z, s.w, c1, alpha), v2 = n_alpha(Z, s.w, c2, alpha);
        require(n_alpha(Z, s.w, add(scale(a, c1), scale(b, c2)), alpha) == a * v1 + b * v2, name + ": n_alpha not linear");
        int walpha = W.act_root(s.w, alpha);
        auto sum = [&](int terms) {
          BigInt total = 0, qi = 1;
          for (int i = 0; i < terms; ++i) {
            total += qi * dot(rd.apply_galois(-Z.n * i, c1), rd.coroot(W.act_coroot(twist_power(Z, y, i), walpha)));
            qi *= Z.q;
          }
          return BigInt(-total);
        };
        require(sum(period) == v1, name + ": n_alpha differs from its defining sum");
        for (int k : {2, 3}) {
          BigInt geom = 0;
          for (int j = 0; j < k; ++j) geom += ipow(Z.q, static_cast<unsigned>(j * period));
          require(sum(k * period) == v1 * geom, name + ": period stability fails");
        }
      }
      SectionCone cone = section_cone(Z, s.w);
      if (cone.feasible)
        require(cone.witness && char_section_verdict(Z, s.w, *cone.witness).verdict, name + ": cone witness fails");
      else
        require(replay_infeasibility(cone), name + ": certificate does not replay");
    }
  }
}

void criterion7() {
  require(run_golden({}).exit_code == 0, "golden fails on the unmutated build");
  RunOptions closure;
  closure.mutation.closure = ClosureDirection::Transposed;
  RunResult c = run_golden(closure);
  require(c.exit_code != 0 && c.output.find("$.hasse_edges") != std::string::npos,
          "transposed closure order passes the golden gate");
  for (Reading r : {Reading::SwappedZ, Reading::PrintedTwistSide, Reading::Verbatim}) {
    RunOptions o;
    o.mutation.reading = r;
    require(run_golden(o).exit_code != 0, "reading " + reading_name(r) + " passes the golden gate");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Sp6 frame z, w0, w0L", kBudget1, criterion1},
      {2, "Sp6 strata, Hasse arrows, closure = Bruhat", kBudget2, criterion2},
      {3, "Sp6 multiplicities at chi=(1,0,0)", kBudget3, criterion3},
      {4, "p=2 non-purity of [351] over X*(L)", kBudget4, criterion4},
      {5, "GL4 (2,2) certificate", kBudget5, criterion5},
      {6, "property suites on A1, A2, B2, A3, C3", kBudget6, criterion6},
      {7, "mutation gate", kBudget7, criterion7},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.budget) {
      ok = false;
      detail = "over the time budget";
    }
    std::printf("%s criterion %d: %s (%.3f s / %.0f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, secs, c.budget,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
