#include "zipflag/sections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace zf {

namespace {

long long abs_ll(long long x) { return x < 0 ? -x : x; }

int find_root_checked(const RootDatum& rd, const Vec& v) {
  int r = rd.find_root(v);
  if (r < 0) throw Error(ErrorCode::Internal, "expected a root");
  return r;
}

// Least k >= 1 with gamma^{nk} = 1.
int sigma_order(const ZipDatum& Z) {
  const RootDatum& rd = Z.rd();
  Mat id = Mat::identity(rd.rank());
  for (int k = 1; k <= rd.galois_order(); ++k)
    if (rd.galois_power(Z.n * k) == id) return k;
  throw Error(ErrorCode::Internal, "Galois twist has no finite order");
}

// Y_0 = e, Y_i = sigma(Y_{i-1} base), up to one full period.
std::vector<int> twisted_sequence(const ZipDatum& Z, int base) {
  const WeylGroup& W = *Z.W;
  int s = sigma_order(Z);
  std::vector<int> seq{W.identity()};
  long long cap = static_cast<long long>(s) * W.size() + 1;
  for (long long i = 1; i <= cap; ++i) {
    int next = Z.frob_inv(W.compose(seq.back(), base));
    if (i % s == 0 && next == W.identity()) return seq;
    seq.push_back(next);
  }
  throw Error(ErrorCode::Internal, "twisted power sequence did not close up");
}

int reading_base(const ZipDatum& Z, int w, Reading r) {
  const WeylGroup& W = *Z.W;
  switch (r) {
    case Reading::Verbatim:
    case Reading::PrintedTwistSide:
      return W.compose(Z.z, W.inverse(w));
    case Reading::Calibrated:
      return W.compose(w, W.inverse(Z.z));
    case Reading::SwappedZ:
      return W.compose(W.inverse(Z.z), w);
  }
  return W.identity();
}

void require_label(const ZipDatum& Z, int w) {
  if (w < 0 || w >= Z.W->size()) throw Error(ErrorCode::InvalidArgument, "label is not an element of W");
  if (!is_stratum_label(Z, w))
    throw Error(ErrorCode::InvalidArgument, "label " + Z.W->label(w) + " lies in neither ^IW nor W^J");
}

BigInt evaluate(const ZipDatum& Z, int w, const Vec& chi, int alpha, Reading reading, const std::vector<int>& seq) {
  const WeylGroup& W = *Z.W;
  const RootDatum& rd = W.rd();
  int walpha = W.act_root(w, alpha);
  BigInt total = 0, qi = 1;
  for (size_t i = 0; i < seq.size(); ++i) {
    Vec twisted = rd.apply_galois(-Z.n * static_cast<int>(i), chi, Side::Character);
    long long term = 0;
    if (reading == Reading::Verbatim || reading == Reading::PrintedTwistSide) {
      term = dot(W.act(seq[i], twisted, Side::Character), rd.coroot(walpha));
    } else {
      term = dot(twisted, rd.coroot(W.act_coroot(seq[i], walpha)));
    }
    total += qi * term;
    qi *= Z.q;
  }
  return reading == Reading::Verbatim ? total : BigInt(-total);
}

bool forms_positive(const std::vector<BigVec>& forms, const Vec& chi) {
  for (const auto& f : forms) {
    BigInt s = 0;
    for (size_t k = 0; k < chi.size(); ++k) s += f[k] * chi[k];
    if (s <= 0) return false;
  }
  return true;
}

Vec to_vec(const BigVec& v) {
  Vec out;
  for (const auto& x : v) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
      throw Error(ErrorCode::Internal, "witness coordinate exceeds 64 bits");
    out.push_back(static_cast<long long>(x));
  }
  return out;
}

BigVec combine(const std::vector<BigVec>& basis, const BigVec& t, int rank) {
  BigVec chi(rank, BigInt(0));
  for (size_t j = 0; j < basis.size(); ++j)
    for (int k = 0; k < rank; ++k) chi[k] += t[j] * basis[j][k];
  std::vector<Rational> r(chi.begin(), chi.end());
  return primitive(r);
}

std::vector<BigVec> restrict_forms(const std::vector<BigVec>& forms, const std::vector<BigVec>& basis) {
  std::vector<BigVec> A;
  for (const auto& f : forms) {
    BigVec row;
    for (const auto& b : basis) {
      BigInt s = 0;
      for (size_t k = 0; k < f.size(); ++k) s += f[k] * b[k];
      row.push_back(s);
    }
    A.push_back(std::move(row));
  }
  return A;
}

std::vector<BigVec> lattice_basis(const RootDatum& rd, const Subset& equal_on) {
  std::vector<BigVec> E;
  for (int s : equal_on) {
    const Vec& c = rd.simple_coroots()[s];
    E.emplace_back(c.begin(), c.end());
  }
  return kernel_basis(E, rd.rank());
}

Subset equalities_for(const ZipDatum& Z, Lattice l, const Subset& I0) {
  switch (l) {
    case Lattice::Torus:
      return {};
    case Lattice::Levi:
      return Z.I;
    case Lattice::Levi0:
      if (!subset_includes(Z.I, I0)) throw Error(ErrorCode::InvalidArgument, "I0 must be a subset of I");
      return I0;
  }
  return {};
}

SectionCone cone_on(const ZipDatum& Z, int w, Lattice tag, const Subset& equal_on, const std::vector<Vec>& hints,
                    Reading reading) {
  require_label(Z, w);
  const RootDatum& rd = Z.rd();
  SectionCone c;
  c.w = w;
  c.lattice = tag;
  c.equal_on = equal_on;
  c.basis = lattice_basis(rd, equal_on);
  c.roots = Z.W->lower_reflections(w);
  for (int a : c.roots) c.forms.push_back(n_alpha_form(Z, w, a, reading));
  for (const Vec& h : hints) {
    if (static_cast<int>(h.size()) != rd.rank() || !in_levi_lattice(rd, equal_on, h)) continue;
    if (!c.forms.empty() && forms_positive(c.forms, h)) {
      c.feasible = true;
      c.witness = h;
      c.witness_from_hint = true;
      return c;
    }
  }
  StrictFeasibility f = strict_feasible(restrict_forms(c.forms, c.basis), static_cast<int>(c.basis.size()));
  c.feasible = f.feasible;
  if (f.feasible) c.witness = to_vec(combine(c.basis, f.witness, rd.rank()));
  else c.certificate = f.certificate;
  return c;
}

// Lattice points K t with t in the box [-R, R]^d, by max-norm and then lexicographically.
std::vector<Vec> box_points(const RootDatum& rd, const std::vector<BigVec>& basis, int R) {
  int d = static_cast<int>(basis.size());
  std::vector<Vec> out;
  if (d == 0 || R <= 0) return out;
  double count = std::pow(2.0 * R + 1, d);
  if (count > 4e6) throw Error(ErrorCode::InvalidArgument, "search box too large for this lattice");
  for (int radius = 1; radius <= R; ++radius) {
    std::vector<long long> t(d, -radius);
    while (true) {
      long long mx = 0;
      for (auto v : t) mx = std::max(mx, abs_ll(v));
      if (mx == radius) {
        BigVec chi(rd.rank(), BigInt(0));
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < rd.rank(); ++k) chi[k] += t[j] * basis[j][k];
        out.push_back(to_vec(chi));
      }
      int j = d - 1;
      while (j >= 0 && t[j] == radius) t[j--] = -radius;
      if (j < 0) break;
      ++t[j];
    }
  }
  return out;
}

std::optional<Vec> sufficient_character(const ZipDatum& Z, const Subset& equal_on, const std::vector<Vec>& hints,
                                        int box) {
  const RootDatum& rd = Z.rd();
  auto good = [&](const Vec& chi) {
    return !is_zero(chi) && in_levi_lattice(rd, equal_on, chi) && ample_pairings(Z, chi).ample &&
           character_tests(rd, chi, Z.q).orbitally_q_close;
  };
  for (const Vec& h : hints)
    if (static_cast<int>(h.size()) == rd.rank() && good(h)) return h;
  for (const Vec& chi : box_points(rd, lattice_basis(rd, equal_on), box))
    if (good(chi)) return chi;
  return std::nullopt;
}

PurityReport purity_core(const ZipDatum& Z, Lattice tag, const Subset& equal_on, const PurityOptions& opt) {
  PurityReport rep;
  rep.lattice = tag;
  rep.reading = opt.reading;
  rep.sufficient = sufficient_character(Z, equal_on, opt.hints, opt.box);
  std::vector<Vec> hints = opt.hints;
  if (rep.sufficient) hints.push_back(*rep.sufficient);

  auto strata = zip_strata(Z);
  rep.cones.resize(strata.size());
  std::mutex err_mu;
  std::optional<Error> failure;
  auto work = [&](size_t begin, size_t step) {
    for (size_t i = begin; i < strata.size(); i += step) {
      try {
        rep.cones[i] = cone_on(Z, strata[i].w, tag, equal_on, hints, opt.reading);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!failure) failure = e;
      }
    }
  };
  int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(strata.size())));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }
  if (failure) throw *failure;

  std::set<BigVec> seen;
  for (const auto& c : rep.cones) {
    rep.principal = rep.principal && c.feasible;
    for (const auto& f : c.forms)
      if (seen.insert(f).second) rep.uniform_forms.push_back(f);
    if (rep.sufficient && !forms_positive(c.forms, *rep.sufficient) && !c.forms.empty())
      rep.sufficient_consistent = false;
  }

  const RootDatum& rd = Z.rd();
  auto basis = lattice_basis(rd, equal_on);
  rep.uniform_basis = basis;
  for (const Vec& h : hints) {
    if (in_levi_lattice(rd, equal_on, h) && !rep.uniform_forms.empty() && forms_positive(rep.uniform_forms, h)) {
      rep.uniform = true;
      rep.uniform_witness = h;
      return rep;
    }
  }
  StrictFeasibility f = strict_feasible(restrict_forms(rep.uniform_forms, basis), static_cast<int>(basis.size()));
  rep.uniform = f.feasible;
  if (f.feasible) rep.uniform_witness = to_vec(combine(basis, f.witness, rd.rank()));
  else rep.uniform_certificate = f.certificate;
  return rep;
}

std::string coroot_text(const RootDatum& rd, int root) { return format_vec(rd.coroot(root)) + "^vee"; }

}  // namespace

bool in_levi_lattice(const RootDatum& rd, const Subset& K, const Vec& chi) {
  for (int s : K)
    if (dot(chi, rd.simple_coroots()[s]) != 0) return false;
  return true;
}

CharacterTests character_tests(const RootDatum& rd, const Vec& chi, const BigInt& q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
  if (static_cast<int>(chi.size()) != rd.rank()) throw Error(ErrorCode::InvalidArgument, "character has wrong length");
  CharacterTests t;
  int N = rd.num_roots();
  std::vector<long long> pair(N);
  for (int a = 0; a < N; ++a) pair[a] = dot(chi, rd.coroot(a));
  for (int a = 0; a < N; ++a)
    if (BigInt(abs_ll(pair[a])) > q - 1 && t.q_small) {
      t.q_small = false;
      t.q_small_witness = a;
    }

  // Orbits of coroots under W and gamma: union along simple reflections and gamma.
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int a = 0; a < N; ++a) {
    for (int s = 0; s < rd.num_simple(); ++s) {
      Vec img = rd.reflect(s, rd.root(a), Side::Character);
      unite(a, find_root_checked(rd, img));
    }
    unite(a, rd.galois_root(1, a));
  }
  std::map<int, std::pair<int, int>> extremes;  // orbit -> (argmax, argmin nonzero)
  for (int a = 0; a < N; ++a) {
    if (pair[a] == 0) continue;
    auto [it, fresh] = extremes.emplace(find(a), std::make_pair(a, a));
    if (fresh) continue;
    if (abs_ll(pair[a]) > abs_ll(pair[it->second.first])) it->second.first = a;
    if (abs_ll(pair[a]) < abs_ll(pair[it->second.second])) it->second.second = a;
  }
  for (const auto& [orbit, ext] : extremes) {
    if (BigInt(abs_ll(pair[ext.first])) > (q - 1) * abs_ll(pair[ext.second])) {
      t.orbitally_q_close = false;
      t.orbit_witness = ext;
      break;
    }
  }
  return t;
}

Ampleness ample_pairings(const ZipDatum& Z, const Vec& chi) {
  const WeylGroup& W = *Z.W;
  const RootDatum& rd = W.rd();
  if (static_cast<int>(chi.size()) != rd.rank()) throw Error(ErrorCode::InvalidArgument, "character has wrong length");
  Subset Jt = rd.galois_subset(-Z.n, Z.J);
  int zt = Z.frob_inv(Z.z);
  Ampleness a;
  a.ample = true;
  for (int s = 0; s < rd.num_simple(); ++s) {
    if (subset_contains(Jt, s)) continue;
    long long v = dot(chi, rd.coroot(W.act_coroot(zt, s)));
    a.tested.push_back(s);
    a.pairings.push_back(v);
    if (v >= 0 && a.ample) {
      a.ample = false;
      a.witness = s;
    }
  }
  // Delta = gamma^{-n}(J): nothing to be strictly negative against.
  if (a.tested.empty()) a.ample = false;
  return a;
}

Ampleness ampleness(const ZipDatum& Z, const Vec& chi) {
  if (!in_levi_lattice(Z.rd(), Z.I, chi))
    throw Error(ErrorCode::InvalidArgument, "character " + format_vec(chi) + " is not in X*(L)");
  return ample_pairings(Z, chi);
}

FlagAmpleness flag_ampleness(const FlaggedZipDatum& F, const Vec& chi) {
  const RootDatum& rd = F.base.rd();
  if (!in_levi_lattice(rd, F.I0, chi))
    throw Error(ErrorCode::InvalidArgument, "character " + format_vec(chi) + " is not in X*(L0)");
  FlagAmpleness fa;
  fa.z0 = ample_pairings(F.Z0, chi);
  fa.ample = fa.z0.ample;
  fa.remark_form = true;
  for (int s : subset_minus(F.base.I, F.I0))
    if (dot(chi, rd.simple_coroots()[s]) <= 0) {
      fa.remark_form = false;
      fa.remark_witness = s;
      return fa;
    }
  for (int a = 0; a < rd.num_positive(); ++a) {
    if (rd.in_span(a, F.base.I)) continue;
    if (dot(chi, rd.coroot(a)) >= 0) {
      fa.remark_form = false;
      fa.remark_witness = a;
      break;
    }
  }
  return fa;
}

namespace {

CharacterVerdict verdict_common(const ZipDatum& Z, const Vec& chi) {
  const RootDatum& rd = Z.rd();
  CharacterVerdict v;
  v.chi = chi;
  v.q = Z.q;
  v.tests = character_tests(rd, chi, Z.q);
  if (!v.tests.q_small) {
    int a = v.tests.q_small_witness;
    std::ostringstream os;
    os << "q_small: <chi, " << coroot_text(rd, a) << "> = " << dot(chi, rd.coroot(a)) << " exceeds q-1";
    v.witnesses.push_back(os.str());
  }
  if (!v.tests.orbitally_q_close) {
    auto [hi, lo] = v.tests.orbit_witness;
    std::ostringstream os;
    os << "orbitally_q_close: <chi, " << coroot_text(rd, hi) << "> = " << dot(chi, rd.coroot(hi)) << " against <chi, "
       << coroot_text(rd, lo) << "> = " << dot(chi, rd.coroot(lo)) << " in one orbit";
    v.witnesses.push_back(os.str());
  }
  if (!in_levi_lattice(rd, Z.I, chi)) {
    v.zip_ample = false;
    v.witnesses.push_back("zip_ample: chi is not in X*(L)");
  } else {
    Ampleness a = ample_pairings(Z, chi);
    v.zip_ample = a.ample;
    if (!a.ample) {
      std::ostringstream os;
      if (a.witness >= 0)
        os << "zip_ample: pairing against the image of alpha_" << a.witness + 1 << "^vee is "
           << dot(chi, rd.coroot(Z.W->act_coroot(Z.frob_inv(Z.z), a.witness))) << ", not negative";
      else
        os << "zip_ample: no simple root outside gamma^{-n}(J)";
      v.witnesses.push_back(os.str());
    }
  }
  return v;
}

}  // namespace

CharacterVerdict character_verdict(const ZipDatum& Z, const Vec& chi) { return verdict_common(Z, chi); }

CharacterVerdict character_verdict(const FlaggedZipDatum& F, const Vec& chi) {
  CharacterVerdict v = verdict_common(F.base, chi);
  if (!in_levi_lattice(F.base.rd(), F.I0, chi)) {
    v.flag_ample = false;
    v.witnesses.push_back("flag_ample: chi is not in X*(L0)");
    return v;
  }
  FlagAmpleness fa = flag_ampleness(F, chi);
  v.flag_ample = fa.ample;
  if (!fa.ample) v.witnesses.push_back("flag_ample: Z0-ampleness fails at alpha_" + std::to_string(fa.z0.witness + 1));
  return v;
}

int twist_power(const ZipDatum& Z, int w, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "twisted power needs r >= 0");
  const WeylGroup& W = *Z.W;
  int v = W.identity();
  for (int i = 0; i < r; ++i) v = Z.frob_inv(W.compose(v, w));
  return v;
}

TwistPeriod r_w(const ZipDatum& Z, int w) {
  require_label(Z, w);
  const WeylGroup& W = *Z.W;
  int u = W.compose(w, Z.frob(Z.z));
  TwistPeriod t;
  t.m = Z.rd().galois_order();
  int v = W.identity();
  long long cap = static_cast<long long>(t.m) * W.size() + 1;
  for (long long r = 1; r <= cap; ++r) {
    v = Z.frob_inv(W.compose(v, u));
    if (v == W.identity()) {
      t.r_w = static_cast<int>(r);
      return t;
    }
  }
  throw Error(ErrorCode::Internal, "r_w search did not terminate");
}

std::string reading_name(Reading r) {
  switch (r) {
    case Reading::Verbatim:
      return "verbatim";
    case Reading::Calibrated:
      return "negated-coroot-side";
    case Reading::PrintedTwistSide:
      return "negated-printed-twist-side";
    case Reading::SwappedZ:
      return "negated-swapped-z";
  }
  return "?";
}

std::optional<Reading> parse_reading(const std::string& s) {
  for (Reading r : {Reading::Verbatim, Reading::Calibrated, Reading::PrintedTwistSide, Reading::SwappedZ})
    if (s == reading_name(r)) return r;
  return std::nullopt;
}

int period(const ZipDatum& Z, int w, Reading reading) {
  return static_cast<int>(twisted_sequence(Z, reading_base(Z, w, reading)).size());
}

bool is_stratum_label(const ZipDatum& Z, int w) {
  return Z.W->is_minimal(w, Z.I, CosetSide::Left) || Z.W->is_minimal(w, Z.J, CosetSide::Right);
}

BigInt n_alpha(const ZipDatum& Z, int w, const Vec& chi, int alpha, Reading reading) {
  require_label(Z, w);
  if (static_cast<int>(chi.size()) != Z.rd().rank())
    throw Error(ErrorCode::InvalidArgument, "character has wrong length");
  auto E = Z.W->lower_reflections(w);
  if (std::find(E.begin(), E.end(), alpha) == E.end())
    throw Error(ErrorCode::InvalidArgument, "root is not in E_w");
  return evaluate(Z, w, chi, alpha, reading, twisted_sequence(Z, reading_base(Z, w, reading)));
}

BigVec n_alpha_form(const ZipDatum& Z, int w, int alpha, Reading reading) {
  require_label(Z, w);
  auto seq = twisted_sequence(Z, reading_base(Z, w, reading));
  int rank = Z.rd().rank();
  BigVec form;
  for (int k = 0; k < rank; ++k) {
    Vec e(rank, 0);
    e[k] = 1;
    form.push_back(evaluate(Z, w, e, alpha, reading, seq));
  }
  return form;
}

SectionVerdict char_section_verdict(const ZipDatum& Z, int w, const Vec& chi, Reading reading) {
  require_label(Z, w);
  if (static_cast<int>(chi.size()) != Z.rd().rank())
    throw Error(ErrorCode::InvalidArgument, "character has wrong length");
  SectionVerdict v;
  v.w = w;
  v.chi = chi;
  v.reading = reading;
  v.period_info = r_w(Z, w);
  auto seq = twisted_sequence(Z, reading_base(Z, w, reading));
  v.period = static_cast<int>(seq.size());
  v.roots = Z.W->lower_reflections(w);
  for (int a : v.roots) {
    v.values.push_back(evaluate(Z, w, chi, a, reading, seq));
    if (v.values.back() <= 0) v.verdict = false;
  }
  return v;
}

std::string lattice_name(Lattice l) {
  switch (l) {
    case Lattice::Torus:
      return "torus";
    case Lattice::Levi:
      return "levi";
    case Lattice::Levi0:
      return "levi0";
  }
  return "?";
}

std::optional<Lattice> parse_lattice(const std::string& s) {
  for (Lattice l : {Lattice::Torus, Lattice::Levi, Lattice::Levi0})
    if (s == lattice_name(l)) return l;
  return std::nullopt;
}

SectionCone section_cone(const ZipDatum& Z, int w, const ConeOptions& opt) {
  return cone_on(Z, w, opt.lattice, equalities_for(Z, opt.lattice, opt.I0), opt.hints, opt.reading);
}

bool replay_uniform_infeasibility(const PurityReport& r) {
  if (r.uniform) return false;
  return replay_certificate(restrict_forms(r.uniform_forms, r.uniform_basis), r.uniform_certificate);
}

bool replay_infeasibility(const SectionCone& c) {
  if (c.feasible || c.certificate.size() != c.forms.size()) return false;
  if (c.forms.empty()) return false;
  for (const auto& y : c.certificate)
    if (y < 0) return false;
  if (std::all_of(c.certificate.begin(), c.certificate.end(), [](const BigInt& y) { return y == 0; })) return false;
  size_t rank = c.forms.front().size();
  BigVec s(rank, BigInt(0));
  for (size_t i = 0; i < c.forms.size(); ++i)
    for (size_t k = 0; k < rank; ++k) s[k] += c.certificate[i] * c.forms[i][k];
  for (const auto& b : c.basis) {
    BigInt v = 0;
    for (size_t k = 0; k < rank; ++k) v += s[k] * b[k];
    if (v != 0) return false;
  }
  return true;
}

bool witness_verifies(const ZipDatum& Z, const SectionCone& c, Reading reading) {
  if (!c.feasible || !c.witness) return false;
  if (!in_levi_lattice(Z.rd(), c.equal_on, *c.witness)) return false;
  return char_section_verdict(Z, c.w, *c.witness, reading).verdict;
}

PurityReport purity_report(const ZipDatum& Z, const PurityOptions& opt) {
  Lattice l = opt.lattice.value_or(Lattice::Levi);
  if (l == Lattice::Levi0) throw Error(ErrorCode::InvalidArgument, "the levi0 lattice needs a flagged datum");
  return purity_core(Z, l, equalities_for(Z, l, {}), opt);
}

PurityReport purity_report(const FlaggedZipDatum& F, const PurityOptions& opt) {
  Lattice l = opt.lattice.value_or(Lattice::Levi0);
  Subset eq = l == Lattice::Torus ? Subset{} : l == Lattice::Levi ? F.base.I : F.I0;
  PurityReport rep = purity_core(F.Z0, l, eq, opt);
  rep.flagged = true;
  return rep;
}

GLCertificate gln_certificate(const std::vector<int>& blocks, const BigInt& p, int n) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidArgument, "no blocks given");
  int N = 0;
  for (int b : blocks) {
    if (b < 1) throw Error(ErrorCode::InvalidArgument, "block sizes must be positive");
    N += b;
  }
  if (N < 1 || N > 12) throw Error(ErrorCode::InvalidArgument, "GL_N certificate supports 1 <= N <= 12");
  auto W = make_group(RootDatum::preset("GL" + std::to_string(N)));
  int r = static_cast<int>(blocks.size());
  Vec lambda;
  Subset I;
  int pos = 0;
  for (int b = 0; b < r; ++b) {
    for (int i = 0; i < blocks[b]; ++i) {
      lambda.push_back(r - b);
      if (i + 1 < blocks[b]) I.push_back(pos);
      ++pos;
    }
  }
  GLCertificate cert{zip_from_cochar(W, I, n, p), lambda, {}};
  cert.verdict = character_verdict(cert.Z, lambda);
  return cert;
}

std::string reading_check(Reading reading) {
  auto c3 = make_group(RootDatum::preset("C3"));
  // The worked Sp6 table, at the fundamental weight of Q and up to a positive factor.
  for (long long p : {2, 3, 5, 7}) {
    ZipDatum Z = zip_from_cochar(c3, {0, 2}, 1, p);
    int w = c3->from_bracket("[351]");
    SectionVerdict v = char_section_verdict(Z, w, {1, 1, 0}, reading);
    BigInt g = 0;
    for (const auto& x : v.values) g = gcd(g, BigInt(abs(x)));
    std::vector<BigInt> expect = {p - 1, 2 * p - 1, p - 2, p - 1};
    bool ok = g > 0 && v.values.size() == 4;
    for (size_t i = 0; ok && i < 4; ++i) ok = v.values[i] / g == expect[i];
    if (!ok) return "Sp6 table at p=" + std::to_string(p);
  }
  // An ample, orbitally q-close character must pass every stratum.
  for (const char* name : {"A3", "GL4"}) {
    auto W = make_group(RootDatum::preset(name, GaloisSpec{{2, 1, 0}, 2, std::nullopt}));
    for (const auto& I : std::vector<Subset>{{}, {0}, {1}, {0, 2}, {0, 1}}) {
      for (int n : {1, 2}) {
        ZipDatum Z = zip_from_cochar(W, I, n, 3);
        auto chi = sufficient_character(Z, Z.I, {}, 2);
        if (!chi) continue;
        for (const auto& s : zip_strata(Z))
          if (!char_section_verdict(Z, s.w, *chi, reading).verdict)
            return std::string("sufficient condition on twisted ") + name + " I=" + format_subset(I) +
                   " n=" + std::to_string(n) + " at " + W->label(s.w);
      }
    }
  }
  return "";
}

CalibrationReport calibrate() {
  CalibrationReport rep;
  for (Reading reading : {Reading::Verbatim, Reading::Calibrated, Reading::PrintedTwistSide, Reading::SwappedZ}) {
    std::string failure = reading_check(reading);
    if (failure.empty()) {
      rep.selected = reading;
      return rep;
    }
    rep.rejected.emplace_back(reading, failure);
  }
  throw Error(ErrorCode::Internal, "no reading of the multiplicity formula passes calibration");
}

Reading default_reading() {
  static const Reading r = calibrate().selected;
  return r;
}

}  // namespace zf
