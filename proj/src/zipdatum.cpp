#include "zipflag/zipdatum.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>

namespace zf {

namespace {

void check_subset(const RootDatum& rd, const Subset& K, const char* what) {
  for (size_t i = 0; i < K.size(); ++i) {
    if (K[i] < 0 || K[i] >= rd.num_simple())
      throw Error(ErrorCode::InvalidConfig, std::string(what) + " is not a subset of the simple roots");
    if (i > 0 && K[i] <= K[i - 1])
      throw Error(ErrorCode::InvalidConfig, std::string(what) + " must be sorted without repeats");
  }
}

void check_params(int n, const BigInt& p) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "exponent n must be at least 1");
  if (!is_prime(p)) throw Error(ErrorCode::InvalidConfig, "p must be a prime");
}

ZipDatum skeleton(std::shared_ptr<const WeylGroup> W, const Subset& I, int n, const BigInt& p) {
  check_params(n, p);
  check_subset(W->rd(), I, "I");
  ZipDatum Z;
  Z.W = std::move(W);
  Z.n = n;
  Z.p = p;
  Z.q = ipow(p, static_cast<unsigned>(n));
  Z.I = I;
  return Z;
}

}  // namespace

bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  return boost::multiprecision::miller_rabin_test(p, 25);
}

std::shared_ptr<const WeylGroup> make_group(const RootDatum& rd) { return std::make_shared<const WeylGroup>(rd); }

int ZipDatum::psi(int u) const { return W->compose(W->compose(W->inverse(z), frob(u)), z); }

bool ZipDatum::in_M(int root) const { return rd().in_span(root, twisted_I()); }

Subset opposition(const WeylGroup& W, const Subset& K) {
  Subset out;
  for (int s : K) {
    int img = W.rd().negate(W.act_root(W.longest(), s));
    if (img >= W.rank()) throw Error(ErrorCode::Internal, "opposition left the simple roots");
    out.push_back(img);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ZipDatum zip_from_cochar(std::shared_ptr<const WeylGroup> W, const Subset& I, int n, const BigInt& p) {
  ZipDatum Z = skeleton(std::move(W), I, n, p);
  const WeylGroup& G = *Z.W;
  Z.J = opposition(G, Z.twisted_I());
  Z.z = G.compose(G.longest(), G.longest(Z.J));
  Z.origin = ZipOrigin::Cocharacter;
  // Q = (P_+)^{(p^n)}: roots Phi^- ∪ Phi_{gamma^n I}.
  const RootDatum& rd = G.rd();
  Subset gI = Z.twisted_I();
  Z.q_roots.assign(rd.num_roots(), false);
  for (int a = 0; a < rd.num_roots(); ++a) Z.q_roots[a] = !rd.is_positive(a) || rd.in_span(a, gI);
  return Z;
}

ZipDatum zip_from_mu(std::shared_ptr<const WeylGroup> W, const Vec& mu, int n, const BigInt& p) {
  const RootDatum& rd = W->rd();
  if (static_cast<int>(mu.size()) != rd.rank()) throw Error(ErrorCode::InvalidConfig, "mu has wrong length");
  Subset I;
  for (int s = 0; s < rd.num_simple(); ++s) {
    long long v = dot(rd.simple_roots()[s], mu);
    if (v > 0)
      throw Error(ErrorCode::InvalidConfig,
                  "mu is not anti-dominant: <alpha_" + std::to_string(s + 1) + ", mu> = " + std::to_string(v));
    if (v == 0) I.push_back(s);
  }
  ZipDatum Z = zip_from_cochar(std::move(W), I, n, p);
  Z.mu = mu;
  return Z;
}

ZipDatum zip_hand_built(std::shared_ptr<const WeylGroup> W, const Subset& I, const Subset& J, int z, int n,
                        const BigInt& p) {
  ZipDatum Z = skeleton(std::move(W), I, n, p);
  check_subset(Z.rd(), J, "J");
  if (z < 0 || z >= Z.W->size()) throw Error(ErrorCode::InvalidConfig, "frame element is not in W");
  Z.J = J;
  Z.z = z;
  Z.origin = ZipOrigin::HandBuilt;
  const RootDatum& rd = Z.rd();
  Z.q_roots.assign(rd.num_roots(), false);
  for (int a = 0; a < rd.num_roots(); ++a)
    if (rd.is_positive(a) || rd.in_span(a, J)) Z.q_roots[Z.W->act_root(z, a)] = true;
  return Z;
}

std::vector<std::string> validate_frame(const ZipDatum& Z) {
  std::vector<std::string> bad;
  const WeylGroup& W = *Z.W;
  const RootDatum& rd = W.rd();
  auto in_delta = [&](const Subset& K) {
    return std::all_of(K.begin(), K.end(), [&](int s) { return s >= 0 && s < rd.num_simple(); }) &&
           std::is_sorted(K.begin(), K.end()) && std::adjacent_find(K.begin(), K.end()) == K.end();
  };
  if (!in_delta(Z.I)) bad.push_back("I is not a subset of the simple roots");
  if (!in_delta(Z.J)) bad.push_back("J is not a subset of the simple roots");
  if (!bad.empty()) return bad;

  if (!W.is_minimal(Z.z, Z.J, CosetSide::Right)) bad.push_back("z is not in W^J");

  Subset gI = Z.twisted_I();
  bool levi_in_Q = true;
  for (int a = 0; a < rd.num_roots(); ++a)
    if (rd.in_span(a, gI) && !Z.in_Q(a)) levi_in_Q = false;
  if (!levi_in_Q) bad.push_back("M is not contained in Q: Phi_{gamma^n I} escapes the roots of Q");

  bool borel_in_Q = true;
  for (int a = 0; a < rd.num_positive(); ++a)
    if (!Z.in_Q(W.act_root(Z.z, a))) borel_in_Q = false;
  if (!borel_in_Q) bad.push_back("frame axiom (iii) fails: z(Phi^+) is not contained in the roots of Q");

  bool axiom_iv = true;
  for (int a = 0; a < rd.num_roots(); ++a) {
    if (!rd.in_span(a, gI)) continue;
    bool in_image = rd.is_positive(W.act_root(W.inverse(Z.z), a));
    if (in_image != rd.is_positive(a)) axiom_iv = false;
  }
  if (!axiom_iv) bad.push_back("frame axiom (iv) fails: z(Phi^+) ∩ Phi_{gamma^n I} != Phi^+_{gamma^n I}");

  Subset image;
  bool simple_images = true;
  for (int s : gI) {
    int b = W.act_root(W.inverse(Z.z), s);
    if (b >= rd.num_simple()) simple_images = false;
    else image.push_back(b);
  }
  std::sort(image.begin(), image.end());
  if (!simple_images || image != Z.J) bad.push_back("z^{-1}(gamma^n(I)) != J");
  return bad;
}

FlaggedZipDatum flag_datum(const ZipDatum& Z, const Subset& I0) {
  check_subset(Z.rd(), I0, "I0");
  if (!subset_includes(Z.I, I0)) throw Error(ErrorCode::InvalidConfig, "I0 must be a subset of I");
  const WeylGroup& W = *Z.W;
  const RootDatum& rd = W.rd();
  FlaggedZipDatum F;
  F.base = Z;
  F.I0 = I0;
  int zinv = W.inverse(Z.z);
  for (int s : rd.galois_subset(Z.n, I0)) {
    int b = W.act_root(zinv, s);
    if (b >= rd.num_simple()) throw Error(ErrorCode::Internal, "J0 = z^{-1}(gamma^n(I0)) escapes the simple roots");
    F.J0.push_back(b);
  }
  std::sort(F.J0.begin(), F.J0.end());

  ZipDatum Z0 = Z;
  Z0.I = I0;
  Z0.J = F.J0;
  Z0.origin = ZipOrigin::Flag;
  Z0.mu.reset();
  // Q0 = (L ∩ P0)^{(p^n)} R_u(Q).
  Z0.q_roots.assign(rd.num_roots(), false);
  for (int a = 0; a < rd.num_roots(); ++a) {
    if (Z.in_Q(a) && !Z.in_M(a)) Z0.q_roots[a] = true;
    if (rd.in_span(a, Z.I) && (rd.is_positive(a) || rd.in_span(a, I0)))
      Z0.q_roots[rd.galois_root(Z.n, a)] = true;
  }
  F.Z0 = std::move(Z0);
  auto bad = validate_frame(F.Z0);
  if (!bad.empty()) throw Error(ErrorCode::Internal, "induced datum fails the frame axioms: " + bad.front());
  return F;
}

DimReport dims(const ZipDatum& Z) {
  const RootDatum& rd = Z.rd();
  DimReport d;
  d.dim_G = rd.rank() + rd.num_roots();
  d.dim_B = rd.rank() + rd.num_positive();
  d.dim_P = d.dim_B + rd.num_positive_in(Z.I);
  d.dim_P0 = d.dim_P;
  long long unipotent_Q = 0;
  for (int a = 0; a < rd.num_roots(); ++a)
    if (Z.in_Q(a) && !Z.in_M(a)) ++unipotent_Q;
  d.dim_E = d.dim_P + unipotent_Q;
  d.dim_E_hat = d.dim_E;
  d.dim_E_Z0 = d.dim_E;
  return d;
}

DimReport dims(const FlaggedZipDatum& F) {
  DimReport d = dims(F.base);
  const RootDatum& rd = F.base.rd();
  d.flagged = true;
  d.dim_P0 = d.dim_B + rd.num_positive_in(F.I0);
  d.dim_P_over_P0 = d.dim_P - d.dim_P0;
  d.dim_L_over_P0L = rd.num_positive_in(F.base.I) - rd.num_positive_in(F.I0);
  d.dim_E_hat = d.dim_E - d.dim_P_over_P0;
  long long unipotent_Q0 = 0, m_cap_v0 = 0;
  for (int a = 0; a < rd.num_roots(); ++a) {
    if (F.Z0.in_Q(a) && !F.Z0.in_M(a)) {
      ++unipotent_Q0;
      if (F.base.in_M(a)) ++m_cap_v0;
    }
  }
  d.dim_E_Z0 = d.dim_P0 + unipotent_Q0;
  d.dim_M_cap_V0 = m_cap_v0;
  return d;
}

}  // namespace zf
