#include "zipflag/strata.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zf {

namespace {

std::vector<int> labels(const ZipDatum& Z, LabelSide side) {
  return Z.W->coset_reps(side == LabelSide::I ? Z.I : Z.J,
                         side == LabelSide::I ? CosetSide::Left : CosetSide::Right);
}

// {u·w·psi(u)^{-1} : u in W_I}
std::vector<int> twisted_class(const ZipDatum& Z, const std::vector<int>& WI, int w) {
  const WeylGroup& W = *Z.W;
  std::vector<int> out;
  out.reserve(WI.size());
  for (int u : WI) out.push_back(W.compose(W.compose(u, w), W.inverse(Z.psi(u))));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool class_below(const WeylGroup& W, const std::vector<int>& cls, int w) {
  for (int t : cls)
    if (W.bruhat_leq(t, w)) return true;
  return false;
}

Stratum make_stratum(int w, LabelSide side, int length, const DimReport& d) {
  Stratum s;
  s.w = w;
  s.side = side;
  s.length = length;
  s.variety_dim = length + d.dim_P;
  s.stack_dim = s.variety_dim - d.dim_G;
  return s;
}

StrataPoset build_poset(const ZipDatum& Z, const std::vector<Stratum>& nodes, ClosureDirection dir) {
  const WeylGroup& W = *Z.W;
  auto WI = W.parabolic(Z.I);
  std::vector<std::vector<int>> cls(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) cls[i] = twisted_class(Z, WI, nodes[i].w);
  StrataPoset P;
  P.strata = nodes;
  size_t N = nodes.size();
  P.leq.assign(N, std::vector<bool>(N, false));
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b) {
      P.leq[a][b] = dir == ClosureDirection::Standard ? class_below(W, cls[a], nodes[b].w)
                                                       : class_below(W, cls[b], nodes[a].w);
    }
  std::vector<int> lengths;
  for (const auto& s : nodes) lengths.push_back(s.length);
  P.edges = transitive_reduction(P.leq, lengths);
  return P;
}

}  // namespace

std::vector<Stratum> zip_strata(const ZipDatum& Z, LabelSide side) {
  DimReport d = dims(Z);
  std::vector<Stratum> out;
  for (int w : labels(Z, side)) out.push_back(make_stratum(w, side, Z.W->length(w), d));
  return out;
}

bool closure_leq(const ZipDatum& Z, int wp, int w, ClosureDirection dir) {
  const WeylGroup& W = *Z.W;
  bool left = W.is_minimal(wp, Z.I, CosetSide::Left) && W.is_minimal(w, Z.I, CosetSide::Left);
  bool right = W.is_minimal(wp, Z.J, CosetSide::Right) && W.is_minimal(w, Z.J, CosetSide::Right);
  if (!left && !right) throw Error(ErrorCode::InvalidArgument, "closure_leq needs two labels in ^IW or two in W^J");
  auto WI = W.parabolic(Z.I);
  if (dir == ClosureDirection::Transposed) std::swap(wp, w);
  return class_below(W, twisted_class(Z, WI, wp), w);
}

std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::vector<bool>>& leq,
                                                      const std::vector<int>& lengths) {
  size_t N = leq.size();
  std::vector<std::pair<int, int>> edges;
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b) {
      if (a == b || !leq[a][b] || leq[b][a]) continue;
      bool cover = true;
      for (size_t c = 0; c < N && cover; ++c) {
        if (c == a || c == b) continue;
        if (leq[a][c] && leq[c][b] && !leq[c][a] && !leq[b][c]) cover = false;
      }
      if (cover) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  std::sort(edges.begin(), edges.end(), [&](const auto& x, const auto& y) {
    if (lengths[x.first] != lengths[y.first]) return lengths[x.first] < lengths[y.first];
    return x < y;
  });
  return edges;
}

StrataPoset hasse_diagram(const ZipDatum& Z, ClosureDirection dir) {
  return build_poset(Z, zip_strata(Z, LabelSide::I), dir);
}

std::vector<Stratum> fine_strata(const FlaggedZipDatum& F) {
  DimReport d = dims(F.base);
  std::vector<Stratum> out;
  for (int w : labels(F.Z0, LabelSide::I)) out.push_back(make_stratum(w, LabelSide::I, F.Z0.W->length(w), d));
  return out;
}

StrataPoset fine_poset(const FlaggedZipDatum& F, ClosureDirection dir) {
  return build_poset(F.Z0, fine_strata(F), dir);
}

std::vector<CoarseStratum> coarse_strata(const FlaggedZipDatum& F) {
  const WeylGroup& W = *F.base.W;
  DimReport d = dims(F);
  int l_I0 = W.length(W.longest(F.I0));
  int l_J0 = W.length(W.longest(F.J0));
  std::vector<CoarseStratum> out;
  for (int w : W.double_coset_reps(F.I0, F.J0)) {
    CoarseStratum c;
    c.w = w;
    c.length = W.length(w);
    c.I_w = W.double_coset_stabilizer(w, F.I0, F.J0);
    int l_Iw = W.length(W.longest(c.I_w));
    c.formula_dim = c.length + l_J0 - l_Iw - d.dim_P0;
    c.derived_dim = c.length + l_I0 + l_J0 - l_Iw + d.dim_B + d.dim_L_over_P0L;
    out.push_back(c);
  }
  return out;
}

std::vector<std::pair<int, int>> coarse_edges(const FlaggedZipDatum& F) {
  const WeylGroup& W = *F.base.W;
  auto cs = coarse_strata(F);
  size_t N = cs.size();
  std::vector<std::vector<bool>> leq(N, std::vector<bool>(N));
  std::vector<int> lengths;
  for (size_t a = 0; a < N; ++a) {
    lengths.push_back(cs[a].length);
    for (size_t b = 0; b < N; ++b) leq[a][b] = W.bruhat_leq(cs[a].w, cs[b].w);
  }
  return transitive_reduction(leq, lengths);
}

Classification classify_stratum(const FlaggedZipDatum& F, int w, const Subset& I0p) {
  if (!subset_includes(I0p, F.I0) || !subset_includes(F.base.I, I0p))
    throw Error(ErrorCode::InvalidArgument, "classification needs I0 ⊂ I0' ⊂ I");
  const WeylGroup& W = *F.base.W;
  if (!W.is_minimal(w, F.I0, CosetSide::Left))
    throw Error(ErrorCode::InvalidArgument, "label is not a fine stratum of this flag datum");
  FlaggedZipDatum G = flag_datum(F.base, I0p);
  Classification c;
  c.minimal = W.is_minimal(w, I0p, CosetSide::Left);
  c.cominimal = W.is_minimal(w, G.J0, CosetSide::Right);
  return c;
}

Stratum project_stratum(const ZipDatum& Z, const Subset& I1, const Subset& I0, int w) {
  if (!subset_includes(I0, I1) || !subset_includes(Z.I, I0))
    throw Error(ErrorCode::InvalidArgument, "projection needs I1 ⊂ I0 ⊂ I");
  const WeylGroup& W = *Z.W;
  if (!W.is_minimal(w, I1, CosetSide::Left))
    throw Error(ErrorCode::InvalidArgument, "label is not a fine stratum at the source level");
  FlaggedZipDatum F = flag_datum(Z, I0);
  DimReport d = dims(Z);
  if (W.is_minimal(w, I0, CosetSide::Left)) return make_stratum(w, LabelSide::I, W.length(w), d);
  if (W.is_minimal(w, F.J0, CosetSide::Right)) return make_stratum(w, LabelSide::J, W.length(w), d);
  std::set<int> candidates;
  for (int t : twisted_class(F.Z0, W.parabolic(I0), w))
    if (W.is_minimal(t, I0, CosetSide::Left)) candidates.insert(t);
  std::ostringstream os;
  os << "label " << W.label(w) << " is neither minimal nor cominimal for I0 = " << format_subset(I0)
     << "; its image is a union of strata, candidates:";
  for (int t : candidates) os << ' ' << W.label(t);
  throw Error(ErrorCode::InvalidArgument, os.str());
}

int cross_label(const ZipDatum& Z, int w) {
  const WeylGroup& W = *Z.W;
  if (!W.is_minimal(w, Z.I, CosetSide::Left)) throw Error(ErrorCode::InvalidArgument, "cross_label needs w in ^IW");
  int found = -1;
  for (int t : twisted_class(Z, W.parabolic(Z.I), w)) {
    if (W.length(t) != W.length(w) || !W.is_minimal(t, Z.J, CosetSide::Right)) continue;
    if (found >= 0) throw Error(ErrorCode::Internal, "cross_label: several W^J candidates of equal length");
    found = t;
  }
  if (found < 0) throw Error(ErrorCode::Internal, "cross_label: no W^J candidate of equal length");
  return found;
}

}  // namespace zf
