#pragma once

#include "zipflag/zipdatum.hpp"

#include <utility>
#include <vector>

namespace zf {

// I-parametrization labels strata by ^IW, J-parametrization by W^J.
enum class LabelSide { I, J };

// Standard: w' below w iff some u·w'·psi(u)^{-1} <= w (u in W_I).
// Transposed: the relation exactly as displayed in the closure section, with
// the roles of w and w' exchanged; kept only as a mutation for the golden gate.
enum class ClosureDirection { Standard, Transposed };

struct Stratum {
  int w = 0;
  LabelSide side = LabelSide::I;
  int length = 0;
  long long variety_dim = 0;
  long long stack_dim = 0;
};

struct CoarseStratum {
  int w = 0;
  int length = 0;
  Subset I_w;
  long long formula_dim = 0;   // l(w) + l(w_{0,J0}) - l(w_{0,I_w}) - dim P0
  long long derived_dim = 0;
};

struct StrataPoset {
  std::vector<Stratum> strata;
  std::vector<std::pair<int, int>> edges;  // cover pairs (lower, upper) as indices into strata
  std::vector<std::vector<bool>> leq;      // full order
};

std::vector<Stratum> zip_strata(const ZipDatum& Z, LabelSide side = LabelSide::I);

// Both labels in ^IW (or both in W^J); the same twisted relation serves both.
bool closure_leq(const ZipDatum& Z, int wp, int w, ClosureDirection dir = ClosureDirection::Standard);

StrataPoset hasse_diagram(const ZipDatum& Z, ClosureDirection dir = ClosureDirection::Standard);
// Closure poset of the fine flag strata (the zip strata of Z0, dimensions from P).
StrataPoset fine_poset(const FlaggedZipDatum& F, ClosureDirection dir = ClosureDirection::Standard);

std::vector<Stratum> fine_strata(const FlaggedZipDatum& F);
std::vector<CoarseStratum> coarse_strata(const FlaggedZipDatum& F);
// Coarse strata ordered by the Bruhat order restricted to ^{I0}W^{J0}.
std::vector<std::pair<int, int>> coarse_edges(const FlaggedZipDatum& F);

struct Classification {
  bool minimal = false;
  bool cominimal = false;
};
Classification classify_stratum(const FlaggedZipDatum& F, int w, const Subset& I0p);

// Image of the fine stratum labelled w at level I1 in the flag variety of
// level I0 (I1 ⊂ I0 ⊂ I). Throws when w is neither minimal nor cominimal; the
// message lists the strata of level I0 sharing w's twisted-conjugacy class.
Stratum project_stratum(const ZipDatum& Z, const Subset& I1, const Subset& I0, int w);

// ^IW -> W^J: the unique u·w·psi(u)^{-1} (u in W_I) that lies in W^J and has the
// length of w.
int cross_label(const ZipDatum& Z, int w);

std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::vector<bool>>& leq,
                                                      const std::vector<int>& lengths);

}  // namespace zf
