#pragma once

#include "zipflag/weyl.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zf {

enum class ZipOrigin { Cocharacter, HandBuilt, Flag };

// Combinatorial shadow of a zip datum (G, P, L, Q, M, phi^n) with frame
// (B, T, z): B ⊂ P of type I, Q of type J containing ^zB, M = ^zL_J.
// The root set of Q is carried along so that the frame axioms can be checked
// against something other than the formulas that produced I, J and z.
struct ZipDatum {
  std::shared_ptr<const WeylGroup> W;
  int n = 1;
  BigInt p = 2;
  BigInt q = 2;
  Subset I, J;
  int z = 0;
  std::vector<bool> q_roots;  // indexed by root
  ZipOrigin origin = ZipOrigin::Cocharacter;
  std::optional<Vec> mu;

  const RootDatum& rd() const { return W->rd(); }
  // gamma^n(I): the type of M.
  Subset twisted_I() const { return rd().galois_subset(n, I); }
  // phi^n on W: u -> gamma^n u gamma^{-n}
  int frob(int u) const { return W->galois(n, u); }
  // sigma^n on W: the inverse twist
  int frob_inv(int u) const { return W->galois(-n, u); }
  // psi(u) = z^{-1} phi^n(u) z, which carries W_I onto W_J.
  int psi(int u) const;
  bool in_Q(int root) const { return q_roots[root]; }
  bool in_M(int root) const;
};

struct FlaggedZipDatum {
  ZipDatum base;
  Subset I0, J0;
  ZipDatum Z0;
};

struct DimReport {
  long long dim_G = 0, dim_B = 0, dim_P = 0, dim_P0 = 0;
  long long dim_P_over_P0 = 0;    // also dim(L / P0 ∩ L)
  long long dim_L_over_P0L = 0;
  long long dim_E = 0;            // zip group E_Z
  long long dim_E_hat = 0;        // Ê_{P0} = E_Z ∩ (P0 × Q)
  long long dim_E_Z0 = 0;
  long long dim_M_cap_V0 = 0;
  bool flagged = false;
};

bool is_prime(const BigInt& p);
std::shared_ptr<const WeylGroup> make_group(const RootDatum& rd);

// Opposition involution alpha -> -w0(alpha) on simple roots.
Subset opposition(const WeylGroup& W, const Subset& K);

ZipDatum zip_from_cochar(std::shared_ptr<const WeylGroup> W, const Subset& I, int n, const BigInt& p);
ZipDatum zip_from_mu(std::shared_ptr<const WeylGroup> W, const Vec& mu, int n, const BigInt& p);
// Q is taken to be ^z P_J, i.e. its roots are z(Phi^+ ∪ Phi_J).
ZipDatum zip_hand_built(std::shared_ptr<const WeylGroup> W, const Subset& I, const Subset& J, int z, int n,
                        const BigInt& p);

// Empty when (B, T, z) is a W-frame; otherwise one message per violated axiom.
std::vector<std::string> validate_frame(const ZipDatum& Z);

FlaggedZipDatum flag_datum(const ZipDatum& Z, const Subset& I0);

DimReport dims(const ZipDatum& Z);
DimReport dims(const FlaggedZipDatum& F);

}  // namespace zf
