#pragma once

#include "zipflag/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zf {

enum class Side { Character, Cocharacter };

enum class CartanType { A, B, C, D, GL, Torus, Explicit };

struct Component {
  CartanType type;
  int n = 0;             // the index in the preset name
  int simple_offset = 0;
  int num_simple = 0;
  int coord_offset = 0;
  int num_coords = 0;
};

struct GaloisSpec {
  std::vector<int> perm;  // 0-based permutation of the simple roots; empty means identity
  int order = 1;
  std::optional<Mat> matrix;  // required for explicit data with a nontrivial permutation
};

struct RootDatumSpec {
  std::string preset;  // e.g. "C3", "GL4", "C3xGL1"; empty for explicit data
  int extra_torus = 0;
  int rank = 0;
  std::vector<Vec> simple_roots;
  std::vector<Vec> simple_coroots;
  GaloisSpec galois;
};

// Based root datum with integral roots and coroots. Root indices: the first
// num_positive() are positive (simple roots first, in order), the next block
// holds their negatives in the same order.
class RootDatum {
public:
  static constexpr int kRootCap = 10000;

  static RootDatum build(const RootDatumSpec& spec);
  static RootDatum preset(const std::string& name, const GaloisSpec& galois = {});

  int rank() const { return rank_; }
  int num_simple() const { return static_cast<int>(simple_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Component>& components() const { return components_; }

  const std::vector<Vec>& simple_roots() const { return simple_; }
  const std::vector<Vec>& simple_coroots() const { return simple_co_; }
  const std::vector<std::vector<long long>>& cartan() const { return cartan_; }

  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return npos_; }
  const Vec& root(int i) const { return roots_[i]; }
  const Vec& coroot(int i) const { return coroots_[i]; }
  const Vec& root_coeffs(int i) const { return coeffs_[i]; }
  bool is_positive(int i) const { return i < npos_; }
  int negate(int i) const { return i < npos_ ? i + npos_ : i - npos_; }
  int height(int i) const;
  int find_root(const Vec& v) const;    // -1 when v is not a root
  int find_coroot(const Vec& v) const;  // -1 when v is not a coroot
  std::vector<int> positive_roots() const;
  // Roots in the span of the simple roots indexed by K (positive and negative).
  bool in_span(int root, const Subset& K) const;
  int num_positive_in(const Subset& K) const;

  long long pairing(const Vec& chi, const Vec& cochar) const;
  Vec reflect(int alpha, const Vec& v, Side side) const;
  Vec reflect(const Vec& alpha, const Vec& v, Side side) const;

  // Galois twist gamma^k; k may be negative.
  Vec apply_galois(int k, const Vec& v, Side side = Side::Character) const;
  const Mat& galois_matrix() const { return gamma_; }
  Mat galois_power(int k) const;
  int galois_order() const { return gamma_order_; }
  int galois_simple(int k, int s) const;
  int galois_root(int k, int root) const;
  Subset galois_subset(int k, const Subset& K) const;
  bool is_split() const;

  // Signed-permutation bracket notation is available for a single B_n or C_n factor.
  bool has_brackets() const;

private:
  void enumerate();
  void attach_galois(const GaloisSpec& g);

  std::string name_;
  int rank_ = 0;
  std::vector<Component> components_;
  std::vector<Vec> simple_, simple_co_;
  std::vector<std::vector<long long>> cartan_;
  std::vector<Vec> roots_, coroots_, coeffs_;
  int npos_ = 0;
  std::map<Vec, int> root_index_, coroot_index_;
  Mat gamma_, gamma_inv_;
  int gamma_order_ = 1;
  std::vector<int> gamma_perm_, gamma_inv_perm_;
  std::vector<int> gamma_root_, gamma_inv_root_;
};

}  // namespace zf
