#pragma once

#include "zipflag/rootsystem.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace zf {

enum class CosetSide { Left, Right };

// Elements are dense integer ids ordered by (length, canonical word); id 0 is
// the identity. Everything is computed eagerly at construction, so a built
// group is immutable and safe to share across threads.
class WeylGroup {
public:
  static constexpr int kElementCap = 200000;

  explicit WeylGroup(RootDatum rd);

  const RootDatum& rd() const { return rd_; }
  int size() const { return static_cast<int>(mats_.size()); }
  int identity() const { return 0; }
  int rank() const { return rd_.num_simple(); }

  const Mat& matrix(int w) const { return mats_[w]; }
  int length(int w) const { return len_[w]; }
  const std::vector<int>& word(int w) const { return words_[w]; }
  int find(const Mat& m) const;  // -1 when m is not in W

  int simple_reflection(int s) const { return lmul_[s][0]; }
  int lmul(int s, int w) const { return lmul_[s][w]; }
  int rmul(int w, int s) const { return rmul_[s][w]; }
  int compose(int a, int b) const;
  int inverse(int w) const { return inv_[w]; }
  int from_word(const std::vector<int>& word) const;
  int reflection(int root) const { return refl_[root]; }
  int longest() const { return w0_; }

  Vec act(int w, const Vec& v, Side side) const;
  int act_root(int w, int root) const { return root_perm_[w][root]; }
  int act_coroot(int w, int root) const { return root_perm_[w][root]; }  // coroot of w(alpha) is w(alpha^vee)

  bool is_left_descent(int w, int s) const { return len_[lmul_[s][w]] < len_[w]; }
  bool is_right_descent(int w, int s) const { return len_[rmul_[s][w]] < len_[w]; }
  bool bruhat_leq(int a, int b) const;

  bool in_parabolic(int w, const Subset& K) const;
  std::vector<int> parabolic(const Subset& K) const;
  int longest(const Subset& K) const;
  bool is_minimal(int w, const Subset& K, CosetSide side) const;
  std::vector<int> coset_reps(const Subset& K, CosetSide side) const;
  std::vector<int> double_coset_reps(const Subset& I0, const Subset& J0) const;
  // I_w = J0 ∩ w^{-1} I0 w: the simple roots of J0 whose w-image lies in Phi_{I0}.
  Subset double_coset_stabilizer(int w, const Subset& I0, const Subset& J0) const;

  // Positive roots alpha with l(w s_alpha) = l(w) - 1, ordered by the label of w s_alpha.
  std::vector<int> lower_reflections(int w) const;

  // gamma^k w gamma^{-k}
  int galois(int k, int w) const;

  std::string to_bracket(int w) const;
  int from_bracket(const std::string& text) const;
  std::string word_label(int w) const;
  std::string label(int w) const;
  int parse_label(const std::string& text) const;

private:
  struct MatHash {
    size_t operator()(const Mat& m) const;
  };

  RootDatum rd_;
  std::vector<Mat> mats_;
  std::vector<int> len_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<int>> lmul_, rmul_;
  std::vector<int> inv_, refl_, gal_;
  std::vector<std::vector<int>> root_perm_;
  std::unordered_map<Mat, int, MatHash> index_;
  int w0_ = 0;
};

}  // namespace zf
