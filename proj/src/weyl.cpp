#include "zipflag/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace zf {

size_t WeylGroup::MatHash::operator()(const Mat& m) const {
  size_t h = 1469598103934665603ull;
  for (long long x : m.a) h = (h ^ static_cast<size_t>(x + 0x9e37)) * 1099511628211ull;
  return h;
}

WeylGroup::WeylGroup(RootDatum rd) : rd_(std::move(rd)) {
  const int r = rd_.num_simple();
  const int n = rd_.rank();
  const int nroots = rd_.num_roots();

  std::vector<Mat> S(r);
  std::vector<std::vector<int>> sperm(r, std::vector<int>(nroots));
  for (int s = 0; s < r; ++s) {
    S[s] = Mat::identity(n);
    const Vec& a = rd_.simple_roots()[s];
    const Vec& c = rd_.simple_coroots()[s];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) S[s](i, j) -= a[i] * c[j];
    for (int b = 0; b < nroots; ++b) sperm[s][b] = rd_.find_root(S[s] * rd_.root(b));
  }

  // Breadth-first search by right multiplication; the BFS depth is the length.
  std::vector<Mat> mats{Mat::identity(n)};
  std::vector<int> len{0};
  std::vector<std::vector<int>> perm{std::vector<int>(nroots)};
  std::iota(perm[0].begin(), perm[0].end(), 0);
  std::unordered_map<Mat, int, MatHash> index{{mats[0], 0}};
  for (size_t head = 0; head < mats.size(); ++head) {
    for (int s = 0; s < r; ++s) {
      Mat m = mats[head] * S[s];
      if (index.count(m)) continue;
      if (static_cast<int>(mats.size()) >= kElementCap)
        throw Error(ErrorCode::InvalidConfig, "Weyl group exceeds the enumeration cap");
      std::vector<int> p(nroots);
      for (int b = 0; b < nroots; ++b) p[b] = perm[head][sperm[s][b]];
      index.emplace(m, static_cast<int>(mats.size()));
      mats.push_back(std::move(m));
      len.push_back(len[head] + 1);
      perm.push_back(std::move(p));
    }
  }
  const int N = static_cast<int>(mats.size());

  std::vector<std::vector<int>> lm(r, std::vector<int>(N));
  for (int s = 0; s < r; ++s)
    for (int w = 0; w < N; ++w) lm[s][w] = index.at(S[s] * mats[w]);

  // Lexicographically least reduced word: peel off the smallest left descent.
  std::vector<std::vector<int>> words(N);
  for (int w = 1; w < N; ++w) {
    for (int s = 0; s < r; ++s) {
      int v = lm[s][w];
      if (len[v] < len[w]) {
        words[w].push_back(s);
        const auto& rest = words[v];
        words[w].insert(words[w].end(), rest.begin(), rest.end());
        break;
      }
    }
  }

  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (len[a] != len[b]) return len[a] < len[b];
    return words[a] < words[b];
  });
  std::vector<int> newid(N);
  for (int i = 0; i < N; ++i) newid[order[i]] = i;

  mats_.resize(N);
  len_.resize(N);
  words_.resize(N);
  root_perm_.resize(N);
  for (int i = 0; i < N; ++i) {
    int old = order[i];
    mats_[i] = mats[old];
    len_[i] = len[old];
    words_[i] = words[old];
    root_perm_[i] = perm[old];
    index_.emplace(mats_[i], i);
  }
  lmul_.assign(r, std::vector<int>(N));
  rmul_.assign(r, std::vector<int>(N));
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < N; ++i) {
      lmul_[s][i] = newid[lm[s][order[i]]];
      rmul_[s][i] = index_.at(mats_[i] * S[s]);
    }
  inv_.resize(N);
  for (int i = 0; i < N; ++i) inv_[i] = index_.at(inverse_unimodular(mats_[i]));
  refl_.resize(nroots);
  for (int b = 0; b < nroots; ++b) {
    Mat m = Mat::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) -= rd_.root(b)[i] * rd_.coroot(b)[j];
    refl_[b] = index_.at(m);
  }
  const Mat& G = rd_.galois_matrix();
  Mat Ginv = inverse_unimodular(G);
  gal_.resize(N);
  for (int i = 0; i < N; ++i) {
    auto it = index_.find(G * mats_[i] * Ginv);
    if (it == index_.end()) throw Error(ErrorCode::Internal, "gamma does not normalize W");
    gal_[i] = it->second;
  }
  w0_ = N - 1;
}

int WeylGroup::find(const Mat& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int WeylGroup::compose(int a, int b) const {
  // Multiply along the word of b; cheaper than a hash lookup for small ranks.
  int w = a;
  for (int s : words_[b]) w = rmul_[s][w];
  return w;
}

int WeylGroup::from_word(const std::vector<int>& word) const {
  int w = 0;
  for (int s : word) {
    if (s < 0 || s >= rank()) throw Error(ErrorCode::InvalidArgument, "simple reflection index out of range");
    w = rmul_[s][w];
  }
  return w;
}

Vec WeylGroup::act(int w, const Vec& v, Side side) const {
  if (static_cast<int>(v.size()) != rd_.rank()) throw Error(ErrorCode::InvalidArgument, "rank mismatch");
  if (side == Side::Character) return mats_[w] * v;
  return mats_[inv_[w]].transpose() * v;
}

// Deodhar's lifting property: for a left descent s of b,
//   a <= b  iff  sa <= sb  (s a left descent of a)  or  a <= sb  (otherwise).
// Each step shortens b, so the chain has at most l(b) steps.
bool WeylGroup::bruhat_leq(int a, int b) const {
  while (true) {
    if (len_[a] > len_[b]) return false;
    if (len_[a] == len_[b]) return a == b;
    int s = words_[b].front();
    int sb = lmul_[s][b];
    int sa = lmul_[s][a];
    if (len_[sa] < len_[a]) a = sa;
    b = sb;
  }
}

bool WeylGroup::in_parabolic(int w, const Subset& K) const {
  for (int s : words_[w])
    if (!subset_contains(K, s)) return false;
  return true;
}

std::vector<int> WeylGroup::parabolic(const Subset& K) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (in_parabolic(w, K)) out.push_back(w);
  return out;
}

int WeylGroup::longest(const Subset& K) const {
  int best = 0;
  for (int w : parabolic(K))
    if (len_[w] > len_[best]) best = w;
  return best;
}

bool WeylGroup::is_minimal(int w, const Subset& K, CosetSide side) const {
  for (int s : K) {
    if (side == CosetSide::Left ? is_left_descent(w, s) : is_right_descent(w, s)) return false;
  }
  return true;
}

std::vector<int> WeylGroup::coset_reps(const Subset& K, CosetSide side) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (is_minimal(w, K, side)) out.push_back(w);
  return out;
}

std::vector<int> WeylGroup::double_coset_reps(const Subset& I0, const Subset& J0) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (is_minimal(w, I0, CosetSide::Left) && is_minimal(w, J0, CosetSide::Right)) out.push_back(w);
  return out;
}

Subset WeylGroup::double_coset_stabilizer(int w, const Subset& I0, const Subset& J0) const {
  Subset out;
  for (int s : J0)
    if (rd_.in_span(act_root(w, s), I0)) out.push_back(s);
  return out;
}

std::vector<int> WeylGroup::lower_reflections(int w) const {
  std::vector<std::pair<int, int>> found;  // (w s_alpha, alpha)
  for (int a = 0; a < rd_.num_positive(); ++a) {
    int v = compose(w, refl_[a]);
    if (len_[v] == len_[w] - 1) found.emplace_back(v, a);
  }
  if (rd_.has_brackets()) {
    // Natural bracket of w s_alpha (the printed bracket of its inverse); this
    // is the order in which the C3 example lists its lower neighbors.
    std::sort(found.begin(), found.end(), [&](const auto& x, const auto& y) {
      return to_bracket(inv_[x.first]) < to_bracket(inv_[y.first]);
    });
  } else {
    // Equal lengths, so id order is the canonical-word order.
    std::sort(found.begin(), found.end());
  }
  std::vector<int> out;
  for (const auto& f : found) out.push_back(f.second);
  return out;
}

int WeylGroup::galois(int k, int w) const {
  int d = rd_.galois_order();
  int e = ((k % d) + d) % d;
  for (int i = 0; i < e; ++i) w = gal_[w];
  return w;
}

namespace {

// Bracket of the signed permutation matrix m: entry i is j if m e_i = e_j and
// 2n+1-j if m e_i = -e_j (1-based).
std::string natural_bracket(const Mat& m) {
  int n = m.n;
  std::vector<int> vals(n);
  for (int i = 0; i < n; ++i) {
    int v = 0;
    for (int j = 0; j < n; ++j) {
      if (m(j, i) == 1) v = j + 1;
      else if (m(j, i) == -1) v = 2 * n - j;
    }
    vals[i] = v;
  }
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n; ++i) {
    if (i > 0 && 2 * n > 9) os << ' ';
    os << vals[i];
  }
  os << ']';
  return os.str();
}

}  // namespace

// The printed bracket of w is the natural bracket of w^{-1}; with this reading
// the generators and the twelve-element diagram of the C3 example come out as printed.
std::string WeylGroup::to_bracket(int w) const {
  if (!rd_.has_brackets()) throw Error(ErrorCode::InvalidArgument, "bracket notation needs a B_n or C_n preset");
  return natural_bracket(mats_[inv_[w]]);
}

int WeylGroup::from_bracket(const std::string& text) const {
  if (!rd_.has_brackets()) throw Error(ErrorCode::InvalidArgument, "bracket notation needs a B_n or C_n preset");
  int n = rd_.rank();
  std::string t = text;
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw Error(ErrorCode::InvalidArgument, "malformed bracket '" + text + "'");
  t = t.substr(1, t.size() - 2);
  std::vector<int> vals;
  bool spaced = t.find_first_of(" ,") != std::string::npos;
  if (spaced) {
    for (char& c : t)
      if (c == ',') c = ' ';
    std::istringstream is(t);
    int v;
    while (is >> v) vals.push_back(v);
  } else {
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::InvalidArgument, "malformed bracket '" + text + "'");
      vals.push_back(c - '0');
    }
  }
  if (static_cast<int>(vals.size()) != n) throw Error(ErrorCode::InvalidArgument, "bracket '" + text + "' has wrong length");
  Mat m(n);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int v = vals[i];
    if (v < 1 || v > 2 * n) throw Error(ErrorCode::InvalidArgument, "bracket entry out of range in '" + text + "'");
    int j = v <= n ? v - 1 : 2 * n - v;
    if (used[j]) throw Error(ErrorCode::InvalidArgument, "bracket '" + text + "' is not a signed permutation");
    used[j] = true;
    m(j, i) = v <= n ? 1 : -1;
  }
  int id = find(m);
  if (id < 0) throw Error(ErrorCode::InvalidArgument, "bracket '" + text + "' is not in W");
  return inv_[id];
}

std::string WeylGroup::word_label(int w) const {
  if (words_[w].empty()) return "e";
  std::string s;
  for (int x : words_[w]) s += "s" + std::to_string(x + 1);
  return s;
}

std::string WeylGroup::label(int w) const { return rd_.has_brackets() ? to_bracket(w) : word_label(w); }

int WeylGroup::parse_label(const std::string& text) const {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty Weyl label");
  if (text.front() == '[') return from_bracket(text);
  if (text == "e") return 0;
  std::vector<int> word;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 's') throw Error(ErrorCode::InvalidArgument, "malformed word label '" + text + "'");
    size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw Error(ErrorCode::InvalidArgument, "malformed word label '" + text + "'");
    word.push_back(std::stoi(text.substr(i + 1, j - i - 1)) - 1);
    i = j;
  }
  return from_word(word);
}

}  // namespace zf
