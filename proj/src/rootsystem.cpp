#include "zipflag/rootsystem.hpp"

#include <algorithm>
#include <deque>
#include <regex>

namespace zf {

namespace {

struct Block {
  CartanType type;
  int n;
  int coords;
  std::vector<Vec> simple, coroots;  // in local coordinates
};

Vec unit(int dim, int i, long long v = 1) {
  Vec e(dim, 0);
  e[i] = v;
  return e;
}

Block make_block(CartanType t, int n) {
  Block b{t, n, 0, {}, {}};
  switch (t) {
    case CartanType::A: {
      // Root-lattice coordinates: simple roots are the unit vectors and the
      // coroots are the rows of the Cartan matrix.
      b.coords = n;
      for (int i = 0; i < n; ++i) {
        b.simple.push_back(unit(n, i));
        Vec c(n, 0);
        c[i] = 2;
        if (i > 0) c[i - 1] = -1;
        if (i + 1 < n) c[i + 1] = -1;
        b.coroots.push_back(c);
      }
      break;
    }
    case CartanType::B:
    case CartanType::C:
    case CartanType::D:
    case CartanType::GL: {
      b.coords = n;
      for (int i = 0; i + 1 < n; ++i) {
        Vec a = unit(n, i);
        a[i + 1] = -1;
        b.simple.push_back(a);
        b.coroots.push_back(a);
      }
      if (t == CartanType::B) {
        b.simple.push_back(unit(n, n - 1));
        b.coroots.push_back(unit(n, n - 1, 2));
      } else if (t == CartanType::C) {
        b.simple.push_back(unit(n, n - 1, 2));
        b.coroots.push_back(unit(n, n - 1));
      } else if (t == CartanType::D) {
        Vec a(n, 0);
        a[n - 2] = 1;
        a[n - 1] = 1;
        b.simple.push_back(a);
        b.coroots.push_back(a);
      }
      break;
    }
    case CartanType::Torus:
      b.coords = n;
      break;
    case CartanType::Explicit:
      break;
  }
  return b;
}

std::vector<std::pair<CartanType, int>> parse_preset(const std::string& name) {
  static const std::regex factor_re("^(A|B|C|D|GL|T)([0-9]+)$");
  std::vector<std::pair<CartanType, int>> out;
  size_t start = 0;
  while (true) {
    size_t x = name.find('x', start);
    std::string f = name.substr(start, x == std::string::npos ? std::string::npos : x - start);
    std::smatch m;
    if (!std::regex_match(f, m, factor_re))
      throw Error(ErrorCode::InvalidConfig, "unknown preset factor '" + f + "' in '" + name + "'");
    std::string t = m[1];
    int n = std::stoi(m[2]);
    CartanType ct = t == "A" ? CartanType::A
                    : t == "B" ? CartanType::B
                    : t == "C" ? CartanType::C
                    : t == "D" ? CartanType::D
                    : t == "GL" ? CartanType::GL
                                : CartanType::Torus;
    int minimum = (ct == CartanType::D) ? 2 : 1;
    if (n < minimum || n > 12)
      throw Error(ErrorCode::InvalidConfig, "preset factor '" + f + "' out of supported range");
    out.emplace_back(ct, n);
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return out;
}

// Solve G * S = T for G where the columns of S are linearly independent and
// span the space; returns nullopt when G is not integral.
std::optional<Mat> solve_lift(const std::vector<Vec>& from, const std::vector<Vec>& to, int dim) {
  if (static_cast<int>(from.size()) != dim) return std::nullopt;
  Mat S(dim), T(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      S(i, j) = from[j][i];
      T(i, j) = to[j][i];
    }
  // G = T S^{-1}; S^{-1} may be rational, so work with rationals.
  std::vector<std::vector<Rational>> w(dim, std::vector<Rational>(2 * dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) w[i][j] = S(i, j);
    w[i][dim + i] = 1;
  }
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int r = c; r < dim; ++r)
      if (w[r][c] != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    std::swap(w[c], w[piv]);
    Rational d = w[c][c];
    for (auto& x : w[c]) x /= d;
    for (int r = 0; r < dim; ++r) {
      if (r == c || w[r][c] == 0) continue;
      Rational f = w[r][c];
      for (int j = 0; j < 2 * dim; ++j) w[r][j] -= f * w[c][j];
    }
  }
  Mat G(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Rational s = 0;
      for (int k = 0; k < dim; ++k) s += Rational(T(i, k)) * w[k][dim + j];
      if (denominator(s) != 1) return std::nullopt;
      G(i, j) = static_cast<long long>(numerator(s));
    }
  return G;
}

}  // namespace

RootDatum RootDatum::preset(const std::string& name, const GaloisSpec& galois) {
  RootDatumSpec spec;
  spec.preset = name;
  spec.galois = galois;
  return build(spec);
}

RootDatum RootDatum::build(const RootDatumSpec& spec) {
  RootDatum rd;
  std::vector<Block> blocks;
  if (!spec.preset.empty()) {
    rd.name_ = spec.preset;
    for (auto [t, n] : parse_preset(spec.preset)) blocks.push_back(make_block(t, n));
    if (spec.extra_torus > 0) {
      blocks.push_back(make_block(CartanType::Torus, spec.extra_torus));
      rd.name_ += "xT" + std::to_string(spec.extra_torus);
    }
    int coord = 0, simple = 0;
    for (const auto& b : blocks) coord += b.coords;
    rd.rank_ = coord;
    coord = 0;
    for (const auto& b : blocks) {
      Component c{b.type, b.n, simple, static_cast<int>(b.simple.size()), coord, b.coords};
      rd.components_.push_back(c);
      for (size_t i = 0; i < b.simple.size(); ++i) {
        Vec a(rd.rank_, 0), ac(rd.rank_, 0);
        for (int k = 0; k < b.coords; ++k) {
          a[coord + k] = b.simple[i][k];
          ac[coord + k] = b.coroots[i][k];
        }
        rd.simple_.push_back(a);
        rd.simple_co_.push_back(ac);
      }
      simple += c.num_simple;
      coord += b.coords;
    }
  } else {
    rd.name_ = "explicit";
    rd.rank_ = spec.rank;
    if (rd.rank_ <= 0) throw Error(ErrorCode::InvalidConfig, "explicit datum needs a positive rank");
    if (spec.simple_roots.size() != spec.simple_coroots.size())
      throw Error(ErrorCode::InvalidConfig, "simple roots and coroots differ in number");
    for (size_t i = 0; i < spec.simple_roots.size(); ++i) {
      if (static_cast<int>(spec.simple_roots[i].size()) != rd.rank_ ||
          static_cast<int>(spec.simple_coroots[i].size()) != rd.rank_)
        throw Error(ErrorCode::InvalidConfig, "simple root or coroot " + std::to_string(i + 1) + " has wrong length");
    }
    rd.simple_ = spec.simple_roots;
    rd.simple_co_ = spec.simple_coroots;
    rd.components_.push_back(
        Component{CartanType::Explicit, rd.num_simple(), 0, rd.num_simple(), 0, rd.rank_});
  }

  int r = rd.num_simple();
  rd.cartan_.assign(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rd.cartan_[i][j] = dot(rd.simple_[j], rd.simple_co_[i]);
  for (int i = 0; i < r; ++i) {
    if (rd.cartan_[i][i] != 2)
      throw Error(ErrorCode::InvalidConfig, "Cartan diagonal entry " + std::to_string(i + 1) + " is not 2");
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      if (rd.cartan_[i][j] > 0)
        throw Error(ErrorCode::InvalidConfig, "positive off-diagonal Cartan entry");
      if ((rd.cartan_[i][j] == 0) != (rd.cartan_[j][i] == 0))
        throw Error(ErrorCode::InvalidConfig, "Cartan matrix zero pattern is not symmetric");
    }
  }
  rd.enumerate();
  rd.attach_galois(spec.galois);
  return rd;
}

void RootDatum::enumerate() {
  int r = num_simple();
  struct Entry {
    Vec root, coroot, coeffs;
  };
  std::vector<Entry> found;
  std::map<Vec, int> seen;
  std::deque<int> queue;
  for (int i = 0; i < r; ++i) {
    Entry e{simple_[i], simple_co_[i], unit(r, i)};
    if (seen.count(e.root)) throw Error(ErrorCode::InvalidConfig, "repeated simple root");
    seen[e.root] = static_cast<int>(found.size());
    queue.push_back(static_cast<int>(found.size()));
    found.push_back(e);
  }
  while (!queue.empty()) {
    int idx = queue.front();
    queue.pop_front();
    for (int s = 0; s < r; ++s) {
      const Entry& cur = found[idx];
      long long k = dot(cur.root, simple_co_[s]);
      long long kc = dot(simple_[s], cur.coroot);
      Entry nx{sub(cur.root, scale(k, simple_[s])), sub(cur.coroot, scale(kc, simple_co_[s])), cur.coeffs};
      nx.coeffs[s] -= k;
      auto it = seen.find(nx.root);
      if (it != seen.end()) {
        const Entry& old = found[it->second];
        if (old.coeffs != nx.coeffs)
          throw Error(ErrorCode::InvalidConfig, "simple roots are linearly dependent");
        if (old.coroot != nx.coroot)
          throw Error(ErrorCode::InvalidConfig, "coroots are not compatible with the reflections");
        continue;
      }
      bool pos = std::all_of(nx.coeffs.begin(), nx.coeffs.end(), [](long long c) { return c >= 0; });
      bool negv = std::all_of(nx.coeffs.begin(), nx.coeffs.end(), [](long long c) { return c <= 0; });
      if (!pos && !negv) throw Error(ErrorCode::InvalidConfig, "root with mixed-sign simple coefficients");
      if (static_cast<int>(found.size()) >= kRootCap)
        throw Error(ErrorCode::InvalidConfig, "root enumeration exceeded cap; Weyl group is not finite");
      seen[nx.root] = static_cast<int>(found.size());
      queue.push_back(static_cast<int>(found.size()));
      found.push_back(nx);
    }
  }
  std::vector<int> pos;
  for (size_t i = 0; i < found.size(); ++i) {
    const auto& c = found[i].coeffs;
    if (std::all_of(c.begin(), c.end(), [](long long x) { return x >= 0; })) pos.push_back(static_cast<int>(i));
  }
  if (2 * pos.size() != found.size()) throw Error(ErrorCode::InvalidConfig, "root system is not symmetric");
  auto height_of = [&](int i) {
    long long h = 0;
    for (auto c : found[i].coeffs) h += c;
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    long long ha = height_of(a), hb = height_of(b);
    if (ha != hb) return ha < hb;
    return found[a].coeffs > found[b].coeffs;
  });
  npos_ = static_cast<int>(pos.size());
  for (int i : pos) {
    roots_.push_back(found[i].root);
    coroots_.push_back(found[i].coroot);
    coeffs_.push_back(found[i].coeffs);
  }
  for (int i = 0; i < npos_; ++i) {
    roots_.push_back(neg(roots_[i]));
    coroots_.push_back(neg(coroots_[i]));
    coeffs_.push_back(neg(coeffs_[i]));
  }
  for (int i = 0; i < num_roots(); ++i) {
    root_index_[roots_[i]] = i;
    coroot_index_[coroots_[i]] = i;
  }
  if (static_cast<int>(coroot_index_.size()) != num_roots())
    throw Error(ErrorCode::InvalidConfig, "coroots are not distinct");
}

void RootDatum::attach_galois(const GaloisSpec& g) {
  int r = num_simple();
  std::vector<int> perm = g.perm;
  if (perm.empty()) perm = full_subset(r);
  if (static_cast<int>(perm.size()) != r)
    throw Error(ErrorCode::InvalidConfig, "Galois permutation has wrong length");
  {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != full_subset(r)) throw Error(ErrorCode::InvalidConfig, "Galois permutation is not a permutation");
  }
  if (g.order < 1) throw Error(ErrorCode::InvalidConfig, "Galois order must be positive");
  bool trivial = perm == full_subset(r);

  Mat G;
  if (g.matrix) {
    G = *g.matrix;
    if (G.n != rank_) throw Error(ErrorCode::InvalidConfig, "Galois matrix has wrong size");
  } else if (trivial) {
    G = Mat::identity(rank_);
  } else if (name_ != "explicit") {
    G = Mat(rank_);
    for (const auto& c : components_) {
      if (c.num_simple == 0) {
        for (int k = 0; k < c.num_coords; ++k) G(c.coord_offset + k, c.coord_offset + k) = 1;
        continue;
      }
      int target = perm[c.simple_offset];
      const Component* dst = nullptr;
      for (const auto& d : components_)
        if (d.num_simple > 0 && target >= d.simple_offset && target < d.simple_offset + d.num_simple) dst = &d;
      if (!dst || dst->type != c.type || dst->n != c.n)
        throw Error(ErrorCode::InvalidConfig, "Galois permutation does not respect the factors");
      std::vector<int> tau(c.num_simple);
      for (int i = 0; i < c.num_simple; ++i) {
        int t = perm[c.simple_offset + i] - dst->simple_offset;
        if (t < 0 || t >= c.num_simple)
          throw Error(ErrorCode::InvalidConfig, "Galois permutation does not respect the factors");
        tau[i] = t;
      }
      Mat local(c.num_coords);
      bool local_trivial = tau == full_subset(c.num_simple);
      if (local_trivial) {
        local = Mat::identity(c.num_coords);
      } else if (c.type == CartanType::GL) {
        for (int i = 0; i < c.num_simple; ++i)
          if (tau[i] != c.num_simple - 1 - i)
            throw Error(ErrorCode::InvalidConfig, "Galois permutation is not a diagram automorphism");
        for (int i = 0; i < c.num_coords; ++i) local(c.num_coords - 1 - i, i) = -1;
      } else {
        Block b = make_block(c.type, c.n);
        std::vector<Vec> to(c.num_simple);
        for (int i = 0; i < c.num_simple; ++i) to[i] = b.simple[tau[i]];
        auto lifted = solve_lift(b.simple, to, c.num_coords);
        if (!lifted)
          throw Error(ErrorCode::InvalidConfig,
                      "Galois permutation has no integral lift in these coordinates; give an explicit matrix");
        local = *lifted;
      }
      for (int i = 0; i < c.num_coords; ++i)
        for (int j = 0; j < c.num_coords; ++j) G(dst->coord_offset + i, c.coord_offset + j) = local(i, j);
    }
  } else {
    std::vector<Vec> to(r);
    for (int i = 0; i < r; ++i) to[i] = simple_[perm[i]];
    auto lifted = solve_lift(simple_, to, rank_);
    if (!lifted) throw Error(ErrorCode::InvalidConfig, "explicit datum with nontrivial Galois needs a matrix");
    G = *lifted;
  }

  Mat Ginv;
  try {
    Ginv = inverse_unimodular(G);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidConfig, "Galois matrix is not invertible over the integers");
  }
  Mat dual = Ginv.transpose();
  for (int i = 0; i < r; ++i) {
    if (G * simple_[i] != simple_[perm[i]])
      throw Error(ErrorCode::InvalidConfig, "gamma is not a diagram automorphism: simple root " +
                                                std::to_string(i + 1) + " is not sent to its image");
    if (dual * simple_co_[i] != simple_co_[perm[i]])
      throw Error(ErrorCode::InvalidConfig, "gamma does not permute the simple coroots compatibly");
  }
  Mat P = Mat::identity(rank_);
  for (int k = 0; k < g.order; ++k) P = P * G;
  if (P != Mat::identity(rank_))
    throw Error(ErrorCode::InvalidConfig, "gamma^d is not the identity for the declared order d");

  gamma_ = G;
  gamma_inv_ = Ginv;
  gamma_order_ = g.order;
  gamma_perm_ = perm;
  gamma_inv_perm_.assign(r, 0);
  for (int i = 0; i < r; ++i) gamma_inv_perm_[perm[i]] = i;
  gamma_root_.assign(num_roots(), 0);
  gamma_inv_root_.assign(num_roots(), 0);
  for (int i = 0; i < num_roots(); ++i) {
    int j = find_root(G * roots_[i]);
    if (j < 0) throw Error(ErrorCode::Internal, "gamma does not preserve the roots");
    gamma_root_[i] = j;
    gamma_inv_root_[j] = i;
  }
}

int RootDatum::height(int i) const {
  long long h = 0;
  for (auto c : coeffs_[i]) h += c;
  return static_cast<int>(h);
}

int RootDatum::find_root(const Vec& v) const {
  auto it = root_index_.find(v);
  return it == root_index_.end() ? -1 : it->second;
}

int RootDatum::find_coroot(const Vec& v) const {
  auto it = coroot_index_.find(v);
  return it == coroot_index_.end() ? -1 : it->second;
}

std::vector<int> RootDatum::positive_roots() const {
  std::vector<int> out(npos_);
  for (int i = 0; i < npos_; ++i) out[i] = i;
  return out;
}

bool RootDatum::in_span(int root, const Subset& K) const {
  const auto& c = coeffs_[root];
  for (int s = 0; s < num_simple(); ++s)
    if (c[s] != 0 && !subset_contains(K, s)) return false;
  return true;
}

int RootDatum::num_positive_in(const Subset& K) const {
  int n = 0;
  for (int i = 0; i < npos_; ++i) n += in_span(i, K) ? 1 : 0;
  return n;
}

long long RootDatum::pairing(const Vec& chi, const Vec& cochar) const {
  if (static_cast<int>(chi.size()) != rank_ || static_cast<int>(cochar.size()) != rank_)
    throw Error(ErrorCode::InvalidArgument, "rank mismatch in pairing");
  return dot(chi, cochar);
}

Vec RootDatum::reflect(int alpha, const Vec& v, Side side) const {
  if (side == Side::Character) return sub(v, scale(pairing(v, coroots_[alpha]), roots_[alpha]));
  return sub(v, scale(pairing(roots_[alpha], v), coroots_[alpha]));
}

Vec RootDatum::reflect(const Vec& alpha, const Vec& v, Side side) const {
  int a = find_root(alpha);
  if (a < 0) throw Error(ErrorCode::InvalidArgument, "reflection along a vector that is not a root");
  return reflect(a, v, side);
}

Mat RootDatum::galois_power(int k) const {
  int e = ((k % gamma_order_) + gamma_order_) % gamma_order_;
  Mat m = Mat::identity(rank_);
  for (int i = 0; i < e; ++i) m = m * gamma_;
  return m;
}

Vec RootDatum::apply_galois(int k, const Vec& v, Side side) const {
  if (static_cast<int>(v.size()) != rank_) throw Error(ErrorCode::InvalidArgument, "rank mismatch");
  if (side == Side::Character) return galois_power(k) * v;
  return galois_power(-k).transpose() * v;
}

int RootDatum::galois_simple(int k, int s) const {
  int e = ((k % gamma_order_) + gamma_order_) % gamma_order_;
  for (int i = 0; i < e; ++i) s = gamma_perm_[s];
  return s;
}

int RootDatum::galois_root(int k, int root) const {
  int e = ((k % gamma_order_) + gamma_order_) % gamma_order_;
  for (int i = 0; i < e; ++i) root = gamma_root_[root];
  return root;
}

Subset RootDatum::galois_subset(int k, const Subset& K) const {
  Subset out;
  for (int s : K) out.push_back(galois_simple(k, s));
  std::sort(out.begin(), out.end());
  return out;
}

bool RootDatum::is_split() const { return gamma_ == Mat::identity(rank_); }

bool RootDatum::has_brackets() const {
  return components_.size() == 1 &&
         (components_[0].type == CartanType::B || components_[0].type == CartanType::C);
}

}  // namespace zf
