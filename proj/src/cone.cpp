#include "zipflag/cone.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace zf {

namespace {

struct Row {
  std::vector<Rational> a;
  std::vector<Rational> mult;  // nonnegative multipliers over the input rows
  int support = 0;
};

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / gcd_big(a, b) * b; }

// Positive rescaling of a row to a primitive integer vector; used as a dedupe key.
BigVec direction(const std::vector<Rational>& a) { return primitive(a); }

bool all_zero(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

int count_support(const std::vector<Rational>& m) {
  return static_cast<int>(std::count_if(m.begin(), m.end(), [](const Rational& x) { return x != 0; }));
}

// Rescale a row (and its multipliers) so that its coefficients are coprime integers.
void normalize(Row& r) {
  if (all_zero(r.a)) return;
  BigVec p = primitive(r.a);
  for (size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0) continue;
    Rational f = Rational(p[j]) / r.a[j];
    for (auto& x : r.a) x *= f;
    for (auto& x : r.mult) x *= f;
    return;
  }
}

BigVec certificate_of(const Row& r) {
  std::vector<Rational> m = r.mult;
  return primitive(m);
}

BigInt floor_q(const Rational& x) {
  BigInt n = numerator(x), d = denominator(x);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

BigInt ceil_q(const Rational& x) { return -floor_q(-x); }

// A value strictly between lo and hi (either may be absent), preferring
// small integers.
Rational choose(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (!lo && !hi) return 0;
  if (lo && !hi) return *lo < 0 ? Rational(0) : Rational(floor_q(*lo) + 1);
  if (!lo && hi) return *hi > 0 ? Rational(0) : Rational(ceil_q(*hi) - 1);
  if (*lo < 0 && *hi > 0) return 0;
  BigInt k = floor_q(*lo) + 1;
  if (Rational(k) < *hi) {
    if (*lo >= 0) return k;
    BigInt u = ceil_q(*hi) - 1;
    return u;
  }
  return (*lo + *hi) / 2;
}

}  // namespace

BigVec primitive(const std::vector<Rational>& v) {
  BigInt den = 1;
  for (const auto& x : v) den = lcm_big(den, denominator(x));
  BigVec out;
  out.reserve(v.size());
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt y = numerator(x) * (den / denominator(x));
    out.push_back(y);
    g = gcd_big(g, y);
  }
  if (g > 1)
    for (auto& y : out) y /= g;
  return out;
}

StrictFeasibility strict_feasible(const std::vector<BigVec>& A, int dim) {
  const size_t m = A.size();
  std::vector<Row> rows;
  for (size_t i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != dim) throw Error(ErrorCode::InvalidArgument, "row has wrong length");
    Row r;
    for (const auto& x : A[i]) r.a.emplace_back(x);
    r.mult.assign(m, Rational(0));
    r.mult[i] = 1;
    r.support = 1;
    rows.push_back(std::move(r));
  }

  StrictFeasibility res;
  auto contradiction = [&](const std::vector<Row>& rs) -> const Row* {
    for (const auto& r : rs)
      if (all_zero(r.a)) return &r;
    return nullptr;
  };

  std::vector<std::vector<Row>> stages;
  for (int k = 0; k <= dim; ++k) {
    if (const Row* bad = contradiction(rows)) {
      res.feasible = false;
      res.certificate = certificate_of(*bad);
      return res;
    }
    if (k == dim) break;
    stages.push_back(rows);
    std::vector<const Row*> pos, neg;
    std::vector<Row> next;
    for (const auto& r : rows) {
      if (r.a[k] > 0) pos.push_back(&r);
      else if (r.a[k] < 0) neg.push_back(&r);
      else next.push_back(r);
    }
    for (const Row* p : pos)
      for (const Row* n : neg) {
        Rational cp = -n->a[k], cn = p->a[k];
        Row r;
        r.a.resize(dim);
        for (int j = 0; j < dim; ++j) r.a[j] = cp * p->a[j] + cn * n->a[j];
        r.a[k] = 0;
        r.mult.resize(m);
        for (size_t i = 0; i < m; ++i) r.mult[i] = cp * p->mult[i] + cn * n->mult[i];
        r.support = count_support(r.mult);
        normalize(r);
        next.push_back(std::move(r));
      }
    // Keep one row per direction, the one with the smallest support.
    std::map<BigVec, size_t> seen;
    std::vector<Row> dedup;
    for (auto& r : next) {
      if (all_zero(r.a)) {
        dedup.push_back(std::move(r));
        continue;
      }
      BigVec key = direction(r.a);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, dedup.size());
        dedup.push_back(std::move(r));
      } else if (r.support < dedup[it->second].support) {
        dedup[it->second] = std::move(r);
      }
    }
    rows = std::move(dedup);
  }

  // Feasible: back-substitute through the stored stages.
  std::vector<Rational> t(dim, Rational(0));
  for (int k = dim - 1; k >= 0; --k) {
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[k]) {
      Rational b = 0;
      for (int j = k + 1; j < dim; ++j) b += r.a[j] * t[j];
      const Rational& a = r.a[k];
      if (a == 0) {
        if (b <= 0) throw Error(ErrorCode::Internal, "Fourier-Motzkin back-substitution lost feasibility");
        continue;
      }
      Rational bound = -b / a;
      if (a > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && !(*lo < *hi)) throw Error(ErrorCode::Internal, "Fourier-Motzkin produced an empty interval");
    t[k] = choose(lo, hi);
  }
  res.feasible = true;
  res.witness = primitive(t);
  for (const auto& row : A) {
    BigInt s = 0;
    for (int j = 0; j < dim; ++j) s += row[j] * res.witness[j];
    if (s <= 0) throw Error(ErrorCode::Internal, "Fourier-Motzkin witness fails a strict inequality");
  }
  return res;
}

bool replay_certificate(const std::vector<BigVec>& A, const BigVec& y) {
  if (y.size() != A.size()) return false;
  bool nonzero = false;
  for (const auto& v : y) {
    if (v < 0) return false;
    if (v != 0) nonzero = true;
  }
  if (!nonzero) return false;
  if (A.empty()) return false;
  size_t dim = A.front().size();
  for (size_t j = 0; j < dim; ++j) {
    BigInt s = 0;
    for (size_t i = 0; i < A.size(); ++i) s += y[i] * A[i][j];
    if (s != 0) return false;
  }
  return true;
}

std::vector<BigVec> kernel_basis(const std::vector<BigVec>& E, int dim) {
  // Reduced row echelon form over Q.
  std::vector<std::vector<Rational>> M;
  for (const auto& row : E) {
    if (static_cast<int>(row.size()) != dim) throw Error(ErrorCode::InvalidArgument, "equality has wrong length");
    M.emplace_back(row.begin(), row.end());
  }
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < dim && r < M.size(); ++c) {
    size_t piv = r;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[r], M[piv]);
    Rational inv = 1 / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (int j = 0; j < dim; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<BigVec> basis;
  for (int f = 0; f < dim; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<Rational> v(dim, Rational(0));
    v[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -M[i][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

}  // namespace zf
