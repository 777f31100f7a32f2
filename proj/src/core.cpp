#include "zipflag/core.hpp"

#include <algorithm>
#include <sstream>

namespace zf {

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  Vec r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Mat Mat::transpose() const {
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
  return r;
}

// Gauss-Jordan over the rationals; the matrices involved are tiny.
Mat inverse_unimodular(const Mat& m) {
  int n = m.n;
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = m(i, j);
    w[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
    std::swap(w[c], w[piv]);
    Rational d = w[c][c];
    for (auto& x : w[c]) x /= d;
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      Rational f = w[r][c];
      for (int j = 0; j < 2 * n; ++j) w[r][j] -= f * w[c][j];
    }
  }
  Mat inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& x = w[i][n + j];
      if (denominator(x) != 1) throw Error(ErrorCode::InvalidArgument, "matrix is not unimodular");
      inv(i, j) = static_cast<long long>(numerator(x));
    }
  return inv;
}

long long dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "rank mismatch in pairing");
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(long long k, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= k;
  return r;
}

Vec neg(const Vec& a) { return scale(-1, a); }

bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string format_subset(const Subset& s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << '}';
  return os.str();
}

bool subset_contains(const Subset& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

bool subset_includes(const Subset& big, const Subset& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Subset subset_minus(const Subset& a, const Subset& b) {
  Subset r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Subset full_subset(int r) {
  Subset s(r);
  for (int i = 0; i < r; ++i) s[i] = i;
  return s;
}

}  // namespace zf
