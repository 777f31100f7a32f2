#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Vec = std::vector<long long>;
// Sorted 0-based indices into the simple roots.
using Subset = std::vector<int>;

enum class ErrorCode { InvalidArgument = 1, InvalidConfig = 2, Infeasible = 3, Internal = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Square integer matrix, row-major.
struct Mat {
  int n = 0;
  std::vector<long long> a;

  Mat() = default;
  explicit Mat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0) {}
  static Mat identity(int dim);

  long long& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  long long operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat transpose() const;
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return a < o.a; }
};

// Inverse of a unimodular integer matrix; throws if not unimodular.
Mat inverse_unimodular(const Mat& m);

long long dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(long long k, const Vec& a);
Vec neg(const Vec& a);
bool is_zero(const Vec& a);

BigInt ipow(const BigInt& base, unsigned exp);

std::string format_vec(const Vec& v);
// 1-based rendering, e.g. "{1,3}".
std::string format_subset(const Subset& s);

bool subset_contains(const Subset& s, int i);
bool subset_includes(const Subset& big, const Subset& small);
Subset subset_minus(const Subset& a, const Subset& b);
Subset full_subset(int r);

}  // namespace zf
