#include "zipflag/cone.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace zf;

namespace {

std::vector<BigVec> rows(std::initializer_list<std::initializer_list<long long>> r) {
  std::vector<BigVec> out;
  for (const auto& row : r) {
    BigVec v;
    for (long long x : row) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

bool satisfies(const std::vector<BigVec>& A, const BigVec& t) {
  for (const auto& row : A) {
    BigInt s = 0;
    for (size_t j = 0; j < t.size(); ++j) s += row[j] * t[j];
    if (s <= 0) return false;
  }
  return true;
}

}  // namespace

TEST(Cone, OneVariable) {
  auto A = rows({{1}, {-1}});
  auto r = strict_feasible(A, 1);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(replay_certificate(A, r.certificate));

  auto B = rows({{3}, {5}});
  auto s = strict_feasible(B, 1);
  ASSERT_TRUE(s.feasible);
  EXPECT_TRUE(satisfies(B, s.witness));
}

TEST(Cone, ZeroRowIsInfeasible) {
  auto A = rows({{1, 2}, {0, 0}});
  auto r = strict_feasible(A, 2);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.certificate, (BigVec{0, 1}));
}

TEST(Cone, EmptySystemIsFeasible) {
  auto r = strict_feasible({}, 3);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.witness, (BigVec{0, 0, 0}));
  EXPECT_FALSE(replay_certificate({}, {}));
}

TEST(Cone, NarrowWedge) {
  // 100y > 99x, x > y, y > 0: a thin wedge in the positive quadrant.
  auto A = rows({{-99, 100}, {1, -1}, {0, 1}});
  auto r = strict_feasible(A, 2);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfies(A, r.witness));
  // Adding y > x closes it.
  auto B = rows({{-99, 100}, {1, -1}, {0, 1}, {-1, 1}});
  auto s = strict_feasible(B, 2);
  EXPECT_FALSE(s.feasible);
  EXPECT_TRUE(replay_certificate(B, s.certificate));
}

TEST(Cone, CertificateRejectsBadMultipliers) {
  auto A = rows({{1, 0}, {-1, 0}, {0, 1}});
  EXPECT_TRUE(replay_certificate(A, {1, 1, 0}));
  EXPECT_FALSE(replay_certificate(A, {1, 0, 0}));
  EXPECT_FALSE(replay_certificate(A, {-1, -1, 0}));
  EXPECT_FALSE(replay_certificate(A, {0, 0, 0}));
}

TEST(Cone, KernelBasis) {
  // <chi, e1 - e2> = 0 and <chi, e3> = 0 in rank 4.
  auto K = kernel_basis(rows({{1, -1, 0, 0}, {0, 0, 1, 0}}), 4);
  ASSERT_EQ(K.size(), 2u);
  for (const auto& v : K) {
    EXPECT_EQ(v[0], v[1]);
    EXPECT_EQ(v[2], 0);
  }
  EXPECT_EQ(kernel_basis({}, 2).size(), 2u);
  EXPECT_TRUE(kernel_basis(rows({{1, 0}, {0, 1}}), 2).empty());
  // Rational pivots still give primitive integral vectors.
  auto L = kernel_basis(rows({{2, 3}}), 2);
  ASSERT_EQ(L.size(), 1u);
  EXPECT_EQ(L[0], (BigVec{-3, 2}));
}

// Brute-force oracle: a lattice point in a box satisfying the system proves
// feasibility; the engine's own answer is checked by its witness or certificate.
TEST(ConeProperties, AgreesWithBoxSearch) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4), nrows(1, 7);
  for (int trial = 0; trial < 400; ++trial) {
    int dim = 1 + trial % 3;
    std::vector<BigVec> A(nrows(rng), BigVec(dim));
    for (auto& row : A)
      for (auto& x : row) x = coef(rng);
    auto r = strict_feasible(A, dim);
    if (r.feasible) {
      EXPECT_TRUE(satisfies(A, r.witness)) << trial;
    } else {
      EXPECT_TRUE(replay_certificate(A, r.certificate)) << trial;
      // No box point may satisfy an infeasible system.
      std::vector<long long> t(dim, -6);
      while (true) {
        BigVec bt(t.begin(), t.end());
        EXPECT_FALSE(satisfies(A, bt)) << trial;
        int j = dim - 1;
        while (j >= 0 && t[j] == 6) t[j--] = -6;
        if (j < 0) break;
        ++t[j];
      }
    }
  }
}
