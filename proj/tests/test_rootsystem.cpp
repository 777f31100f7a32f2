#include "zipflag/rootsystem.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace zf;

namespace {

std::set<Vec> root_set(const RootDatum& rd) {
  std::set<Vec> s;
  for (int i = 0; i < rd.num_roots(); ++i) s.insert(rd.root(i));
  return s;
}

// All ±e_i±e_j (i<j) and ±2e_i in rank n, written out independently of the
// reflection closure.
std::set<Vec> type_c_by_hand(int n) {
  std::set<Vec> s;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1}) {
          Vec v(n, 0);
          v[i] = a;
          v[j] = b;
          s.insert(v);
        }
    for (int a : {2, -2}) {
      Vec v(n, 0);
      v[i] = a;
      s.insert(v);
    }
  }
  return s;
}

const char* kPresets[] = {"A1", "A2", "B2", "A3", "C3", "B3", "D4", "GL4", "C3xGL1", "C2xA1", "GL1", "D3"};

}  // namespace

TEST(RootSystem, C3MatchesPrintedCoordinates) {
  RootDatum rd = RootDatum::preset("C3");
  EXPECT_EQ(rd.rank(), 3);
  EXPECT_EQ(rd.num_roots(), 18);
  EXPECT_EQ(rd.num_positive(), 9);
  EXPECT_EQ(rd.simple_roots()[0], (Vec{1, -1, 0}));
  EXPECT_EQ(rd.simple_roots()[1], (Vec{0, 1, -1}));
  EXPECT_EQ(rd.simple_roots()[2], (Vec{0, 0, 2}));
  EXPECT_EQ(root_set(rd), type_c_by_hand(3));
}

TEST(RootSystem, SmallPresets) {
  RootDatum a1 = RootDatum::preset("A1");
  EXPECT_EQ(a1.num_roots(), 2);
  EXPECT_EQ(a1.root(1), neg(a1.root(0)));

  RootDatum gl4 = RootDatum::preset("GL4");
  EXPECT_EQ(gl4.rank(), 4);
  EXPECT_EQ(gl4.num_roots(), 12);
  EXPECT_EQ(gl4.num_positive(), 6);
  for (int i = 0; i < 3; ++i) {
    Vec e(4, 0);
    e[i] = 1;
    e[i + 1] = -1;
    EXPECT_EQ(gl4.simple_roots()[i], e);
  }

  RootDatum prod = RootDatum::preset("C3xGL1");
  EXPECT_EQ(prod.rank(), 4);
  EXPECT_EQ(prod.num_roots(), 18);
}

TEST(RootSystem, PairingAndReflection) {
  RootDatum rd = RootDatum::preset("C3");
  EXPECT_EQ(rd.pairing({1, 0, 0}, {1, -1, 0}), 1);
  EXPECT_EQ(rd.pairing({1, 1, 0}, {1, 1, 0}), 2);
  EXPECT_EQ(rd.pairing({0, 0, 0}, {1, 1, 0}), 0);
  EXPECT_THROW(rd.pairing({1, 0}, {1, 1, 0}), Error);

  EXPECT_EQ(rd.reflect(Vec{0, 0, 2}, {0, 0, 1}, Side::Character), (Vec{0, 0, -1}));
  for (int a = 0; a < rd.num_roots(); ++a) {
    EXPECT_EQ(rd.reflect(a, rd.root(a), Side::Character), neg(rd.root(a)));
    EXPECT_EQ(rd.reflect(a, rd.coroot(a), Side::Cocharacter), neg(rd.coroot(a)));
  }
  // A vector on the fixed hyperplane of e1-e2.
  EXPECT_EQ(rd.reflect(Vec{1, -1, 0}, {1, 1, 5}, Side::Character), (Vec{1, 1, 5}));
  EXPECT_THROW(rd.reflect(Vec{1, 0, 0}, {1, 1, 5}, Side::Character), Error);
}

TEST(RootSystem, GaloisAction) {
  RootDatum split = RootDatum::preset("C3");
  EXPECT_TRUE(split.is_split());
  EXPECT_EQ(split.apply_galois(1, {3, -1, 4}), (Vec{3, -1, 4}));

  RootDatum a3 = RootDatum::preset("A3", GaloisSpec{{2, 1, 0}, 2, std::nullopt});
  EXPECT_FALSE(a3.is_split());
  EXPECT_EQ(a3.apply_galois(1, a3.simple_roots()[0]), a3.simple_roots()[2]);
  for (int a = 0; a < a3.num_roots(); ++a) {
    EXPECT_EQ(a3.apply_galois(2, a3.root(a)), a3.root(a));
    EXPECT_EQ(a3.apply_galois(-1, a3.apply_galois(1, a3.root(a))), a3.root(a));
  }

  RootDatum gl4 = RootDatum::preset("GL4", GaloisSpec{{2, 1, 0}, 2, std::nullopt});
  EXPECT_EQ(gl4.apply_galois(1, {1, 0, 0, 0}), (Vec{0, 0, 0, -1}));

  RootDatum d4 = RootDatum::preset("D4", GaloisSpec{{0, 1, 3, 2}, 2, std::nullopt});
  EXPECT_EQ(d4.apply_galois(1, {0, 0, 0, 1}), (Vec{0, 0, 0, -1}));
}

TEST(RootSystem, GaloisPreservesPositivityAndCoroots) {
  std::vector<RootDatum> data = {
      RootDatum::preset("A3", GaloisSpec{{2, 1, 0}, 2, std::nullopt}),
      RootDatum::preset("GL5", GaloisSpec{{3, 2, 1, 0}, 2, std::nullopt}),
      RootDatum::preset("D4", GaloisSpec{{0, 1, 3, 2}, 2, std::nullopt}),
      RootDatum::preset("A2xA2", GaloisSpec{{2, 3, 0, 1}, 2, std::nullopt}),
  };
  for (const auto& rd : data) {
    for (int a = 0; a < rd.num_roots(); ++a) {
      int b = rd.galois_root(1, a);
      EXPECT_EQ(rd.is_positive(a), rd.is_positive(b)) << rd.name();
      EXPECT_EQ(rd.apply_galois(1, rd.coroot(a), Side::Cocharacter), rd.coroot(b)) << rd.name();
    }
  }
}

TEST(RootSystem, InvariantsAcrossPresets) {
  for (const char* name : kPresets) {
    RootDatum rd = RootDatum::preset(name);
    std::set<Vec> roots = root_set(rd);
    EXPECT_EQ(rd.num_roots(), 2 * rd.num_positive()) << name;
    for (int a = 0; a < rd.num_roots(); ++a) {
      EXPECT_EQ(dot(rd.root(a), rd.coroot(a)), 2) << name;
      for (int b = 0; b < rd.num_roots(); ++b)
        EXPECT_TRUE(roots.count(rd.reflect(a, rd.root(b), Side::Character))) << name;
      bool nonneg = true;
      for (auto c : rd.root_coeffs(a)) nonneg = nonneg && c >= 0;
      EXPECT_EQ(nonneg, rd.is_positive(a)) << name;
      // The coefficient vector really expresses the root.
      Vec sum(rd.rank(), 0);
      for (int s = 0; s < rd.num_simple(); ++s) sum = add(sum, scale(rd.root_coeffs(a)[s], rd.simple_roots()[s]));
      EXPECT_EQ(sum, rd.root(a)) << name;
    }
    for (int i = 0; i < rd.num_simple(); ++i) {
      EXPECT_EQ(rd.cartan()[i][i], 2);
      for (int j = 0; j < rd.num_simple(); ++j)
        if (i != j) EXPECT_LE(rd.cartan()[i][j], 0);
    }
  }
}

TEST(RootSystem, EnumerationIndependentOfSimpleOrder) {
  RootDatum c3 = RootDatum::preset("C3");
  RootDatumSpec spec;
  spec.rank = 3;
  spec.simple_roots = {c3.simple_roots()[2], c3.simple_roots()[0], c3.simple_roots()[1]};
  spec.simple_coroots = {c3.simple_coroots()[2], c3.simple_coroots()[0], c3.simple_coroots()[1]};
  RootDatum shuffled = RootDatum::build(spec);
  EXPECT_EQ(root_set(shuffled), root_set(c3));
  std::set<Vec> pa, pb;
  for (int i = 0; i < c3.num_positive(); ++i) {
    pa.insert(c3.root(i));
    pb.insert(shuffled.root(i));
  }
  EXPECT_EQ(pa, pb);
}

TEST(RootSystem, RejectsInvalidInput) {
  RootDatumSpec hyperbolic;
  hyperbolic.rank = 2;
  hyperbolic.simple_roots = {{1, 0}, {0, 1}};
  hyperbolic.simple_coroots = {{2, -3}, {-3, 2}};
  EXPECT_THROW(RootDatum::build(hyperbolic), Error);

  RootDatumSpec bad_diag;
  bad_diag.rank = 2;
  bad_diag.simple_roots = {{1, 0}, {0, 1}};
  bad_diag.simple_coroots = {{1, 0}, {0, 2}};
  EXPECT_THROW(RootDatum::build(bad_diag), Error);

  EXPECT_THROW(RootDatum::preset("C3", GaloisSpec{{2, 1, 0}, 2, std::nullopt}), Error);
  EXPECT_THROW(RootDatum::preset("A3", GaloisSpec{{2, 1, 0}, 3, std::nullopt}), Error);
  EXPECT_THROW(RootDatum::preset("E8"), Error);
  EXPECT_THROW(RootDatum::preset("D4", GaloisSpec{{2, 1, 3, 0}, 3, std::nullopt}), Error);
}
