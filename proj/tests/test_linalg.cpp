#include "brauer/lattice.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace brauer;

namespace {

IntMatrix random_int_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

Rational q(long n, long d = 1) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

void check_smith_invariants(const IntMatrix &a, const SmithDecomposition &s) {
  EXPECT_EQ(s.U * a * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  const std::size_t n = std::min(s.D.rows(), s.D.cols());
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_GE(s.D(i, i), 0);
    if (i + 1 < n) {
      EXPECT_TRUE(divides(s.D(i, i), s.D(i + 1, i + 1)));
    }
  }
}

bool integral_after(const RatMatrix &p, const std::vector<Rational> &w, const std::vector<Rational> &a) {
  auto z = p * a;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (!is_integer(z[i] + w[i])) return false;
  return true;
}

} // namespace

TEST(Smith, Identity) {
  auto s = smith(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
  EXPECT_EQ(s.U, IntMatrix::identity(3));
  EXPECT_EQ(s.V, IntMatrix::identity(3));
}

TEST(Smith, TwoByTwo) {
  auto a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  auto s = smith(a);
  check_smith_invariants(a, s);
  EXPECT_EQ(s.D(0, 0), 2);
  EXPECT_EQ(s.D(1, 1), 4);
  EXPECT_EQ(oracle::invariant_factors(a), (std::vector<Integer>{2, 4}));
}

TEST(Smith, ZeroRectangular) {
  IntMatrix a(3, 2);
  auto s = smith(a);
  EXPECT_TRUE(s.D.is_zero());
  check_smith_invariants(a, s);
}

TEST(Smith, RectangularShapes) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_int_matrix(rng, 2 + trial % 4, 1 + trial % 5, -6, 6);
    auto s = smith(a);
    check_smith_invariants(a, s);
    auto d = oracle::invariant_factors(a);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(s.D(i, i), d[i]);
  }
}

TEST(SmithOracle, RandomFourByFourAgainstDeterminantalDivisors) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_int_matrix(rng, 4, 4, -5, 5);
    auto s = smith(a);
    check_smith_invariants(a, s);
    auto d = oracle::invariant_factors(a);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.D(i, i), d[i]) << "trial " << trial;
  }
}

TEST(Determinant, KnownValues) {
  EXPECT_EQ(determinant(IntMatrix::from_rows({{2, 4}, {6, 8}})), -8);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}})), -5);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 2}, {2, 4}})), 0);
}

TEST(SolveIntegrality, HalfCoefficient) {
  auto p = RatMatrix::from_rows({{q(1, 2)}});
  auto lat = solve_integrality(p, {q(0)});
  ASSERT_TRUE(lat);
  EXPECT_EQ(lat->rank(), 1u);
  EXPECT_EQ(lat->kernel_rank(), 0u);
  for (long a = -6; a <= 6; ++a) EXPECT_EQ(contains(*lat, {q(a)}), a % 2 == 0);
  EXPECT_FALSE(contains(*lat, {q(1, 2)}));
  EXPECT_EQ(gram_determinant(*lat), 4);
}

TEST(SolveIntegrality, TwoCongruences) {
  auto p = RatMatrix::from_rows({{q(1, 3)}, {q(1, 2)}});
  std::vector<Rational> w{q(1, 3), q(0)};
  // Oracle: scan a in (1/6)Z over one period [0, 6).
  std::vector<Rational> hits;
  for (long k = 0; k < 36; ++k)
    if (integral_after(p, w, {q(k, 6)})) hits.push_back(q(k, 6));
  ASSERT_EQ(hits, std::vector<Rational>{q(2)});

  auto lat = solve_integrality(p, w);
  ASSERT_TRUE(lat);
  EXPECT_TRUE(contains(*lat, {q(2)}));
  EXPECT_TRUE(contains(*lat, {q(8)}));
  EXPECT_TRUE(contains(*lat, {q(-4)}));
  EXPECT_FALSE(contains(*lat, {q(4)}));
  EXPECT_EQ(gram_determinant(*lat), 36);
}

TEST(SolveIntegrality, EmptyAndKernel) {
  // 0*a + 1/2 is never integral.
  auto p = RatMatrix::from_rows({{q(0), q(0)}});
  EXPECT_FALSE(solve_integrality(p, {q(1, 2)}));
  EXPECT_FALSE(contains(std::optional<AffineLattice>{}, {q(0), q(0)}));
  // a1/2 + a2/2 - (a1 + a2)/2 style: second column direction (1,-1) is a kernel.
  auto p2 = RatMatrix::from_rows({{q(1, 2), q(1, 2)}});
  auto lat = solve_integrality(p2, {q(0)});
  ASSERT_TRUE(lat);
  EXPECT_EQ(lat->rank(), 1u);
  EXPECT_EQ(lat->kernel_rank(), 1u);
  EXPECT_TRUE(contains(*lat, {q(1, 3), q(-1, 3)}));
  EXPECT_TRUE(contains(*lat, {q(5, 3), q(1, 3)}));
  EXPECT_FALSE(contains(*lat, {q(1), q(0)}));
  // Zero-dimensional but nonempty is distinct from empty.
  auto p3 = RatMatrix::from_rows({{q(0)}});
  auto lat3 = solve_integrality(p3, {q(3)});
  ASSERT_TRUE(lat3);
  EXPECT_EQ(lat3->rank(), 0u);
  EXPECT_EQ(lat3->kernel_rank(), 1u);
}

TEST(SolveIntegrality, ContainsOffsetAndDimensionMismatch) {
  auto p = RatMatrix::from_rows({{q(1, 4), q(1, 6)}, {q(2, 3), q(0)}});
  auto lat = solve_integrality(p, {q(1, 5), q(1, 7)});
  // 2a/3 + 1/7 integral and a/4 + b/6 + 1/5 integral.
  ASSERT_TRUE(lat);
  EXPECT_TRUE(contains(*lat, lat->offset));
  EXPECT_THROW(contains(*lat, {q(0)}), Error);
}

TEST(SolveIntegrality, SoundnessOnRandomSystems) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 6), dim(1, 4), coeff(-20, 20);
  int checked = 0;
  for (int sys = 0; sys < 200; ++sys) {
    std::size_t n = dim(rng) + 1, m = dim(rng);
    RatMatrix p(n, m);
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) p(i, j) = q(num(rng), den(rng));
      w[i] = q(num(rng), den(rng));
    }
    auto lat = solve_integrality(p, w);
    if (!lat) continue;
    for (int k = 0; k < 20; ++k) {
      std::vector<Integer> u(lat->rank());
      for (auto &x : u) x = coeff(rng);
      auto a = lat->point(u);
      for (std::size_t j = 0; j < lat->kernel_rank(); ++j) {
        Rational t = q(num(rng), den(rng));
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += lat->kernel(i, j) * t;
      }
      EXPECT_TRUE(integral_after(p, w, a));
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(SolveIntegrality, CompletenessAgainstGridScan) {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 6), dim(1, 3);
  int systems = 0, nonempty = 0;
  while (systems < 100) {
    std::size_t m = dim(rng), n = dim(rng);
    RatMatrix p(n, m);
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) p(i, j) = q(num(rng), den(rng));
      w[i] = q(num(rng), den(rng));
    }
    ++systems;
    auto lat = solve_integrality(p, w);
    nonempty += lat.has_value();
    const long step = 12, radius = m == 3 ? 12 : 24;
    oracle::for_each_grid_point(m, step, radius, [&](const std::vector<Rational> &a) {
      bool solves = integral_after(p, w, a);
      EXPECT_EQ(solves, contains(lat, a)) << "system " << systems << " point " << to_string(a);
    });
  }
  EXPECT_GT(nonempty, 10);
}

TEST(SolveIntegrality, AgreesWithOrthogonalComplementPipeline) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4), dim(1, 4);
  int compared = 0;
  for (int sys = 0; sys < 100; ++sys) {
    std::size_t m = dim(rng), n = dim(rng) + 1;
    RatMatrix p(n, m);
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) p(i, j) = q(num(rng), den(rng));
      w[i] = q(num(rng), den(rng));
    }
    auto ours = solve_integrality(p, w);
    auto theirs = oracle::complement_pipeline_solve(p, w);
    ASSERT_EQ(ours.has_value(), theirs.has_value()) << "system " << sys;
    if (!ours) continue;
    EXPECT_TRUE(same_set(*ours, *theirs)) << "system " << sys;
    if (ours->kernel_rank() == 0) {
      EXPECT_EQ(gram_determinant(*ours), gram_determinant(*theirs));
    }
    ++compared;
  }
  EXPECT_GT(compared, 20);
}

TEST(ResiduePoints, NoParameters) {
  AffineLattice lat{{q(0)}, RatMatrix(1, 0), RatMatrix(1, 0)};
  auto pts = residue_points(lat, {AffineMap{{q(3), q(4)}, {}}}, 2);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].values[0], (std::vector<std::uint32_t>{1, 0}));
}

TEST(ResiduePoints, DeduplicatesAndCounts) {
  // 15 parameters, one map that only sees the parity of u_0 + u_1.
  const std::size_t t = 15;
  AffineLattice lat{std::vector<Rational>(t, q(0)), RatMatrix::identity(t), RatMatrix(t, 0)};
  AffineMap map{{q(0)}, std::vector<std::vector<Rational>>(t, {q(0)})};
  map.directions[0] = {q(1)};
  map.directions[1] = {q(1)};
  auto pts = residue_points(lat, {map}, 2);
  EXPECT_EQ(pts.size(), 2u);
  // Identity map on all coordinates: all 2^15 tuples are distinct.
  AffineMap full{std::vector<Rational>(t, q(0)), {}};
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<Rational> e(t, q(0));
    e[j] = 1;
    full.directions.push_back(e);
  }
  EXPECT_EQ(residue_points(lat, {full}, 2).size(), std::size_t{1} << t);
}

TEST(ResiduePoints, RejectsNonIntegralMaps) {
  AffineLattice lat{{q(0)}, RatMatrix::identity(1), RatMatrix(1, 0)};
  EXPECT_THROW(residue_points(lat, {AffineMap{{q(0)}, {{q(1, 2)}}}}, 2), Error);
}
