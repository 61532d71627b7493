#include "brauer/driver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace brauer;

namespace {

BrauerClassSpec index_eight_class() {
  auto ctx = make_context(4);
  auto x = [&](int i) { return generator_x(ctx, i); };
  auto y = [&](int i) { return generator_y(ctx, i); };
  return BrauerClassSpec(wedge(x(1), y(1) + y(3)) + wedge(x(2), y(2)) + wedge(x(3), y(1)), 2);
}

BrauerClassSpec indecomposable_class() {
  auto ctx = make_context(3);
  auto x = [&](int i) { return generator_x(ctx, i); };
  auto y = [&](int i) { return generator_y(ctx, i); };
  return BrauerClassSpec(wedge(x(1), y(1) + y(2)) + wedge(x(2), y(1) + y(3)) + wedge(x(3), y(1) + y(2) + y(3)), 2);
}

void expect_consistent(const IndecomposabilityStats &s) {
  EXPECT_EQ(s.candidates, s.certified_by_first + s.certified_by_second + s.uncertified);
  std::uint64_t by = 0;
  for (const auto &[m, n] : s.by_method) by += n;
  EXPECT_EQ(by, s.certified_by_first + s.certified_by_second);
}

} // namespace

TEST(FailureDegree, TableOfRationalBounds) {
  const std::vector<std::vector<std::string>> expected{
      {"-", "-", "-", "-", "-", "-", "-", "-", "-", "-"},
      {"3", "-", "7/2", "-", "-", "11/3", "-", "-", "-", "15/4"},
      {"4", "-", "9/2", "-", "-", "14/3", "-", "-", "-", "19/4"},
      {"4", "-", "5", "-", "-", "16/3", "-", "-", "-", "11/2"},
      {"4", "6", "11/2", "-", "-", "6", "13/2", "-", "-", "25/4"},
      {"4", "7", "6", "-", "-", "20/3", "15/2", "-", "-", "7"},
      {"5", "7", "7", "-", "-", "23/3", "8", "-", "-", "8"},
      {"5", "9", "15/2", "-", "-", "25/3", "19/2", "-", "-", "35/4"},
      {"5", "9", "8", "-", "-", "9", "10", "-", "-", "19/2"},
      {"5", "10", "17/2", "-", "-", "29/3", "11", "-", "-", "41/4"},
  };
  ASSERT_EQ(table_columns(), (std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16}));
  for (int g = 3; g <= 12; ++g)
    for (std::size_t j = 0; j < table_columns().size(); ++j)
      EXPECT_EQ(table_cell(g, table_columns()[j]), expected[g - 3][j]) << "dim " << g << " column " << table_columns()[j];
}

TEST(FailureDegree, PeriodTwoShortcut) {
  for (int g = 2; g <= 20; ++g) EXPECT_EQ(failure_degree_bound(g, 2, 1).rs, floor_log(g - 1, 2) + 2);
}

TEST(FailureDegree, ValuationIdentity) {
  // v_p(C(p^N, i) i! / p^{r i}) = N - r i + v_p((i-1)!), and v_p((i-1)!) equals
  // (i - 1 - s_p(i - 1)) / (p - 1).
  for (long p : {2, 3, 5, 7})
    for (int r : {1, 2, 3})
      for (int N = 1; N <= 8; ++N)
        for (long i = 1; i <= 12; ++i) {
          Integer top = pow(Integer(p), static_cast<unsigned long>(N));
          if (top < i) continue;
          Rational x(binomial(top, i) * factorial(static_cast<unsigned long>(i)),
                     pow(Integer(p), static_cast<unsigned long>(r * i)));
          x.canonicalize();
          const long legendre = oracle::factorial_valuation(i - 1, p);
          EXPECT_EQ(valuation(x, static_cast<unsigned long>(p)), N - r * i + legendre);
          EXPECT_EQ(legendre * (p - 1), i - 1 - digit_sum(i - 1, p));
        }
}

TEST(FailureDegree, DigitSumAndLog) {
  EXPECT_EQ(digit_sum(10, 2), 2);
  EXPECT_EQ(digit_sum(26, 3), 6);
  EXPECT_EQ(floor_log(7, 2), 2);
  EXPECT_EQ(floor_log(8, 2), 3);
  EXPECT_EQ(floor_log(1, 3), 0);
}

TEST(IndexBound, IndexEightExample) {
  auto rep = index_lower_bound(index_eight_class());
  EXPECT_EQ(rep.lower_bound, 8);
  EXPECT_EQ(rep.cap, 8);
  EXPECT_TRUE(rep.determined);
  ASSERT_EQ(rep.degrees.size(), 2u);
  EXPECT_EQ(rep.degrees[0].d, 2);
  EXPECT_EQ(rep.degrees[0].djp, Verdict::Obstructed);
  EXPECT_EQ(rep.degrees[1].d, 4);
  EXPECT_EQ(rep.degrees[1].djp, Verdict::Unobstructed);
  EXPECT_EQ(rep.degrees[1].refined, Verdict::Obstructed);
  EXPECT_NE(rep.degrees[1].certificate.find("Sq^2(C2)"), std::string::npos);
  ASSERT_EQ(rep.components.size(), 1u);
  EXPECT_EQ(rep.components[0].deciding_method, "refined");
}

TEST(IndexBound, IndexEightExampleByMethod) {
  BoundOptions djp_only;
  djp_only.methods = {true, false, false};
  EXPECT_EQ(index_lower_bound(index_eight_class(), djp_only).lower_bound, 4);
  BoundOptions hot;
  hot.methods = {false, false, true};
  EXPECT_EQ(index_lower_bound(index_eight_class(), hot).lower_bound, 8);
}

TEST(IndexBound, IndecomposableExample) {
  auto rep = index_lower_bound(indecomposable_class());
  EXPECT_EQ(rep.lower_bound, 4);
  EXPECT_EQ(rep.cap, 8);
  EXPECT_FALSE(rep.determined);
}

TEST(IndexBound, TrivialAndSingleSymbol) {
  auto ctx = make_context(3);
  auto triv = index_lower_bound(BrauerClassSpec(theta(ctx), 2));
  EXPECT_EQ(triv.lower_bound, 1);
  EXPECT_EQ(triv.cap, 1);
  auto one = index_lower_bound(BrauerClassSpec(wedge(generator_x(ctx, 1), generator_y(ctx, 2)), 3));
  EXPECT_EQ(one.lower_bound, 3);
  EXPECT_EQ(one.cap, 3);
  EXPECT_TRUE(one.determined);
}

TEST(IndexBound, CompositePeriodMultipliesComponents) {
  auto ctx = make_context(3);
  auto b = wedge(generator_x(ctx, 1), generator_y(ctx, 2)) * Rational(3) + wedge(generator_x(ctx, 2), generator_y(ctx, 3)) * Rational(2);
  BrauerClassSpec spec(b, 6);
  auto rep = index_lower_bound(spec);
  ASSERT_EQ(rep.components.size(), 2u);
  Integer prod = 1, cap = 1;
  for (const auto &c : rep.components) {
    prod *= c.lower_bound;
    cap *= c.cap;
    EXPECT_TRUE(divides(c.lower_bound, c.cap));
  }
  EXPECT_EQ(rep.lower_bound, prod);
  EXPECT_EQ(rep.cap, cap);
  EXPECT_TRUE(divides(Integer(6), rep.lower_bound));
}

TEST(IndexBound, BoundsDivideCapOnRandomClasses) {
  std::mt19937 rng(17);
  for (std::int64_t n : {2, 3, 4}) {
    auto ctx = make_context(3);
    std::uniform_int_distribution<std::int64_t> coef(0, n - 1);
    for (int t = 0; t < 6; ++t) {
      std::vector<std::int64_t> c(ctx->rank(2));
      for (auto &x : c) x = coef(rng);
      auto spec = BrauerClassSpec::from_coordinates(ctx, c, n);
      auto rep = index_lower_bound(spec);
      EXPECT_TRUE(divides(Integer(static_cast<long>(spec.period())), rep.lower_bound));
      EXPECT_TRUE(divides(rep.lower_bound, rep.cap));
    }
  }
}

TEST(Indecomposability, CandidateDigits) {
  EXPECT_EQ(candidate_coordinates(0, 3, 2), (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(candidate_coordinates(6, 3, 2), (std::vector<std::int64_t>{0, 1, 1}));
  EXPECT_EQ(candidate_coordinates(7, 2, 3), (std::vector<std::int64_t>{1, 2}));
}

TEST(Indecomposability, ExampleIsIndecomposableForAnyThreadCount) {
  auto spec = indecomposable_class();
  auto one = indecomposability_test(spec, 4, BoundOptions{}, 1);
  EXPECT_TRUE(one.indecomposable);
  EXPECT_EQ(one.group_order, 32768u);
  EXPECT_EQ(one.stats.candidates, 32768u);
  expect_consistent(one.stats);
  auto four = indecomposability_test(spec, 4, BoundOptions{}, 4);
  EXPECT_EQ(four.indecomposable, one.indecomposable);
  EXPECT_EQ(four.stats.candidates, one.stats.candidates);
  EXPECT_EQ(four.stats.certified_by_first, one.stats.certified_by_first);
  EXPECT_EQ(four.stats.certified_by_second, one.stats.certified_by_second);
  EXPECT_EQ(four.stats.by_method, one.stats.by_method);
  EXPECT_EQ(four.stats.distinct_classes, one.stats.distinct_classes);
}

TEST(Indecomposability, DecomposableClassReportsMinimalWitness) {
  auto ctx = make_context(5);
  auto x1y2 = wedge(generator_x(ctx, 1), generator_y(ctx, 2));
  auto x3y4 = wedge(generator_x(ctx, 3), generator_y(ctx, 4));
  BrauerClassSpec spec(x1y2 + x3y4, 2);
  auto res = indecomposability_test(spec, 4, BoundOptions{}, 1);
  ASSERT_FALSE(res.indecomposable);
  ASSERT_TRUE(res.witness_index.has_value());
  expect_consistent(res.stats);
  EXPECT_EQ(res.stats.candidates, *res.witness_index + 1);
  EXPECT_EQ(res.stats.uncertified, 1u);
  // The witness c and b - c both have bounds below the target.
  auto c = BrauerClassSpec::from_coordinates(ctx, *res.witness, 2);
  auto rest = BrauerClassSpec(spec.form() - c.form(), 2);
  EXPECT_LT(index_lower_bound(c).lower_bound, 4);
  EXPECT_LT(index_lower_bound(rest).lower_bound, 4);
  // Every smaller index is certified, and x1^y2 is itself a failing candidate.
  EXPECT_EQ(res.stats.certified_by_first + res.stats.certified_by_second, *res.witness_index);
  EXPECT_LT(index_lower_bound(BrauerClassSpec(x1y2, 2)).lower_bound, 4);
  EXPECT_LT(index_lower_bound(BrauerClassSpec(x3y4, 2)).lower_bound, 4);
  auto multi = indecomposability_test(spec, 4, BoundOptions{}, 3);
  EXPECT_EQ(multi.witness_index, res.witness_index);
}

TEST(Indecomposability, RejectsTrivialInput) {
  auto ctx = make_context(2);
  EXPECT_THROW(indecomposability_test(BrauerClassSpec(theta(ctx), 2), 4, BoundOptions{}), Error);
  EXPECT_THROW(indecomposability_test(BrauerClassSpec(wedge(generator_x(ctx, 1), generator_y(ctx, 2)), 2), 1, BoundOptions{}), Error);
}
