#include "brauer/campaign.hpp"
#include "brauer/forms.hpp"
#include "brauer/report.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace brauer;

TEST(Forms, WorkedExampleExpands) {
  auto ctx = make_context(4);
  auto x = [&](int i) { return generator_x(ctx, i); };
  auto y = [&](int i) { return generator_y(ctx, i); };
  auto f = parse_form("x1^y1 + x1^y3 + x2^y2 + x3^y1", ctx);
  EXPECT_EQ(f.form, wedge(x(1), y(1) + y(3)) + wedge(x(2), y(2)) + wedge(x(3), y(1)));
  EXPECT_EQ(f.terms.size(), 4u);
}

TEST(Forms, SmallCases) {
  auto ctx = make_context(1);
  EXPECT_EQ(parse_form("2*x1^y1", ctx).form, theta(ctx) * Rational(2));
  EXPECT_TRUE(parse_form("x1^x1", ctx).form.is_zero());
  EXPECT_TRUE(parse_form("0", ctx).form.is_zero());
  EXPECT_EQ(parse_form("y1^x1", ctx).form, -theta(ctx));
  EXPECT_EQ(parse_form(" - 3 * x1 ^ y1 + x1^y1 ", ctx).form, theta(ctx) * Rational(-2));
  EXPECT_EQ(parse_form("x1^y1 - x1^y1", ctx).form, MultiVector(ctx));
}

TEST(Forms, ErrorsReportPositions) {
  auto expect_error_at = [](const std::string &text, int g, std::size_t pos) {
    try {
      parse_form(text, g);
      ADD_FAILURE() << "accepted " << text;
    } catch (const ParseError &e) {
      EXPECT_EQ(e.position(), pos) << text << ": " << e.what();
    }
  };
  expect_error_at("x1^y3", 2, 3);
  expect_error_at("x0^y1", 2, 0);
  expect_error_at("x1^z1", 2, 3);
  expect_error_at("x1 y1", 2, 3);
  expect_error_at("x1^y1 +", 2, 7);
  expect_error_at("2 x1^y1", 2, 2);
  expect_error_at("", 2, 0);
  expect_error_at("x1^y1 * 2", 2, 6);
  expect_error_at("--x1^y1", 2, 1);
}

TEST(Forms, PrintIsColexWithSigns) {
  auto ctx = make_context(3);
  EXPECT_EQ(print_form(parse_form("-2*x1^y2 + y1^x1 - x3^x3", ctx).form), "-x1^y1 - 2*x1^y2");
  EXPECT_EQ(print_form(MultiVector(ctx)), "0");
  EXPECT_EQ(print_form(parse_form("x2^y3 + x1^y1", ctx).form), "x1^y1 + x2^y3");
  EXPECT_THROW(print_form(generator_x(ctx, 1)), Error);
}

TEST(FormsProperty, ParsePrintFixpoint) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> gen_dim(1, 6), coin(0, 1), coef(1, 12), nterms(1, 8), space(0, 2);
  for (int t = 0; t < 200; ++t) {
    const int g = gen_dim(rng);
    std::uniform_int_distribution<int> sub(1, g);
    std::string text;
    auto pad = [&] { text += std::string(static_cast<std::size_t>(space(rng)), ' '); };
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
      pad();
      if (i > 0 || coin(rng)) text += coin(rng) ? "-" : (i > 0 ? "+" : "");
      pad();
      if (coin(rng)) text += std::to_string(coef(rng)) + "*";
      text += (coin(rng) ? "x" : "y") + std::to_string(sub(rng));
      pad();
      text += "^";
      text += (coin(rng) ? "x" : "y") + std::to_string(sub(rng));
      pad();
    }
    auto first = parse_form(text, g);
    auto printed = print_form(first.form);
    auto second = parse_form(printed, g);
    EXPECT_EQ(second.form, first.form) << text;
    EXPECT_EQ(print_form(second.form), printed) << text;
  }
}

TEST(Sampling, BoundedWeightDraws) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    auto v = draw_bounded_weight(rng, 28, 3, 6);
    ASSERT_EQ(v.size(), 28u);
    std::size_t w = 0;
    for (auto x : v) {
      EXPECT_GE(x, 0);
      EXPECT_LT(x, 3);
      w += x != 0;
    }
    EXPECT_LE(w, 6u);
  }
}

TEST(Sampling, WeightDistributionMatchesRejectionSampling) {
  // Length 4, n = 2, weight <= 2: 1 + 4 + 6 vectors, uniform over them.
  std::mt19937_64 rng(5);
  std::map<std::vector<std::int64_t>, int> counts;
  const int draws = 22000;
  for (int t = 0; t < draws; ++t) ++counts[draw_bounded_weight(rng, 4, 2, 2)];
  EXPECT_EQ(counts.size(), 11u);
  for (const auto &[v, c] : counts) EXPECT_NEAR(c, draws / 11.0, 200.0);
}

TEST(Campaign, SmallDimensionIsExhausted) {
  CampaignParameters par;
  par.g = 1;
  par.period = 2;
  par.weight_bound = 1;
  par.count = 5;
  auto res = sample_campaign(par);
  EXPECT_TRUE(res.exhausted);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].period, 1);
  EXPECT_EQ(res.records[0].form, "0");
}

TEST(Campaign, DeterministicAcrossRunsAndThreads) {
  CampaignParameters par;
  par.g = 3;
  par.period = 2;
  par.weight_bound = 4;
  par.count = 12;
  par.seed = 7;
  std::ostringstream a, b, c;
  write_csv(a, sample_campaign(par).records);
  write_csv(b, sample_campaign(par).records);
  par.threads = 4;
  write_csv(c, sample_campaign(par).records);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), c.str());
  par.seed = 8;
  std::ostringstream d;
  write_csv(d, sample_campaign(par).records);
  EXPECT_NE(a.str(), d.str());
}

TEST(Campaign, RecordsAreDistinctOrbitsWithConsistentBounds) {
  CampaignParameters par;
  par.g = 3;
  par.period = 2;
  par.weight_bound = 5;
  par.count = 20;
  par.seed = 3;
  auto res = sample_campaign(par);
  ASSERT_EQ(res.records.size(), 20u);
  std::set<std::string> forms;
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto &r = res.records[i];
    EXPECT_EQ(r.id, i);
    EXPECT_TRUE(forms.insert(r.form).second);
    if (i) {
      EXPECT_GT(r.sample_index, last);
    }
    last = r.sample_index;
    auto drawn = canonical_representative(BrauerClassSpec(parse_form(r.form, 3).form, r.period));
    EXPECT_EQ(r.hamming_weight, hamming_weight(drawn));
    bool light = false;
    for (std::int64_t k = 0; k < drawn.period(); ++k) {
      auto v = drawn.shifted(k);
      light = light || std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }) <= 5;
    }
    EXPECT_TRUE(light) << r.form;
    EXPECT_EQ(r.hotchkiss_bound, "skipped");
    Integer djp(r.djp_bound), refined(r.refined_bound), cap(r.cap);
    EXPECT_GE(refined, djp);
    EXPECT_TRUE(divides(djp, cap));
    EXPECT_TRUE(divides(refined, cap));
    EXPECT_EQ(print_form(drawn.context(), drawn.coordinates()), r.form);
  }
}

TEST(Campaign, OrbitUniformModeRuns) {
  CampaignParameters par;
  par.g = 2;
  par.period = 3;
  par.weight_bound = 3;
  par.count = 10;
  par.orbit_uniform = true;
  auto res = sample_campaign(par);
  EXPECT_EQ(res.records.size(), 10u);
}

TEST(Campaign, CsvHeaderMatchesRecordFields) {
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(), "id,g,period,form,hamming_weight,symbol_length,djp_bound,refined_bound,hotchkiss_bound,cap,"
                      "elapsed_ms,seed,sample_index\n");
}

TEST(Report, JsonSchema) {
  auto ctx = make_context(4);
  BrauerClassSpec spec(parse_form("x1^y1 + x1^y3 + x2^y2 + x3^y1", ctx).form, 2);
  auto j = to_json(spec, index_lower_bound(spec));
  for (const char *key : {"spec", "degrees", "lower_bound", "cap", "determined"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["lower_bound"], 8);
  EXPECT_EQ(j["determined"], true);
  for (const auto &d : j["degrees"])
    for (const char *key : {"d", "djp", "refined", "hotchkiss", "certificate"}) EXPECT_TRUE(d.contains(key)) << key;
  EXPECT_EQ(j["spec"]["form"].get<std::string>(), "x1^y1 + x2^y2 + y1^x3 + x1^y3");
}
