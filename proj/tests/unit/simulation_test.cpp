#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "unifit/errors.hpp"
#include "unifit/simulation.hpp"
#include "unifit/tables.hpp"

namespace unifit {
namespace {

SimulationConfig small(double alpha = 0.05) {
  SimulationConfig c;
  c.n = 30;
  c.alpha = alpha;
  c.reps = 400;
  c.seed = 3;
  return c;
}

TEST(SimulationConfig, Validation) {
  auto c = small();
  EXPECT_NO_THROW(c.validate());
  c.reps = 0;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = small(1.0);
  EXPECT_THROW(c.validate(), ArgumentError);
  c = small();
  c.censoring_target = 1.0;
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(RejectionRate, DeterministicAcrossWorkerCounts) {
  for (auto method : {Method::kDelta, Method::kKS, Method::kQ}) {
    auto c = small();
    c.dist = DistributionSpec::uniform(0.0, 1.0);
    c.workers = 1;
    const auto a = rejection_rate(c, method);
    c.workers = 4;
    const auto b = rejection_rate(c, method);
    EXPECT_EQ(a.rejections, b.rejections) << to_string(method);
  }
  auto c = small();
  c.censoring_target = 0.3;
  c.workers = 1;
  const auto a = rejection_rate(c, Method::kDeltaCensored);
  c.workers = 3;
  const auto b = rejection_rate(c, Method::kDeltaCensored);
  EXPECT_EQ(a.rejections, b.rejections);
  EXPECT_EQ(a.censored_fraction, b.censored_fraction);
}

TEST(RejectionRates, NestedLevels) {
  const std::vector<double> levels = {0.01, 0.05};
  auto c = small();
  c.dist = DistributionSpec::uniform(0.0, 1.2);
  for (auto method : {Method::kDelta, Method::kKS, Method::kFrozini}) {
    const auto rows = rejection_rates(c, method, levels);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_LE(rows[0].rejections, rows[1].rejections) << to_string(method);
    EXPECT_DOUBLE_EQ(rows[1].rate, static_cast<double>(rows[1].rejections) / c.reps);
  }
}

TEST(RejectionRate, UnsupportedCombinations) {
  auto c = small();
  c.censoring_target = 0.2;
  EXPECT_THROW(rejection_rate(c, Method::kKS), UnsupportedError);
  EXPECT_THROW(rejection_rate(small(), Method::kDeltaCensored), UnsupportedError);
}

TEST(RejectionRate, CensoringRowCarriesCalibration) {
  auto c = small();
  c.censoring_target = 0.2;
  const auto row = rejection_rate(c, Method::kDeltaCensored);
  ASSERT_TRUE(row.censoring_bound);
  EXPECT_NEAR(*row.censoring_bound, 2.5, 1e-6);
  ASSERT_TRUE(row.censored_fraction);
  EXPECT_NEAR(*row.censored_fraction, 0.2, 0.02);
}

TEST(AttachPublishedValue, FlagRule) {
  PowerRow row;
  row.reps = 10000;
  row.rate = 0.0560;
  attach_paper_value(row, 0.0500);  // 2 * 0.00218 + 0.003 = 0.00736
  EXPECT_FALSE(row.flagged);
  EXPECT_NEAR(*row.diff, 0.006, 1e-15);
  row.rate = 0.0580;
  attach_paper_value(row, 0.0500);
  EXPECT_TRUE(row.flagged);
}

TEST(MethodLabels, RoundTrip) {
  for (auto m : {Method::kDelta, Method::kKS, Method::kFrozini, Method::kSherman, Method::kQ,
                 Method::kQUpper})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("censored"), Method::kDeltaCensored);
  EXPECT_THROW(parse_method("AD"), ArgumentError);
}

TEST(Tables, LayoutsAndPublishedValues) {
  EXPECT_EQ(table_ids().size(), 8u);
  EXPECT_THROW(table_layout("T9"), ArgumentError);
  EXPECT_EQ(published_value("T1", "U(0,1)", Method::kDelta, 100, 0.05), 0.0502);
  EXPECT_EQ(published_value("T2", "U(0,1.2)", Method::kDelta, 50, 0.05), 0.9068);
  EXPECT_EQ(published_value("T7", "U(0,1)", Method::kDeltaCensored, 100, 0.05), 0.0489);
  EXPECT_EQ(published_value("T8", "U(0,1.2)", Method::kDeltaCensored, 50, 0.05), 0.6892);
  EXPECT_FALSE(published_value("T1", "U(0,1)", Method::kDelta, 30, 0.05));
  const auto t7 = table_layout("T7");
  ASSERT_TRUE(t7.censoring_target);
  EXPECT_EQ(*t7.censoring_target, 0.2);
  EXPECT_EQ(t7.sizes, (std::vector<std::size_t>{50, 75, 100, 200}));
}

TEST(Tables, JsonRoundTrip) {
  PowerTable t;
  t.id = "T1";
  t.title = "demo";
  PowerRow r;
  r.table = "T1";
  r.dist = "U(0,1)";
  r.method = "delta";
  r.n = 25;
  r.level = 0.05;
  r.rejections = 512;
  r.reps = 10000;
  r.seed = 7;
  r.rate = 0.0512;
  attach_paper_value(r, 0.0519);
  t.rows.push_back(r);
  r.method = "censored";
  r.censoring_target = 0.4;
  r.censoring_bound = 1.25;
  r.censored_fraction = 0.3987;
  r.paper_value.reset();
  r.diff.reset();
  t.rows.push_back(r);
  std::stringstream buf;
  write_table_json(buf, t);
  EXPECT_NE(buf.str().find("\"format_version\""), std::string::npos);
  const auto back = read_table_json(buf);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.id, "T1");
  EXPECT_EQ(back.rows[0].rate, 0.0512);
  EXPECT_EQ(back.rows[0].paper_value, 0.0519);
  EXPECT_EQ(back.rows[0].flagged, t.rows[0].flagged);
  EXPECT_EQ(back.rows[1].censoring_bound, 1.25);
  EXPECT_FALSE(back.rows[1].paper_value);

  std::ostringstream text;
  write_table_text(text, t);
  EXPECT_NE(text.str().find("delta"), std::string::npos);
  EXPECT_NE(text.str().find("cells flagged"), std::string::npos);
}

}  // namespace
}  // namespace unifit
