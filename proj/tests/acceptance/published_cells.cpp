// Per-operation examples whose expected values are published table cells.
// All runs use 10^4 replications and seed 1.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "unifit/simulation.hpp"
#include "unifit/tables.hpp"

namespace unifit {
namespace {

constexpr std::size_t kReps = 10000;
constexpr std::uint64_t kSeed = 1;

PowerRow cell(const DistributionSpec& d, std::size_t n, double alpha, Method m,
              std::optional<double> censoring = std::nullopt) {
  SimulationConfig c;
  c.dist = d;
  c.n = n;
  c.alpha = alpha;
  c.reps = kReps;
  c.seed = kSeed;
  c.censoring_target = censoring;
  return rejection_rate(c, m);
}

const auto kU1 = DistributionSpec::uniform(0.0, 1.0);
const auto kU12 = DistributionSpec::uniform(0.0, 1.2);

TEST(DeltaTestPublished, Table1SizeAtN100) {
  EXPECT_NEAR(cell(kU1, 100, 0.05, Method::kDelta).rate, 0.0502, 0.006);
}

TEST(DeltaTestPublished, Table2PowerAtN100) {
  EXPECT_NEAR(cell(kU12, 100, 0.05, Method::kDelta).rate, 0.9921, 0.01);
}

TEST(RejectionRatePublished, Table1SizeAtN50) {
  EXPECT_NEAR(cell(kU1, 50, 0.05, Method::kDelta).rate, 0.0534, 0.008);
}

TEST(RejectionRatePublished, Table3ExponentialAtN25) {
  EXPECT_NEAR(cell(DistributionSpec::exponential(1.0), 25, 0.01, Method::kDelta).rate, 0.9998, 0.002);
}

TEST(RejectionRatePublished, Table8PowerAtN50) {
  EXPECT_NEAR(cell(kU12, 50, 0.05, Method::kDeltaCensored, 0.4).rate, 0.6892, 0.02);
}

TEST(DeltaCPublished, Table7SizeAtN100) {
  EXPECT_NEAR(cell(kU1, 100, 0.05, Method::kDeltaCensored, 0.2).rate, 0.0489, 0.008);
}

TEST(CensoredTestPublished, Table7PowerAtN200) {
  EXPECT_NEAR(cell(kU12, 200, 0.05, Method::kDeltaCensored, 0.2).rate, 0.9995, 0.003);
}

TEST(CensoredTestPublished, Table8SizeAtN100) {
  EXPECT_NEAR(cell(kU1, 100, 0.05, Method::kDeltaCensored, 0.4).rate, 0.0508, 0.008);
}

TEST(ReproduceTablePublished, Table1DeltaColumn) {
  const auto t = reproduce_table("T1", kReps, kSeed);
  int checked = 0;
  for (const auto& r : t.rows) {
    if (r.method != "delta") continue;
    ASSERT_TRUE(r.paper_value);
    EXPECT_NEAR(r.rate, *r.paper_value, 0.008) << "n=" << r.n << " level=" << r.level;
    ++checked;
  }
  EXPECT_EQ(checked, 8);
}

TEST(ClassicalPublished, Table1CompetitorSizes) {
  const auto t = reproduce_table("T1", kReps, kSeed);
  for (const auto& r : t.rows) {
    if (r.method == "delta") continue;
    ASSERT_TRUE(r.paper_value);
    EXPECT_NEAR(r.rate, *r.paper_value, 0.008) << r.method << " n=" << r.n << " level=" << r.level;
  }
}

TEST(ReproduceTablePublished, Table6AllOnes) {
  const auto t = reproduce_table("T6", kReps, kSeed);
  ASSERT_EQ(t.rows.size(), 40u);
  for (const auto& r : t.rows)
    EXPECT_EQ(r.rejections, r.reps) << r.method << " n=" << r.n << " level=" << r.level;
}

TEST(CmdSimulatePublished, Table1DiffReport) {
  const auto prefix = (std::filesystem::temp_directory_path() / "unifit_published_t1").string();
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cli::run({"simulate", "--table", "T1", "--reps", "10000", "--seed", "7", "--out", prefix},
                     out, err),
            0)
      << err.str();
  std::ifstream json(prefix + ".json");
  const auto t = read_table_json(json);
  int delta_cells = 0;
  for (const auto& r : t.rows) {
    if (r.method != "delta") continue;
    ++delta_cells;
    EXPECT_TRUE(r.paper_value && r.diff);
  }
  EXPECT_EQ(delta_cells, 8);
  EXPECT_NE(out.str().find("diff"), std::string::npos);
  std::filesystem::remove(prefix + ".json");
  std::filesystem::remove(prefix + ".txt");
}

TEST(CmdSimulatePublished, Table2SingleCell) {
  std::ostringstream out;
  std::ostringstream err;
  const auto prefix = (std::filesystem::temp_directory_path() / "unifit_published_cell").string();
  ASSERT_EQ(cli::run({"simulate", "--dist", "uniform:0,1.2", "--n", "50", "--alpha", "0.05", "--reps",
                      "10000", "--seed", "7", "--method", "delta", "--out", prefix},
                     out, err),
            0);
  std::ifstream json(prefix + ".json");
  const auto t = read_table_json(json);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(t.rows[0].rate, 0.9068, 0.02);
  std::filesystem::remove(prefix + ".json");
  std::filesystem::remove(prefix + ".txt");
}

}  // namespace
}  // namespace unifit
