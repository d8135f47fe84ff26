// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here and are not configurable.
//
//   unifit_acceptance                 run every criterion
//   unifit_acceptance --criterion 7   run one
//   unifit_acceptance --seed 1        change the simulation seed

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli.hpp"
#include "report.hpp"
#include "unifit/censored.hpp"
#include "unifit/classical.hpp"
#include "unifit/delta_test.hpp"
#include "unifit/distribution.hpp"
#include "unifit/errors.hpp"
#include "unifit/random.hpp"
#include "unifit/simulation.hpp"
#include "unifit/tables.hpp"

namespace {

using namespace unifit;

constexpr std::size_t kReps = 10000;

// Collects detail lines; a criterion passes when no check failed.
class Checks {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    std::cout << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
  }
  void note(const std::string& what) { std::cout << "    note " << what << '\n'; }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, static_cast<double>(args)...);
  return buf;
}

std::string cell(const PowerRow& r) {
  std::ostringstream s;
  s << r.dist << ' ' << r.method << " n=" << r.n << " level=" << r.level;
  return s.str();
}

void check_near(Checks& c, const PowerRow& r, double target, double tol) {
  const double diff = r.rate - target;
  c.check(std::abs(diff) <= tol,
          cell(r) + fmt(": rate %.4f, target %.4f +- %.3f (diff %+.4f)", r.rate, target, tol, diff));
}

std::vector<double> uniform_values(RandomStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return v;
}

// 1. Closed form equals the pairwise U-statistic.
bool estimator_equivalence(std::uint64_t seed) {
  Checks c;
  const auto exp1 = DistributionSpec::exponential(1.0);
  double worst = 0.0;
  std::size_t samples = 0;
  for (std::uint64_t r = 0; r < 1500; ++r) {
    RandomStream rng(seed, StreamPurpose::kAdhoc, r);
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 199.0);
    std::vector<double> v(n);
    switch (r % 3) {
      case 0:
        for (auto& x : v) x = rng.uniform();
        break;
      case 1:
        for (auto& x : v) x = exp1.draw(rng);
        break;
      default:
        v.assign(n, rng.uniform());
        break;
    }
    const Sample s(v);
    worst = std::max(worst, std::abs(delta_orderstat(sort_sample(s)) - delta_ustat(s)));
    ++samples;
  }
  c.check(worst <= 1e-12, fmt("%.0f samples (U(0,1), Exp(1), constant), n in [2,200]: max |diff| %.3g <= 1e-12",
                              static_cast<double>(samples), worst));
  return c.ok();
}

// 2. Variance of sqrt(n) Delta-hat at n = 1000.
bool null_variance(std::uint64_t seed) {
  Checks c;
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::uint64_t r = 0; r < kReps; ++r) {
    RandomStream rng(seed, StreamPurpose::kAdhoc, r);
    const double z =
        std::sqrt(1000.0) * delta_orderstat(sort_sample(Sample(uniform_values(rng, 1000))));
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / kReps;
  const double var = (sum2 - kReps * mean * mean) / (kReps - 1.0);
  const double ratio = var / kDeltaNullVariance;
  c.check(std::abs(ratio - 1.0) <= 0.10,
          fmt("n=1000, 10^4 reps: variance %.5f vs 1/45 = %.5f (ratio %.3f, allowed 0.90..1.10)", var,
              kDeltaNullVariance, ratio));
  return c.ok();
}

// 3. Table 1: size of every test.
bool table1(std::uint64_t seed) {
  Checks c;
  const auto t = reproduce_table("T1", kReps, seed);
  for (const auto& r : t.rows) {
    if (!r.paper_value) continue;
    check_near(c, r, *r.paper_value, r.method == "delta" ? 0.008 : 0.010);
  }
  return c.ok();
}

// 4. Table 2: power against U(0,1.2).
bool table2(std::uint64_t seed) {
  Checks c;
  SimulationConfig cfg;
  cfg.dist = DistributionSpec::uniform(0.0, 1.2);
  cfg.reps = kReps;
  cfg.seed = seed;
  cfg.n = 50;
  check_near(c, rejection_rate(cfg, Method::kDelta), 0.9068, 0.02);
  cfg.n = 100;
  check_near(c, rejection_rate(cfg, Method::kDelta), 0.9921, 0.01);
  return c.ok();
}

// 5. Tables 3-6: delta test power on far alternatives.
bool tables3to6(std::uint64_t seed) {
  Checks c;
  const std::vector<double> levels = {0.01, 0.05};
  for (const char* id : {"T3", "T4", "T5", "T6"}) {
    const auto layout = table_layout(id);
    const bool pareto = std::string(id) == "T6";
    for (const auto& d : layout.dists) {
      for (std::size_t n : layout.sizes) {
        SimulationConfig cfg;
        cfg.dist = d;
        cfg.n = n;
        cfg.reps = kReps;
        cfg.seed = seed;
        for (const auto& r : rejection_rates(cfg, Method::kDelta, levels)) {
          if (pareto) {
            c.check(r.rejections == r.reps, cell(r) + fmt(": rate %.4f, required exactly 1.0000", r.rate));
          } else {
            c.check(r.rate >= 0.999, cell(r) + fmt(": rate %.4f, required >= 0.999", r.rate));
          }
        }
      }
    }
  }
  return c.ok();
}

// 6. Censoring calibration.
bool calibration(std::uint64_t seed) {
  Checks c;
  const auto u = DistributionSpec::uniform(0.0, 1.0);
  const double c2 = calibrate_censoring(u, 0.2);
  const double c4 = calibrate_censoring(u, 0.4);
  c.check(std::abs(c2 - 2.5) <= 1e-6, fmt("U(0,1) target 0.2: c = %.10f, analytic 2.5", c2));
  c.check(std::abs(c4 - 1.25) <= 1e-6, fmt("U(0,1) target 0.4: c = %.10f, analytic 1.25", c4));
  std::vector<DistributionSpec> dists;
  for (const char* id : {"T7", "T8"})
    for (const auto& d : table_layout(id).dists)
      if (std::find(dists.begin(), dists.end(), d) == dists.end()) dists.push_back(d);
  for (const auto& d : dists) {
    for (double target : {0.2, 0.4}) {
      const double bound = calibrate_censoring(d, target);
      RandomStream rng(seed, StreamPurpose::kAdhoc, 0);
      std::size_t censored = 0;
      for (int i = 0; i < 100000; ++i) {
        const double x = d.draw(rng);
        censored += x > bound * rng.uniform() ? 1 : 0;
      }
      const double frac = censored / 1e5;
      c.check(std::abs(frac - target) <= 0.01,
              d.display_name() + fmt(" target %.1f: c = %.6f, censored fraction over 10^5 pairs %.4f (+-0.01)",
                                     target, bound, frac));
    }
  }
  return c.ok();
}

// 7. Tables 7 and 8: censored test size and power.
bool tables7and8(std::uint64_t seed) {
  Checks c;
  SimulationConfig cfg;
  cfg.reps = kReps;
  cfg.seed = seed;
  cfg.alpha = 0.05;

  cfg.censoring_target = 0.2;
  cfg.dist = DistributionSpec::uniform(0.0, 1.0);
  const std::map<std::size_t, double> t7_size = {{50, 0.0474}, {75, 0.0506}, {100, 0.0489}, {200, 0.0499}};
  for (const auto& [n, target] : t7_size) {
    cfg.n = n;
    check_near(c, rejection_rate(cfg, Method::kDeltaCensored), target, 0.010);
  }
  cfg.dist = DistributionSpec::uniform(0.0, 1.2);
  cfg.n = 100;
  check_near(c, rejection_rate(cfg, Method::kDeltaCensored), 0.9761, 0.02);

  cfg.censoring_target = 0.4;
  cfg.dist = DistributionSpec::uniform(0.0, 1.0);
  cfg.n = 200;
  check_near(c, rejection_rate(cfg, Method::kDeltaCensored), 0.0502, 0.010);
  cfg.dist = DistributionSpec::uniform(0.0, 1.2);
  cfg.n = 100;
  check_near(c, rejection_rate(cfg, Method::kDeltaCensored), 0.9209, 0.025);
  return c.ok();
}

// 8. With no censoring the censored pipeline reduces to the delta test.
// Decisions are judged on U(0,1) samples, where 1/45 is the variance both
// standardizations estimate; a U(0,1.1) set is run and reported only.
struct ReductionTally {
  double worst = 0.0;
  std::size_t clear = 0;
  std::size_t close = 0;
  std::size_t disagree = 0;
};

ReductionTally reduction_run(std::uint64_t seed, std::uint64_t offset, double width, Checks& c) {
  const double z = normal_quantile(0.025);
  ReductionTally t;
  for (std::uint64_t r = 0; r < 500; ++r) {
    RandomStream rng(seed, StreamPurpose::kAdhoc, offset + r);
    const std::size_t n = 10 + static_cast<std::size_t>(rng.uniform() * 191.0);
    std::vector<double> x(n);
    for (auto& v : x) v = width * rng.uniform();
    const auto a = delta_test(Sample(x), 0.05);
    const auto b = censored_test(CensoredSample(x, std::vector<int>(n, 1)), 0.05);
    t.worst = std::max(t.worst, std::abs(a.statistic - b.statistic));
    const double ma = std::abs(a.standardized) - z;
    const double mb = std::abs(b.standardized) - z;
    if (std::abs(ma) > 0.1 && std::abs(mb) > 0.1) {
      ++t.clear;
      if (a.reject != b.reject) {
        ++t.disagree;
        c.note(fmt("width %.1f sample %.0f (n=%.0f): |z| fixed %.3f vs estimated %.3f", width,
                   static_cast<double>(r), static_cast<double>(n), std::abs(a.standardized),
                   std::abs(b.standardized)));
      }
    } else {
      ++t.close;
    }
  }
  return t;
}

bool reduction(std::uint64_t seed) {
  Checks c;
  const auto null = reduction_run(seed, 100000, 1.0, c);
  c.check(null.worst <= 1e-12,
          fmt("500 all-uncensored U(0,1) samples: max |Delta-hat diff| %.3g <= 1e-12", null.worst));
  c.check(null.disagree == 0, fmt("%.0f samples clear of the 0.1 margin, %.0f disagree in decision",
                                  static_cast<double>(null.clear), static_cast<double>(null.disagree)));
  c.note(fmt("%.0f samples inside the margin (reported, not judged)", static_cast<double>(null.close)));
  const auto alt = reduction_run(seed, 200000, 1.1, c);
  c.check(alt.worst <= 1e-12,
          fmt("500 all-uncensored U(0,1.1) samples: max |Delta-hat diff| %.3g <= 1e-12", alt.worst));
  c.note(fmt("U(0,1.1), reported only: %.0f clear, %.0f disagree, %.0f inside the margin",
             static_cast<double>(alt.clear), static_cast<double>(alt.disagree),
             static_cast<double>(alt.close)));
  return c.ok();
}

// 9. Worked examples by hand.
bool hand_oracles(std::uint64_t) {
  Checks c;
  const CensoredSample three({{1.0, 1}, {2.0, 0}, {3.0, 1}});
  const auto k = censoring_km(three);
  c.check(k.at(1.0) == 1.0 && k.at(1.999) == 1.0 && k.at(2.0) == 0.5 && k.at(5.0) == 0.5,
          "{(1,1),(2,0),(3,1)}: K = 1 before 2, 0.5 from 2 on");
  c.check(k.at(2.0, true) == 1.0 && k.at(2.0, false) == 0.5, "left limit at the jump 1.0, value 0.5");
  const double d = delta_c(three);
  c.check(std::abs(d - 8.0 / 3.0) <= 1e-15, fmt("Delta_c = %.17g, expected 8/3", d));
  const auto k2 = censoring_km(CensoredSample({{1.0, 0}, {2.0, 0}}));
  c.check(k2.at(0.5) == 1.0 && k2.at(1.0) == 0.5 && k2.at(1.5) == 0.5 && k2.at(2.0) == 0.0 &&
              k2.at(9.0) == 0.0,
          "{(1,0),(2,0)}: K = 1, then 0.5 on [1,2), then 0 on [2,inf)");
  return c.ok();
}

// 10. End-to-end CLI workflows on CSV files.
bool workflows(std::uint64_t) {
  Checks c;
  namespace fs = std::filesystem;
  const fs::path data = UNIFIT_TEST_DATA_DIR;
  const auto dir = fs::temp_directory_path() / "unifit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(args, out, err);
  };
  const auto smiling = (data / "smiling_times.csv").string();
  const auto equipment = (data / "equipment_lifetimes.csv").string();
  c.check(run({"test", smiling}) == cli::kExitReject, "complete data on (0,23), raw: reject, exit 1");
  c.check(run({"test", smiling, "--standardize", "range:0,23"}) == cli::kExitAccept,
          "same data with --standardize range:0,23: accept, exit 0");
  c.check(run({"test", (data / "grid.csv").string()}) == cli::kExitAccept, "grid 0.1..0.9: accept, exit 0");

  const auto json = (dir / "censored.json").string();
  const int code = run({"test-censored", equipment, "--out", json});
  bool report_ok = false;
  if (code == cli::kExitAccept || code == cli::kExitReject) {
    std::ifstream in(json);
    const auto rep = cli::read_report_json(in);
    report_ok = rep.n == 10 && rep.events == 7u &&
                (rep.rejected() ? cli::kExitReject : cli::kExitAccept) == code;
  }
  c.check(report_ok, "10 rows, 3 censored: report written, exit code matches decision");

  std::ofstream(dir / "one.csv") << "time,status\n0.4,1\n";
  c.check(run({"test-censored", (dir / "one.csv").string()}) == cli::kExitError,
          "single uncensored row: sample-size error, exit 2");
  std::ofstream(dir / "bad.csv") << "time\n0.1\n0;2\n";
  c.check(run({"test", (dir / "bad.csv").string()}) == cli::kExitError, "malformed row: exit 2");
  c.check(run({"test", equipment, "--method", "KS"}) == cli::kExitError,
          "censored file with a classical method: exit 2");
  c.check(run({"simulate", "--table", "T9"}) == cli::kExitError, "unknown table: exit 2");
  c.check(run({"calibrate", "--dist", "uniform:0,1", "--target", "1.5"}) == cli::kExitError,
          "unattainable censoring target: exit 2");
  fs::remove_all(dir);
  return c.ok();
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::uint64_t)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unifit acceptance suite"};
  int only = 0;
  std::uint64_t seed = 1;
  app.add_option("--criterion", only, "run a single criterion (1-10)");
  app.add_option("--seed", seed, "simulation seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "estimator equivalence", estimator_equivalence},
      {2, "null variance of sqrt(n) Delta-hat", null_variance},
      {3, "Table 1 type I error", table1},
      {4, "Table 2 power against U(0,1.2)", table2},
      {5, "Tables 3-6 delta power", tables3to6},
      {6, "censoring calibration", calibration},
      {7, "Tables 7-8 censored size and power", tables7and8},
      {8, "reduction identity", reduction},
      {9, "hand oracles", hand_oracles},
      {10, "CLI workflows and exit codes", workflows},
  };

  bool all = true;
  bool ran = false;
  for (const auto& cr : criteria) {
    if (only != 0 && cr.id != only) continue;
    ran = true;
    std::cout << "criterion " << cr.id << ": " << cr.title << '\n';
    bool ok = false;
    try {
      ok = cr.run(seed);
    } catch (const std::exception& e) {
      std::cout << "    error " << e.what() << '\n';
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << std::endl;
    all = all && ok;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all ? 0 : 1;
}
