#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "dataset.hpp"
#include "report.hpp"
#include "unifit/censored.hpp"
#include "unifit/classical.hpp"
#include "unifit/delta_test.hpp"
#include "unifit/distribution.hpp"
#include "unifit/errors.hpp"
#include "unifit/random.hpp"
#include "unifit/simulation.hpp"
#include "unifit/tables.hpp"

namespace unifit::cli {

namespace {

struct TestArgs {
  std::string file;
  std::string method = "delta";
  double alpha = 0.05;
  std::string standardize = "none";
  std::string out;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  std::string variance = "corrected";
  std::string weights = "left";
};

struct SimulateArgs {
  std::string table;
  std::string dist;
  std::size_t n = 0;
  double alpha = 0.05;
  std::string method = "delta";
  double censoring = 0.0;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
};

struct CalibrateArgs {
  std::string dist;
  double target = 0.0;
  std::size_t pairs = 100000;
  std::uint64_t seed = 1;
};

int exit_for(const Report& r) { return r.rejected() ? kExitReject : kExitAccept; }

void emit(const Report& report, const std::string& out_path, std::ostream& out) {
  validate_report(report);
  write_report_text(out, report);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw ArgumentError("cannot write '" + out_path + "'");
    write_report_json(f, report);
  }
}

bool outside_unit_interval(const std::vector<double>& v) {
  return std::any_of(v.begin(), v.end(), [](double x) { return x < 0.0 || x > 1.0; });
}

CensoredOptions censored_options(const TestArgs& a) {
  CensoredOptions o;
  if (a.variance == "corrected") {
    o.variance = VarianceFormula::kCorrected;
  } else if (a.variance == "paper-literal") {
    o.variance = VarianceFormula::kPaperLiteral;
  } else {
    throw ArgumentError("--variance must be corrected or paper-literal");
  }
  if (a.weights == "left") {
    o.weights = WeightConvention::kLeftLimit;
  } else if (a.weights == "right") {
    o.weights = WeightConvention::kRightContinuous;
  } else {
    throw ArgumentError("--weights must be left or right");
  }
  return o;
}

int run_censored(const TestArgs& a, const DatasetFile& data, std::ostream& out) {
  if (!data.censored())
    throw ArgumentError("test-censored needs a 'time,status' file; use 'test' for complete data");
  const auto std_mode = Standardization::parse(a.standardize);
  const auto times = std_mode.apply(data.times);
  const CensoredSample sample(times, *data.statuses);
  const auto result = censored_test(sample, a.alpha, censored_options(a));
  auto report = make_report(result, sample.size(), std_mode.describe());
  report.events = sample.event_count();
  if (a.variance != "corrected") report.warnings.push_back("variance formula: " + a.variance);
  emit(report, a.out, out);
  return exit_for(report);
}

int cmd_test(const TestArgs& a, std::ostream& out, std::ostream& err) {
  const auto data = read_dataset_file(a.file);
  const auto method = parse_method(a.method);
  if (method == Method::kDeltaCensored) return run_censored(a, data, out);
  if (data.censored())
    throw UnsupportedError("file has a status column; censored data is supported only by the "
                           "censored delta test (unifit test-censored)");

  const auto std_mode = Standardization::parse(a.standardize);
  const auto values = std_mode.apply(data.times);
  const Sample sample(values);
  const auto ordered = sort_sample(sample);
  std::vector<std::string> warnings;
  if (outside_unit_interval(values)) {
    if (method == Method::kDelta || method == Method::kKS) {
      warnings.push_back(
          "observations fall outside [0,1]; the statistic is computed as-is (consider "
          "--standardize minmax or --standardize range:a,b)");
      err << "warning: " << warnings.back() << '\n';
    } else {
      throw DomainError(std::string(to_string(method)) +
                        " needs data in [0,1]; rerun with --standardize minmax or range:a,b");
    }
  }

  Report report;
  if (method == Method::kDelta) {
    report = make_report(delta_test(ordered, a.alpha), sample.size(), std_mode.describe());
  } else {
    const auto cm = to_classical(method);
    const auto null = null_distribution(cm, sample.size(), a.reps, a.seed);
    const auto result = classical_test(cm, ordered, a.alpha, null);
    auto cache = CriticalValueCache::from_environment();
    if (!cache.find(to_string(cm), sample.size(), a.alpha, a.reps, a.seed))
      cache.insert(critical_values_from(cm, sample.size(), a.alpha, a.seed, null));
    report = make_report(result, sample.size(), std_mode.describe());
    report.seed = a.seed;
    report.reps = a.reps;
  }
  report.warnings = warnings;
  emit(report, a.out, out);
  return exit_for(report);
}

void write_outputs(const PowerTable& table, const std::string& prefix, std::ostream& out) {
  write_table_text(out, table);
  if (prefix.empty()) return;
  std::ofstream text(prefix + ".txt");
  std::ofstream json(prefix + ".json");
  if (!text || !json) throw ArgumentError("cannot write outputs with prefix '" + prefix + "'");
  write_table_text(text, table);
  write_table_json(json, table);
}

int cmd_simulate(const SimulateArgs& a, bool custom_censoring, std::ostream& out) {
  auto cache = CriticalValueCache::from_environment();
  if (!a.table.empty()) {
    const auto table = reproduce_table(a.table, a.reps, a.seed, a.workers, &cache);
    write_outputs(table, a.out, out);
    return 0;
  }
  if (a.dist.empty() || a.n == 0)
    throw ArgumentError("simulate needs --table, or --dist and --n for a single cell");
  SimulationConfig config;
  config.dist = DistributionSpec::parse(a.dist);
  config.n = a.n;
  config.alpha = a.alpha;
  config.reps = a.reps;
  config.seed = a.seed;
  config.workers = a.workers;
  if (custom_censoring) config.censoring_target = a.censoring;
  const auto method = parse_method(a.method);
  auto row = rejection_rate(config, method, &cache);
  for (const auto& id : table_ids()) {
    const auto layout = table_layout(id);
    if (layout.censoring_target != config.censoring_target) continue;
    if (auto p = published_value(id, row.dist, method, row.n, row.level)) {
      row.table = id;
      attach_paper_value(row, *p);
      break;
    }
  }
  PowerTable table;
  table.id = "custom";
  table.title = "single cell";
  table.rows.push_back(row);
  write_outputs(table, a.out, out);
  return 0;
}

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  const auto dist = DistributionSpec::parse(a.dist);
  const double c = calibrate_censoring(dist, a.target);
  std::size_t censored = 0;
  RandomStream stream(a.seed, StreamPurpose::kAdhoc, 0);
  for (std::size_t i = 0; i < a.pairs; ++i) {
    const double x = dist.draw(stream);
    const double cens = c * stream.uniform();
    censored += x > cens ? 1 : 0;
  }
  const auto flags = out.flags();
  out << std::setprecision(12);
  out << "distribution     " << dist.display_name() << '\n';
  out << "target P(X>C)    " << a.target << '\n';
  out << "c                " << c << '\n';
  out << "attained P(X>C)  " << censoring_probability(dist, c) << '\n';
  out << std::setprecision(6);
  out << "empirical        " << static_cast<double>(censored) / static_cast<double>(a.pairs)
      << " over " << a.pairs << " simulated pairs\n";
  out.flags(flags);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unifit: goodness-of-fit tests for the U(0,1) distribution"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Test a complete-data CSV (header 'time') for U(0,1)");
  test->add_option("file", test_args.file, "CSV file")->required();
  test->add_option("--method", test_args.method,
                   "delta, KS, Frozini, Sherman, Q, Q-upper (or censored)")
      ->capture_default_str();
  test->add_option("--alpha", test_args.alpha, "significance level")->capture_default_str();
  test->add_option("--standardize", test_args.standardize, "none, minmax or range:a,b")
      ->capture_default_str();
  test->add_option("--out", test_args.out, "also write the report as JSON");
  test->add_option("--reps", test_args.reps, "Monte Carlo reps for classical critical values")
      ->capture_default_str();
  test->add_option("--seed", test_args.seed, "Monte Carlo seed")->capture_default_str();

  TestArgs cens_args;
  auto* cens =
      app.add_subcommand("test-censored", "Test a right-censored CSV (header 'time,status')");
  cens->add_option("file", cens_args.file, "CSV file")->required();
  cens->add_option("--alpha", cens_args.alpha, "significance level")->capture_default_str();
  cens->add_option("--standardize", cens_args.standardize, "none, minmax or range:a,b")
      ->capture_default_str();
  cens->add_option("--out", cens_args.out, "also write the report as JSON");
  cens->add_option("--variance", cens_args.variance, "corrected or paper-literal")
      ->capture_default_str();
  cens->add_option("--weights", cens_args.weights, "left (K(Y-)) or right (K(Y))")
      ->capture_default_str();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo rejection rates");
  sim->add_option("--table", sim_args.table, "T1..T8");
  sim->add_option("--dist", sim_args.dist, "e.g. uniform:0,1.2, exp:1, gamma:1,2");
  sim->add_option("--n", sim_args.n, "sample size");
  sim->add_option("--alpha", sim_args.alpha, "level")->capture_default_str();
  sim->add_option("--method", sim_args.method, "test method")->capture_default_str();
  auto* censoring_opt =
      sim->add_option("--censoring", sim_args.censoring, "censoring target P(X>C) in (0,1)");
  sim->add_option("--reps", sim_args.reps, "replications")->capture_default_str();
  sim->add_option("--seed", sim_args.seed, "seed")->capture_default_str();
  sim->add_option("--workers", sim_args.workers, "threads, 0 = all cores")->capture_default_str();
  sim->add_option("--out", sim_args.out, "write <prefix>.txt and <prefix>.json");

  CalibrateArgs cal_args;
  auto* cal = app.add_subcommand("calibrate", "Censoring bound c with P(X>C) = target");
  cal->add_option("--dist", cal_args.dist, "lifetime distribution")->required();
  cal->add_option("--target", cal_args.target, "P(X>C)")->required();
  cal->add_option("--pairs", cal_args.pairs, "simulated pairs for the check")
      ->capture_default_str();
  cal->add_option("--seed", cal_args.seed, "seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (test->parsed()) return cmd_test(test_args, out, err);
    if (cens->parsed()) {
      return run_censored(cens_args, read_dataset_file(cens_args.file), out);
    }
    if (sim->parsed()) return cmd_simulate(sim_args, censoring_opt->count() > 0, out);
    if (cal->parsed()) return cmd_calibrate(cal_args, out);
  } catch (const DegenerateWeightError& e) {
    // Data rows start on line 2, after the header.
    err << "error: " << e.what() << " (CSV line " << e.index() + 2 << ")\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace unifit::cli
