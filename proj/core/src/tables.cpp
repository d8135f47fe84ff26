#include "unifit/tables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>

#include "json.hpp"
#include "unifit/errors.hpp"

namespace unifit {

namespace {

// Published cells, one row per sample size, ten columns each:
//   T1-T6: (delta, KS, Frozini, Sherman, Q) x (1%, 5%)
//   T7-T8: (U(0,1), U(0,1.2), Exp(1), Weibull(1,2), Pareto(1,1)) x (1%, 5%)
using Row = std::array<double, 10>;

const std::map<std::string, std::vector<Row>, std::less<>>& published() {
  static const std::map<std::string, std::vector<Row>, std::less<>> cells = {
      {"T1",
       {{0.0108, 0.0546, 0.0113, 0.0486, 0.0108, 0.0513, 0.0109, 0.0516, 0.0085, 0.0475},
        {0.0106, 0.0534, 0.0108, 0.0491, 0.0094, 0.0464, 0.0088, 0.0485, 0.0113, 0.0483},
        {0.0104, 0.0492, 0.0096, 0.0509, 0.0104, 0.0474, 0.0095, 0.0498, 0.0108, 0.0511},
        {0.0102, 0.0502, 0.0103, 0.0508, 0.0102, 0.0486, 0.0095, 0.0502, 0.0096, 0.0504}}},
      {"T2",
       {{0.5335, 0.6950, 0.2374, 0.3221, 0.2643, 0.4635, 0.6012, 0.7182, 0.6721, 0.7682},
        {0.8146, 0.9068, 0.3282, 0.5927, 0.4956, 0.7171, 0.8932, 0.9321, 0.8934, 0.9302},
        {0.9285, 0.9682, 0.5599, 0.7997, 0.6682, 0.8562, 0.9431, 0.9732, 0.9473, 0.9651},
        {0.9882, 0.9921, 0.7481, 0.9212, 0.8036, 0.9387, 0.9865, 0.9921, 0.9832, 0.9972}}},
      {"T3",
       {{0.9998, 0.9999, 0.7744, 0.8925, 0.9939, 0.9981, 0.9982, 1.0, 0.9999, 1.0},
        {1.0, 1.0, 0.9851, 0.9976, 0.9998, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 0.9999, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
      {"T4",
       {{0.9999, 1.0, 0.7841, 0.8981, 0.9994, 0.9988, 0.9999, 1.0, 0.9999, 1.0},
        {1.0, 1.0, 0.9863, 0.9974, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 0.9997, 0.9999, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
      {"T5",
       {{0.9999, 1.0, 0.7789, 0.8982, 0.9943, 0.9983, 0.9999, 1.0, 0.9999, 1.0},
        {1.0, 1.0, 0.9846, 0.9980, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 0.9999, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
      {"T6",
       {{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
      {"T7",
       {{0.0088, 0.0474, 0.6993, 0.8303, 0.9999, 1.0, 1.0, 1.0, 1.0, 1.0},
        {0.0096, 0.0506, 0.8635, 0.9387, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {0.0106, 0.0489, 0.9397, 0.9761, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
        {0.0106, 0.0499, 0.9984, 0.9995, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
      {"T8",
       {{0.0079, 0.0469, 0.5174, 0.6892, 0.9771, 0.9856, 1.0, 1.0, 1.0, 1.0},
        {0.0091, 0.0488, 0.6537, 0.8112, 0.9972, 0.9982, 1.0, 1.0, 1.0, 1.0},
        {0.0109, 0.0508, 0.8025, 0.9209, 0.9996, 0.9998, 1.0, 1.0, 1.0, 1.0},
        {0.0103, 0.0502, 0.9839, 0.9963, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}}},
  };
  return cells;
}

TableLayout complete_layout(std::string id, std::string title, DistributionSpec dist) {
  return {std::move(id),
          std::move(title),
          {dist},
          {Method::kDelta, Method::kKS, Method::kFrozini, Method::kSherman, Method::kQ},
          {25, 50, 75, 100},
          {0.01, 0.05},
          std::nullopt};
}

TableLayout censored_layout(std::string id, std::string title, double target) {
  return {std::move(id),
          std::move(title),
          {DistributionSpec::uniform(0, 1), DistributionSpec::uniform(0, 1.2),
           DistributionSpec::exponential(1), DistributionSpec::weibull(1, 2),
           DistributionSpec::pareto(1, 1)},
          {Method::kDeltaCensored},
          {50, 75, 100, 200},
          {0.01, 0.05},
          target};
}

template <typename T>
std::optional<std::size_t> index_of(const std::vector<T>& v, const T& x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8"};
  return ids;
}

TableLayout table_layout(std::string_view id) {
  if (id == "T1")
    return complete_layout("T1", "Empirical type I error", DistributionSpec::uniform(0, 1));
  if (id == "T2")
    return complete_layout("T2", "Empirical power: U(0,1.2)", DistributionSpec::uniform(0, 1.2));
  if (id == "T3")
    return complete_layout("T3", "Empirical power: Exp(1)", DistributionSpec::exponential(1));
  if (id == "T4")
    return complete_layout("T4", "Empirical power: Gamma(1,2)", DistributionSpec::gamma(1, 2));
  if (id == "T5")
    return complete_layout("T5", "Empirical power: Weibull(1,2)", DistributionSpec::weibull(1, 2));
  if (id == "T6")
    return complete_layout("T6", "Empirical power: Pareto(1,1)", DistributionSpec::pareto(1, 1));
  if (id == "T7")
    return censored_layout("T7", "Censored test, 20% censoring", 0.2);
  if (id == "T8")
    return censored_layout("T8", "Censored test, 40% censoring", 0.4);
  throw ArgumentError("unknown table '" + std::string(id) + "' (expected T1..T8)");
}

std::optional<double> published_value(std::string_view id, const std::string& dist_display,
                                      Method method, std::size_t n, double level) {
  const auto& cells = published();
  const auto it = cells.find(id);
  if (it == cells.end()) return std::nullopt;
  const auto layout = table_layout(id);
  const auto row = index_of(layout.sizes, n);
  const auto lvl = index_of(layout.levels, level);
  if (!row || !lvl) return std::nullopt;
  std::optional<std::size_t> group;
  if (layout.censoring_target) {
    if (method != Method::kDeltaCensored) return std::nullopt;
    for (std::size_t d = 0; d < layout.dists.size(); ++d)
      if (layout.dists[d].display_name() == dist_display) group = d;
  } else {
    if (layout.dists.front().display_name() != dist_display) return std::nullopt;
    group = index_of(layout.methods, method);
  }
  if (!group) return std::nullopt;
  return it->second[*row][*group * 2 + *lvl];
}

PowerTable reproduce_table(std::string_view id, std::size_t reps, std::uint64_t seed,
                           unsigned workers, CriticalValueCache* cache) {
  const auto layout = table_layout(id);
  PowerTable table;
  table.id = layout.id;
  table.title = layout.title;
  CriticalValueCache local;
  auto& store = cache != nullptr ? *cache : local;
  for (const auto& dist : layout.dists) {
    for (const auto method : layout.methods) {
      for (const auto n : layout.sizes) {
        SimulationConfig config;
        config.dist = dist;
        config.n = n;
        config.reps = reps;
        config.seed = seed;
        config.censoring_target = layout.censoring_target;
        config.workers = workers;
        for (auto& row : rejection_rates(config, method, layout.levels, &store)) {
          row.table = layout.id;
          if (auto p = published_value(layout.id, row.dist, method, n, row.level))
            attach_paper_value(row, *p);
          table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return table;
}

void write_table_text(std::ostream& out, const PowerTable& table) {
  out << table.id << ": " << table.title << '\n';
  out << "conventions: " << kParameterConventions << "; gamma sampler " << kGammaAlgorithm
      << "; Q region two-sided equal-tail\n";
  out << std::left << std::setw(14) << "dist" << std::setw(16) << "method" << std::right
      << std::setw(5) << "n" << std::setw(7) << "level" << std::setw(9) << "rate"
      << std::setw(9) << "paper" << std::setw(9) << "diff" << "  flag\n";
  out << std::fixed;
  for (const auto& r : table.rows) {
    out << std::left << std::setw(14) << r.dist << std::setw(16) << r.method << std::right
        << std::setw(5) << r.n << std::setw(7) << std::setprecision(2) << r.level
        << std::setw(9) << std::setprecision(4) << r.rate;
    if (r.paper_value) {
      out << std::setw(9) << *r.paper_value << std::setw(9) << std::showpos << *r.diff
          << std::noshowpos << (r.flagged ? "  *" : "");
    } else {
      out << std::setw(9) << "-" << std::setw(9) << "-";
    }
    out << '\n';
  }
  const auto flagged =
      std::count_if(table.rows.begin(), table.rows.end(), [](const PowerRow& r) { return r.flagged; });
  out << flagged << " of " << table.rows.size() << " cells flagged\n";
  out.unsetf(std::ios::fixed);
}

void write_table_json(std::ostream& out, const PowerTable& table) {
  using nlohmann::json;
  json cells = json::array();
  for (const auto& r : table.rows) {
    json c = {{"table", r.table},   {"dist", r.dist},
              {"method", r.method}, {"n", r.n},
              {"level", r.level},   {"rate", r.rate},
              {"rejections", r.rejections}, {"reps", r.reps},
              {"seed", r.seed},     {"undefined", r.undefined},
              {"flag", r.flagged}};
    c["paper_value"] = r.paper_value ? json(*r.paper_value) : json(nullptr);
    c["diff"] = r.diff ? json(*r.diff) : json(nullptr);
    if (r.censoring_target) {
      c["censoring_target"] = *r.censoring_target;
      c["censoring_bound"] = *r.censoring_bound;
      c["censored_fraction"] = *r.censored_fraction;
    }
    cells.push_back(std::move(c));
  }
  json doc = {{"format_version", kTableFormatVersion},
              {"table", table.id},
              {"title", table.title},
              {"conventions", kParameterConventions},
              {"gamma_algorithm", kGammaAlgorithm},
              {"q_region", "two-sided equal-tail"},
              {"cells", std::move(cells)}};
  out << doc.dump(2) << '\n';
}

PowerTable read_table_json(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  if (doc.at("format_version").get<int>() != kTableFormatVersion)
    throw ArgumentError("unsupported table format_version");
  PowerTable t;
  t.id = doc.at("table").get<std::string>();
  t.title = doc.at("title").get<std::string>();
  for (const auto& c : doc.at("cells")) {
    PowerRow r;
    r.table = c.at("table").get<std::string>();
    r.dist = c.at("dist").get<std::string>();
    r.method = c.at("method").get<std::string>();
    r.n = c.at("n").get<std::size_t>();
    r.level = c.at("level").get<double>();
    r.rate = c.at("rate").get<double>();
    r.rejections = c.at("rejections").get<std::size_t>();
    r.reps = c.at("reps").get<std::size_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.undefined = c.at("undefined").get<std::size_t>();
    r.flagged = c.at("flag").get<bool>();
    if (!c.at("paper_value").is_null()) r.paper_value = c["paper_value"].get<double>();
    if (!c.at("diff").is_null()) r.diff = c["diff"].get<double>();
    if (c.contains("censoring_target")) {
      r.censoring_target = c["censoring_target"].get<double>();
      r.censoring_bound = c.at("censoring_bound").get<double>();
      r.censored_fraction = c.at("censored_fraction").get<double>();
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace unifit
