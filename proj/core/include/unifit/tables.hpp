#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unifit/simulation.hpp"

namespace unifit {

/// Grid of one published table: T1-T6 compare the five complete-data tests
/// on one distribution; T7/T8 run the censored test on five distributions.
struct TableLayout {
  std::string id;
  std::string title;
  std::vector<DistributionSpec> dists;
  std::vector<Method> methods;
  std::vector<std::size_t> sizes;
  std::vector<double> levels;
  std::optional<double> censoring_target;
};

/// Known ids: T1 ... T8.
const std::vector<std::string>& table_ids();

/// Throws ArgumentError for an unknown id.
TableLayout table_layout(std::string_view id);

/// Published rejection rate for a cell, if the table lists one.
std::optional<double> published_value(std::string_view id, const std::string& dist_display,
                                      Method method, std::size_t n, double level);

/// Runs the full grid of a table and attaches the published values.
PowerTable reproduce_table(std::string_view id, std::size_t reps, std::uint64_t seed,
                           unsigned workers = 0, CriticalValueCache* cache = nullptr);

/// Structured output version written as "format_version".
inline constexpr int kTableFormatVersion = 1;

void write_table_text(std::ostream& out, const PowerTable& table);

/// One JSON document: run metadata plus one record per cell (table, dist,
/// method, n, level, rate, rejections, reps, seed, paper_value, diff, flag, ...).
void write_table_json(std::ostream& out, const PowerTable& table);
PowerTable read_table_json(std::istream& in);

}  // namespace unifit
