#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace unifit::cli {

/// Rows of a CSV dataset with header "time" or "time,status".
struct DatasetFile {
  std::vector<double> times;
  std::optional<std::vector<int>> statuses;  // present only with a status column

  bool censored() const noexcept { return statuses.has_value(); }
};

/// Strict reader: comma separator, one header row, '.' decimals, UTF-8 (a
/// leading BOM and CRLF line ends are accepted). Any other deviation throws
/// ParseError with the 1-based line number.
DatasetFile read_dataset(std::istream& in);
DatasetFile read_dataset_file(const std::string& path);

/// How data is mapped onto the unit interval before testing.
struct Standardization {
  enum class Kind { kNone, kRange, kMinMax };
  Kind kind = Kind::kNone;
  double a = 0.0;
  double b = 1.0;

  /// "none", "minmax" or "range:a,b" (b > a).
  static Standardization parse(const std::string& text);

  /// "none", "minmax" or "range(a,b)".
  std::string describe() const;

  /// range: x -> (x - a)/(b - a); minmax: x -> (x - min)/(max - min).
  /// Throws DegenerateDataError for minmax on constant data.
  std::vector<double> apply(const std::vector<double>& values) const;
};

}  // namespace unifit::cli
