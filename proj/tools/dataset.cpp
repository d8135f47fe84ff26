#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "unifit/errors.hpp"

namespace unifit::cli {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_time(const std::string& raw, std::size_t line) {
  const auto cell = trim(raw);
  if (cell.empty()) throw ParseError(line, "blank time cell");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw ParseError(line, "time '" + cell + "' is not a number with '.' decimals");
  if (!std::isfinite(v)) throw ParseError(line, "time '" + cell + "' is not finite");
  return v;
}

int parse_status(const std::string& raw, std::size_t line) {
  const auto cell = trim(raw);
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  throw ParseError(line, "status '" + cell + "' must be 0 or 1");
}

}  // namespace

DatasetFile read_dataset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next()) throw ParseError(1, "empty file, expected a header row");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  auto header = split_commas(line);
  std::transform(header.begin(), header.end(), header.begin(), trim);
  DatasetFile data;
  if (header == std::vector<std::string>{"time"}) {
  } else if (header == std::vector<std::string>{"time", "status"}) {
    data.statuses.emplace();
  } else {
    throw ParseError(line_no, "header must be 'time' or 'time,status'");
  }
  const std::size_t columns = header.size();

  bool trailing_blank = false;
  while (next()) {
    if (trim(line).empty()) {
      trailing_blank = true;
      continue;
    }
    if (trailing_blank) throw ParseError(line_no - 1, "blank line inside data");
    const auto cells = split_commas(line);
    if (cells.size() != columns)
      throw ParseError(line_no, "expected " + std::to_string(columns) + " column(s), found " +
                                    std::to_string(cells.size()));
    data.times.push_back(parse_time(cells[0], line_no));
    if (data.statuses) data.statuses->push_back(parse_status(cells[1], line_no));
  }
  if (data.times.empty()) throw ParseError(line_no + 1, "no data rows");
  return data;
}

DatasetFile read_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return read_dataset(in);
}

Standardization Standardization::parse(const std::string& text) {
  Standardization s;
  if (text.empty() || text == "none") return s;
  if (text == "minmax") {
    s.kind = Kind::kMinMax;
    return s;
  }
  if (text.rfind("range:", 0) == 0) {
    const auto body = text.substr(6);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ArgumentError("--standardize range needs 'range:a,b'");
    auto number = [](const std::string& cell) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw ArgumentError("bad range bound '" + cell + "'");
      return v;
    };
    s.kind = Kind::kRange;
    s.a = number(body.substr(0, comma));
    s.b = number(body.substr(comma + 1));
    if (!(s.b > s.a)) throw ArgumentError("--standardize range:a,b needs b > a");
    return s;
  }
  throw ArgumentError("--standardize must be none, minmax or range:a,b");
}

std::string Standardization::describe() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kMinMax:
      return "minmax";
    case Kind::kRange: {
      std::ostringstream s;
      s.precision(17);
      s << "range(" << a << "," << b << ")";
      return s.str();
    }
  }
  return "none";
}

std::vector<double> Standardization::apply(const std::vector<double>& values) const {
  if (kind == Kind::kNone) return values;
  double lo = a;
  double hi = b;
  if (kind == Kind::kMinMax) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
    if (!(hi > lo)) throw DegenerateDataError("minmax standardization of constant data");
  }
  std::vector<double> out(values.size());
  const double width = hi - lo;
  std::transform(values.begin(), values.end(), out.begin(),
                 [&](double x) { return (x - lo) / width; });
  if (kind == Kind::kMinMax) {
    // Endpoints land exactly on 0 and 1.
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == lo) out[i] = 0.0;
      if (values[i] == hi) out[i] = 1.0;
    }
  }
  return out;
}

}  // namespace unifit::cli
