#pragma once

// Delimited-text panel loader (wide or long layout) with an explicit
// missing-value policy, plus the matching wide-layout writer.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/ordinal.hpp"

namespace cecp {

enum class PanelLayout { wide, long_format };
enum class MissingPolicy { drop, forward_fill };

inline const char* to_string(PanelLayout layout) noexcept { return layout == PanelLayout::wide ? "wide" : "long"; }
inline const char* to_string(MissingPolicy policy) noexcept {
  return policy == MissingPolicy::drop ? "drop" : "ffill";
}

struct PanelSource {
  std::string path;
  PanelLayout layout = PanelLayout::wide;
  std::string date_format = "%Y-%m-%d";
  MissingPolicy policy = MissingPolicy::drop;
  bool difference = false;
  char delimiter = ',';
};

inline std::optional<Date> parse_date(std::string_view text, const std::string& format) {
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, format.c_str());
  if (in.fail()) return std::nullopt;
  in >> std::ws;
  if (!in.eof()) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{tm.tm_year + 1900},
                                        std::chrono::month{static_cast<unsigned>(tm.tm_mon + 1)},
                                        std::chrono::day{static_cast<unsigned>(tm.tm_mday)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd};
}

inline std::string format_date(Date date, const std::string& format) {
  const std::chrono::year_month_day ymd{date};
  std::tm tm{};
  tm.tm_year = static_cast<int>(ymd.year()) - 1900;
  tm.tm_mon = static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
  tm.tm_mday = static_cast<int>(static_cast<unsigned>(ymd.day()));
  std::ostringstream out;
  out << std::put_time(&tm, format.c_str());
  return out.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

inline bool is_missing_marker(std::string_view s) noexcept {
  return s.empty() || s == "NA" || s == "NaN" || s == "nan" || s == "na" || s == "N/A";
}

[[noreturn]] inline void parse_failure(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse_error, (path.empty() ? std::string("<input>") : path) + ":" +
                                          std::to_string(line) + ": " + what);
}

// Missing marker -> nullopt; anything else must be a finite number.
inline std::optional<double> parse_value(std::string_view field, const std::string& path, std::size_t line) {
  if (is_missing_marker(field)) return std::nullopt;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    parse_failure(path, line, "invalid value '" + std::string(field) + "'");
  }
  return value;
}

struct Observation {
  Date date;
  std::optional<double> value;
  std::size_t line;
};

inline RawSeries build_series(std::string label, std::vector<Observation> obs, const PanelSource& src) {
  std::stable_sort(obs.begin(), obs.end(), [](const Observation& a, const Observation& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < obs.size(); ++i) {
    if (obs[i].date == obs[i - 1].date) {
      throw Error(ErrorKind::duplicate_date, "series '" + label + "' repeats date " +
                                                 format_date(obs[i].date, src.date_format) + " (line " +
                                                 std::to_string(obs[i].line) + ")");
    }
  }
  std::vector<double> values;
  std::vector<Date> dates;
  values.reserve(obs.size());
  dates.reserve(obs.size());
  std::optional<double> last;
  for (const auto& o : obs) {
    if (o.value) {
      last = o.value;
    } else if (src.policy == MissingPolicy::drop) {
      continue;
    } else if (!last) {
      throw Error(ErrorKind::parse_error,
                  "series '" + label + "' starts with a missing value; forward fill has nothing to repeat");
    }
    values.push_back(*last);
    dates.push_back(o.date);
  }
  if (src.difference) {
    if (values.size() < 2) {
      throw Error(ErrorKind::insufficient_data, "series '" + label + "' has fewer than 2 values to difference");
    }
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
    dates.erase(dates.begin());
  }
  if (values.empty()) {
    throw Error(ErrorKind::insufficient_data, "series '" + label + "' is empty after applying the missing-value policy");
  }
  return RawSeries(std::move(values), std::move(label), std::move(dates));
}

}  // namespace detail

/// One RawSeries per column (wide) or label (long), in order of first
/// appearance, each sorted by date.
inline std::vector<RawSeries> load_panel(std::istream& in, const PanelSource& src) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      for (auto f : detail::split(line, src.delimiter)) header.emplace_back(f);
      break;
    }
  }
  if (header.empty()) detail::parse_failure(src.path, line_no, "missing header row");

  std::vector<std::string> labels;
  std::map<std::string, std::vector<detail::Observation>> by_label;

  if (src.layout == PanelLayout::wide) {
    if (header.size() < 2) detail::parse_failure(src.path, line_no, "wide layout needs a date column and at least one series");
    labels.assign(header.begin() + 1, header.end());
    for (const auto& l : labels) {
      if (l.empty()) detail::parse_failure(src.path, line_no, "empty series name in header");
      if (!by_label.emplace(l, std::vector<detail::Observation>{}).second) {
        detail::parse_failure(src.path, line_no, "duplicate series name '" + l + "'");
      }
    }
  } else if (header.size() != 3) {
    detail::parse_failure(src.path, line_no, "long layout needs exactly three columns (date, label, value)");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, src.delimiter);
    if (fields.size() != header.size()) {
      detail::parse_failure(src.path, line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                                   std::to_string(fields.size()));
    }
    const auto date = parse_date(fields[0], src.date_format);
    if (!date) detail::parse_failure(src.path, line_no, "invalid date '" + std::string(fields[0]) + "'");
    if (src.layout == PanelLayout::wide) {
      for (std::size_t c = 1; c < fields.size(); ++c) {
        by_label[labels[c - 1]].push_back({*date, detail::parse_value(fields[c], src.path, line_no), line_no});
      }
    } else {
      std::string label(fields[1]);
      if (label.empty()) detail::parse_failure(src.path, line_no, "empty series label");
      auto [it, inserted] = by_label.try_emplace(label);
      if (inserted) labels.push_back(label);
      it->second.push_back({*date, detail::parse_value(fields[2], src.path, line_no), line_no});
    }
  }

  std::vector<RawSeries> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(detail::build_series(l, std::move(by_label[l]), src));
  if (out.empty()) throw Error(ErrorKind::insufficient_data, "panel contains no series");
  return out;
}

inline std::vector<RawSeries> load_panel(const PanelSource& src) {
  std::ifstream in(src.path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + src.path + "'");
  return load_panel(in, src);
}

/// Writes series as a wide table keyed by the union of their dates.
/// Series without timestamps are dated consecutively from `first_day`.
/// Values use 17 significant digits so a reload reproduces them exactly.
inline void write_wide(std::ostream& out, std::span<const RawSeries> series, const std::string& date_format = "%Y-%m-%d",
                       Date first_day = Date{std::chrono::year{2001} / 1 / 2}, char delimiter = ',') {
  std::map<Date, std::vector<std::optional<double>>> rows;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto values = series[s].values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Date d = series[s].timestamps() ? (*series[s].timestamps())[i] : first_day + std::chrono::days{i};
      auto& row = rows[d];
      row.resize(series.size());
      row[s] = values[i];
    }
  }
  out << "date";
  for (const auto& s : series) out << delimiter << s.label();
  out << '\n';
  char buf[40];
  for (auto& [date, row] : rows) {
    row.resize(series.size());
    out << format_date(date, date_format);
    for (const auto& v : row) {
      out << delimiter;
      if (v) {
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        out << buf;
      }
    }
    out << '\n';
  }
}

}  // namespace cecp
