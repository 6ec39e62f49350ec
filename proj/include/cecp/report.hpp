#pragma once

// Panel-level driver and the tabular / JSON serializations shared by the
// command-line tool. Numbers are printed with 12 significant digits.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "cecp/bounds.hpp"
#include "cecp/ingest.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/windows.hpp"

namespace cecp {

inline constexpr const char* kVersion = "0.1.0";

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// JSON numbers carry the same 12 significant digits as the text tables.
inline nlohmann::json json_number(double x) { return std::stod(format_number(x)); }

struct SeriesAnalysis {
  std::string label;
  std::size_t length = 0;
  std::optional<Date> first_date;
  std::optional<Date> last_date;
  std::vector<WindowResult> windows;
  std::vector<PeriodCluster> periods;

  friend bool operator==(const SeriesAnalysis&, const SeriesAnalysis&) = default;
};

inline SeriesAnalysis analyze_series(const RawSeries& series, const AnalysisConfig& cfg, unsigned threads = 1) {
  SeriesAnalysis out;
  out.label = series.label();
  out.length = series.size();
  if (const auto& ts = series.timestamps(); ts && !ts->empty()) {
    out.first_date = ts->front();
    out.last_date = ts->back();
  }
  out.windows = sliding_analysis(series, cfg, threads);
  out.periods = group_periods(out.windows, cfg.period_size);
  return out;
}

/// Analyzes every series (concurrently when threads > 1) and returns the
/// results ordered by label.
inline std::vector<SeriesAnalysis> analyze_panel(const std::vector<RawSeries>& panel, const AnalysisConfig& cfg,
                                                 unsigned threads = 1) {
  cfg.validate();
  std::vector<SeriesAnalysis> results(panel.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(panel.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < panel.size(); ++i) results[i] = analyze_series(panel[i], cfg, threads);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < panel.size(); i = next++) {
            try {
              results[i] = analyze_series(panel[i], cfg);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const SeriesAnalysis& a, const SeriesAnalysis& b) { return a.label < b.label; });
  return results;
}

struct RunManifest {
  std::string tool_version = kVersion;
  std::string input_path;
  std::string input_digest;  // sha256 of the input bytes, hex
  AnalysisConfig config;
  PanelSource source;
  double jitter_amplitude = 0.0;
  std::uint64_t jitter_seed = 0;
};

inline nlohmann::json manifest_json(const RunManifest& m, const std::vector<SeriesAnalysis>& analyses) {
  nlohmann::json j;
  j["tool"] = "cecp";
  j["version"] = m.tool_version;
  j["input"] = {{"path", m.input_path},
                {"sha256", m.input_digest},
                {"layout", to_string(m.source.layout)},
                {"date_format", m.source.date_format},
                {"delimiter", std::string(1, m.source.delimiter)}};
  j["preprocessing"] = {{"missing_policy", to_string(m.source.policy)},
                        {"difference", m.source.difference},
                        {"jitter_amplitude", m.jitter_amplitude},
                        {"jitter_seed", m.jitter_seed}};
  j["config"] = {{"dimension", m.config.dimension},
                 {"delay", m.config.delay},
                 {"window_length", m.config.window_length},
                 {"step", m.config.step},
                 {"period_size", m.config.period_size},
                 {"max_windows", m.config.max_windows ? nlohmann::json(*m.config.max_windows) : nlohmann::json()}};
  auto& series = j["series"] = nlohmann::json::array();
  for (const auto& a : analyses) {
    nlohmann::json s = {{"label", a.label}, {"length", a.length}, {"windows", a.windows.size()},
                        {"periods", a.periods.size()}};
    if (a.first_date) s["first_date"] = format_date(*a.first_date, m.source.date_format);
    if (a.last_date) s["last_date"] = format_date(*a.last_date, m.source.date_format);
    series.push_back(std::move(s));
  }
  return j;
}

inline void write_windows_csv(std::ostream& out, const std::vector<SeriesAnalysis>& analyses,
                              const std::string& date_format = "%Y-%m-%d") {
  out << "series_label,window_index,start_date,end_date,entropy,complexity,inefficiency\n";
  for (const auto& a : analyses) {
    for (const auto& w : a.windows) {
      out << a.label << ',' << w.index << ',' << (w.start_date ? format_date(*w.start_date, date_format) : "") << ','
          << (w.end_date ? format_date(*w.end_date, date_format) : "") << ','
          << format_number(w.quantifiers.entropy) << ',' << format_number(w.quantifiers.complexity) << ','
          << format_number(w.quantifiers.inefficiency) << '\n';
    }
  }
}

inline void write_periods_csv(std::ostream& out, const std::vector<SeriesAnalysis>& analyses) {
  out << "series_label,period_id,size,centroid_entropy,centroid_complexity\n";
  for (const auto& a : analyses) {
    for (const auto& p : a.periods) {
      out << a.label << ',' << p.period_id << ',' << p.members.size() << ',' << format_number(p.centroid_entropy)
          << ',' << format_number(p.centroid_complexity) << '\n';
    }
  }
}

/// Single-document form of the analysis: same record fields as the
/// text tables plus the manifest.
inline nlohmann::json analysis_json(const RunManifest& m, const std::vector<SeriesAnalysis>& analyses) {
  nlohmann::json j;
  j["manifest"] = manifest_json(m, analyses);
  auto& windows = j["windows"] = nlohmann::json::array();
  auto& periods = j["periods"] = nlohmann::json::array();
  for (const auto& a : analyses) {
    for (const auto& w : a.windows) {
      windows.push_back({{"series_label", a.label},
                         {"window_index", w.index},
                         {"start_date", w.start_date ? nlohmann::json(format_date(*w.start_date, m.source.date_format))
                                                     : nlohmann::json()},
                         {"end_date", w.end_date ? nlohmann::json(format_date(*w.end_date, m.source.date_format))
                                                 : nlohmann::json()},
                         {"entropy", json_number(w.quantifiers.entropy)},
                         {"complexity", json_number(w.quantifiers.complexity)},
                         {"inefficiency", json_number(w.quantifiers.inefficiency)}});
    }
    for (const auto& p : a.periods) {
      periods.push_back({{"series_label", a.label},
                         {"period_id", p.period_id},
                         {"size", p.members.size()},
                         {"centroid_entropy", json_number(p.centroid_entropy)},
                         {"centroid_complexity", json_number(p.centroid_complexity)}});
    }
  }
  return j;
}

inline void write_bounds_csv(std::ostream& out, const BoundCurve& lower, const BoundCurve& upper) {
  out << "kind,entropy,complexity\n";
  for (const auto* curve : {&lower, &upper}) {
    for (const auto& p : curve->points) {
      out << to_string(curve->kind) << ',' << format_number(p.entropy) << ',' << format_number(p.complexity) << '\n';
    }
  }
}

inline nlohmann::json bounds_json(const BoundCurve& lower, const BoundCurve& upper) {
  nlohmann::json j;
  j["alphabet_size"] = lower.alphabet_size;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto* curve : {&lower, &upper}) {
    for (const auto& p : curve->points) {
      rows.push_back({{"kind", to_string(curve->kind)},
                      {"entropy", json_number(p.entropy)},
                      {"complexity", json_number(p.complexity)}});
    }
  }
  return j;
}

}  // namespace cecp
