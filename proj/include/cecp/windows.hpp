#pragma once

// Sliding-window analysis: quantifiers per window, period clusters with
// centroids, and the per-window inefficiency trajectory.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/quantifiers.hpp"

namespace cecp {

struct AnalysisConfig {
  int dimension = 4;
  int delay = 1;
  std::size_t window_length = 300;
  std::size_t step = 20;
  std::size_t period_size = 16;
  std::optional<std::size_t> max_windows;  // unset: every full window

  void validate() const {
    detail::check_embedding(dimension, delay);
    const auto span = static_cast<std::size_t>(dimension - 1) * static_cast<std::size_t>(delay);
    if (window_length < span + 1) {
      throw Error(ErrorKind::invalid_input, "window length " + std::to_string(window_length) +
                                                " is shorter than one embedding vector");
    }
    if (step < 1) throw Error(ErrorKind::invalid_input, "step must be at least 1");
    if (period_size < 1) throw Error(ErrorKind::invalid_input, "period size must be at least 1");
    if (max_windows && *max_windows < 1) throw Error(ErrorKind::invalid_input, "max windows must be at least 1");
  }
};

struct WindowResult {
  std::size_t index = 0;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;  // exclusive
  std::optional<Date> start_date;
  std::optional<Date> end_date;  // date of the last value inside the window
  Quantifiers quantifiers;

  friend bool operator==(const WindowResult&, const WindowResult&) = default;
};

struct PeriodCluster {
  std::size_t period_id = 0;  // 1-based
  std::vector<std::size_t> members;
  double centroid_entropy = 0.0;
  double centroid_complexity = 0.0;

  friend bool operator==(const PeriodCluster&, const PeriodCluster&) = default;
};

/// floor((N - W) / step) + 1, capped by max_windows; 0 when N < W.
inline std::size_t window_count(std::size_t series_length, const AnalysisConfig& cfg) noexcept {
  if (series_length < cfg.window_length || cfg.step == 0) return 0;
  std::size_t n = (series_length - cfg.window_length) / cfg.step + 1;
  if (cfg.max_windows) n = std::min(n, *cfg.max_windows);
  return n;
}

/// Quantifiers of one window of the series.
inline WindowResult analyze_window(const RawSeries& series, const AnalysisConfig& cfg, std::size_t index) {
  WindowResult w;
  w.index = index;
  w.start_offset = index * cfg.step;
  w.end_offset = w.start_offset + cfg.window_length;
  if (w.end_offset > series.size()) throw Error(ErrorKind::insufficient_data, "window exceeds series");
  const auto slice = series.values().subspan(w.start_offset, cfg.window_length);
  w.quantifiers = quantify(pattern_distribution(slice, cfg.dimension, cfg.delay));
  if (const auto& ts = series.timestamps()) {
    w.start_date = (*ts)[w.start_offset];
    w.end_date = (*ts)[w.end_offset - 1];
  }
  return w;
}

/// Windows anchored at offset 0, advancing by `step`; trailing values
/// that do not fill a whole window are dropped. Windows are evaluated on
/// up to `threads` workers and returned in window order.
inline std::vector<WindowResult> sliding_analysis(const RawSeries& series, const AnalysisConfig& cfg,
                                                  unsigned threads = 1) {
  cfg.validate();
  if (series.size() < cfg.window_length) {
    throw Error(ErrorKind::insufficient_data, "series '" + series.label() + "' has " +
                                                  std::to_string(series.size()) + " values, window length is " +
                                                  std::to_string(cfg.window_length));
  }
  const std::size_t n = window_count(series.size(), cfg);
  std::vector<WindowResult> results(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = analyze_window(series, cfg, i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            results[i] = analyze_window(series, cfg, i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Consecutive blocks of `period_size` windows; a remainder shorter than
/// period_size is absorbed into the final block.
inline std::vector<PeriodCluster> group_periods(std::span<const WindowResult> results, std::size_t period_size) {
  if (results.empty()) throw Error(ErrorKind::invalid_input, "no windows to group");
  if (period_size < 1) throw Error(ErrorKind::invalid_input, "period size must be at least 1");
  const std::size_t n_periods = std::max<std::size_t>(1, results.size() / period_size);
  std::vector<PeriodCluster> periods;
  periods.reserve(n_periods);
  for (std::size_t p = 0; p < n_periods; ++p) {
    const std::size_t begin = p * period_size;
    const std::size_t end = (p + 1 == n_periods) ? results.size() : begin + period_size;
    PeriodCluster c;
    c.period_id = p + 1;
    double h = 0.0;
    double cx = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      c.members.push_back(results[i].index);
      h += results[i].quantifiers.entropy;
      cx += results[i].quantifiers.complexity;
    }
    const auto size = static_cast<double>(end - begin);
    c.centroid_entropy = h / size;
    c.centroid_complexity = cx / size;
    periods.push_back(std::move(c));
  }
  return periods;
}

struct TrajectoryPoint {
  std::size_t index = 0;
  double inefficiency = 0.0;
};

inline std::vector<TrajectoryPoint> inefficiency_trajectory(std::span<const WindowResult> results) {
  if (results.empty()) throw Error(ErrorKind::invalid_input, "no windows");
  std::vector<TrajectoryPoint> out;
  out.reserve(results.size());
  for (const auto& w : results) out.push_back({w.index, inefficiency(w.quantifiers)});
  return out;
}

}  // namespace cecp
