#pragma once

// Bandt-Pompe symbolization: turns a time series into ordinal patterns and
// an ordinal-pattern probability distribution over all D! permutations.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/random.hpp"

namespace cecp {

using Date = std::chrono::sys_days;

/// Largest supported embedding dimension (10! = 3628800 counters).
inline constexpr int kMaxDimension = 10;

constexpr std::uint64_t factorial(int n) noexcept {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// A labelled series of finite values with optional strictly increasing
/// dates aligned 1:1 with the values.
class RawSeries {
 public:
  RawSeries() = default;

  explicit RawSeries(std::vector<double> values, std::string label = {},
                     std::optional<std::vector<Date>> timestamps = std::nullopt)
      : values_(std::move(values)), timestamps_(std::move(timestamps)), label_(std::move(label)) {
    if (values_.empty()) throw Error(ErrorKind::insufficient_data, "series '" + label_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw Error(ErrorKind::invalid_input,
                    "series '" + label_ + "' has a non-finite value at position " + std::to_string(i));
      }
    }
    if (timestamps_) {
      if (timestamps_->size() != values_.size()) {
        throw Error(ErrorKind::invalid_input, "series '" + label_ + "' timestamps are not aligned with values");
      }
      for (std::size_t i = 1; i < timestamps_->size(); ++i) {
        if ((*timestamps_)[i] <= (*timestamps_)[i - 1]) {
          throw Error(ErrorKind::invalid_input, "series '" + label_ + "' timestamps are not strictly increasing");
        }
      }
    }
  }

  std::span<const double> values() const noexcept { return values_; }
  const std::optional<std::vector<Date>>& timestamps() const noexcept { return timestamps_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const RawSeries&, const RawSeries&) = default;

 private:
  std::vector<double> values_;
  std::optional<std::vector<Date>> timestamps_;
  std::string label_;
};

/// Ordinal pattern of a length-D window, stored as the window positions
/// (0 = oldest) listed in ascending order of value. Equal values keep
/// their time order, so the earlier observation ranks below the later.
///
/// In lag notation, r_{D-1-k} = (D-1) - order()[k].
class OrdinalPattern {
 public:
  /// Throws invalid_input unless `order` is a permutation of 0..D-1.
  explicit OrdinalPattern(std::vector<int> order) : order_(std::move(order)) {
    const int d = dimension();
    if (d < 1 || d > kMaxDimension) {
      throw Error(ErrorKind::unsupported_dimension, "pattern length " + std::to_string(d));
    }
    std::array<bool, kMaxDimension> seen{};
    for (int v : order_) {
      if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::invalid_input, "ordinal pattern is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  /// Decodes a factorial-number (Lehmer) index in [0, D!).
  static OrdinalPattern from_index(std::uint64_t index, int dimension) {
    if (dimension < 1 || dimension > kMaxDimension) {
      throw Error(ErrorKind::unsupported_dimension, "dimension " + std::to_string(dimension));
    }
    if (index >= factorial(dimension)) {
      throw Error(ErrorKind::invalid_input, "pattern index out of range");
    }
    std::vector<int> pool(static_cast<std::size_t>(dimension));
    for (int i = 0; i < dimension; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<int> order;
    order.reserve(pool.size());
    for (int i = dimension - 1; i >= 0; --i) {
      const std::uint64_t radix = factorial(i);
      const auto digit = static_cast<std::size_t>(index / radix);
      index %= radix;
      order.push_back(pool[digit]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return OrdinalPattern(std::move(order));
  }

  int dimension() const noexcept { return static_cast<int>(order_.size()); }
  std::span<const int> order() const noexcept { return order_; }

  /// Rank of each window position (inverse permutation of order()).
  std::vector<int> ranks() const {
    std::vector<int> r(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) r[static_cast<std::size_t>(order_[k])] = static_cast<int>(k);
    return r;
  }

  /// Lehmer code; 0 for the ascending pattern, D!-1 for the full reversal.
  std::uint64_t index() const noexcept { return lehmer(order_.data(), order_.size()); }

  static std::uint64_t lehmer(const int* order, std::size_t d) noexcept {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < d; ++i) {
      std::uint64_t smaller = 0;
      for (std::size_t j = i + 1; j < d; ++j) smaller += order[j] < order[i] ? 1 : 0;
      code = code * (d - i) + smaller;
    }
    return code;
  }

  friend bool operator==(const OrdinalPattern&, const OrdinalPattern&) = default;

 private:
  std::vector<int> order_;
};

namespace detail {

// Pattern index of the D values first[0], first[tau], ..., first[(D-1)tau].
// Stable insertion sort on positions: ties keep chronological order.
inline std::uint64_t pattern_index(const double* first, int dimension, std::size_t delay) noexcept {
  std::array<int, kMaxDimension> order{};
  std::array<double, kMaxDimension> value{};
  for (int k = 0; k < dimension; ++k) {
    const double x = first[static_cast<std::size_t>(k) * delay];
    int j = k;
    while (j > 0 && x < value[static_cast<std::size_t>(j - 1)]) {
      value[static_cast<std::size_t>(j)] = value[static_cast<std::size_t>(j - 1)];
      order[static_cast<std::size_t>(j)] = order[static_cast<std::size_t>(j - 1)];
      --j;
    }
    value[static_cast<std::size_t>(j)] = x;
    order[static_cast<std::size_t>(j)] = k;
  }
  return OrdinalPattern::lehmer(order.data(), static_cast<std::size_t>(dimension));
}

inline void check_embedding(int dimension, int delay) {
  if (dimension < 2) throw Error(ErrorKind::invalid_input, "embedding dimension must be at least 2");
  if (dimension > kMaxDimension) {
    throw Error(ErrorKind::unsupported_dimension,
                "embedding dimension " + std::to_string(dimension) + " exceeds " + std::to_string(kMaxDimension));
  }
  if (delay < 1) throw Error(ErrorKind::invalid_input, "embedding delay must be at least 1");
}

}  // namespace detail

/// Ordinal pattern of one window of D finite values.
inline OrdinalPattern extract_pattern(std::span<const double> window, int dimension) {
  if (static_cast<int>(window.size()) != dimension) {
    throw Error(ErrorKind::dimension_mismatch, "window has " + std::to_string(window.size()) +
                                                   " values, expected " + std::to_string(dimension));
  }
  detail::check_embedding(dimension, 1);
  for (double x : window) {
    if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "window contains a non-finite value");
  }
  return OrdinalPattern::from_index(detail::pattern_index(window.data(), dimension, 1), dimension);
}

inline OrdinalPattern extract_pattern(std::span<const double> window) {
  return extract_pattern(window, static_cast<int>(window.size()));
}

/// Ordinal-pattern probability distribution over all D! patterns.
class PatternDistribution {
 public:
  PatternDistribution(int dimension, int delay, std::vector<std::uint64_t> counts)
      : dimension_(dimension), delay_(delay), counts_(std::move(counts)) {
    detail::check_embedding(dimension, delay);
    if (counts_.size() != factorial(dimension)) {
      throw Error(ErrorKind::dimension_mismatch, "count vector length does not equal D!");
    }
    for (auto c : counts_) sample_count_ += c;
    probabilities_.assign(counts_.size(), 0.0);
    if (sample_count_ > 0) {
      const auto total = static_cast<double>(sample_count_);
      for (std::size_t i = 0; i < counts_.size(); ++i) probabilities_[i] = static_cast<double>(counts_[i]) / total;
    }
  }

  int dimension() const noexcept { return dimension_; }
  int delay() const noexcept { return delay_; }
  std::size_t alphabet_size() const noexcept { return counts_.size(); }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }
  std::uint64_t sample_count() const noexcept { return sample_count_; }

  /// True when fewer than 5 * D! vectors were classified, i.e. the
  /// N >> D! guidance is not met and the estimate is unreliable.
  bool undersampled() const noexcept { return sample_count_ < 5 * counts_.size(); }

  friend bool operator==(const PatternDistribution&, const PatternDistribution&) = default;

 private:
  int dimension_;
  int delay_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> probabilities_;
  std::uint64_t sample_count_ = 0;
};

/// Classifies the N-(D-1)tau overlapping delay vectors of `values`.
inline PatternDistribution pattern_distribution(std::span<const double> values, int dimension, int delay) {
  detail::check_embedding(dimension, delay);
  const auto span = static_cast<std::size_t>(dimension - 1) * static_cast<std::size_t>(delay);
  if (values.size() < span + 1) {
    throw Error(ErrorKind::insufficient_data, "series of length " + std::to_string(values.size()) +
                                                  " is too short for D=" + std::to_string(dimension) +
                                                  ", tau=" + std::to_string(delay));
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw Error(ErrorKind::invalid_input, "series contains a non-finite value");
  }
  std::vector<std::uint64_t> counts(factorial(dimension), 0);
  const std::size_t vectors = values.size() - span;
  const auto step = static_cast<std::size_t>(delay);
  for (std::size_t s = 0; s < vectors; ++s) {
    ++counts[detail::pattern_index(values.data() + s, dimension, step)];
  }
  return PatternDistribution(dimension, delay, std::move(counts));
}

inline PatternDistribution pattern_distribution(const RawSeries& series, int dimension, int delay) {
  return pattern_distribution(series.values(), dimension, delay);
}

/// Adds seeded uniform noise in [-amplitude, amplitude) to break ties.
/// Off by default in every front end.
inline RawSeries add_jitter(const RawSeries& series, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorKind::invalid_input, "jitter amplitude must be finite and nonnegative");
  }
  Xoshiro256 rng(seed);
  std::vector<double> values(series.values().begin(), series.values().end());
  for (double& x : values) x += amplitude * (2.0 * rng.uniform() - 1.0);
  return RawSeries(std::move(values), series.label(), series.timestamps());
}

}  // namespace cecp
