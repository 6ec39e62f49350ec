#pragma once

// Minimum- and maximum-complexity envelopes of the complexity-entropy
// plane for an alphabet of M states, built by sweeping the two
// one-parameter families of distributions that attain them.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/quantifiers.hpp"

namespace cecp {

inline constexpr std::size_t kDefaultBoundResolution = 1000;

enum class BoundKind { lower, upper };

inline const char* to_string(BoundKind kind) noexcept { return kind == BoundKind::lower ? "lower" : "upper"; }

struct PlanePoint {
  double entropy = 0.0;
  double complexity = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct BoundCurve {
  std::size_t alphabet_size = 0;
  BoundKind kind = BoundKind::lower;
  std::vector<PlanePoint> points;  // entropy nondecreasing

  /// Linear interpolation in entropy; clamps outside the sampled range.
  double complexity_at(double entropy) const {
    if (points.empty()) throw Error(ErrorKind::invalid_input, "empty bound curve");
    if (entropy <= points.front().entropy) return points.front().complexity;
    if (entropy >= points.back().entropy) return points.back().complexity;
    auto hi = std::upper_bound(points.begin(), points.end(), entropy,
                               [](double h, const PlanePoint& p) { return h < p.entropy; });
    auto lo = hi - 1;
    const double width = hi->entropy - lo->entropy;
    if (width <= 0.0) return std::max(lo->complexity, hi->complexity);
    const double t = (entropy - lo->entropy) / width;
    return lo->complexity + t * (hi->complexity - lo->complexity);
  }
};

namespace detail {

inline void check_bound_args(std::size_t alphabet_size, std::size_t resolution) {
  if (alphabet_size < 2) throw Error(ErrorKind::invalid_input, "alphabet size must be at least 2");
  if (resolution < 2) throw Error(ErrorKind::invalid_input, "resolution must be at least 2");
}

// Sweep parameter in [0, 1] for sample k of n, cosine-spaced so samples
// crowd both ends of the sweep, where entropy moves fastest.
inline double sweep_fraction(std::size_t k, std::size_t n) noexcept {
  if (k == 0) return 0.0;
  if (k + 1 == n) return 1.0;
  const double t = static_cast<double>(k) / static_cast<double>(n - 1);
  return 0.5 * (1.0 - std::cos(std::numbers::pi * t));
}

inline PlanePoint plane_point(std::span<const double> p) {
  const auto q = quantify(p);
  return {q.entropy, q.complexity};
}

struct ProbabilityGroup {
  double probability;
  std::size_t multiplicity;
};

// Same quantities as quantify() for a distribution given as groups of
// equal probabilities; O(groups) instead of O(M).
inline PlanePoint grouped_plane_point(std::span<const ProbabilityGroup> groups, std::size_t alphabet_size) {
  const auto m = static_cast<double>(alphabet_size);
  const double log_m = std::log(m);
  double s = 0.0;
  double s_mid = 0.0;
  for (const auto& g : groups) {
    const auto count = static_cast<double>(g.multiplicity);
    if (g.probability > 0.0) s -= count * g.probability * std::log(g.probability);
    const double mid = 0.5 * (g.probability + 1.0 / m);
    s_mid -= count * mid * std::log(mid);
  }
  const double js = std::max(0.0, s_mid - 0.5 * s - 0.5 * log_m);
  const double h = std::clamp(s / log_m, 0.0, 1.0);
  return {h, disequilibrium_normalization(alphabet_size) * js * h};
}

// Sorts by entropy; among equal entropies keeps only the largest (upper)
// or smallest (lower) complexity.
inline void sort_and_dedupe(std::vector<PlanePoint>& pts, BoundKind kind) {
  std::sort(pts.begin(), pts.end(), [kind](const PlanePoint& a, const PlanePoint& b) {
    if (a.entropy != b.entropy) return a.entropy < b.entropy;
    return kind == BoundKind::upper ? a.complexity > b.complexity : a.complexity < b.complexity;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const PlanePoint& a, const PlanePoint& b) { return a.entropy == b.entropy; }),
            pts.end());
}

}  // namespace detail

/// Member of the minimum-complexity family: one state at p in [1/M, 1],
/// the other M-1 states sharing 1-p.
inline PlanePoint lower_bound_point(std::size_t alphabet_size, double p) {
  detail::check_bound_args(alphabet_size, 2);
  const auto m = static_cast<double>(alphabet_size);
  if (!(p >= 1.0 / m - 1e-15 && p <= 1.0)) throw Error(ErrorKind::invalid_input, "p outside [1/M, 1]");
  const detail::ProbabilityGroup groups[] = {{p, 1}, {(1.0 - p) / (m - 1.0), alphabet_size - 1}};
  return detail::grouped_plane_point(groups, alphabet_size);
}

/// Minimum-complexity curve: the lower_bound_point family with p swept
/// over [1/M, 1] (cosine-spaced), sorted by entropy.
inline BoundCurve lower_bound(std::size_t alphabet_size, std::size_t resolution = kDefaultBoundResolution) {
  detail::check_bound_args(alphabet_size, resolution);
  const auto m = static_cast<double>(alphabet_size);
  BoundCurve curve{alphabet_size, BoundKind::lower, {}};
  curve.points.reserve(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    if (k == 0) {
      const detail::ProbabilityGroup uniform[] = {{1.0 / m, alphabet_size}};
      curve.points.push_back(detail::grouped_plane_point(uniform, alphabet_size));
    } else {
      const double t = detail::sweep_fraction(k, resolution);
      curve.points.push_back(lower_bound_point(alphabet_size, (k + 1 == resolution) ? 1.0 : 1.0 / m + t * (1.0 - 1.0 / m)));
    }
  }
  detail::sort_and_dedupe(curve.points, BoundKind::lower);
  return curve;
}

/// One member of the maximum-complexity construction: `zeros` states at
/// probability 0, one state at p in [0, 1/(M-zeros)], and the remaining
/// M-zeros-1 states sharing 1-p.
inline std::vector<PlanePoint> upper_bound_family(std::size_t alphabet_size, std::size_t zeros,
                                                  std::size_t resolution) {
  detail::check_bound_args(alphabet_size, resolution);
  if (zeros + 2 > alphabet_size) throw Error(ErrorKind::invalid_input, "too many zero states");
  const std::size_t live = alphabet_size - zeros;
  const double p_max = 1.0 / static_cast<double>(live);
  std::vector<PlanePoint> out;
  out.reserve(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    if (k + 1 == resolution) {
      const detail::ProbabilityGroup groups[] = {{0.0, zeros}, {p_max, live}};
      out.push_back(detail::grouped_plane_point(groups, alphabet_size));
    } else {
      const double pk = p_max * detail::sweep_fraction(k, resolution);
      const detail::ProbabilityGroup groups[] = {
          {0.0, zeros}, {pk, 1}, {(1.0 - pk) / static_cast<double>(live - 1), live - 1}};
      out.push_back(detail::grouped_plane_point(groups, alphabet_size));
    }
  }
  return out;
}

/// Maximum-complexity curve: pointwise maximum over the families with
/// 0..M-2 zero states, sorted by entropy.
inline BoundCurve upper_bound(std::size_t alphabet_size, std::size_t resolution = kDefaultBoundResolution) {
  detail::check_bound_args(alphabet_size, resolution);
  std::vector<BoundCurve> families;
  families.reserve(alphabet_size - 1);
  for (std::size_t zeros = 0; zeros + 2 <= alphabet_size; ++zeros) {
    BoundCurve f{alphabet_size, BoundKind::upper, upper_bound_family(alphabet_size, zeros, resolution)};
    detail::sort_and_dedupe(f.points, BoundKind::upper);
    families.push_back(std::move(f));
  }

  // Families ordered by the start of their entropy range; reach[j] is the
  // furthest range end among the first j+1, which bounds the backward scan.
  std::sort(families.begin(), families.end(), [](const BoundCurve& a, const BoundCurve& b) {
    return a.points.front().entropy < b.points.front().entropy;
  });
  std::vector<double> reach(families.size());
  for (std::size_t j = 0; j < families.size(); ++j) {
    reach[j] = std::max(j == 0 ? 0.0 : reach[j - 1], families[j].points.back().entropy);
  }

  BoundCurve curve{alphabet_size, BoundKind::upper, {}};
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (const auto& pt : families[i].points) {
      const auto end = std::upper_bound(families.begin(), families.end(), pt.entropy,
                                        [](double h, const BoundCurve& f) { return h < f.points.front().entropy; });
      bool dominated = false;
      for (auto j = static_cast<std::size_t>(end - families.begin()); j-- > 0 && !dominated;) {
        if (reach[j] < pt.entropy) break;
        if (j == i || families[j].points.back().entropy < pt.entropy) continue;
        dominated = families[j].complexity_at(pt.entropy) > pt.complexity;
      }
      if (!dominated) curve.points.push_back(pt);
    }
  }
  detail::sort_and_dedupe(curve.points, BoundKind::upper);
  return curve;
}

}  // namespace cecp
