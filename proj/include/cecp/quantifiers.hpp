#pragma once

// Permutation entropy, Jensen-Shannon statistical complexity and the
// inefficiency distance on the complexity-entropy plane. Natural log
// throughout; every reported quantity is a ratio of logs and therefore
// independent of the base.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/ordinal.hpp"

namespace cecp {

/// Tolerance on |sum(p) - 1| for accepting a probability vector.
inline constexpr double kNormalizationTolerance = 1e-9;

namespace detail {

// Validates and returns an exactly renormalized copy.
inline std::vector<double> normalized_copy(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorKind::invalid_distribution, "empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::invalid_distribution, "probabilities must be finite and nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorKind::invalid_distribution, "probabilities sum to " + std::to_string(sum));
  }
  std::vector<double> out(p.begin(), p.end());
  for (double& v : out) v /= sum;
  return out;
}

inline double entropy_unchecked(std::span<const double> p) noexcept {
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s -= v * std::log(v);  // 0 ln 0 = 0
  }
  return s;
}

inline void check_alphabet(std::size_t m) {
  if (m < 2) throw Error(ErrorKind::invalid_alphabet, "alphabet size must be at least 2");
}

}  // namespace detail

/// S[P] = -sum p ln p, in nats.
inline double shannon_entropy(std::span<const double> p) {
  return detail::entropy_unchecked(detail::normalized_copy(p));
}

/// H[P] = S[P] / ln M.
inline double normalized_entropy(std::span<const double> p) {
  detail::check_alphabet(p.size());
  return shannon_entropy(p) / std::log(static_cast<double>(p.size()));
}

/// JS[P,Q] = S[(P+Q)/2] - S[P]/2 - S[Q]/2.
inline double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::invalid_input, "distributions differ in length");
  const auto pn = detail::normalized_copy(p);
  const auto qn = detail::normalized_copy(q);
  std::vector<double> mid(pn.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (pn[i] + qn[i]);
  const double js =
      detail::entropy_unchecked(mid) - 0.5 * detail::entropy_unchecked(pn) - 0.5 * detail::entropy_unchecked(qn);
  return js > 0.0 ? js : 0.0;
}

/// Q_0 = 1 / max_P JS[P, P_e]; the maximum is reached by a delta
/// distribution, which gives
///   Q_0 = -2 / ( (M+1)/M ln(M+1) - 2 ln(2M) + ln M ).
inline double disequilibrium_normalization(std::size_t alphabet_size) {
  detail::check_alphabet(alphabet_size);
  const auto m = static_cast<double>(alphabet_size);
  return -2.0 / ((m + 1.0) / m * std::log(m + 1.0) - 2.0 * std::log(2.0 * m) + std::log(m));
}

/// Q_J[P,P_e] = Q_0 * JS[P, P_e], in [0, 1].
inline double disequilibrium(std::span<const double> p) {
  detail::check_alphabet(p.size());
  const std::vector<double> uniform(p.size(), 1.0 / static_cast<double>(p.size()));
  return disequilibrium_normalization(p.size()) * jensen_shannon_divergence(p, uniform);
}

struct Quantifiers {
  double entropy = 0.0;
  double complexity = 0.0;
  double inefficiency = 0.0;
  std::size_t alphabet_size = 0;

  friend bool operator==(const Quantifiers&, const Quantifiers&) = default;
};

/// Euclidean distance from (H, C) to the maximal efficiency point (1, 0).
inline double inefficiency(double entropy, double complexity) noexcept {
  return std::hypot(entropy - 1.0, complexity);
}

inline double inefficiency(const Quantifiers& q) noexcept { return inefficiency(q.entropy, q.complexity); }

/// Entropy, complexity and inefficiency of one probability vector.
inline Quantifiers quantify(std::span<const double> p) {
  detail::check_alphabet(p.size());
  const auto pn = detail::normalized_copy(p);
  const std::size_t m = pn.size();
  const double log_m = std::log(static_cast<double>(m));

  const double s = detail::entropy_unchecked(pn);
  std::vector<double> mid(m);
  for (std::size_t i = 0; i < m; ++i) mid[i] = 0.5 * (pn[i] + 1.0 / static_cast<double>(m));
  double js = detail::entropy_unchecked(mid) - 0.5 * s - 0.5 * log_m;
  if (js < 0.0) js = 0.0;

  Quantifiers q;
  q.alphabet_size = m;
  q.entropy = std::clamp(s / log_m, 0.0, 1.0);
  q.complexity = disequilibrium_normalization(m) * js * q.entropy;
  q.inefficiency = inefficiency(q.entropy, q.complexity);
  return q;
}

inline Quantifiers quantify(const PatternDistribution& dist) {
  if (dist.sample_count() == 0) throw Error(ErrorKind::invalid_distribution, "distribution has no samples");
  return quantify(dist.probabilities());
}

/// C_JS = Q_J[P, P_e] * H[P].
inline double statistical_complexity(std::span<const double> p) { return quantify(p).complexity; }

inline double statistical_complexity(const PatternDistribution& dist) { return quantify(dist).complexity; }

}  // namespace cecp
