#pragma once

// Seeded synthetic signals used as ground truth on the
// complexity-entropy plane: i.i.d. noise, a Gaussian-increment random
// walk, and the logistic map.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cecp/error.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/random.hpp"

namespace cecp {

enum class GeneratorKind { white_noise, random_walk, logistic_map };

inline const char* to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::white_noise: return "white_noise";
    case GeneratorKind::random_walk: return "random_walk";
    case GeneratorKind::logistic_map: return "logistic_map";
  }
  return "unknown";
}

inline std::optional<GeneratorKind> parse_generator_kind(std::string_view name) noexcept {
  if (name == "white_noise") return GeneratorKind::white_noise;
  if (name == "random_walk") return GeneratorKind::random_walk;
  if (name == "logistic_map" || name == "logistic") return GeneratorKind::logistic_map;
  return std::nullopt;
}

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::white_noise;
  std::size_t length = 1000;
  std::uint64_t seed = 0;
  double logistic_r = 4.0;
  std::optional<double> logistic_x0;  // drawn from the seed when unset
  std::size_t transient = 1000;       // logistic steps discarded before output
  std::string label = "synthetic";

  void validate() const {
    if (length < 1) throw Error(ErrorKind::invalid_input, "length must be at least 1");
    if (kind == GeneratorKind::logistic_map) {
      if (!(logistic_r > 0.0 && logistic_r <= 4.0)) throw Error(ErrorKind::invalid_input, "logistic r must be in (0, 4]");
      if (logistic_x0 && !(*logistic_x0 > 0.0 && *logistic_x0 < 1.0)) {
        throw Error(ErrorKind::invalid_input, "logistic x0 must be in (0, 1)");
      }
    }
  }
};

/// White noise: uniform(0,1) draws. Random walk: running sum of
/// Irwin-Hall normal increments starting from the first increment.
/// Logistic map: x <- r x (1 - x) after `transient` discarded steps.
inline RawSeries generate(const GeneratorSpec& spec) {
  spec.validate();
  Xoshiro256 rng(spec.seed);
  std::vector<double> values;
  values.reserve(spec.length);
  switch (spec.kind) {
    case GeneratorKind::white_noise:
      for (std::size_t i = 0; i < spec.length; ++i) values.push_back(rng.uniform());
      break;
    case GeneratorKind::random_walk: {
      double level = 0.0;
      for (std::size_t i = 0; i < spec.length; ++i) {
        level += rng.normal();
        values.push_back(level);
      }
      break;
    }
    case GeneratorKind::logistic_map: {
      double x = 0.0;
      if (spec.logistic_x0) {
        x = *spec.logistic_x0;
      } else {
        do x = rng.uniform();
        while (x <= 0.0);
      }
      const double r = spec.logistic_r;
      for (std::size_t i = 0; i < spec.transient; ++i) x = r * x * (1.0 - x);
      for (std::size_t i = 0; i < spec.length; ++i) {
        values.push_back(x);
        x = r * x * (1.0 - x);
      }
      break;
    }
  }
  return RawSeries(std::move(values), spec.label);
}

}  // namespace cecp
