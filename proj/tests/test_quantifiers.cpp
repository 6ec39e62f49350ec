#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "cecp/bounds.hpp"
#include "cecp/quantifiers.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using cecp::ErrorKind;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const cecp::Error& e) {
    return e.kind();
  }
  FAIL("expected cecp::Error");
  return ErrorKind::invalid_input;
}

std::vector<double> uniform(std::size_t m) { return std::vector<double>(m, 1.0 / static_cast<double>(m)); }

std::vector<double> delta(std::size_t m, std::size_t at = 0) {
  std::vector<double> p(m, 0.0);
  p[at] = 1.0;
  return p;
}

}  // namespace

TEST_CASE("shannon_entropy examples") {
  CHECK_THAT(cecp::shannon_entropy(uniform(24)), WithinAbs(std::log(24.0), 1e-14));
  CHECK(cecp::shannon_entropy(delta(24)) == 0.0);
  const double expected = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK_THAT(cecp::shannon_entropy(std::vector<double>{0.75, 0.25}), WithinAbs(expected, 1e-15));
}

TEST_CASE("shannon_entropy rejects invalid distributions") {
  CHECK(kind_of([] { cecp::shannon_entropy(std::vector<double>{0.5, -0.1, 0.6}); }) == ErrorKind::invalid_distribution);
  CHECK(kind_of([] { cecp::shannon_entropy(std::vector<double>{0.5, 0.4}); }) == ErrorKind::invalid_distribution);
  CHECK(kind_of([] { cecp::shannon_entropy(std::vector<double>{}); }) == ErrorKind::invalid_distribution);
  CHECK(kind_of([] { cecp::shannon_entropy(std::vector<double>{0.5, std::nan("")}); }) ==
        ErrorKind::invalid_distribution);
  // inside the 1e-9 acceptance band, renormalized before use
  CHECK_THAT(cecp::shannon_entropy(std::vector<double>{0.5 + 4e-10, 0.5}), WithinAbs(std::log(2.0), 1e-12));
}

TEST_CASE("normalized_entropy examples") {
  for (std::size_t m : {2u, 6u, 24u, 120u}) CHECK_THAT(cecp::normalized_entropy(uniform(m)), WithinAbs(1.0, 1e-14));
  CHECK(cecp::normalized_entropy(delta(6, 3)) == 0.0);
  CHECK_THAT(cecp::normalized_entropy(std::vector<double>{0.5, 0.5, 0.0, 0.0}), WithinAbs(0.5, 1e-15));
  CHECK(kind_of([] { cecp::normalized_entropy(std::vector<double>{1.0}); }) == ErrorKind::invalid_alphabet);
}

TEST_CASE("jensen_shannon_divergence examples") {
  std::mt19937_64 rng(5);
  const auto p = oracle::dirichlet(24, 1.0, rng);
  CHECK(cecp::jensen_shannon_divergence(p, p) == 0.0);
  CHECK_THAT(cecp::jensen_shannon_divergence(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}),
             WithinAbs(std::log(2.0), 1e-15));
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::dirichlet(6, 0.5, rng);
    const auto b = oracle::dirichlet(6, 0.5, rng);
    const double ab = cecp::jensen_shannon_divergence(a, b);
    CHECK_THAT(ab, WithinAbs(cecp::jensen_shannon_divergence(b, a), 1e-14));
    CHECK(ab > 0.0);
  }
  CHECK(kind_of([] { cecp::jensen_shannon_divergence(uniform(3), uniform(4)); }) == ErrorKind::invalid_input);
}

TEST_CASE("Q_0 equals the reciprocal of the brute-force maximal JS over deltas") {
  for (std::size_t m : {2u, 3u, 6u, 24u, 120u, 720u}) {
    const double brute = oracle::max_js_over_deltas(m, std::exp(1.0));
    CHECK_THAT(cecp::disequilibrium_normalization(m), WithinAbs(1.0 / brute, 1e-10));
    CHECK_THAT(cecp::disequilibrium(delta(m)), WithinAbs(1.0, 1e-12));
  }
  CHECK(kind_of([] { cecp::disequilibrium_normalization(1); }) == ErrorKind::invalid_alphabet);
}

TEST_CASE("statistical_complexity examples") {
  CHECK_THAT(cecp::statistical_complexity(uniform(24)), WithinAbs(0.0, 1e-15));
  CHECK(cecp::statistical_complexity(delta(24, 5)) == 0.0);

  const std::vector<double> p{0.6, 0.2, 0.1, 0.1};
  const auto o = oracle::plane_point(p);
  CHECK_THAT(cecp::statistical_complexity(p), WithinAbs(o.complexity, 1e-14));
  CHECK_THAT(cecp::normalized_entropy(p), WithinAbs(o.entropy, 1e-14));
  CHECK(cecp::statistical_complexity(p) > 0.0);
}

TEST_CASE("statistical_complexity of a PatternDistribution uses its probabilities") {
  const cecp::PatternDistribution dist(3, 1, {3, 1, 0, 0, 0, 0});
  const auto o = oracle::plane_point({0.75, 0.25, 0, 0, 0, 0});
  CHECK_THAT(cecp::statistical_complexity(dist), WithinAbs(o.complexity, 1e-14));
  const cecp::PatternDistribution empty(3, 1, {0, 0, 0, 0, 0, 0});
  CHECK(kind_of([&] { cecp::quantify(empty); }) == ErrorKind::invalid_distribution);
}

TEST_CASE("inefficiency examples") {
  CHECK(cecp::inefficiency(1.0, 0.0) == 0.0);
  CHECK(cecp::inefficiency(0.0, 0.0) == 1.0);
  CHECK_THAT(cecp::inefficiency(0.8, 0.2), WithinAbs(std::sqrt(0.08), 1e-15));
  CHECK_THAT(cecp::inefficiency(0.8, 0.2), WithinAbs(0.282843, 1e-6));
  cecp::Quantifiers q{1.0, 0.0, 0.0, 24};
  CHECK(cecp::inefficiency(q) == 0.0);
}

TEST_CASE("quantifier invariants over random distributions") {
  std::mt19937_64 rng(77);
  for (std::size_t m : {2u, 6u, 24u, 120u}) {
    const auto upper = cecp::upper_bound(m, 1000);
    for (int i = 0; i < 300; ++i) {
      const double alpha = (i % 3 == 0) ? 0.05 : (i % 3 == 1 ? 0.5 : 3.0);
      const auto p = oracle::dirichlet(m, alpha, rng);
      const auto q = cecp::quantify(p);
      REQUIRE(q.entropy >= 0.0);
      REQUIRE(q.entropy <= 1.0 + 1e-15);
      REQUIRE(q.complexity >= 0.0);
      const double diseq = cecp::disequilibrium(p);
      REQUIRE(diseq >= 0.0);
      REQUIRE(diseq <= 1.0 + 1e-12);
      REQUIRE(std::abs(q.inefficiency - std::sqrt((q.entropy - 1) * (q.entropy - 1) + q.complexity * q.complexity)) <
              1e-12);
      REQUIRE(q.complexity <= upper.complexity_at(q.entropy) + 1e-6);
    }
  }
}

TEST_CASE("complexity is not a function of entropy alone and is positive inside") {
  for (std::size_t m : {6u, 24u}) {
    std::vector<double> p(m, 0.0);
    p[0] = 0.5;
    p[1] = 0.5;
    CHECK(cecp::statistical_complexity(p) > 0.0);
  }
  // same entropy, different complexity: a point on each bound curve
  const auto lo = cecp::lower_bound(6, 2001);
  const auto hi = cecp::upper_bound(6, 2001);
  CHECK(hi.complexity_at(0.5) - lo.complexity_at(0.5) > 0.05);
}

TEST_CASE("complexity is independent of the log base") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::dirichlet(24, 0.7, rng);
    const auto nat = oracle::plane_point(p, std::exp(1.0));
    const auto bits = oracle::plane_point(p, 2.0);
    CHECK_THAT(bits.complexity, WithinAbs(nat.complexity, 1e-12));
    CHECK_THAT(bits.entropy, WithinAbs(nat.entropy, 1e-12));
    CHECK_THAT(cecp::statistical_complexity(p), WithinAbs(bits.complexity, 1e-12));
  }
}
