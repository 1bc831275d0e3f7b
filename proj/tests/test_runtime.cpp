#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "llmfootprint/runtime.hpp"

using namespace llmfp;

namespace {

PerformanceQuantiles flat(double lat, double tps) {
  PerformanceQuantiles q;
  q.latency_s.fill(lat);
  q.tps.fill(tps);
  return q;
}

PerformanceQuantiles spread() {
  PerformanceQuantiles q;
  q.latency_s = {0.4, 0.5, 0.6, 0.7, 0.8};
  q.tps = {60, 80, 100, 120, 140};
  return q;
}

PerformanceQuantiles random_quantiles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lat(0.01, 2.0), tps(5.0, 300.0), step(0.0, 0.5);
  PerformanceQuantiles q;
  q.latency_s[0] = lat(rng);
  q.tps[0] = tps(rng);
  for (int i = 1; i < 5; ++i) {
    q.latency_s[i] = q.latency_s[i - 1] * (1.0 + step(rng));
    q.tps[i] = q.tps[i - 1] * (1.0 + step(rng));
  }
  return q;
}

}  // namespace

TEST_CASE("degenerate quantiles collapse to a point mass") {
  const auto rt = build_runtime(flat(0.5, 100), {Scenario::Short, 100, 300});
  REQUIRE(rt.samples.size() == 25);
  for (const auto& s : rt.samples) {
    CHECK(s.value == Catch::Approx(3.5 / 3600.0).epsilon(1e-14));
    CHECK(s.weight == Catch::Approx(1.0 / 25.0));
  }
  CHECK(rt.summary.std == 0.0);
  CHECK(rt.summary.mean == Catch::Approx(3.5 / 3600.0).epsilon(1e-14));
}

TEST_CASE("zero output tokens leaves latency only") {
  const auto rt = build_runtime(flat(2.0, 100), {Scenario::Short, 100, 0});
  for (const auto& s : rt.samples) CHECK(s.value == Catch::Approx(2.0 / 3600.0).epsilon(1e-14));
}

TEST_CASE("cartesian product matches an independent enumeration") {
  const auto q = spread();
  const auto rt = build_runtime(q, {Scenario::Short, 100, 300});
  REQUIRE(rt.samples.size() == 25);

  // independent oracle: enumerate all pairs by hand
  std::vector<double> expected;
  for (double lat : {0.4, 0.5, 0.6, 0.7, 0.8})
    for (double tps : {60.0, 80.0, 100.0, 120.0, 140.0})
      expected.push_back((300.0 / tps + lat) / 3600.0);
  for (std::size_t i = 0; i < 25; ++i)
    CHECK(rt.samples[i].value == Catch::Approx(expected[i]).epsilon(1e-14));

  CHECK(rt.summary.min == Catch::Approx((300.0 / 140.0 + 0.4) / 3600.0).epsilon(1e-14));
  CHECK(rt.summary.max == Catch::Approx((300.0 / 60.0 + 0.8) / 3600.0).epsilon(1e-14));
}

TEST_CASE("paired mode matches percentiles rank by rank") {
  const auto q = spread();
  const auto rt = build_runtime(q, {Scenario::Short, 100, 300}, PairingMode::Paired);
  REQUIRE(rt.samples.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(rt.samples[i].value ==
          Catch::Approx((300.0 / q.tps[i] + q.latency_s[i]) / 3600.0).epsilon(1e-14));
    CHECK(rt.samples[i].weight == Catch::Approx(0.2));
  }
}

TEST_CASE("more output tokens strictly lengthen every sample") {
  std::mt19937_64 rng(7031);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = random_quantiles(rng);
    const auto rt1 = build_runtime(q, {Scenario::Short, 100, 300});
    const auto rt2 = build_runtime(q, {Scenario::Short, 100, 400});
    for (std::size_t i = 0; i < rt1.samples.size(); ++i)
      CHECK(rt2.samples[i].value > rt1.samples[i].value);
  }
}

TEST_CASE("median pair lies between distribution extremes") {
  std::mt19937_64 rng(9917);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = random_quantiles(rng);
    const auto rt = build_runtime(q, {Scenario::Medium, 1000, 1000});
    const double median_pair = (1000.0 / q.tps[2] + q.latency_s[2]) / 3600.0;
    CHECK(rt.summary.min <= median_pair);
    CHECK(median_pair <= rt.summary.max);
  }
}

TEST_CASE("weights always sum to one") {
  std::mt19937_64 rng(40231);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = random_quantiles(rng);
    for (auto mode : {PairingMode::Cartesian, PairingMode::Paired}) {
      const auto rt = build_runtime(q, {Scenario::Long, 10000, 1500}, mode);
      double w = 0.0;
      for (const auto& s : rt.samples) w += s.weight;
      CHECK(std::abs(w - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("non-positive tps is refused") {
  auto q = flat(0.5, 100);
  q.tps[0] = 0.0;
  CHECK_THROWS_AS(build_runtime(q, {Scenario::Short, 100, 300}), ValidationError);
}
