#include <catch2/catch_amalgamated.hpp>

#include "llmfootprint/projection.hpp"

using namespace llmfp;

namespace {

// A footprint record with a point-mass energy distribution at `kwh`.
FootprintRecord point_record(double kwh, double std_kwh = 0.0) {
  FootprintRecord rec;
  rec.energy.samples = {{kwh, 1.0}};
  rec.energy.summary = {kwh, std_kwh, kwh, kwh};
  return rec;
}

}  // namespace

TEST_CASE("default schedule calibrates to the annual target within a permille") {
  const auto schedule = calibrate_decay(7.72e11, GrowthSchedule{});
  const double total = total_queries(schedule);
  CHECK(std::abs(total - 7.72e11) <= 0.001 * 7.72e11);
  // June onward the growth rate decays geometrically
  for (int m = kDecayStartMonth; m < 12; ++m) {
    CHECK(schedule.monthly_growth[m] > 0.0);
    CHECK(schedule.monthly_growth[m] <= schedule.monthly_growth[m - 1] + 1e-15);
  }
  // January-May stays at the fixed rate
  for (int m = 0; m < kDecayStartMonth; ++m) CHECK(schedule.monthly_growth[m] == 0.20);
}

TEST_CASE("flat zero-growth schedule matches its own total exactly") {
  GrowthSchedule s;
  s.monthly_growth.fill(0.0);
  const double target = 7.0e8 * 365.0;
  const auto out = calibrate_decay(target, s);
  CHECK(total_queries(out) == target);
  for (double g : out.monthly_growth) CHECK(g == 0.0);
}

TEST_CASE("annual totals grow with the decay parameter") {
  GrowthSchedule lo_s;
  GrowthSchedule hi_s;
  for (int m = kDecayStartMonth; m < 12; ++m) {
    lo_s.monthly_growth[m] = 0.20 * std::pow(0.1, m - kDecayStartMonth + 1);
    hi_s.monthly_growth[m] = 0.20 * std::pow(1.0, m - kDecayStartMonth + 1);
  }
  CHECK(total_queries(lo_s) < total_queries(hi_s));
}

TEST_CASE("unreachable targets report the achievable range") {
  CHECK_THROWS_MATCHES(calibrate_decay(5.0e13, GrowthSchedule{}), ValidationError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("achievable range")));
  CHECK_THROWS_AS(calibrate_decay(1.0e9, GrowthSchedule{}), ValidationError);
}

TEST_CASE("annual footprint blends scenario means and applies the multipliers") {
  GrowthSchedule s;
  s.base_daily_queries = 1.0e9;
  s.monthly_growth.fill(0.0);
  const EnvMultipliers env{1.12, 0.30, 3.142, 0.3528};
  const auto fp = annual_footprint(s, UsageMix{}, point_record(0.4e-3), point_record(1.2e-3), env);

  const double total = 1.0e9 * 365.0;
  CHECK(fp.total_queries == total);
  const double blended_kwh = 0.8 * 0.4e-3 + 0.2 * 1.2e-3;
  CHECK(fp.energy_mwh.mid == Catch::Approx(blended_kwh * total * 1e-3).epsilon(1e-12));
  const double total_kwh = blended_kwh * total;
  CHECK(fp.water_kl.mid ==
        Catch::Approx(((total_kwh / 1.12) * 0.30 + total_kwh * 3.142) * 1e-3).epsilon(1e-12));
  CHECK(fp.carbon_t.mid == Catch::Approx(total_kwh * 0.3528 * 1e-3).epsilon(1e-12));

  // point distributions collapse the band
  CHECK(fp.energy_mwh.low == fp.energy_mwh.mid);
  CHECK(fp.energy_mwh.high == fp.energy_mwh.mid);
}

TEST_CASE("monthly volumes conserve the annual total exactly") {
  const auto schedule = calibrate_decay(7.72e11, GrowthSchedule{});
  const auto fp = annual_footprint(schedule, UsageMix{}, point_record(0.4e-3),
                                   point_record(1.2e-3), EnvMultipliers{1.12, 0.3, 3.142, 0.35});
  double sum = 0.0;
  for (double v : fp.monthly_volumes) sum += v;
  CHECK(sum == fp.total_queries);
}

TEST_CASE("doubling the base doubles every projected field") {
  GrowthSchedule s1;
  GrowthSchedule s2;
  s2.base_daily_queries = 2.0 * s1.base_daily_queries;
  const EnvMultipliers env{1.12, 0.30, 3.142, 0.3528};
  const auto a = annual_footprint(s1, UsageMix{}, point_record(0.4e-3), point_record(1.2e-3), env);
  const auto b = annual_footprint(s2, UsageMix{}, point_record(0.4e-3), point_record(1.2e-3), env);
  CHECK(b.total_queries == Catch::Approx(2.0 * a.total_queries).epsilon(1e-12));
  CHECK(b.energy_mwh.mid == Catch::Approx(2.0 * a.energy_mwh.mid).epsilon(1e-12));
  CHECK(b.water_kl.high == Catch::Approx(2.0 * a.water_kl.high).epsilon(1e-12));
  CHECK(b.carbon_t.low == Catch::Approx(2.0 * a.carbon_t.low).epsilon(1e-12));
}

TEST_CASE("an all-short mix reduces to the short mean") {
  GrowthSchedule s;
  s.monthly_growth.fill(0.0);
  const EnvMultipliers env{1.12, 0.30, 3.142, 0.3528};
  UsageMix mix{1.0, 0.0};
  const auto fp = annual_footprint(s, mix, point_record(0.4e-3), point_record(1.2e-3), env);
  CHECK(fp.energy_mwh.mid == Catch::Approx(0.4e-3 * fp.total_queries * 1e-3).epsilon(1e-12));
}

TEST_CASE("shares must be nonnegative and sum to one") {
  GrowthSchedule s;
  const EnvMultipliers env{1.12, 0.30, 3.142, 0.3528};
  CHECK_THROWS_AS(
      annual_footprint(s, UsageMix{0.7, 0.2}, point_record(1e-3), point_record(1e-3), env),
      ValidationError);
}

TEST_CASE("daily user footprint scales the per-query mean") {
  const auto rec = point_record(0.42e-3, 0.127e-3);
  const auto day = daily_user_footprint(8, rec);
  CHECK(day.energy_wh == Catch::Approx(3.36).epsilon(1e-12));
  CHECK(day.spread_wh == Catch::Approx(std::sqrt(8.0) * 0.127).epsilon(1e-12));
  CHECK(daily_user_footprint(0, rec).energy_wh == 0.0);

  const auto medium = daily_user_footprint(8, point_record(1.214e-3));
  CHECK(medium.energy_wh == Catch::Approx(9.712).epsilon(1e-12));
}

TEST_CASE("equivalents divide by the published constants") {
  AnnualFootprint fp;
  fp.energy_mwh.mid = 377685.0;
  fp.water_kl.mid = 1250000.0;
  fp.carbon_t.mid = 138000.0;
  const auto eq = equivalents(fp);
  CHECK(eq.us_households == Catch::Approx(35000.0).epsilon(1e-9));
  CHECK(eq.olympic_pools == Catch::Approx(500.0).epsilon(1e-12));
  CHECK(eq.forest_acres == Catch::Approx(138000.0).epsilon(1e-12));
}
