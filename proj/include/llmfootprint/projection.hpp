#pragma once

#include <array>
#include <cmath>
#include <string>

#include "llmfootprint/footprint.hpp"

namespace llmfp {

// Month-by-month query volume model for one calendar year. Growth rates
// compound on the previous month's daily rate; month volume is the daily rate
// times the calendar day count, so totals never drift by fractional days.
struct GrowthSchedule {
  double base_daily_queries = 7.0e8;  // December baseline carried into January
  std::array<double, 12> monthly_growth{0.20, 0.20, 0.20, 0.20, 0.20, 0.20,
                                        0.20, 0.20, 0.20, 0.20, 0.20, 0.20};
  std::array<int, 12> days_per_month{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
};

inline void validate(const GrowthSchedule& s) {
  if (s.base_daily_queries < 0.0)
    throw ValidationError("GrowthSchedule: base_daily_queries must be >= 0");
  for (double g : s.monthly_growth)
    if (g <= -1.0) throw ValidationError("GrowthSchedule: growth factors must exceed -1");
  for (int d : s.days_per_month)
    if (d < 28 || d > 31) throw ValidationError("GrowthSchedule: invalid day count");
}

inline std::array<double, 12> monthly_volumes(const GrowthSchedule& s) {
  std::array<double, 12> v{};
  double daily = s.base_daily_queries;
  for (int m = 0; m < 12; ++m) {
    daily *= 1.0 + s.monthly_growth[m];
    v[m] = daily * s.days_per_month[m];
  }
  return v;
}

inline double total_queries(const GrowthSchedule& s) {
  double total = 0.0;
  for (double v : monthly_volumes(s)) total += v;
  return total;
}

inline constexpr int kDecayStartMonth = 5;  // June; January-May growth stays fixed

// Replaces the June-December growth rates with r_m = r_May * rho^(m - May)
// and finds rho in (0, 1] by bisection so the annual total matches `target`
// to 0.1%. The total is monotone increasing in rho, so bisection is exact;
// unreachable targets are reported together with the achievable range.
inline GrowthSchedule calibrate_decay(double target_total, const GrowthSchedule& schedule) {
  validate(schedule);
  if (target_total <= 0.0) throw ValidationError("calibrate_decay: target must be > 0");
  const double base_rate = schedule.monthly_growth[kDecayStartMonth - 1];

  auto with_rho = [&](double rho) {
    GrowthSchedule s = schedule;
    double factor = 1.0;
    for (int m = kDecayStartMonth; m < 12; ++m) {
      factor *= rho;
      s.monthly_growth[m] = base_rate * factor;
    }
    return s;
  };

  constexpr double kRelTol = 1e-3;
  const double lo_total = total_queries(with_rho(0.0));
  const double hi_total = total_queries(with_rho(1.0));
  if (target_total < lo_total * (1.0 - kRelTol) || target_total > hi_total * (1.0 + kRelTol))
    throw ValidationError("calibrate_decay: target " + fmt6(target_total) +
                          " outside achievable range [" + fmt6(lo_total) + ", " +
                          fmt6(hi_total) + "]");

  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (total_queries(with_rho(mid)) < target_total)
      lo = mid;
    else
      hi = mid;
  }
  // Prefer the boundary when it already matches (covers flat schedules where
  // every rho yields the same total).
  GrowthSchedule out = with_rho(0.5 * (lo + hi));
  for (double edge : {1.0, 0.0})
    if (std::abs(total_queries(with_rho(edge)) - target_total) <=
        std::abs(total_queries(out) - target_total))
      out = with_rho(edge);
  if (std::abs(total_queries(out) - target_total) > kRelTol * target_total)
    throw InternalError("calibrate_decay: bisection failed to reach target");
  return out;
}

// Short/medium traffic split.
struct UsageMix {
  double share_short = 0.8;
  double share_medium = 0.2;
};

inline void validate(const UsageMix& mix) {
  if (mix.share_short < 0.0 || mix.share_medium < 0.0 ||
      std::abs(mix.share_short + mix.share_medium - 1.0) > 1e-9)
    throw ValidationError("UsageMix: shares must be >= 0 and sum to 1");
}

struct Band {
  double low = 0.0, mid = 0.0, high = 0.0;
};

struct AnnualFootprint {
  double total_queries = 0.0;
  std::array<double, 12> monthly_volumes{};
  Band energy_mwh;
  Band water_kl;
  Band carbon_t;
};

// Fleet-scale totals: the mid estimate blends the per-query means by usage
// share; low/high use the per-query distribution extremes. Water and carbon
// follow from the total energy through the deployment's multipliers.
inline AnnualFootprint annual_footprint(const GrowthSchedule& schedule, const UsageMix& mix,
                                        const FootprintRecord& short_fp,
                                        const FootprintRecord& medium_fp,
                                        const EnvMultipliers& env) {
  validate(schedule);
  validate(mix);
  AnnualFootprint out;
  out.monthly_volumes = monthly_volumes(schedule);
  for (double v : out.monthly_volumes) out.total_queries += v;

  auto blend = [&](double s, double m) { return mix.share_short * s + mix.share_medium * m; };
  const Band per_query_kwh{blend(short_fp.energy.summary.min, medium_fp.energy.summary.min),
                           blend(short_fp.energy.summary.mean, medium_fp.energy.summary.mean),
                           blend(short_fp.energy.summary.max, medium_fp.energy.summary.max)};

  auto scale = [&](double kwh_per_query, double factor) {
    return kwh_per_query * out.total_queries * factor;
  };
  const double kwh_to_mwh = 1e-3;
  out.energy_mwh = {scale(per_query_kwh.low, kwh_to_mwh), scale(per_query_kwh.mid, kwh_to_mwh),
                    scale(per_query_kwh.high, kwh_to_mwh)};
  auto water_kl = [&](double kwh_per_query) {
    return water_per_query(kwh_per_query * out.total_queries, env) * 1e-3;  // L -> kL
  };
  auto carbon_t = [&](double kwh_per_query) {
    return carbon_per_query(kwh_per_query * out.total_queries, env) * 1e-3;  // kg -> t
  };
  out.water_kl = {water_kl(per_query_kwh.low), water_kl(per_query_kwh.mid),
                  water_kl(per_query_kwh.high)};
  out.carbon_t = {carbon_t(per_query_kwh.low), carbon_t(per_query_kwh.mid),
                  carbon_t(per_query_kwh.high)};
  return out;
}

struct DailyUserFootprint {
  double energy_wh = 0.0;
  double spread_wh = 0.0;  // sqrt(n) * per-query std: spread of an n-query sum
};

inline DailyUserFootprint daily_user_footprint(double queries_per_day,
                                               const FootprintRecord& fp) {
  if (queries_per_day < 0.0)
    throw ValidationError("daily_user_footprint: queries_per_day must be >= 0");
  DailyUserFootprint out;
  out.energy_wh = queries_per_day * fp.energy.summary.mean * 1000.0;
  out.spread_wh = std::sqrt(queries_per_day) * fp.energy.summary.std * 1000.0;
  return out;
}

// Published comparison divisors used for the report's "equivalents" block.
inline constexpr double kHouseholdMwhPerYear = 10.791;  // average U.S. home, annual
inline constexpr double kOlympicPoolKl = 2500.0;        // 50m competition pool
inline constexpr double kForestAcreTonnesPerYear = 1.0; // average U.S. forest sequestration

struct Equivalents {
  double us_households = 0.0;
  double olympic_pools = 0.0;
  double forest_acres = 0.0;
};

inline Equivalents equivalents(const AnnualFootprint& fp) {
  return {fp.energy_mwh.mid / kHouseholdMwhPerYear, fp.water_kl.mid / kOlympicPoolKl,
          fp.carbon_t.mid / kForestAcreTonnesPerYear};
}

}  // namespace llmfp
