#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "llmfootprint/stats.hpp"
#include "llmfootprint/report.hpp"
#include "test_util.hpp"

using namespace llmfp;

namespace {

ObservationSet two_by_two() {
  // cells {10,12},{20,22},{30,32},{40,42}; hand-worked decomposition:
  // SS_A = 800, SS_B = 200, SS_AB = 0, SS_res = 8, df_res = 4
  return {
      {"a1", "b1", 10}, {"a1", "b1", 12}, {"a1", "b2", 20}, {"a1", "b2", 22},
      {"a2", "b1", 30}, {"a2", "b1", 32}, {"a2", "b2", 40}, {"a2", "b2", 42},
  };
}

const AnovaRow& row(const std::vector<AnovaRow>& table, const std::string& source) {
  for (const auto& r : table)
    if (r.source == source) return r;
  throw std::runtime_error("missing row " + source);
}

// P(|t_df| <= x) through the incomplete beta, an independent route to the
// k = 2 studentized range.
double t_two_sided(double x, double df) {
  return 1.0 - llmfp::detail::reg_inc_beta(df / 2.0, 0.5, df / (df + x * x));
}

}  // namespace

TEST_CASE("hand-worked two-by-two decomposition") {
  const auto table = two_way_anova(two_by_two());
  CHECK(row(table, "factor_a").ss == Catch::Approx(800.0).epsilon(1e-12));
  CHECK(row(table, "factor_b").ss == Catch::Approx(200.0).epsilon(1e-12));
  CHECK(row(table, "interaction").ss == Catch::Approx(0.0).margin(1e-9));
  CHECK(row(table, "residual").ss == Catch::Approx(8.0).epsilon(1e-12));
  CHECK(row(table, "factor_a").df == 1.0);
  CHECK(row(table, "residual").df == 4.0);
  CHECK(row(table, "factor_a").f == Catch::Approx(400.0).epsilon(1e-9));
  CHECK(row(table, "factor_b").f == Catch::Approx(100.0).epsilon(1e-9));
  CHECK(row(table, "factor_a").p < 1e-3);
  CHECK(row(table, "interaction").p == Catch::Approx(1.0));

  // balanced design: SS components add up to the total
  double total = 0.0, mean = 0.0;
  const auto obs = two_by_two();
  for (const auto& o : obs) mean += o.value / obs.size();
  for (const auto& o : obs) total += (o.value - mean) * (o.value - mean);
  const double sum = row(table, "factor_a").ss + row(table, "factor_b").ss +
                     row(table, "interaction").ss + row(table, "residual").ss;
  CHECK(sum == Catch::Approx(total).epsilon(1e-9));
}

TEST_CASE("constant response degenerates to f zero and p one") {
  ObservationSet obs;
  for (const char* a : {"a1", "a2"})
    for (const char* b : {"b1", "b2"})
      for (int i = 0; i < 3; ++i) obs.push_back({a, b, 7.5});
  const auto table = two_way_anova(obs);
  for (const auto& r : table) {
    if (r.source == "residual") continue;
    CHECK(r.f == 0.0);
    CHECK(r.p == 1.0);
    CHECK(r.degenerate);
  }
}

TEST_CASE("designs without residual degrees of freedom are refused") {
  ObservationSet obs = {{"a1", "b1", 1}, {"a1", "b2", 2}, {"a2", "b1", 3}, {"a2", "b2", 4}};
  CHECK_THROWS_AS(two_way_anova(obs), ValidationError);
  ObservationSet single = {{"a1", "b1", 1}, {"a1", "b1", 2}, {"a1", "b2", 3}, {"a1", "b2", 4}};
  CHECK_THROWS_AS(two_way_anova(single), ValidationError);
}

TEST_CASE("unbalanced design keeps the type-2 identity ss_a = rss_b - rss_additive") {
  std::mt19937_64 rng(66120);
  std::normal_distribution<double> noise(0.0, 1.0);
  ObservationSet obs;
  for (const char* a : {"a1", "a2", "a3"})
    for (const char* b : {"b1", "b2"}) {
      const int reps = 2 + static_cast<int>(rng() % 4);
      for (int i = 0; i < reps; ++i)
        obs.push_back({a, b, (a[1] - '0') * 2.0 + (b[1] - '0') * 0.5 + noise(rng)});
    }
  const auto table = two_way_anova(obs);
  CHECK(row(table, "factor_a").ss > 0.0);
  CHECK(row(table, "factor_a").p < 0.05);  // strong effect by construction
  CHECK(row(table, "residual").df > 0.0);
}

TEST_CASE("studentized range cdf anchors") {
  CHECK(studentized_range_cdf(0.0, 3, 10) == 0.0);
  // critical value of the three-group, ten-df range
  CHECK(studentized_range_cdf(3.877, 3, 10) == Catch::Approx(0.95).margin(0.002));
  // two-group reduction at large df collapses to the normal difference
  const double q = 2.772;
  const double closed_form = 2.0 * llmfp::detail::normal_cdf(q / std::sqrt(2.0)) - 1.0;
  CHECK(studentized_range_cdf(q, 2, 1e6) == Catch::Approx(closed_form).margin(1e-4));
  // two-group finite df equals the folded t distribution
  for (double x : {1.0, 2.0, 3.0}) {
    CHECK(studentized_range_cdf(x * std::sqrt(2.0), 2, 10.0) ==
          Catch::Approx(t_two_sided(x, 10.0)).margin(1e-6));
  }
}

TEST_CASE("studentized range cdf is monotone in q and k") {
  double prev = -1.0;
  for (double q : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0}) {
    const double c = studentized_range_cdf(q, 3, 12);
    CHECK(c > prev);
    prev = c;
  }
  for (int k = 3; k <= 6; ++k)
    CHECK(studentized_range_cdf(3.0, k, 12) < studentized_range_cdf(3.0, k - 1, 12));
}

TEST_CASE("studentized range cdf agrees with a monte-carlo oracle") {
  // oracle: range of k normals over sqrt(chi2_df / df)
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> z;
  std::chi_squared_distribution<double> chi2(10.0);
  const int draws = 2'000'000;
  const double q = 3.877;
  int below = 0;
  for (int i = 0; i < draws; ++i) {
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < 3; ++j) {
      const double v = z(rng);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double s = std::sqrt(chi2(rng) / 10.0);
    if (hi - lo <= q * s) ++below;
  }
  const double mc = static_cast<double>(below) / draws;
  CHECK(studentized_range_cdf(q, 3, 10) == Catch::Approx(mc).margin(0.003));
}

TEST_CASE("identical groups compare as equal") {
  ObservationSet obs;
  for (const char* g : {"g1", "g2"})
    for (double v : {1.0, 2.0, 3.0}) obs.push_back({g, "size", v});
  const auto res = tukey_hsd(obs, Factor::A);
  REQUIRE(res.pairs.size() == 1);
  CHECK(res.pairs[0].mean_diff == 0.0);
  CHECK(res.pairs[0].p_adj == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("a single group cannot be compared") {
  ObservationSet obs = {{"only", "s", 1.0}, {"only", "s", 2.0}, {"only", "s", 3.0}};
  CHECK_THROWS_AS(tukey_hsd(obs, Factor::A), ValidationError);
}

TEST_CASE("zero mse with unequal means reports p exactly zero") {
  ObservationSet obs = {{"g1", "s", 1.0}, {"g1", "s", 1.0}, {"g2", "s", 2.0}, {"g2", "s", 2.0}};
  const auto res = tukey_hsd(obs, Factor::A);
  REQUIRE(res.pairs.size() == 1);
  CHECK(res.pairs[0].p_adj == 0.0);
  CHECK(std::isinf(res.pairs[0].q_stat));
}

TEST_CASE("tukey p values are invariant to relabeling and constant shifts") {
  std::mt19937_64 rng(515253);
  std::normal_distribution<double> noise(0.0, 0.5);
  ObservationSet obs;
  for (const char* g : {"alpha", "beta", "gamma"})
    for (int i = 0; i < 6; ++i)
      obs.push_back({g, "s", (g[0] - 'a') * 0.7 + noise(rng)});
  const auto base = tukey_hsd(obs, Factor::A);

  ObservationSet renamed = obs;
  for (auto& o : renamed) o.group_a = "z" + o.group_a;
  const auto ren = tukey_hsd(renamed, Factor::A);
  ObservationSet shifted = obs;
  for (auto& o : shifted) o.value += 123.456;
  const auto shf = tukey_hsd(shifted, Factor::A);
  for (std::size_t i = 0; i < base.pairs.size(); ++i) {
    CHECK(ren.pairs[i].p_adj == Catch::Approx(base.pairs[i].p_adj).epsilon(1e-12));
    CHECK(shf.pairs[i].p_adj == Catch::Approx(base.pairs[i].p_adj).margin(1e-9));
    CHECK(shf.pairs[i].q_stat == Catch::Approx(base.pairs[i].q_stat).margin(1e-9));
  }
}

TEST_CASE("a platform shifted by ten sigmas is flagged at every prompt size") {
  std::mt19937_64 rng(808303);
  std::normal_distribution<double> noise(0.0, 0.1);
  ObservationSet obs;
  for (const char* size : {"300", "1000", "1500"}) {
    for (int i = 0; i < 8; ++i) obs.push_back({"ref", size, 1.0 + noise(rng)});
    for (int i = 0; i < 8; ++i) obs.push_back({"same", size, 1.0 + noise(rng)});
    for (int i = 0; i < 8; ++i) obs.push_back({"shifted", size, 2.0 + noise(rng)});
  }
  const auto report = infer_hardware(obs);
  CHECK(report.reference == "ref");
  int flagged = 0, unflagged = 0;
  for (const auto& v : report.verdicts) {
    if (v.platform == "shifted") {
      CHECK(v.verdict == "inconsistent with reference hardware");
      ++flagged;
    }
    if (v.platform == "same") {
      CHECK(v.verdict == "inconclusive (no significant difference)");
      ++unflagged;
    }
  }
  CHECK(flagged == 3);
  CHECK(unflagged == 3);
}

TEST_CASE("identical sample sets are inconclusive everywhere") {
  ObservationSet obs;
  for (const char* g : {"p1", "p2"})
    for (double v : {1.0, 1.1, 0.9, 1.05}) obs.push_back({g, "1000", v});
  const auto report = infer_hardware(obs);
  for (const auto& v : report.verdicts) {
    CHECK(v.verdict == "inconclusive (no significant difference)");
    CHECK(v.p_adj > 0.9);
  }
}

TEST_CASE("insufficient cells are inconclusive") {
  ObservationSet obs = {{"p1", "300", 1.0}, {"p2", "300", 1.1}};
  const auto report = infer_hardware(obs);
  REQUIRE(report.verdicts.size() == 1);
  CHECK(report.verdicts[0].verdict == "inconclusive (insufficient data)");
  CHECK(report.rows.empty());
}

TEST_CASE("shipped samples reproduce the short-insignificant long-significant pattern") {
  const auto obs = load_energy_samples(testutil::data_file("hardware_samples.csv"));
  const auto anova = two_way_anova(obs);
  CHECK(row(anova, "factor_a").p < 0.05);

  const auto report = infer_hardware(obs);
  CHECK(report.reference == "Azure (H100)");
  for (const auto& v : report.verdicts) {
    if (v.prompt_size == "300") {
      CHECK(v.p_adj > 0.5);
      CHECK(v.verdict == "inconclusive (no significant difference)");
    } else {
      CHECK(v.p_adj < 0.05);
      CHECK(v.verdict == "inconsistent with reference hardware");
    }
  }
}
