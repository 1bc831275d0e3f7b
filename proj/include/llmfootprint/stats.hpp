#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "llmfootprint/errors.hpp"

namespace llmfp {

// One energy measurement labeled by two factors (e.g. provider-system and
// prompt size).
struct Observation {
  std::string group_a;
  std::string group_b;
  double value = 0.0;
};

using ObservationSet = std::vector<Observation>;

namespace detail {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Continued-fraction core of the regularized incomplete beta (Lentz).
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw InternalError("incomplete beta: continued fraction did not converge");
}

inline double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

// P(F > f) for an F(d1, d2) variate.
inline double f_survival(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return reg_inc_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> nodes, weights;

  explicit GaussLegendre(int n) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }
};

inline const GaussLegendre& gl20() {
  static const GaussLegendre g(20);
  return g;
}

// CDF of the range of k independent standard normals:
//   P(W <= w) = k * Integral phi(x) [Phi(x + w) - Phi(x)]^(k-1) dx
// conditioning on the location of the minimum.
inline double normal_range_cdf(double w, int k) {
  if (w <= 0.0) return 0.0;
  const auto& gl = gl20();
  constexpr double kLo = -9.0, kHi = 9.0;
  constexpr int kPanels = 18;
  const double h = (kHi - kLo) / kPanels;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = kLo + (p + 0.5) * h;
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * gl.nodes[i];
      const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
      const double span = normal_cdf(x + w) - normal_cdf(x);
      acc += gl.weights[i] * phi * std::pow(span, k - 1);
    }
    total += acc * 0.5 * h;
  }
  return std::min(1.0, k * total);
}

// log density of S = sqrt(chi2_nu / nu), the pooled scale estimate.
inline double log_scale_density(double s, double nu) {
  if (s <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(2.0) + 0.5 * nu * std::log(nu / 2.0) - std::lgamma(nu / 2.0) +
         (nu - 1.0) * std::log(s) - 0.5 * nu * s * s;
}

}  // namespace detail

// P(Q <= q) for the studentized range with k groups and df residual degrees
// of freedom: the normal-range CDF integrated against the pooled-scale
// density, truncated where that density is negligible. Composite
// Gauss-Legendre panels are doubled until the estimate is stable to 1e-8,
// well inside the 1e-6 contract.
inline double studentized_range_cdf(double q, int k, double df) {
  if (k < 2) throw ValidationError("studentized_range_cdf: k must be >= 2");
  if (df < 1.0) throw ValidationError("studentized_range_cdf: df must be >= 1");
  if (q <= 0.0) return 0.0;

  const double mode = df > 1.0 ? std::sqrt((df - 1.0) / df) : 1.0;
  const double log_peak = detail::log_scale_density(mode, df);
  const double threshold = log_peak - 45.0;  // density tail < 1e-19 relative

  // The log-density is unimodal: bisect for the points where it drops below
  // the truncation threshold on each side of the mode.
  double s_hi;
  {
    double lo = mode, hi = mode + 1.0;
    while (detail::log_scale_density(hi, df) > threshold) hi += 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (detail::log_scale_density(mid, df) > threshold)
        lo = mid;
      else
        hi = mid;
    }
    s_hi = hi;
  }
  double s_lo = 0.0;
  if (df > 100.0) {
    double lo = 0.0, hi = mode;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (detail::log_scale_density(mid, df) > threshold)
        hi = mid;
      else
        lo = mid;
    }
    s_lo = lo;
  }

  const auto& gl = detail::gl20();
  auto integrate = [&](int panels) {
    const double h = (s_hi - s_lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = s_lo + (p + 0.5) * h;
      double acc = 0.0;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double s = mid + 0.5 * h * gl.nodes[i];
        const double ld = detail::log_scale_density(s, df);
        if (ld < threshold) continue;
        acc += gl.weights[i] * std::exp(ld) * detail::normal_range_cdf(q * s, k);
      }
      total += acc * 0.5 * h;
    }
    return total;
  };

  double prev = integrate(8);
  for (int panels = 16; panels <= 512; panels *= 2) {
    const double cur = integrate(panels);
    if (std::abs(cur - prev) <= 1e-8) return std::clamp(cur, 0.0, 1.0);
    prev = cur;
  }
  throw InternalError("studentized_range_cdf: quadrature did not converge");
}

struct AnovaRow {
  std::string source;
  double ss = 0.0;
  double df = 0.0;
  double f = 0.0;
  double p = 1.0;
  bool degenerate = false;  // F undefined (zero residual variance)
};

namespace detail {

struct Design {
  std::vector<std::string> a_levels, b_levels;
  std::vector<int> a_idx, b_idx;
  std::vector<double> y;
  std::map<std::pair<int, int>, std::vector<double>> cells;
};

inline Design make_design(const ObservationSet& obs) {
  Design d;
  std::set<std::string> as, bs;
  for (const auto& o : obs) {
    as.insert(o.group_a);
    bs.insert(o.group_b);
  }
  d.a_levels.assign(as.begin(), as.end());
  d.b_levels.assign(bs.begin(), bs.end());
  auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  for (const auto& o : obs) {
    const int ai = index_of(d.a_levels, o.group_a);
    const int bi = index_of(d.b_levels, o.group_b);
    d.a_idx.push_back(ai);
    d.b_idx.push_back(bi);
    d.y.push_back(o.value);
    d.cells[{ai, bi}].push_back(o.value);
  }
  return d;
}

inline double rss_around_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss;
}

// Residual sum of squares of one-way grouping.
inline double rss_grouped(const std::vector<double>& y, const std::vector<int>& idx, int levels) {
  std::vector<std::vector<double>> groups(levels);
  for (std::size_t i = 0; i < y.size(); ++i) groups[idx[i]].push_back(y[i]);
  double ss = 0.0;
  for (const auto& g : groups) ss += rss_around_mean(g);
  return ss;
}

// Least-squares RSS via Householder QR; exactly collinear columns are
// detected by a vanishing subcolumn norm and skipped.
inline double least_squares_rss(std::vector<std::vector<double>> cols, std::vector<double> y) {
  const std::size_t n = y.size();
  std::size_t r = 0;  // current elimination row / rank
  for (auto& col : cols) {
    if (r >= n) break;
    double norm2 = 0.0;
    for (std::size_t i = r; i < n; ++i) norm2 += col[i] * col[i];
    const double norm = std::sqrt(norm2);
    if (norm < 1e-12) continue;
    double v0 = col[r] + (col[r] >= 0.0 ? norm : -norm);
    std::vector<double> v(n - r, 0.0);
    v[0] = v0;
    for (std::size_t i = r + 1; i < n; ++i) v[i - r] = col[i];
    double vtv = 0.0;
    for (double x : v) vtv += x * x;
    if (vtv < 1e-300) continue;
    auto apply = [&](std::vector<double>& target) {
      double dot = 0.0;
      for (std::size_t i = r; i < n; ++i) dot += v[i - r] * target[i];
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = r; i < n; ++i) target[i] -= f * v[i - r];
    };
    for (auto& other : cols)
      if (&other != &col) apply(other);
    apply(col);
    apply(y);
    ++r;
  }
  double rss = 0.0;
  for (std::size_t i = r; i < n; ++i) rss += y[i] * y[i];
  return rss;
}

// Columns for the additive two-factor model: intercept plus treatment
// dummies for every non-reference level.
inline std::vector<std::vector<double>> additive_columns(const Design& d) {
  const std::size_t n = d.y.size();
  std::vector<std::vector<double>> cols;
  cols.emplace_back(n, 1.0);
  for (std::size_t lv = 1; lv < d.a_levels.size(); ++lv) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) c[i] = d.a_idx[i] == static_cast<int>(lv) ? 1.0 : 0.0;
    cols.push_back(std::move(c));
  }
  for (std::size_t lv = 1; lv < d.b_levels.size(); ++lv) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) c[i] = d.b_idx[i] == static_cast<int>(lv) ? 1.0 : 0.0;
    cols.push_back(std::move(c));
  }
  return cols;
}

}  // namespace detail

// Two-way ANOVA with interaction. Type II sums of squares, so unbalanced
// designs are handled without an ordering artifact:
//   SS_A = RSS(B) - RSS(A+B),  SS_B = RSS(A) - RSS(A+B),
//   SS_AB = RSS(A+B) - RSS(full),  SS_res = RSS(full).
inline std::vector<AnovaRow> two_way_anova(const ObservationSet& obs) {
  const detail::Design d = detail::make_design(obs);
  const std::size_t n = d.y.size();
  const std::size_t a = d.a_levels.size(), b = d.b_levels.size();
  if (a < 2 || b < 2)
    throw ValidationError("two_way_anova: each factor needs at least two groups");
  for (const auto& [key, vals] : d.cells)
    if (vals.size() < 2)
      throw ValidationError("two_way_anova: cell (" + d.a_levels[key.first] + ", " +
                            d.b_levels[key.second] + ") has fewer than two observations");
  const std::size_t cells = d.cells.size();
  if (n <= cells) throw ValidationError("two_way_anova: zero residual degrees of freedom");

  const double rss_a = detail::rss_grouped(d.y, d.a_idx, static_cast<int>(a));
  const double rss_b = detail::rss_grouped(d.y, d.b_idx, static_cast<int>(b));
  const double rss_add = detail::least_squares_rss(detail::additive_columns(d), d.y);
  double rss_full = 0.0;
  for (const auto& [key, vals] : d.cells) rss_full += detail::rss_around_mean(vals);

  const double ss_a = std::max(0.0, rss_b - rss_add);
  const double ss_b = std::max(0.0, rss_a - rss_add);
  const double ss_ab = std::max(0.0, rss_add - rss_full);
  const double df_a = static_cast<double>(a - 1);
  const double df_b = static_cast<double>(b - 1);
  const double df_ab = static_cast<double>(cells) - static_cast<double>(a + b) + 1.0;
  const double df_res = static_cast<double>(n - cells);
  const double mse = rss_full / df_res;

  // Scale-aware floor: sums of squares below this are roundoff, not signal.
  // Scaled by the raw second moment so constant data degenerates cleanly.
  double sum_y2 = 0.0;
  for (double v : d.y) sum_y2 += v * v;
  const double tiny = 1e-12 * std::max(sum_y2, 1e-300);
  auto make_row = [&](const std::string& src, double ss, double df) {
    AnovaRow row{src, ss, df, 0.0, 1.0, false};
    if (df <= 0.0) {
      row.degenerate = true;
      return row;
    }
    if (mse <= tiny) {
      row.degenerate = true;
      if (ss > tiny) {
        row.f = std::numeric_limits<double>::infinity();
        row.p = 0.0;
      }
      return row;
    }
    row.f = (ss / df) / mse;
    row.p = detail::f_survival(row.f, df, df_res);
    return row;
  };

  std::vector<AnovaRow> table;
  table.push_back(make_row("factor_a", ss_a, df_a));
  table.push_back(make_row("factor_b", ss_b, df_b));
  table.push_back(make_row("interaction", ss_ab, df_ab));
  table.push_back(AnovaRow{"residual", rss_full, df_res, 0.0, 1.0, mse <= tiny});
  return table;
}

enum class Factor { A, B };

struct TukeyPair {
  std::string group_1;
  std::string group_2;
  double mean_diff = 0.0;  // mean(group_1) - mean(group_2)
  double q_stat = 0.0;
  double p_adj = 1.0;
};

struct TukeyResult {
  std::vector<TukeyPair> pairs;
  double mse = 0.0;
  double df = 0.0;
  int k = 0;
};

// Tukey-Kramer pairwise comparisons over one factor's level means. The
// residual mean square comes from the richest model the data supports: the
// full two-way layout when the other factor varies, otherwise the one-way
// layout on the chosen factor.
inline TukeyResult tukey_hsd(const ObservationSet& obs, Factor factor, double alpha = 0.05) {
  (void)alpha;  // significance is the caller's judgment; we report p values
  const detail::Design d = detail::make_design(obs);
  const auto& levels = factor == Factor::A ? d.a_levels : d.b_levels;
  const auto& idx = factor == Factor::A ? d.a_idx : d.b_idx;
  const auto& other_levels = factor == Factor::A ? d.b_levels : d.a_levels;
  const std::size_t k = levels.size();
  if (k < 2) throw ValidationError("tukey_hsd: factor needs at least two groups");

  const std::size_t n = d.y.size();
  double mse = 0.0, df = 0.0;
  bool two_way_ok = other_levels.size() >= 2 && n > d.cells.size();
  if (two_way_ok)
    for (const auto& [key, vals] : d.cells)
      if (vals.size() < 2) two_way_ok = false;
  if (two_way_ok) {
    double rss_full = 0.0;
    for (const auto& [key, vals] : d.cells) rss_full += detail::rss_around_mean(vals);
    df = static_cast<double>(n - d.cells.size());
    mse = rss_full / df;
  } else {
    if (n <= k) throw ValidationError("tukey_hsd: no residual degrees of freedom");
    mse = detail::rss_grouped(d.y, idx, static_cast<int>(k)) / static_cast<double>(n - k);
    df = static_cast<double>(n - k);
  }

  std::vector<double> mean(k, 0.0);
  std::vector<double> count(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mean[idx[i]] += d.y[i];
    count[idx[i]] += 1.0;
  }
  for (std::size_t g = 0; g < k; ++g) mean[g] /= count[g];

  TukeyResult res;
  res.mse = mse;
  res.df = df;
  res.k = static_cast<int>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      TukeyPair pr;
      pr.group_1 = levels[i];
      pr.group_2 = levels[j];
      pr.mean_diff = mean[i] - mean[j];
      const double adiff = std::abs(pr.mean_diff);
      if (mse <= 0.0) {
        pr.q_stat = adiff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        pr.p_adj = adiff == 0.0 ? 1.0 : 0.0;
      } else {
        const double se = std::sqrt(mse / 2.0 * (1.0 / count[i] + 1.0 / count[j]));
        pr.q_stat = adiff / se;
        pr.p_adj = std::clamp(
            1.0 - studentized_range_cdf(pr.q_stat, static_cast<int>(k), df), 0.0, 1.0);
      }
      res.pairs.push_back(std::move(pr));
    }
  }
  return res;
}

struct HardwarePairRow {
  std::string prompt_size;
  TukeyPair pair;
};

struct HardwareVerdict {
  std::string prompt_size;
  std::string platform;
  double p_adj = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;
};

struct HardwareReport {
  std::string reference;
  std::vector<HardwarePairRow> rows;
  std::vector<HardwareVerdict> verdicts;
};

// Per prompt size, compares every candidate platform's energy samples against
// the reference platform (the first label in the data). Only a rejection is
// evidence: p < alpha flags the platform as inconsistent with the reference
// hardware; everything else stays inconclusive.
inline HardwareReport infer_hardware(const ObservationSet& obs, double alpha = 0.05) {
  if (obs.empty()) throw ValidationError("infer_hardware: no observations");
  HardwareReport report;
  report.reference = obs.front().group_a;

  std::vector<std::string> sizes;
  for (const auto& o : obs)
    if (std::find(sizes.begin(), sizes.end(), o.group_b) == sizes.end())
      sizes.push_back(o.group_b);
  std::sort(sizes.begin(), sizes.end(), [](const std::string& x, const std::string& y) {
    try {
      return std::stod(x) < std::stod(y);
    } catch (...) {
      return x < y;
    }
  });

  for (const auto& size : sizes) {
    ObservationSet slice;
    std::map<std::string, int> counts;
    for (const auto& o : obs)
      if (o.group_b == size) {
        slice.push_back(o);
        ++counts[o.group_a];
      }
    const bool enough = counts.size() >= 2 && slice.size() > counts.size() &&
                        std::all_of(counts.begin(), counts.end(),
                                    [](const auto& kv) { return kv.second >= 2; });
    if (!enough) {
      for (const auto& [platform, cnt] : counts) {
        if (platform == report.reference) continue;
        report.verdicts.push_back({size, platform,
                                   std::numeric_limits<double>::quiet_NaN(),
                                   "inconclusive (insufficient data)"});
      }
      continue;
    }
    const TukeyResult tk = tukey_hsd(slice, Factor::A);
    for (const auto& pr : tk.pairs) report.rows.push_back({size, pr});
    for (const auto& [platform, cnt] : counts) {
      if (platform == report.reference) continue;
      for (const auto& pr : tk.pairs) {
        const bool match = (pr.group_1 == report.reference && pr.group_2 == platform) ||
                           (pr.group_2 == report.reference && pr.group_1 == platform);
        if (!match) continue;
        HardwareVerdict v;
        v.prompt_size = size;
        v.platform = platform;
        v.p_adj = pr.p_adj;
        v.verdict = pr.p_adj < alpha ? "inconsistent with reference hardware"
                                     : "inconclusive (no significant difference)";
        report.verdicts.push_back(std::move(v));
      }
    }
  }
  return report;
}

}  // namespace llmfp
