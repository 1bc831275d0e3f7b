#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "llmfootprint/errors.hpp"

namespace llmfp {

enum class Rel { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  std::vector<double> coeffs;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

struct LpProblem {
  std::vector<double> objective;
  bool maximize = true;
  std::vector<LpConstraint> constraints;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> x;
  double objective = 0.0;
};

namespace detail {

// Two-phase primal simplex on a dense tableau. Bland's rule throughout:
// entering variable is the lowest-index column with a positive reduced cost,
// leaving row breaks ratio ties on the lowest basic-variable index. This
// cannot cycle and makes every solve deterministic.
class SimplexTableau {
 public:
  SimplexTableau(const LpProblem& p, const std::vector<double>& col_scale)
      : n_(p.objective.size()), m_(p.constraints.size()) {
    std::vector<Rel> rel(m_);
    std::vector<double> rhs(m_);
    std::vector<std::vector<double>> a(m_, std::vector<double>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& c = p.constraints[i];
      if (c.coeffs.size() != n_)
        throw InternalError("solve_lp: constraint " + std::to_string(i) + " has " +
                            std::to_string(c.coeffs.size()) + " coefficients, expected " +
                            std::to_string(n_));
      rel[i] = c.rel;
      rhs[i] = c.rhs;
      for (std::size_t j = 0; j < n_; ++j) a[i][j] = c.coeffs[j] * col_scale[j];
      if (rhs[i] < 0.0) {
        for (auto& v : a[i]) v = -v;
        rhs[i] = -rhs[i];
        rel[i] = rel[i] == Rel::Le ? Rel::Ge : (rel[i] == Rel::Ge ? Rel::Le : Rel::Eq);
      }
    }
    std::size_t nslack = 0, nart = 0;
    for (auto r : rel) {
      if (r != Rel::Eq) ++nslack;
      if (r != Rel::Le) ++nart;
    }
    cols_ = n_ + nslack + nart;
    tab_.assign(m_, std::vector<double>(cols_, 0.0));
    rhs_ = rhs;
    basis_.assign(m_, 0);
    std::size_t slack = n_;
    std::size_t art = n_ + nslack;
    art_begin_ = art;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a[i][j];
      switch (rel[i]) {
        case Rel::Le:
          tab_[i][slack] = 1.0;
          basis_[i] = slack++;
          break;
        case Rel::Ge:
          tab_[i][slack++] = -1.0;
          tab_[i][art] = 1.0;
          basis_[i] = art++;
          break;
        case Rel::Eq:
          tab_[i][art] = 1.0;
          basis_[i] = art++;
          break;
      }
    }
    structural_end_ = n_ + nslack;
  }

  bool has_artificials() const { return art_begin_ < cols_; }

  // Maximizes obj over the first `allowed` columns. Returns false if
  // unbounded.
  bool run(const std::vector<double>& obj, std::size_t allowed) {
    const std::size_t max_iter = 50000 + 1000 * (m_ + cols_);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (is_basic(j)) continue;
        if (reduced_cost(obj, j) > kTol) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter] > kTol) {
          const double ratio = rhs_[i] / tab_[i][enter];
          if (leave == m_ || ratio < best - kRatioTie ||
              (std::abs(ratio - best) <= kRatioTie && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw InternalError("solve_lp: iteration limit reached");
  }

  double phase1() {
    std::vector<double> obj(cols_, 0.0);
    for (std::size_t j = art_begin_; j < cols_; ++j) obj[j] = -1.0;
    if (!run(obj, cols_)) throw InternalError("solve_lp: phase-1 unbounded");
    double infeas = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= art_begin_) infeas += rhs_[i];
    // drive leftover zero-level artificials out of the basis
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= art_begin_ && rhs_[i] <= kTol) {
        for (std::size_t j = 0; j < structural_end_; ++j) {
          if (std::abs(tab_[i][j]) > kPivotTol) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    return infeas;
  }

  bool phase2(const std::vector<double>& c, bool maximize) {
    std::vector<double> obj(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj[j] = maximize ? c[j] : -c[j];
    obj_ = obj;
    return run(obj, structural_end_);
  }

  // Optimality certificate: primal feasibility of the basic solution and
  // non-positive reduced costs over all structural and slack columns.
  bool verify_optimal() const {
    for (std::size_t i = 0; i < m_; ++i)
      if (rhs_[i] < -kVerifyTol) return false;
    for (std::size_t j = 0; j < structural_end_; ++j) {
      if (is_basic(j)) continue;
      if (reduced_cost(obj_, j) > kVerifyTol) return false;
    }
    return true;
  }

  std::vector<double> solution(const std::vector<double>& col_scale) const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i] * col_scale[basis_[i]];
    return x;
  }

  double min_pivot() const { return min_pivot_; }

 private:
  static constexpr double kTol = 1e-9;
  static constexpr double kRatioTie = 1e-12;
  static constexpr double kPivotTol = 1e-7;
  static constexpr double kVerifyTol = 1e-7;

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  double reduced_cost(const std::vector<double>& obj, std::size_t j) const {
    double z = 0.0;
    for (std::size_t i = 0; i < m_; ++i) z += obj[basis_[i]] * tab_[i][j];
    return obj[j] - z;
  }

  void pivot(std::size_t r, std::size_t col) {
    const double p = tab_[r][col];
    min_pivot_ = std::min(min_pivot_, std::abs(p));
    const double inv = 1.0 / p;
    for (auto& v : tab_[r]) v *= inv;
    rhs_[r] *= inv;
    tab_[r][col] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] -= f * tab_[r][j];
      tab_[i][col] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = col;
  }

  std::size_t n_, m_, cols_ = 0, structural_end_ = 0, art_begin_ = 0;
  std::vector<std::vector<double>> tab_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> obj_;
  double min_pivot_ = 1.0;
};

inline LpSolution solve_lp_scaled(const LpProblem& p, const std::vector<double>& col_scale,
                                  bool* ok) {
  SimplexTableau t(p, col_scale);
  *ok = true;
  if (t.has_artificials() && t.phase1() > 1e-7) return {LpStatus::Infeasible, {}, 0.0};
  if (!t.phase2(p.objective, p.maximize)) return {LpStatus::Unbounded, {}, 0.0};
  if (!t.verify_optimal() || t.min_pivot() < 1e-11) *ok = false;
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x = t.solution(col_scale);
  for (std::size_t j = 0; j < p.objective.size(); ++j) sol.objective += p.objective[j] * sol.x[j];
  return sol;
}

}  // namespace detail

// Solves max/min c.x subject to A x {<=,=,>=} b, x >= 0. A first pass runs on
// the data as given; if it trips the pivot tolerance, fails the optimality
// certificate, or reaches an infeasible/unbounded verdict that bad column
// scaling could explain, the problem is re-solved once with geometric-mean
// column equilibration and that verdict is final.
inline LpSolution solve_lp(const LpProblem& p) {
  if (p.objective.empty()) throw InternalError("solve_lp: empty objective");
  std::vector<double> unit(p.objective.size(), 1.0);
  bool ok = true;
  LpSolution sol = detail::solve_lp_scaled(p, unit, &ok);
  if (ok && sol.status == LpStatus::Optimal) return sol;

  std::vector<double> scale(p.objective.size(), 1.0);
  for (std::size_t j = 0; j < p.objective.size(); ++j) {
    double lo = 0.0, hi = 0.0;
    for (const auto& c : p.constraints) {
      const double a = std::abs(c.coeffs[j]);
      if (a == 0.0) continue;
      lo = lo == 0.0 ? a : std::min(lo, a);
      hi = std::max(hi, a);
    }
    if (hi > 0.0) scale[j] = 1.0 / std::sqrt(lo * hi);
  }
  sol = detail::solve_lp_scaled(p, scale, &ok);
  if (sol.status == LpStatus::Optimal && !ok)
    throw InternalError("solve_lp: pivot tolerance breach after rescaling");
  return sol;
}

}  // namespace llmfp
