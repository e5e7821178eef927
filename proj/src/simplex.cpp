// Copyright 2026 The tworow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tworow/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tworow/tolerances.hpp"

namespace tworow {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

double LpSolution::value(int col) const {
  return col < num_structural ? x[col] : slack[col - num_structural];
}

int LpSolution::basis_position(int col) const {
  for (int r = 0; r < static_cast<int>(basis.size()); ++r) {
    if (basis[r] == col) return r;
  }
  return -1;
}

namespace {

enum class PhaseResult { kOptimal, kUnbounded };

class Simplex {
 public:
  Simplex(const MilpInstance& inst, const LpOptions& opts)
      : opts_(opts),
        m_(inst.num_rows()),
        n_(inst.num_cols()),
        limit_(opts.iteration_limit > 0 ? opts.iteration_limit
                                        : 50 * (inst.num_rows() + inst.num_cols())) {
    limit_ = std::max(limit_, 50);
    const double sign = inst.sense == ObjSense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      std::vector<double> c(m_);
      for (int r = 0; r < m_; ++r) c[r] = inst.rows[r].coefs[j];
      add_column(std::move(c), inst.vars[j].lower, inst.vars[j].upper,
                 sign * inst.vars[j].objective);
    }
    for (int r = 0; r < m_; ++r) {
      std::vector<double> c(m_, 0.0);
      c[r] = 1.0;
      double lo = 0.0, up = kInf;
      if (inst.rows[r].sense == RowSense::kGreater) {
        lo = -kInf;
        up = 0.0;
      } else if (inst.rows[r].sense == RowSense::kEqual) {
        up = 0.0;
      }
      add_column(std::move(c), lo, up, 0.0);
      rhs_.push_back(inst.rows[r].rhs);
    }
    num_real_ = n_ + m_;
  }

  LpSolution run() {
    initial_basis();
    LpSolution out;
    if (num_real_ < static_cast<int>(cols_.size())) {
      // Phase 1: minimise the sum of artificials.
      std::vector<double> saved = cost_;
      std::fill(cost_.begin(), cost_.end(), 0.0);
      for (std::size_t j = num_real_; j < cols_.size(); ++j) cost_[j] = 1.0;
      iterate(/*phase_one=*/true);
      refactor();
      double infeas = 0.0;
      double scale = 1.0;
      for (double b : rhs_) scale = std::max(scale, std::fabs(b));
      for (std::size_t j = num_real_; j < cols_.size(); ++j) infeas += x_[j];
      if (infeas > tol::kFeasibility * scale) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      cost_ = std::move(saved);
      for (std::size_t j = num_real_; j < cols_.size(); ++j) {
        up_[j] = 0.0;
        if (status_[j] != VarStatus::kBasic) {
          status_[j] = VarStatus::kAtLower;
          x_[j] = 0.0;
        }
      }
      drive_out_artificials();
      refactor();
    }
    if (iterate(/*phase_one=*/false) == PhaseResult::kUnbounded) {
      out.status = LpStatus::kUnbounded;
      out.iterations = iterations_;
      return out;
    }
    pivot_in_free_columns();
    refactor();
    return extract();
  }

 private:
  void add_column(std::vector<double> c, double lo, double up, double cost) {
    cols_.push_back(std::move(c));
    lo_.push_back(lo);
    up_.push_back(up);
    cost_.push_back(cost);
    x_.push_back(0.0);
    status_.push_back(VarStatus::kAtLower);
  }

  void initial_basis() {
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        status_[j] = VarStatus::kAtLower;
      } else if (std::isfinite(up_[j])) {
        x_[j] = up_[j];
        status_[j] = VarStatus::kAtUpper;
      } else {
        x_[j] = 0.0;
        status_[j] = VarStatus::kFree;
      }
    }
    basis_.assign(m_, -1);
    for (int r = 0; r < m_; ++r) {
      double res = rhs_[r];
      for (int j = 0; j < n_; ++j) res -= cols_[j][r] * x_[j];
      const int s = n_ + r;
      if (res >= lo_[s] - tol::kFeasibility && res <= up_[s] + tol::kFeasibility) {
        x_[s] = res;
        status_[s] = VarStatus::kBasic;
        basis_[r] = s;
        continue;
      }
      const double sv = res < lo_[s] ? lo_[s] : up_[s];
      x_[s] = sv;
      status_[s] = res < lo_[s] ? VarStatus::kAtLower : VarStatus::kAtUpper;
      if (lo_[s] == up_[s]) status_[s] = VarStatus::kAtLower;
      std::vector<double> c(m_, 0.0);
      c[r] = res - sv > 0.0 ? 1.0 : -1.0;
      add_column(std::move(c), 0.0, kInf, 0.0);
      const int a = static_cast<int>(cols_.size()) - 1;
      x_[a] = std::fabs(res - sv);
      status_[a] = VarStatus::kBasic;
      basis_[r] = a;
    }
    refactor();
  }

  // Rebuilds the basis inverse by Gauss-Jordan elimination and recomputes
  // the basic values from the nonbasic ones.
  void refactor() {
    since_refactor_ = 0;
    std::vector<double> a(static_cast<std::size_t>(m_) * m_);
    inv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      for (int k = 0; k < m_; ++k) a[r * m_ + k] = cols_[basis_[k]][r];
      inv_[r * m_ + r] = 1.0;
    }
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::fabs(a[r * m_ + c]) > std::fabs(a[piv * m_ + c])) piv = r;
      }
      if (std::fabs(a[piv * m_ + c]) < 1e-13) throw LpError("singular basis");
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(a[piv * m_ + k], a[c * m_ + k]);
          std::swap(inv_[piv * m_ + k], inv_[c * m_ + k]);
        }
      }
      const double p = a[c * m_ + c];
      for (int k = 0; k < m_; ++k) {
        a[c * m_ + k] /= p;
        inv_[c * m_ + k] /= p;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a[r * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          a[r * m_ + k] -= f * a[c * m_ + k];
          inv_[r * m_ + k] -= f * inv_[c * m_ + k];
        }
      }
    }
    std::vector<double> res = rhs_;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      for (int r = 0; r < m_; ++r) res[r] -= cols_[j][r] * x_[j];
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += inv_[r * m_ + k] * res[k];
      x_[basis_[r]] = v;
    }
  }

  std::vector<double> ftran(int j) const {
    std::vector<double> out(m_, 0.0);
    const auto& c = cols_[j];
    for (int k = 0; k < m_; ++k) {
      if (c[k] == 0.0) continue;
      for (int r = 0; r < m_; ++r) out[r] += inv_[r * m_ + k] * c[k];
    }
    return out;
  }

  void pivot(int leave_pos, int enter, const std::vector<double>& alpha) {
    const double p = alpha[leave_pos];
    for (int k = 0; k < m_; ++k) inv_[leave_pos * m_ + k] /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == leave_pos || alpha[r] == 0.0) continue;
      const double f = alpha[r];
      for (int k = 0; k < m_; ++k) inv_[r * m_ + k] -= f * inv_[leave_pos * m_ + k];
    }
    basis_[leave_pos] = enter;
    status_[enter] = VarStatus::kBasic;
    ++since_refactor_;
  }

  bool movable(int j, bool phase_one) const {
    if (status_[j] == VarStatus::kBasic) return false;
    if (!phase_one && j >= num_real_) return false;
    return lo_[j] < up_[j];
  }

  PhaseResult iterate(bool phase_one) {
    int degenerate = 0;
    bool bland = false;
    for (;;) {
      if (iterations_ >= limit_) {
        throw LpError("simplex iteration limit (" + std::to_string(limit_) +
                      ") exceeded");
      }
      if (since_refactor_ >= opts_.refactor_interval) refactor();

      std::vector<double> y(m_, 0.0);
      for (int r = 0; r < m_; ++r) {
        const double cb = cost_[basis_[r]];
        if (cb == 0.0) continue;
        for (int k = 0; k < m_; ++k) y[k] += cb * inv_[r * m_ + k];
      }

      int enter = -1;
      double enter_dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
        if (!movable(j, phase_one)) continue;
        double d = cost_[j];
        for (int k = 0; k < m_; ++k) d -= y[k] * cols_[j][k];
        double dir = 0.0;
        if (status_[j] == VarStatus::kAtLower && d < -tol::kDual) dir = 1.0;
        else if (status_[j] == VarStatus::kAtUpper && d > tol::kDual) dir = -1.0;
        else if (status_[j] == VarStatus::kFree && std::fabs(d) > tol::kDual)
          dir = d < 0.0 ? 1.0 : -1.0;
        if (dir == 0.0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          enter_dir = dir;
        }
      }
      if (enter < 0) return PhaseResult::kOptimal;

      const std::vector<double> alpha = ftran(enter);
      double theta = kInf;
      int leave = -1;
      if (std::isfinite(lo_[enter]) && std::isfinite(up_[enter])) {
        theta = up_[enter] - lo_[enter];
      }
      for (int r = 0; r < m_; ++r) {
        const double a = alpha[r];
        if (std::fabs(a) <= tol::kPivot) continue;
        const int k = basis_[r];
        const double rate = -enter_dir * a;
        double t;
        if (rate < 0.0 && std::isfinite(lo_[k])) t = (x_[k] - lo_[k]) / -rate;
        else if (rate > 0.0 && std::isfinite(up_[k])) t = (up_[k] - x_[k]) / rate;
        else continue;
        t = std::max(t, 0.0);
        if (t < theta - tol::kZero) {
          theta = t;
          leave = r;
        } else if (t <= theta + tol::kZero && leave >= 0) {
          const bool better = bland ? basis_[r] < basis_[leave]
                                    : std::fabs(a) > std::fabs(alpha[leave]);
          if (better) {
            theta = std::min(theta, t);
            leave = r;
          }
        }
      }
      if (!std::isfinite(theta)) {
        if (phase_one) throw LpError("unbounded phase-one problem");
        return PhaseResult::kUnbounded;
      }
      ++iterations_;

      x_[enter] += enter_dir * theta;
      for (int r = 0; r < m_; ++r) x_[basis_[r]] -= enter_dir * theta * alpha[r];

      if (theta <= tol::kZero) {
        if (++degenerate > opts_.bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }

      if (leave < 0) {
        // Bound flip of the entering column.
        if (enter_dir > 0.0) {
          x_[enter] = up_[enter];
          status_[enter] = VarStatus::kAtUpper;
        } else {
          x_[enter] = lo_[enter];
          status_[enter] = VarStatus::kAtLower;
        }
        continue;
      }
      const int k = basis_[leave];
      const double rate = -enter_dir * alpha[leave];
      if (lo_[k] == up_[k] || rate < 0.0) {
        x_[k] = lo_[k];
        status_[k] = VarStatus::kAtLower;
      } else {
        x_[k] = up_[k];
        status_[k] = VarStatus::kAtUpper;
      }
      pivot(leave, enter, alpha);
    }
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < num_real_) continue;
      std::vector<double> rho(inv_.begin() + r * m_, inv_.begin() + (r + 1) * m_);
      int best = -1;
      double best_mag = 1e-7;
      for (int j = 0; j < num_real_; ++j) {
        if (status_[j] == VarStatus::kBasic) continue;
        double v = 0.0;
        for (int k = 0; k < m_; ++k) v += rho[k] * cols_[j][k];
        // Prefer columns that can move.
        const double mag = std::fabs(v) * (lo_[j] < up_[j] ? 1.0 : 1e-3);
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row
      const int art = basis_[r];
      const std::vector<double> alpha = ftran(best);
      if (std::fabs(alpha[r]) <= tol::kPivot) continue;
      x_[art] = 0.0;
      status_[art] = VarStatus::kAtLower;
      pivot(r, best, alpha);
    }
  }

  // A free column left nonbasic would make its displacement sign-free,
  // which the tableau consumers cannot use. Since its reduced cost is zero
  // at optimality it can be pivoted in without changing the objective.
  void pivot_in_free_columns() {
    for (int j = 0; j < n_; ++j) {
      if (status_[j] != VarStatus::kFree) continue;
      const std::vector<double> alpha = ftran(j);
      for (double dir : {1.0, -1.0}) {
        double theta = kInf;
        int leave = -1;
        for (int r = 0; r < m_; ++r) {
          const double a = alpha[r];
          if (std::fabs(a) <= 1e-7) continue;
          const int k = basis_[r];
          const double rate = -dir * a;
          double t;
          if (rate < 0.0 && std::isfinite(lo_[k])) t = (x_[k] - lo_[k]) / -rate;
          else if (rate > 0.0 && std::isfinite(up_[k])) t = (up_[k] - x_[k]) / rate;
          else continue;
          t = std::max(t, 0.0);
          if (t < theta - tol::kZero ||
              (t <= theta + tol::kZero && leave >= 0 &&
               std::fabs(a) > std::fabs(alpha[leave]))) {
            theta = std::min(theta, t);
            leave = r;
          }
        }
        if (leave < 0) continue;
        x_[j] += dir * theta;
        for (int r = 0; r < m_; ++r) x_[basis_[r]] -= dir * theta * alpha[r];
        const int k = basis_[leave];
        const double rate = -dir * alpha[leave];
        if (lo_[k] == up_[k] || rate < 0.0) {
          x_[k] = lo_[k];
          status_[k] = VarStatus::kAtLower;
        } else {
          x_[k] = up_[k];
          status_[k] = VarStatus::kAtUpper;
        }
        pivot(leave, j, alpha);
        break;
      }
    }
  }

  LpSolution extract() const {
    LpSolution out;
    out.status = LpStatus::kOptimal;
    out.num_structural = n_;
    out.iterations = iterations_;
    out.x.assign(x_.begin(), x_.begin() + n_);
    out.slack.assign(x_.begin() + n_, x_.begin() + n_ + m_);
    out.basis = basis_;
    out.status_of.assign(status_.begin(), status_.begin() + num_real_);
    out.lower.assign(lo_.begin(), lo_.begin() + num_real_);
    out.upper.assign(up_.begin(), up_.begin() + num_real_);
    // Snap nonbasic columns exactly onto their bounds.
    for (int j = 0; j < num_real_; ++j) {
      if (out.status_of[j] == VarStatus::kAtLower) {
        (j < n_ ? out.x[j] : out.slack[j - n_]) = lo_[j];
      } else if (out.status_of[j] == VarStatus::kAtUpper) {
        (j < n_ ? out.x[j] : out.slack[j - n_]) = up_[j];
      }
      if (out.status_of[j] != VarStatus::kBasic && lo_[j] < up_[j]) {
        out.nonbasic.push_back(j);
      }
    }
    auto factor = std::make_shared<BasisFactor>();
    factor->num_rows = m_;
    factor->columns.assign(cols_.begin(), cols_.begin() + num_real_);
    factor->inverse = inv_;
    out.factor = std::move(factor);
    return out;
  }

  LpOptions opts_;
  int m_;
  int n_;
  int num_real_ = 0;
  int limit_;
  int iterations_ = 0;
  int since_refactor_ = 0;
  std::vector<std::vector<double>> cols_;
  std::vector<double> lo_, up_, cost_, x_, rhs_;
  std::vector<VarStatus> status_;
  std::vector<int> basis_;
  std::vector<double> inv_;
};

}  // namespace

LpSolution solve_lp(const MilpInstance& inst, const LpOptions& opts) {
  inst.check();
  for (const Variable& v : inst.vars) {
    if (v.lower > v.upper) {
      LpSolution out;
      out.status = LpStatus::kInfeasible;
      return out;
    }
  }
  LpSolution sol = Simplex(inst, opts).run();
  if (sol.status == LpStatus::kOptimal) sol.objective = inst.objective_value(sol.x);
  return sol;
}

TableauRow tableau_row(const LpSolution& sol, int basic_col) {
  const int pos = sol.basis_position(basic_col);
  if (pos < 0 || !sol.factor) {
    throw std::invalid_argument("column " + std::to_string(basic_col) +
                                " is not basic");
  }
  const BasisFactor& f = *sol.factor;
  const int m = f.num_rows;
  TableauRow row;
  row.basic = basic_col;
  row.value = sol.value(basic_col);
  row.coef.reserve(sol.nonbasic.size());
  for (int j : sol.nonbasic) {
    double a = 0.0;
    for (int k = 0; k < m; ++k) a += f.inverse[pos * m + k] * f.columns[j][k];
    // x_B = beta - sum a_j x_j; displacement from the lower bound enters
    // with -a, from the upper bound with +a.
    double c = sol.status_of[j] == VarStatus::kAtUpper ? a : -a;
    if (std::fabs(c) < tol::kZero) c = 0.0;
    row.coef.push_back(c);
  }
  return row;
}

MilpInstance fix_variable(const MilpInstance& inst, int var, double value) {
  if (var < 0 || var >= inst.num_cols()) {
    throw std::invalid_argument("fix_variable: bad column index");
  }
  const Variable& v = inst.vars[var];
  if (value < v.lower - 1e-9 || value > v.upper + 1e-9) {
    throw std::invalid_argument("cannot fix " + v.name + " at " +
                                std::to_string(value) + ": outside bounds");
  }
  MilpInstance out = inst;
  out.vars[var].lower = value;
  out.vars[var].upper = value;
  return out;
}

}  // namespace tworow
