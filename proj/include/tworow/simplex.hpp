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

// Dense bounded-variable primal simplex.
//
// Columns are numbered 0..n-1 for the structural variables followed by one
// slack per row, n..n+m-1, with `row . x + slack = rhs`. Slack bounds encode
// the row sense: [0, inf) for <=, (-inf, 0] for >=, [0, 0] for =.
//
// The solver keeps an explicit basis inverse that is rebuilt from scratch
// every `refactor_interval` pivots. Pricing is Dantzig; after
// `bland_after` consecutive degenerate pivots it switches to Bland's rule
// until the objective moves again.

#ifndef TWOROW_SIMPLEX_HPP_
#define TWOROW_SIMPLEX_HPP_

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tworow/instance.hpp"

namespace tworow {

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
enum class VarStatus { kBasic, kAtLower, kAtUpper, kFree };

std::string to_string(LpStatus s);

struct LpOptions {
  // 0 selects 50 * (rows + cols).
  int iteration_limit = 0;
  int refactor_interval = 50;
  int bland_after = 100;
};

// Basis data needed to produce tableau rows after the solve.
struct BasisFactor {
  int num_rows = 0;
  // Structural + slack columns, dense, each of length num_rows.
  std::vector<std::vector<double>> columns;
  // Row-major inverse of the optimal basis.
  std::vector<double> inverse;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  // In the instance's own sense, including the objective offset.
  double objective = 0.0;
  std::vector<double> x;      // structural values
  std::vector<double> slack;  // rhs - row activity, per row
  // basis[r] is the column basic in position r. Values >= n + m denote an
  // artificial left in the basis of a redundant equality system.
  std::vector<int> basis;
  std::vector<VarStatus> status_of;  // per column, n + m entries
  std::vector<double> lower;         // per column
  std::vector<double> upper;         // per column
  // Nonbasic columns that can move (lower < upper), ascending. Tableau row
  // coefficients are aligned with this list.
  std::vector<int> nonbasic;
  int num_structural = 0;
  int iterations = 0;
  std::shared_ptr<const BasisFactor> factor;

  int num_rows() const { return static_cast<int>(slack.size()); }
  int num_columns() const { return num_structural + num_rows(); }
  bool is_slack(int col) const { return col >= num_structural; }
  double value(int col) const;
  // Position r with basis[r] == col, or -1.
  int basis_position(int col) const;
};

LpSolution solve_lp(const MilpInstance& inst, const LpOptions& opts = {});

// One simplex tableau row x_basic = value + sum_j coef[j] * s_j, where s_j
// is the displacement of nonbasic column sol.nonbasic[j] from the bound it
// sits at (x_j - l_j at lower, u_j - x_j at upper, x_j for a free column).
struct TableauRow {
  int basic = -1;
  double value = 0.0;
  std::vector<double> coef;
};

// Throws std::invalid_argument if `basic_col` is not basic.
TableauRow tableau_row(const LpSolution& sol, int basic_col);

// Copy of `inst` with variable `var` fixed at `value`. Throws
// std::invalid_argument when value lies outside the bounds (tolerance 1e-9).
MilpInstance fix_variable(const MilpInstance& inst, int var, double value);

}  // namespace tworow

#endif  // TWOROW_SIMPLEX_HPP_
