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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "test_support.hpp"
#include "tworow/simplex.hpp"

using namespace tworow;
using tworow::testing::make_instance;

TEST_CASE("max x1 + x2 with x1 + x2 <= 1") {
  MilpInstance inst = make_instance(ObjSense::kMaximize, {1, 1},
                                    {{{1, 1}, RowSense::kLess, 1}});
  LpSolution s = solve_lp(inst);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("unbounded and infeasible") {
  MilpInstance unb = make_instance(ObjSense::kMaximize, {1}, {});
  CHECK(solve_lp(unb).status == LpStatus::kUnbounded);

  MilpInstance inf = make_instance(ObjSense::kMinimize, {1},
                                   {{{1}, RowSense::kLess, -1}});
  CHECK(solve_lp(inf).status == LpStatus::kInfeasible);
}

TEST_CASE("single row tableau") {
  // max x1 s.t. x1 + s = 1: x1 basic at 1, slack nonbasic.
  MilpInstance inst = make_instance(ObjSense::kMaximize, {1},
                                    {{{1}, RowSense::kLess, 1}});
  LpSolution s = solve_lp(inst);
  REQUIRE(s.status == LpStatus::kOptimal);
  TableauRow row = tableau_row(s, 0);
  CHECK(row.value == 1.0);
  REQUIRE(row.coef.size() == 1);
  CHECK(s.nonbasic[0] == 1);
  CHECK(row.coef[0] == -1.0);
  CHECK_THROWS_AS(tableau_row(s, 1), std::invalid_argument);
}

TEST_CASE("nonbasic at its upper bound flips the coefficient sign") {
  // max x1 + x2, x1 + x2 <= 1.5, x1 <= 1: x1 at upper, x2 basic = 0.5.
  MilpInstance inst = make_instance(ObjSense::kMaximize, {2, 1},
                                    {{{1, 1}, RowSense::kLess, 1.5}});
  inst.vars[0].upper = 1.0;
  LpSolution s = solve_lp(inst);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.status_of[0] == VarStatus::kAtUpper);
  TableauRow row = tableau_row(s, 1);
  CHECK(row.value == doctest::Approx(0.5));
  // x2 = 1.5 - x1 - slack; raw coefficient of x1 is -1, and s = u - x1.
  for (std::size_t j = 0; j < s.nonbasic.size(); ++j) {
    if (s.nonbasic[j] == 0) CHECK(row.coef[j] == doctest::Approx(1.0));
    if (s.nonbasic[j] == 2) CHECK(row.coef[j] == doctest::Approx(-1.0));
  }
}

TEST_CASE("fix_variable") {
  MilpInstance inst = make_instance(ObjSense::kMaximize, {1}, {});
  inst.vars[0].upper = 5.0;
  MilpInstance fixed = fix_variable(inst, 0, 1.0);
  CHECK(fixed.vars[0].lower == 1.0);
  CHECK(fixed.vars[0].upper == 1.0);
  CHECK_THROWS_AS(fix_variable(inst, 0, 7.0), std::invalid_argument);
  CHECK(solve_lp(fixed).objective <= solve_lp(inst).objective);
}

namespace {

// Optimum by enumerating every basic solution of a bounded LP with at most
// three columns: pick n tight constraints among rows and finite bounds.
double vertex_enumeration(const MilpInstance& inst, bool* feasible) {
  const int n = inst.num_cols();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const Row& r : inst.rows) planes.push_back({r.coefs, r.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    if (std::isfinite(inst.vars[j].lower)) planes.push_back({e, inst.vars[j].lower});
    if (std::isfinite(inst.vars[j].upper)) planes.push_back({e, inst.vars[j].upper});
  }
  const int p = static_cast<int>(planes.size());
  double best = inst.sense == ObjSense::kMinimize ? kInf : -kInf;
  *feasible = false;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      // Gaussian elimination on the picked planes.
      std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m[r][c] = planes[pick[r]].a[c];
        m[r][n] = planes[pick[r]].b;
      }
      for (int c = 0; c < n; ++c) {
        int piv = -1;
        double big = 1e-9;
        for (int r = c; r < n; ++r) {
          if (std::fabs(m[r][c]) > big) big = std::fabs(m[r][c]), piv = r;
        }
        if (piv < 0) return;
        std::swap(m[c], m[piv]);
        for (int r = 0; r < n; ++r) {
          if (r == c) continue;
          const double factor = m[r][c] / m[c][c];
          for (int k = c; k <= n; ++k) m[r][k] -= factor * m[c][k];
        }
      }
      std::vector<double> x(n);
      for (int c = 0; c < n; ++c) x[c] = m[c][n] / m[c][c];
      MilpInstance relaxed = inst;
      for (Variable& v : relaxed.vars) v.integer = false;
      if (!validate_point(relaxed, x, 1e-7).feasible()) return;
      *feasible = true;
      const double z = inst.objective_value(x);
      best = inst.sense == ObjSense::kMinimize ? std::min(best, z) : std::max(best, z);
      return;
    }
    for (int k = start; k < p; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("random bounded LPs agree with vertex enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 3;
    const int m = 1 + static_cast<int>(rng() % 4);
    MilpInstance inst;
    inst.sense = trial % 2 ? ObjSense::kMaximize : ObjSense::kMinimize;
    for (int j = 0; j < n; ++j) {
      Variable v;
      v.name = "x" + std::to_string(j);
      v.lower = -static_cast<double>(rng() % 3);
      v.upper = static_cast<double>(rng() % 4);
      v.objective = coef(rng);
      inst.vars.push_back(v);
    }
    for (int r = 0; r < m; ++r) {
      Row row;
      row.name = "r" + std::to_string(r);
      row.sense = static_cast<RowSense>(rng() % 3);
      row.coefs.resize(n);
      for (double& c : row.coefs) c = coef(rng);
      row.rhs = coef(rng) * 0.5;
      inst.rows.push_back(row);
    }
    bool feasible = false;
    const double oracle = vertex_enumeration(inst, &feasible);
    LpSolution s = solve_lp(inst);
    if (!feasible) {
      CHECK(s.status == LpStatus::kInfeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(s.status == LpStatus::kOptimal);
    ++optimal;
    CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(validate_point(inst, s.x, 1e-7).feasible());
    CHECK(static_cast<int>(s.basis.size()) == inst.num_rows());
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
}

TEST_CASE("tableau rows are identities of the row system") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int rows_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    MilpInstance inst;
    inst.sense = ObjSense::kMaximize;
    for (int j = 0; j < n; ++j) {
      Variable v;
      v.name = "x" + std::to_string(j);
      v.lower = 0.0;
      v.upper = 1.0 + static_cast<double>(rng() % 3);
      v.objective = coef(rng);
      inst.vars.push_back(v);
    }
    for (int r = 0; r < 3; ++r) {
      Row row;
      row.name = "r" + std::to_string(r);
      row.sense = RowSense::kLess;
      row.coefs.resize(n);
      for (double& c : row.coefs) c = coef(rng);
      row.rhs = 1.0 + static_cast<double>(rng() % 5);
      inst.rows.push_back(row);
    }
    LpSolution s = solve_lp(inst);
    REQUIRE(s.status == LpStatus::kOptimal);
    // Any x, with slacks taken from the rows, satisfies every tableau row.
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    std::vector<double> full(n + inst.num_rows());
    for (int j = 0; j < n; ++j) full[j] = x[j];
    for (int r = 0; r < inst.num_rows(); ++r) {
      full[n + r] = inst.rows[r].rhs - inst.rows[r].activity(x);
    }
    for (int col : s.basis) {
      if (col >= n + inst.num_rows()) continue;
      TableauRow row = tableau_row(s, col);
      CHECK(row.value == doctest::Approx(s.value(col)).epsilon(1e-9));
      double rebuilt = row.value;
      for (std::size_t j = 0; j < s.nonbasic.size(); ++j) {
        const int c = s.nonbasic[j];
        const double disp = s.status_of[c] == VarStatus::kAtUpper
                                ? s.upper[c] - full[c]
                                : full[c] - s.lower[c];
        rebuilt += row.coef[j] * disp;
      }
      CHECK(rebuilt == doctest::Approx(full[col]).epsilon(1e-7));
      ++rows_checked;
    }
  }
  CHECK(rows_checked > 100);
}

TEST_CASE("degenerate cycling-prone LP terminates") {
  // Beale's example, which cycles under textbook Dantzig without safeguards.
  MilpInstance inst = make_instance(
      ObjSense::kMinimize, {-0.75, 150, -0.02, 6},
      {{{0.25, -60, -0.04, 9}, RowSense::kLess, 0},
       {{0.5, -90, -0.02, 3}, RowSense::kLess, 0},
       {{0, 0, 1, 0}, RowSense::kLess, 1}});
  LpSolution s = solve_lp(inst);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(-0.05));
}
