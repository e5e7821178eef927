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

#include "tworow/tworow.hpp"

#include <cmath>
#include <stdexcept>

#include "tworow/tolerances.hpp"

namespace tworow {

double integer_infeasibility(double v) {
  return std::min(v - std::floor(v), std::ceil(v) - v);
}

RowClass classify_value(double v, const RowThresholds& t) {
  const double inf = integer_infeasibility(v);
  if (inf >= t.fractional_min) return {RowClass::Kind::kFractional, {}};
  if (inf <= t.integer_max) return {RowClass::Kind::kInteger, {}};
  return {RowClass::Kind::kSkipped, "integer infeasibility between thresholds"};
}

std::vector<RowClass> classify_rows(std::span<const TableauRow> rows,
                                    const RowThresholds& t) {
  std::vector<RowClass> out;
  out.reserve(rows.size());
  for (const TableauRow& r : rows) out.push_back(classify_value(r.value, t));
  return out;
}

std::vector<int> TableauSnapshot::fractional_rows() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(classes.size()); ++k) {
    if (classes[k].kind == RowClass::Kind::kFractional) out.push_back(k);
  }
  return out;
}

std::vector<int> TableauSnapshot::integer_rows() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(classes.size()); ++k) {
    if (classes[k].kind == RowClass::Kind::kInteger) out.push_back(k);
  }
  return out;
}

namespace {

bool near_integer(double v) {
  return std::isfinite(v) && std::fabs(v - std::round(v)) <= tol::kSnap;
}

// Slack of a row whose variables and coefficients are all integral, with an
// integral right-hand side, is integral at every integer point.
bool integral_row(const MilpInstance& inst, int r) {
  const Row& row = inst.rows[r];
  if (!near_integer(row.rhs)) return false;
  for (int j = 0; j < inst.num_cols(); ++j) {
    if (row.coefs[j] == 0.0) continue;
    if (!inst.vars[j].integer || !near_integer(row.coefs[j])) return false;
  }
  return true;
}

}  // namespace

TableauSnapshot take_snapshot(const MilpInstance& inst, const LpSolution& lp,
                              const RowThresholds& t) {
  if (lp.status != LpStatus::kOptimal) {
    throw std::invalid_argument("take_snapshot needs an optimal LP solution");
  }
  TableauSnapshot snap;
  const int n = inst.num_cols();
  for (int col : lp.nonbasic) {
    NonbasicInfo info;
    info.column = col;
    info.at_upper = lp.status_of[col] == VarStatus::kAtUpper;
    info.free = lp.status_of[col] == VarStatus::kFree;
    const double bound = info.at_upper ? lp.upper[col] : lp.lower[col];
    if (col < n) {
      info.integer = inst.vars[col].integer && !info.free && near_integer(bound);
    } else {
      info.integer = integral_row(inst, col - n);
    }
    snap.nonbasic.push_back(info);
  }
  for (int col : lp.basis) {
    if (col >= n || !inst.vars[col].integer) continue;
    TableauRow row = tableau_row(lp, col);
    RowClass cls = classify_value(row.value, t);
    if (cls.kind != RowClass::Kind::kSkipped) {
      for (std::size_t j = 0; j < row.coef.size(); ++j) {
        if (snap.nonbasic[j].free && row.coef[j] != 0.0) {
          cls = {RowClass::Kind::kSkipped, "free nonbasic column in row"};
          break;
        }
      }
    }
    snap.rows.push_back(std::move(row));
    snap.classes.push_back(std::move(cls));
    snap.basic_lower.push_back(inst.vars[col].lower);
    snap.basic_upper.push_back(inst.vars[col].upper);
  }
  return snap;
}

TwoRowModel build_two_row_model(const TableauRow& frac_row,
                                const TableauRow& int_row,
                                std::span<const NonbasicInfo> nonbasic,
                                BasicBounds int_bounds) {
  if (frac_row.coef.size() != int_row.coef.size() ||
      (!nonbasic.empty() && nonbasic.size() != frac_row.coef.size())) {
    throw std::invalid_argument("rows do not share a nonbasic index set");
  }
  TwoRowModel m;
  m.frac_basic = frac_row.basic;
  m.int_basic = int_row.basic;
  m.num_nonbasic = static_cast<int>(frac_row.coef.size());
  m.offset_i = -std::round(int_row.value);
  m.offset_l = -std::floor(frac_row.value);
  m.f.i = 0.0;
  m.f.l = frac_row.value + m.offset_l;
  if (!(m.f.l > 0.0 && m.f.l < 1.0)) {
    throw std::invalid_argument("fractional row value is integral");
  }
  m.int_at_lower = int_row.value <= int_bounds.lower + tol::kSnap;
  m.int_at_upper = int_row.value >= int_bounds.upper - tol::kSnap;
  for (int j = 0; j < m.num_nonbasic; ++j) {
    const Vec2 r{int_row.coef[j], frac_row.coef[j]};
    if (std::fabs(r.i) < tol::kZero && std::fabs(r.l) < tol::kZero) {
      m.dropped.push_back(j);
      continue;
    }
    m.rays.push_back(r);
    m.position.push_back(j);
    m.integer.push_back(!nonbasic.empty() && nonbasic[j].integer);
  }
  if (m.rays.empty()) throw std::invalid_argument("empty model");
  return m;
}

TwoRowModel build_two_row_model(const TableauSnapshot& snap, int frac_index,
                                int int_index) {
  return build_two_row_model(
      snap.rows.at(frac_index), snap.rows.at(int_index), snap.nonbasic,
      {snap.basic_lower.at(int_index), snap.basic_upper.at(int_index)});
}

std::vector<std::pair<int, int>> enumerate_pairs(
    std::span<const RowClass> classes) {
  std::vector<int> frac, integer;
  for (int k = 0; k < static_cast<int>(classes.size()); ++k) {
    if (classes[k].kind == RowClass::Kind::kFractional) frac.push_back(k);
    if (classes[k].kind == RowClass::Kind::kInteger) integer.push_back(k);
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(frac.size() * integer.size());
  for (int a : frac) {
    for (int b : integer) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace tworow
