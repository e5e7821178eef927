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

// Row classification of an optimal tableau and the translated two-row
// models built from (fractional, integer) row pairs.

#ifndef TWOROW_TWOROW_HPP_
#define TWOROW_TWOROW_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tworow/instance.hpp"
#include "tworow/simplex.hpp"

namespace tworow {

// A point or direction in the (x_i, x_l) plane: `i` is the integer row's
// coordinate, `l` the fractional row's.
struct Vec2 {
  double i = 0.0;
  double l = 0.0;
};

struct RowThresholds {
  // Rows whose basic value is at least this far from an integer are
  // fractional.
  double fractional_min = 0.01;
  // Rows whose basic value is at most this far from an integer are integer
  // rows.
  double integer_max = 1e-5;
};

// min(v - floor(v), ceil(v) - v)
double integer_infeasibility(double v);

struct RowClass {
  enum class Kind { kFractional, kInteger, kSkipped };
  Kind kind = Kind::kSkipped;
  std::string reason;  // set for kSkipped
};

RowClass classify_value(double v, const RowThresholds& t = {});
std::vector<RowClass> classify_rows(std::span<const TableauRow> rows,
                                    const RowThresholds& t = {});

// Per nonbasic position of an optimal basis.
struct NonbasicInfo {
  int column = -1;
  bool at_upper = false;
  // The displacement s_j only takes integer values at integer points.
  bool integer = false;
  // Free column left nonbasic; its displacement has no sign.
  bool free = false;
};

// Rows of the basic integer structural variables of an optimal basis,
// classified, plus the shared nonbasic coordinate system.
struct TableauSnapshot {
  std::vector<NonbasicInfo> nonbasic;
  std::vector<TableauRow> rows;
  std::vector<RowClass> classes;
  // Bounds of each row's basic variable.
  std::vector<double> basic_lower;
  std::vector<double> basic_upper;

  std::vector<int> fractional_rows() const;
  std::vector<int> integer_rows() const;
};

TableauSnapshot take_snapshot(const MilpInstance& inst, const LpSolution& lp,
                              const RowThresholds& t = {});

// Corner relaxation of two rows translated by integers so that f_i = 0 and
// f_l lies in (0, 1).
struct TwoRowModel {
  Vec2 f;
  std::vector<Vec2> rays;
  // Nonbasic position of each ray; positions whose two components are both
  // below the zero cutoff are listed in `dropped` instead.
  std::vector<int> position;
  std::vector<bool> integer;
  std::vector<int> dropped;
  int num_nonbasic = 0;
  int frac_basic = -1;
  int int_basic = -1;
  // Integers added to the raw basic values.
  double offset_i = 0.0;
  double offset_l = 0.0;
  // The integer row's basic variable sits at its lower (upper) bound, so
  // x_i >= 0 (x_i <= 0) holds after translation.
  bool int_at_lower = false;
  bool int_at_upper = false;
};

struct BasicBounds {
  double lower = -kInf;
  double upper = kInf;
};

// Throws std::invalid_argument when the fractional value does not translate
// into (0, 1) or when every ray is dropped ("empty model").
TwoRowModel build_two_row_model(const TableauRow& frac_row,
                                const TableauRow& int_row,
                                std::span<const NonbasicInfo> nonbasic,
                                BasicBounds int_bounds = {});

TwoRowModel build_two_row_model(const TableauSnapshot& snap, int frac_index,
                                int int_index);

// Every (fractional, integer) pair in row order.
std::vector<std::pair<int, int>> enumerate_pairs(
    std::span<const RowClass> classes);

}  // namespace tworow

#endif  // TWOROW_TWOROW_HPP_
