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

#include <random>

#include "test_support.hpp"
#include "tworow/tworow.hpp"

using namespace tworow;

TEST_CASE("row classification thresholds") {
  CHECK(classify_value(3.0).kind == RowClass::Kind::kInteger);
  CHECK(classify_value(2.5).kind == RowClass::Kind::kFractional);
  CHECK(classify_value(2.005).kind == RowClass::Kind::kSkipped);
  CHECK(classify_value(-1.99).kind == RowClass::Kind::kFractional);
  CHECK(classify_value(4.000001).kind == RowClass::Kind::kInteger);
  CHECK(integer_infeasibility(2.7) == doctest::Approx(0.3));
}

TEST_CASE("every value falls in exactly one class") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 2000; ++t) {
    const double v = u(rng);
    const double inf = integer_infeasibility(v);
    const RowClass c = classify_value(v);
    const int matches = (inf >= 0.01) + (inf <= 1e-5) + (inf > 1e-5 && inf < 0.01);
    CHECK(matches == 1);
    if (inf >= 0.01) CHECK(c.kind == RowClass::Kind::kFractional);
    if (inf <= 1e-5) CHECK(c.kind == RowClass::Kind::kInteger);
  }
}

namespace {

TableauRow row(int basic, double value, std::vector<double> coef) {
  return TableauRow{basic, value, std::move(coef)};
}

}  // namespace

TEST_CASE("translation uses integer offsets and the floor convention") {
  TwoRowModel m = build_two_row_model(row(1, 2.7, {1.0, -0.5}),
                                      row(0, 3.0, {0.25, 2.0}), {});
  CHECK(m.offset_i == -3.0);
  CHECK(m.offset_l == -2.0);
  CHECK(m.f.i == 0.0);
  CHECK(m.f.l == doctest::Approx(0.7));
  REQUIRE(m.rays.size() == 2);
  CHECK(m.rays[0].i == 0.25);
  CHECK(m.rays[0].l == 1.0);
  CHECK(m.rays[1].i == 2.0);
  CHECK(m.rays[1].l == -0.5);

  TwoRowModel neg = build_two_row_model(row(1, -2.3, {1.0}), row(0, -4.0, {1.0}), {});
  CHECK(neg.offset_l == 3.0);
  CHECK(neg.f.l == doctest::Approx(0.7));
}

TEST_CASE("tiny rays are dropped and recorded") {
  TwoRowModel m = build_two_row_model(row(1, 0.5, {1e-13, 1.0}),
                                      row(0, 0.0, {1e-13, 0.0}), {});
  CHECK(m.rays.size() == 1);
  CHECK(m.dropped == std::vector<int>{0});
  CHECK(m.position == std::vector<int>{1});
  CHECK(m.num_nonbasic == 2);

  CHECK_THROWS_WITH_AS(
      build_two_row_model(row(1, 0.5, {1e-13}), row(0, 0.0, {0.0}), {}),
      "empty model", std::invalid_argument);
  CHECK_THROWS_AS(build_two_row_model(row(1, 2.0, {1.0}), row(0, 0.0, {1.0}), {}),
                  std::invalid_argument);
}

TEST_CASE("shifting rows by integers leaves the model unchanged") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const double fl = 0.05 + 0.9 * (rng() % 1000) / 1000.0;
    const double fi = static_cast<double>(static_cast<int>(rng() % 11) - 5);
    std::vector<double> ri{u(rng), u(rng)}, rl{u(rng), u(rng)};
    TwoRowModel a = build_two_row_model(row(1, fl, rl), row(0, fi, ri), {});
    const double sa = static_cast<double>(static_cast<int>(rng() % 9) - 4);
    const double sb = static_cast<double>(static_cast<int>(rng() % 9) - 4);
    TwoRowModel b = build_two_row_model(row(1, fl + sb, rl), row(0, fi + sa, ri), {});
    CHECK(a.f.l == doctest::Approx(b.f.l).epsilon(1e-12));
    CHECK(b.f.i == 0.0);
    CHECK(b.offset_l == -std::floor(fl + sb));
    for (std::size_t k = 0; k < a.rays.size(); ++k) {
      CHECK(a.rays[k].i == b.rays[k].i);
      CHECK(a.rays[k].l == b.rays[k].l);
    }
  }
}

TEST_CASE("pair enumeration") {
  using K = RowClass::Kind;
  std::vector<RowClass> c{{K::kFractional, {}}, {K::kInteger, {}},
                          {K::kInteger, {}},    {K::kFractional, {}},
                          {K::kSkipped, "x"},   {K::kInteger, {}}};
  auto pairs = enumerate_pairs(c);
  CHECK(pairs.size() == 6);
  CHECK(pairs.front() == std::make_pair(0, 1));
  CHECK(pairs.back() == std::make_pair(3, 5));

  std::vector<RowClass> none{{K::kFractional, {}}, {K::kFractional, {}}};
  CHECK(enumerate_pairs(none).empty());

  std::vector<RowClass> big;
  for (int k = 0; k < 3; ++k) big.push_back({K::kFractional, {}});
  for (int k = 0; k < 4; ++k) big.push_back({K::kInteger, {}});
  CHECK(enumerate_pairs(big).size() == 12);
}

TEST_CASE("snapshot flags integral nonbasics and classifies rows") {
  // max x1 + x2 s.t. 2 x1 + 2 x2 <= 3 and x1 - x2 <= 0, integers.
  using testing::make_instance;
  MilpInstance inst = make_instance(
      ObjSense::kMaximize, {1, 1.5},
      {{{2, 2}, RowSense::kLess, 3}, {{1, -1}, RowSense::kLess, 0}});
  for (Variable& v : inst.vars) v.integer = true;
  inst.vars[0].upper = 4;
  LpSolution lp = solve_lp(inst);
  REQUIRE(lp.status == LpStatus::kOptimal);
  TableauSnapshot snap = take_snapshot(inst, lp);
  CHECK(snap.rows.size() == snap.classes.size());
  for (std::size_t k = 0; k < snap.rows.size(); ++k) {
    CHECK(snap.rows[k].basic < inst.num_cols());
    CHECK(classify_value(snap.rows[k].value).kind == snap.classes[k].kind);
  }
  for (const NonbasicInfo& nb : snap.nonbasic) {
    // Both rows have integral data over integer columns.
    if (nb.column >= inst.num_cols()) CHECK(nb.integer);
  }

  // A fractional coefficient makes that row's slack continuous.
  inst.rows[0].coefs[0] = 2.5;
  LpSolution lp2 = solve_lp(inst);
  TableauSnapshot snap2 = take_snapshot(inst, lp2);
  for (const NonbasicInfo& nb : snap2.nonbasic) {
    if (nb.column == inst.num_cols()) CHECK_FALSE(nb.integer);
  }
}

TEST_CASE("structural nonbasic at a fractional bound is continuous") {
  using testing::make_instance;
  MilpInstance inst = make_instance(ObjSense::kMaximize, {2, 1},
                                    {{{1, 1}, RowSense::kLess, 3}});
  for (Variable& v : inst.vars) v.integer = true;
  inst.vars[0].upper = 1.5;
  LpSolution lp = solve_lp(inst);
  REQUIRE(lp.status == LpStatus::kOptimal);
  TableauSnapshot snap = take_snapshot(inst, lp);
  bool saw = false;
  for (const NonbasicInfo& nb : snap.nonbasic) {
    if (nb.column == 0 && nb.at_upper) {
      CHECK_FALSE(nb.integer);
      saw = true;
    }
  }
  CHECK(saw);
}
