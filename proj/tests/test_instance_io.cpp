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
#include <string>

#include "tworow/instance.hpp"

using namespace tworow;

namespace {

const char* kTiny = R"(NAME tiny
ROWS
 N obj
 L c1
COLUMNS
    MARKER 'MARKER' 'INTORG'
    x1 obj 1 c1 1
    x2 obj 1 c1 1
    MARKER 'MARKER' 'INTEND'
RHS
    rhs c1 1
ENDATA
)";

}  // namespace

TEST_CASE("minimal file gives one row and two integer columns") {
  MilpInstance inst = parse_mps(kTiny);
  CHECK(inst.name == "tiny");
  REQUIRE(inst.num_rows() == 1);
  REQUIRE(inst.num_cols() == 2);
  for (const Variable& v : inst.vars) {
    CHECK(v.integer);
    CHECK(v.lower == 0.0);
    CHECK(v.upper == kInf);
  }
  CHECK(inst.rows[0].sense == RowSense::kLess);
  CHECK(inst.rows[0].rhs == 1.0);
  CHECK(inst.rows[0].coefs == std::vector<double>{1.0, 1.0});
}

TEST_CASE("UP bound maps to the upper bound") {
  std::string text = kTiny;
  text.replace(text.find("ENDATA"), 6, "BOUNDS\n UP BND x1 5\nENDATA");
  MilpInstance inst = parse_mps(text);
  CHECK(inst.vars[0].upper == 5.0);
  CHECK(inst.vars[0].lower == 0.0);
  CHECK(inst.vars[1].upper == kInf);
}

TEST_CASE("undeclared row in COLUMNS is reported with its line") {
  std::string text = kTiny;
  text.replace(text.find("x2 obj 1 c1 1"), 13, "x2 obj 1 R99 1");
  try {
    parse_mps(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
    CHECK(std::string(e.what()).find("R99") != std::string::npos);
  }
}

TEST_CASE("section ordering and duplicates are rejected") {
  CHECK_THROWS_AS(parse_mps("NAME a\nCOLUMNS\nROWS\n N obj\nENDATA\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_mps("NAME a\nROWS\n N obj\n L c\n L c\nENDATA\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_mps("NAME a\nROWS\n N obj\n L c\nCOLUMNS\n x c 1\n x c 2\nENDATA\n"),
      ParseError);
  CHECK_THROWS_AS(parse_mps("NAME a\nROWS\n N obj\n"), ParseError);
}

TEST_CASE("ranges, bound types and objective sense") {
  const char* text = R"(NAME r
OBJSENSE
    MAX
ROWS
 N obj
 G g1
 E e1
COLUMNS
    x obj 2 g1 1
    y obj -1 e1 1
    z g1 1 e1 1
RHS
    RHS g1 1 e1 4
    RHS obj -3
RANGES
    RNG g1 2
BOUNDS
 FR BND x
 MI BND y
 UP BND y 7
 FX BND z 1.5
ENDATA
)";
  MilpInstance inst = parse_mps(text);
  CHECK(inst.sense == ObjSense::kMaximize);
  CHECK(inst.objective_offset == 3.0);
  REQUIRE(inst.num_rows() == 3);
  CHECK(inst.rows[0].sense == RowSense::kGreater);
  CHECK(inst.rows[0].rhs == 1.0);
  CHECK(inst.rows[1].name == "g1_rng");
  CHECK(inst.rows[1].sense == RowSense::kLess);
  CHECK(inst.rows[2].sense == RowSense::kEqual);
  CHECK(inst.rows[1].rhs == 3.0);
  CHECK(inst.vars[0].lower == -kInf);
  CHECK(inst.vars[0].upper == kInf);
  CHECK(inst.vars[1].lower == -kInf);
  CHECK(inst.vars[1].upper == 7.0);
  CHECK(inst.vars[2].lower == 1.5);
  CHECK(inst.vars[2].upper == 1.5);
}

TEST_CASE("render then parse round-trips random instances") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    MilpInstance inst;
    inst.name = "rt" + std::to_string(trial);
    inst.sense = trial % 2 ? ObjSense::kMaximize : ObjSense::kMinimize;
    const int n = 1 + trial % 5, m = trial % 4;
    for (int j = 0; j < n; ++j) {
      Variable v;
      v.name = "v" + std::to_string(j);
      v.integer = (j + trial) % 2 == 0;
      v.objective = u(rng);
      switch ((j + trial) % 4) {
        case 0: break;
        case 1: v.lower = -kInf; break;
        case 2: v.lower = -2.0; v.upper = 3.25; break;
        case 3: v.lower = v.upper = 1.0; break;
      }
      inst.vars.push_back(v);
    }
    for (int r = 0; r < m; ++r) {
      Row row;
      row.name = "r" + std::to_string(r);
      row.sense = static_cast<RowSense>(r % 3);
      row.rhs = u(rng);
      row.coefs.resize(n);
      for (double& c : row.coefs) c = (rng() % 3 == 0) ? 0.0 : u(rng);
      inst.rows.push_back(row);
    }
    MilpInstance back = parse_mps(render_mps(inst));
    REQUIRE(back.num_cols() == n);
    REQUIRE(back.num_rows() == m);
    CHECK(back.sense == inst.sense);
    for (int j = 0; j < n; ++j) {
      CHECK(back.vars[j].name == inst.vars[j].name);
      CHECK(back.vars[j].integer == inst.vars[j].integer);
      CHECK(back.vars[j].objective == inst.vars[j].objective);
      CHECK(back.vars[j].lower == inst.vars[j].lower);
      CHECK(back.vars[j].upper == inst.vars[j].upper);
    }
    for (int r = 0; r < m; ++r) {
      CHECK(back.rows[r].sense == inst.rows[r].sense);
      CHECK(back.rows[r].rhs == inst.rows[r].rhs);
      CHECK(back.rows[r].coefs == inst.rows[r].coefs);
    }
  }
}

TEST_CASE("solution files") {
  KnownSolution s = parse_solution("x1 1\nx2 0");
  CHECK(s.values.size() == 2);
  CHECK(s.values.at("x1") == 1.0);
  CHECK(s.values.at("x2") == 0.0);

  MilpInstance inst = parse_mps(kTiny);
  KnownSolution empty = parse_solution("");
  CHECK(solution_vector(inst, empty) == std::vector<double>{0.0, 0.0});

  try {
    parse_solution("x1 abc");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  KnownSolution c = parse_solution("# comment\n x1 2 # trailing\n");
  CHECK(c.values.at("x1") == 2.0);
  CHECK_THROWS_AS(solution_vector(inst, parse_solution("nope 1")),
                  std::invalid_argument);
}

TEST_CASE("validation reports row and integrality violations") {
  MilpInstance inst = parse_mps(kTiny);
  CHECK(validate_solution(inst, parse_solution("x1 1\nx2 0")).feasible());

  ValidationReport bad = validate_solution(inst, parse_solution("x1 1\nx2 1"));
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].kind == Violation::Kind::kRow);
  CHECK(bad.violations[0].magnitude == doctest::Approx(1.0));

  ValidationReport frac = validate_solution(inst, parse_solution("x1 0.5"));
  REQUIRE(frac.violations.size() == 1);
  CHECK(frac.violations[0].kind == Violation::Kind::kIntegrality);
  CHECK(frac.violations[0].magnitude == doctest::Approx(0.5));

  ValidationReport unknown = validate_solution(inst, parse_solution("zz 1"));
  REQUIRE(unknown.violations.size() == 1);
  CHECK(unknown.violations[0].kind == Violation::Kind::kUnknownVariable);
}

TEST_CASE("validation is monotone in the tolerance") {
  MilpInstance inst = parse_mps(kTiny);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x{u(rng), u(rng)};
    const auto loose = validate_point(inst, x, 1e-2).violations;
    const auto tight = validate_point(inst, x, 1e-6).violations;
    for (const Violation& v : loose) {
      bool found = false;
      for (const Violation& w : tight) {
        found = found || (w.kind == v.kind && w.name == v.name);
      }
      CHECK(found);
    }
  }
}
