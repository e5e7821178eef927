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

// MILP instances, known feasible solutions, and the MPS / solution file
// readers.

#ifndef TWOROW_INSTANCE_HPP_
#define TWOROW_INSTANCE_HPP_

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tworow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown by the file readers; the message carries the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

enum class ObjSense { kMinimize, kMaximize };
enum class RowSense { kLess, kGreater, kEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;
  double objective = 0.0;
};

// One linear row `coefs . x (sense) rhs`. `coefs` is dense over the columns.
struct Row {
  std::string name;
  RowSense sense = RowSense::kLess;
  double rhs = 0.0;
  std::vector<double> coefs;

  double activity(const std::vector<double>& x) const;
};

struct MilpInstance {
  std::string name;
  ObjSense sense = ObjSense::kMinimize;
  // Constant added to the objective (MPS: minus the RHS of the objective row).
  double objective_offset = 0.0;
  std::vector<Variable> vars;
  std::vector<Row> rows;

  int num_cols() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  // -1 when absent.
  int column_index(std::string_view name) const;
  double objective_value(const std::vector<double>& x) const;
  // Throws std::invalid_argument when the invariants are broken.
  void check() const;
  // Appends a row; the coefficient vector must have num_cols() entries.
  void add_row(Row row);
};

// Parses the supported MPS subset (free or fixed format without embedded
// blanks in names): NAME, optional OBJSENSE, ROWS, COLUMNS with
// INTORG/INTEND markers, RHS, RANGES, BOUNDS, ENDATA. RANGES rows are split
// into two inequalities at parse time.
MilpInstance parse_mps(std::string_view text);
MilpInstance read_mps_file(const std::string& path);
// Free-format MPS accepted by parse_mps.
std::string render_mps(const MilpInstance& inst);

// Variable name -> value. Variables not listed are 0.
struct KnownSolution {
  std::map<std::string, double> values;
};

KnownSolution parse_solution(std::string_view text);
KnownSolution read_solution_file(const std::string& path);
// Dense vector in column order. Throws std::invalid_argument when the
// solution names a variable that does not exist.
std::vector<double> solution_vector(const MilpInstance& inst,
                                    const KnownSolution& sol);

struct Violation {
  enum class Kind {
    kRow,
    kLowerBound,
    kUpperBound,
    kIntegrality,
    kUnknownVariable
  };
  Kind kind;
  std::string name;
  double magnitude;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

ValidationReport validate_solution(const MilpInstance& inst,
                                   const KnownSolution& sol,
                                   double tol = 1e-6);
ValidationReport validate_point(const MilpInstance& inst,
                                const std::vector<double>& x,
                                double tol = 1e-6);

std::string to_string(Violation::Kind kind);

}  // namespace tworow

#endif  // TWOROW_INSTANCE_HPP_
