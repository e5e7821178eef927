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

#include "tworow/instance.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace tworow {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

double Row::activity(const std::vector<double>& x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < coefs.size(); ++j) sum += coefs[j] * x[j];
  return sum;
}

int MilpInstance::column_index(std::string_view n) const {
  for (int j = 0; j < num_cols(); ++j) {
    if (vars[j].name == n) return j;
  }
  return -1;
}

double MilpInstance::objective_value(const std::vector<double>& x) const {
  double z = objective_offset;
  for (int j = 0; j < num_cols(); ++j) z += vars[j].objective * x[j];
  return z;
}

void MilpInstance::check() const {
  const std::size_t n = vars.size();
  for (const Variable& v : vars) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.objective)) {
      throw std::invalid_argument("variable " + v.name + " has invalid data");
    }
  }
  for (const Row& r : rows) {
    if (r.coefs.size() != n) {
      throw std::invalid_argument("row " + r.name + " has " +
                                  std::to_string(r.coefs.size()) +
                                  " coefficients, expected " +
                                  std::to_string(n));
    }
    if (!std::isfinite(r.rhs)) {
      throw std::invalid_argument("row " + r.name + " has a non-finite rhs");
    }
    for (double a : r.coefs) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("row " + r.name +
                                    " has a non-finite coefficient");
      }
    }
  }
}

void MilpInstance::add_row(Row row) {
  if (static_cast<int>(row.coefs.size()) != num_cols()) {
    throw std::invalid_argument("add_row: coefficient count mismatch");
  }
  rows.push_back(std::move(row));
}

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

double require_double(const std::string& s, int line) {
  double v = 0.0;
  if (!parse_double(s, &v)) throw ParseError(line, "bad number '" + s + "'");
  if (std::isnan(v)) throw ParseError(line, "NaN value");
  return v;
}

// Order in which sections may appear. Skipping optional sections is fine,
// going backwards is not.
enum class Section {
  kNone = 0,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd
};

class MpsReader {
 public:
  MilpInstance run(std::string_view text) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      handle_line(line, line_no);
      if (section_ == Section::kEnd) break;
      if (eol == text.size()) break;
    }
    if (section_ != Section::kEnd) throw ParseError(line_no, "missing ENDATA");
    return finish(line_no);
  }

 private:
  struct PendingRow {
    std::string name;
    char type;  // N, L, G, E
    double rhs = 0.0;
    bool has_rhs = false;
    double range = 0.0;
    bool has_range = false;
    std::unordered_map<int, double> entries;
  };

  void handle_line(std::string_view line, int ln) {
    if (line.empty() || line[0] == '*') return;
    const auto tok = split_tokens(line);
    if (tok.empty()) return;
    const bool header = line[0] != ' ' && line[0] != '\t';
    if (header) {
      enter_section(tok, ln);
      return;
    }
    switch (section_) {
      case Section::kObjSense: read_objsense(tok[0], ln); break;
      case Section::kRows: read_row(tok, ln); break;
      case Section::kColumns: read_column(tok, ln); break;
      case Section::kRhs: read_rhs_or_range(tok, ln, /*range=*/false); break;
      case Section::kRanges: read_rhs_or_range(tok, ln, /*range=*/true); break;
      case Section::kBounds: read_bound(tok, ln); break;
      default: throw ParseError(ln, "data line outside of a section");
    }
  }

  void enter_section(const std::vector<std::string>& tok, int ln) {
    const std::string& s = tok[0];
    Section next;
    if (s == "NAME") next = Section::kName;
    else if (s == "OBJSENSE") next = Section::kObjSense;
    else if (s == "ROWS") next = Section::kRows;
    else if (s == "COLUMNS") next = Section::kColumns;
    else if (s == "RHS") next = Section::kRhs;
    else if (s == "RANGES") next = Section::kRanges;
    else if (s == "BOUNDS") next = Section::kBounds;
    else if (s == "ENDATA") next = Section::kEnd;
    else throw ParseError(ln, "unknown section '" + s + "'");

    if (static_cast<int>(next) <= static_cast<int>(section_)) {
      throw ParseError(ln, "section " + s + " out of order");
    }
    if (next > Section::kRows && section_ < Section::kRows) {
      throw ParseError(ln, "section " + s + " before ROWS");
    }
    if (next > Section::kColumns && section_ < Section::kColumns) {
      throw ParseError(ln, "section " + s + " before COLUMNS");
    }
    section_ = next;
    if (next == Section::kName && tok.size() > 1) inst_.name = tok[1];
    if (next == Section::kObjSense && tok.size() > 1) read_objsense(tok[1], ln);
    if (next == Section::kColumns) in_int_block_ = false;
  }

  void read_objsense(const std::string& s, int ln) {
    if (s == "MAX" || s == "MAXIMIZE") inst_.sense = ObjSense::kMaximize;
    else if (s == "MIN" || s == "MINIMIZE") inst_.sense = ObjSense::kMinimize;
    else throw ParseError(ln, "bad OBJSENSE '" + s + "'");
  }

  void read_row(const std::vector<std::string>& tok, int ln) {
    if (tok.size() != 2) throw ParseError(ln, "ROWS entry needs type and name");
    const std::string& t = tok[0];
    if (t.size() != 1 || std::string("NLGE").find(t[0]) == std::string::npos) {
      throw ParseError(ln, "bad row type '" + t + "'");
    }
    if (row_index_.count(tok[1]) != 0) {
      throw ParseError(ln, "duplicate row '" + tok[1] + "'");
    }
    row_index_[tok[1]] = static_cast<int>(rows_.size());
    PendingRow r;
    r.name = tok[1];
    r.type = t[0];
    if (r.type == 'N' && objective_row_ < 0) {
      objective_row_ = static_cast<int>(rows_.size());
    }
    rows_.push_back(std::move(r));
  }

  int lookup_row(const std::string& name, int ln) const {
    auto it = row_index_.find(name);
    if (it == row_index_.end()) {
      throw ParseError(ln, "unknown row '" + name + "'");
    }
    return it->second;
  }

  int lookup_col(const std::string& name, int ln) const {
    auto it = col_index_.find(name);
    if (it == col_index_.end()) {
      throw ParseError(ln, "unknown column '" + name + "'");
    }
    return it->second;
  }

  void read_column(const std::vector<std::string>& tok, int ln) {
    if (tok.size() >= 3 && tok[1] == "'MARKER'") {
      if (tok[2] == "'INTORG'") in_int_block_ = true;
      else if (tok[2] == "'INTEND'") in_int_block_ = false;
      else throw ParseError(ln, "unknown marker " + tok[2]);
      return;
    }
    if (tok.size() != 3 && tok.size() != 5) {
      throw ParseError(ln, "COLUMNS entry needs 3 or 5 fields");
    }
    int col;
    auto it = col_index_.find(tok[0]);
    if (it == col_index_.end()) {
      col = static_cast<int>(inst_.vars.size());
      col_index_[tok[0]] = col;
      Variable v;
      v.name = tok[0];
      v.integer = in_int_block_;
      inst_.vars.push_back(v);
      lower_set_.push_back(false);
    } else {
      col = it->second;
    }
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      const int r = lookup_row(tok[k], ln);
      const double v = require_double(tok[k + 1], ln);
      if (!std::isfinite(v)) throw ParseError(ln, "infinite coefficient");
      auto [pos, inserted] = rows_[r].entries.emplace(col, v);
      if (!inserted) {
        throw ParseError(ln, "duplicate entry for column '" + tok[0] +
                                 "' in row '" + tok[k] + "'");
      }
    }
  }

  void read_rhs_or_range(const std::vector<std::string>& tok, int ln,
                         bool range) {
    // An odd field count means the leading set name is present.
    const std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
    if (tok.size() - first < 2) throw ParseError(ln, "incomplete entry");
    for (std::size_t k = first; k + 1 < tok.size(); k += 2) {
      const int r = lookup_row(tok[k], ln);
      const double v = require_double(tok[k + 1], ln);
      PendingRow& row = rows_[r];
      if (range) {
        if (row.type == 'N') throw ParseError(ln, "RANGES on objective row");
        if (row.has_range) {
          throw ParseError(ln, "duplicate range for row '" + row.name + "'");
        }
        row.range = v;
        row.has_range = true;
      } else {
        if (row.has_rhs) {
          throw ParseError(ln, "duplicate rhs for row '" + row.name + "'");
        }
        row.rhs = v;
        row.has_rhs = true;
      }
    }
  }

  void read_bound(const std::vector<std::string>& tok, int ln) {
    if (tok.empty()) return;
    const std::string& type = tok[0];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                             type == "LI" || type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" ||
                          type == "BV";
    if (!needs_value && !no_value) {
      throw ParseError(ln, "unknown bound type '" + type + "'");
    }
    std::string col_name;
    double value = 0.0;
    if (needs_value) {
      if (tok.size() == 4) col_name = tok[2];
      else if (tok.size() == 3) col_name = tok[1];
      else throw ParseError(ln, "bound " + type + " needs a value");
      value = require_double(tok.back(), ln);
    } else {
      if (tok.size() == 3 || tok.size() == 4) col_name = tok[2];
      else if (tok.size() == 2) col_name = tok[1];
      else throw ParseError(ln, "malformed bound");
    }
    const int j = lookup_col(col_name, ln);
    Variable& v = inst_.vars[j];
    if (type == "UP" || type == "UI") {
      v.upper = value;
      // Classic MPS rule: a negative upper bound on a default lower bound
      // makes the variable unbounded below.
      if (value < 0.0 && v.lower == 0.0 && !lower_set_[j]) v.lower = -kInf;
      if (type == "UI") v.integer = true;
    } else if (type == "LO" || type == "LI") {
      v.lower = value;
      lower_set_[j] = true;
      if (type == "LI") v.integer = true;
    } else if (type == "FX") {
      v.lower = v.upper = value;
      lower_set_[j] = true;
    } else if (type == "FR") {
      v.lower = -kInf;
      v.upper = kInf;
      lower_set_[j] = true;
    } else if (type == "MI") {
      v.lower = -kInf;
      lower_set_[j] = true;
    } else if (type == "PL") {
      v.upper = kInf;
    } else if (type == "BV") {
      v.lower = 0.0;
      v.upper = 1.0;
      v.integer = true;
      lower_set_[j] = true;
    }
  }

  MilpInstance finish(int ln) {
    if (objective_row_ < 0) throw ParseError(ln, "no objective (N) row");
    const int n = static_cast<int>(inst_.vars.size());
    for (const auto& [col, v] : rows_[objective_row_].entries) {
      inst_.vars[col].objective = v;
    }
    inst_.objective_offset = -rows_[objective_row_].rhs;
    for (const PendingRow& pr : rows_) {
      if (pr.type == 'N') continue;
      Row row;
      row.name = pr.name;
      row.rhs = pr.rhs;
      row.coefs.assign(n, 0.0);
      for (const auto& [col, v] : pr.entries) row.coefs[col] = v;
      row.sense = pr.type == 'L'   ? RowSense::kLess
                  : pr.type == 'G' ? RowSense::kGreater
                                   : RowSense::kEqual;
      if (!pr.has_range || (pr.type == 'E' && pr.range == 0.0)) {
        inst_.rows.push_back(std::move(row));
        continue;
      }
      double lo = pr.rhs;
      double hi = pr.rhs;
      const double r = std::fabs(pr.range);
      if (pr.type == 'L') lo = pr.rhs - r;
      else if (pr.type == 'G') hi = pr.rhs + r;
      else if (pr.range > 0.0) hi = pr.rhs + r;
      else lo = pr.rhs - r;
      Row other = row;
      other.name = pr.name + "_rng";
      if (pr.type == 'L') {
        other.sense = RowSense::kGreater;
        other.rhs = lo;
      } else {
        row.sense = RowSense::kGreater;
        row.rhs = lo;
        other.sense = RowSense::kLess;
        other.rhs = hi;
      }
      inst_.rows.push_back(std::move(row));
      inst_.rows.push_back(std::move(other));
    }
    inst_.check();
    return std::move(inst_);
  }

  MilpInstance inst_;
  Section section_ = Section::kNone;
  std::vector<PendingRow> rows_;
  std::unordered_map<std::string, int> row_index_;
  std::unordered_map<std::string, int> col_index_;
  std::vector<bool> lower_set_;
  int objective_row_ = -1;
  bool in_int_block_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MilpInstance parse_mps(std::string_view text) { return MpsReader().run(text); }

MilpInstance read_mps_file(const std::string& path) {
  return parse_mps(read_file(path));
}

std::string render_mps(const MilpInstance& inst) {
  std::string obj = "OBJ";
  auto taken = [&](const std::string& s) {
    for (const Row& r : inst.rows) {
      if (r.name == s) return true;
    }
    return false;
  };
  while (taken(obj)) obj += "_";

  std::ostringstream out;
  out << "NAME " << (inst.name.empty() ? "UNNAMED" : inst.name) << "\n";
  if (inst.sense == ObjSense::kMaximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  " << obj << "\n";
  for (const Row& r : inst.rows) {
    const char t = r.sense == RowSense::kLess      ? 'L'
                   : r.sense == RowSense::kGreater ? 'G'
                                                   : 'E';
    out << " " << t << "  " << r.name << "\n";
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < inst.num_cols(); ++j) {
    const Variable& v = inst.vars[j];
    if (v.integer != in_int) {
      out << "    M" << marker++ << " 'MARKER' "
          << (v.integer ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = v.integer;
    }
    bool any = false;
    if (v.objective != 0.0) {
      out << "    " << v.name << " " << obj << " " << num(v.objective) << "\n";
      any = true;
    }
    for (const Row& r : inst.rows) {
      if (r.coefs[j] != 0.0) {
        out << "    " << v.name << " " << r.name << " " << num(r.coefs[j])
            << "\n";
        any = true;
      }
    }
    if (!any) out << "    " << v.name << " " << obj << " 0\n";
  }
  if (in_int) out << "    M" << marker << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  if (inst.objective_offset != 0.0) {
    out << "    RHS " << obj << " " << num(-inst.objective_offset) << "\n";
  }
  for (const Row& r : inst.rows) {
    if (r.rhs != 0.0) out << "    RHS " << r.name << " " << num(r.rhs) << "\n";
  }
  out << "BOUNDS\n";
  for (const Variable& v : inst.vars) {
    const bool lo_inf = std::isinf(v.lower);
    const bool up_inf = std::isinf(v.upper);
    if (lo_inf && up_inf) {
      out << " FR BND " << v.name << "\n";
      continue;
    }
    if (!lo_inf && !up_inf && v.lower == v.upper) {
      out << " FX BND " << v.name << " " << num(v.lower) << "\n";
      continue;
    }
    if (lo_inf) out << " MI BND " << v.name << "\n";
    else if (v.lower != 0.0 || (!up_inf && v.upper < 0.0))
      out << " LO BND " << v.name << " " << num(v.lower) << "\n";
    if (!up_inf) out << " UP BND " << v.name << " " << num(v.upper) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

KnownSolution parse_solution(std::string_view text) {
  KnownSolution sol;
  std::size_t pos = 0;
  int ln = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++ln;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(ln, "expected 'name value'");
    double v = 0.0;
    if (!parse_double(tok[1], &v) || !std::isfinite(v)) {
      throw ParseError(ln, "bad value '" + tok[1] + "' for " + tok[0]);
    }
    sol.values[tok[0]] = v;
  }
  return sol;
}

KnownSolution read_solution_file(const std::string& path) {
  return parse_solution(read_file(path));
}

std::vector<double> solution_vector(const MilpInstance& inst,
                                    const KnownSolution& sol) {
  std::vector<double> x(inst.num_cols(), 0.0);
  for (const auto& [name, v] : sol.values) {
    const int j = inst.column_index(name);
    if (j < 0) throw std::invalid_argument("unknown variable '" + name + "'");
    x[j] = v;
  }
  return x;
}

ValidationReport validate_point(const MilpInstance& inst,
                                const std::vector<double>& x, double tol) {
  ValidationReport rep;
  for (const Row& r : inst.rows) {
    const double act = r.activity(x);
    double viol = 0.0;
    switch (r.sense) {
      case RowSense::kLess: viol = act - r.rhs; break;
      case RowSense::kGreater: viol = r.rhs - act; break;
      case RowSense::kEqual: viol = std::fabs(act - r.rhs); break;
    }
    if (viol > tol) rep.violations.push_back({Violation::Kind::kRow, r.name, viol});
  }
  for (int j = 0; j < inst.num_cols(); ++j) {
    const Variable& v = inst.vars[j];
    if (x[j] < v.lower - tol) {
      rep.violations.push_back(
          {Violation::Kind::kLowerBound, v.name, v.lower - x[j]});
    }
    if (x[j] > v.upper + tol) {
      rep.violations.push_back(
          {Violation::Kind::kUpperBound, v.name, x[j] - v.upper});
    }
    if (v.integer) {
      const double d = std::fabs(x[j] - std::round(x[j]));
      if (d > tol) {
        rep.violations.push_back({Violation::Kind::kIntegrality, v.name, d});
      }
    }
  }
  return rep;
}

ValidationReport validate_solution(const MilpInstance& inst,
                                   const KnownSolution& sol, double tol) {
  ValidationReport rep;
  std::vector<double> x(inst.num_cols(), 0.0);
  for (const auto& [name, v] : sol.values) {
    const int j = inst.column_index(name);
    if (j < 0) {
      rep.violations.push_back({Violation::Kind::kUnknownVariable, name, kInf});
      continue;
    }
    x[j] = v;
  }
  ValidationReport pt = validate_point(inst, x, tol);
  rep.violations.insert(rep.violations.end(), pt.violations.begin(),
                        pt.violations.end());
  return rep;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kRow: return "row";
    case Violation::Kind::kLowerBound: return "lower_bound";
    case Violation::Kind::kUpperBound: return "upper_bound";
    case Violation::Kind::kIntegrality: return "integrality";
    case Violation::Kind::kUnknownVariable: return "unknown_variable";
  }
  return "?";
}

}  // namespace tworow
