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

// Intersection cuts in nonbasic space, their safeguards, and their
// translation back to the structural variables.
//
// A cut is stored as sum_j coef[j] * s_j >= 1 where s_j are the nonbasic
// displacements of one optimal basis (see TableauRow).

#ifndef TWOROW_CUTGEN_HPP_
#define TWOROW_CUTGEN_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tworow/instance.hpp"
#include "tworow/latgeom.hpp"
#include "tworow/simplex.hpp"
#include "tworow/tworow.hpp"

namespace tworow {

class CutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// pi . x >= pi0
struct DisjunctionTerm {
  std::vector<double> pi;
  double pi0 = 0.0;
};

struct Disjunction {
  std::vector<DisjunctionTerm> terms;
};

// The body's facets as a disjunction over model coordinates (x_i, x_l):
// every lattice point satisfies at least one term, f satisfies none.
Disjunction edge_disjunction(const LatticeFreeBody& body);

// max_l pi^l r / (pi0^l - pi^l f). Throws CutError("f satisfies a term") when
// a denominator is at most 1e-12.
double intersection_coefficient(std::span<const double> ray,
                                std::span<const double> f,
                                const Disjunction& d);

// min over the listed integer shifts w of the coefficient of ray - w.
double shifted_intersection_coefficient(
    std::span<const double> ray, std::span<const double> f,
    const Disjunction& d, const std::vector<std::vector<double>>& shifts);

enum class CutKind { kGmi, kSplit, kTriangle, kWedge };
std::string to_string(CutKind k);

struct Provenance {
  CutKind kind = CutKind::kGmi;
  TriangleType type = TriangleType::kNone;
  Side side = Side::kLeft;
  int lattice_case = 0;
  // Basic columns of the rows the cut came from (-1 when unused).
  int frac_basic = -1;
  int int_basic = -1;
  bool lifted = false;
  int round = 0;
};

nlohmann::json to_json(const Provenance& p);

struct CutFunction {
  // One entry per nonbasic position.
  std::vector<double> coef;
  double rhs = 1.0;
  Provenance prov;
};

CutFunction intersection_cut(const std::vector<std::vector<double>>& rays,
                             std::span<const double> f, const Disjunction& d);

// max{-r_i / (1 + f_i), (eta r_i + r_l) / (1 - eta f_i - f_l),
//     (mu r_i - r_l) / (f_l - mu f_i)}, all in canonical coordinates.
double triangle_coefficient(Vec2 f, Vec2 r, double eta, double mu);
// The same without the first term.
double wedge_coefficient(Vec2 f, Vec2 r, double eta, double mu);

// Cuts from a two-row model. Coefficients of dropped rays are 0.
CutFunction triangle_cut(const TwoRowModel& model, const LatticeFreeBody& body);
// Throws CutError when `bound_ok` is false.
CutFunction wedge_cut(const TwoRowModel& model, const LatticeFreeBody& body,
                      bool bound_ok);
CutFunction split_cut(const TwoRowModel& model, const LatticeFreeBody& body);

// True when the model's integer basic variable cannot move past f_i on the
// side whose vertical edge the wedge drops.
bool wedge_bound_ok(const TwoRowModel& model, Side side);

struct GmiOptions {
  bool lift_integer = true;
  double min_fraction = 0.01;
};

// Gomory mixed-integer cut from one row. `integer[j]` flags nonbasic
// positions whose displacement is integral. Throws CutError when the
// fractional part is outside [min_fraction, 1 - min_fraction].
CutFunction gmi_cut(const TableauRow& row, const std::vector<bool>& integer,
                    const GmiOptions& opts = {});
CutFunction gmi_cut(const TableauRow& row,
                    std::span<const NonbasicInfo> nonbasic,
                    const GmiOptions& opts = {});

struct SafeguardResult {
  bool accepted = true;
  std::string reason;  // "non_finite", "empty", "dynamism"
};

SafeguardResult apply_safeguards(std::span<const double> coef,
                                 double max_dynamism = 1e9);

// coef . x >= rhs over the structural columns.
struct StructuralCut {
  std::vector<double> coef;
  double rhs = 0.0;

  double activity(const std::vector<double>& x) const;
  double violation(const std::vector<double>& x) const;
};

// Substitutes the nonbasic displacements by their expressions in x. Bounds
// are taken from `lp` (the solve that produced the tableau); slacks expand
// through the rows of `inst`. Coefficients below 1e-12 in magnitude are
// dropped against a finite bound of their column.
StructuralCut to_structural_space(const CutFunction& cut,
                                  std::span<const NonbasicInfo> nonbasic,
                                  const LpSolution& lp,
                                  const MilpInstance& inst);

// sum_j coef[j] * s_j(x), the nonbasic-space left-hand side at x.
double nonbasic_activity(const CutFunction& cut,
                         std::span<const NonbasicInfo> nonbasic,
                         const LpSolution& lp, const MilpInstance& inst,
                         const std::vector<double>& x);

// 1 / ||coef||_2. Throws CutError for a zero vector.
double cut_depth(std::span<const double> coef);

// Cut dump record.
nlohmann::json cut_record(const Provenance& prov, const StructuralCut& cut,
                          double depth, bool accepted,
                          const std::string& reject_reason);

}  // namespace tworow

#endif  // TWOROW_CUTGEN_HPP_
