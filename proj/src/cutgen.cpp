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

#include "tworow/cutgen.hpp"

#include <algorithm>
#include <cmath>

#include "tworow/tolerances.hpp"

namespace tworow {

namespace {

DisjunctionTerm to_model(const UnimodularMap& frame, double a, double b,
                         double rhs) {
  // a y_i + b y_l >= rhs with y = M x + t.
  const auto& m = frame.m;
  DisjunctionTerm term;
  term.pi = {a * m[0] + b * m[2], a * m[1] + b * m[3]};
  term.pi0 = rhs - (a * frame.t[0] + b * frame.t[1]);
  return term;
}

}  // namespace

Disjunction edge_disjunction(const LatticeFreeBody& body) {
  Disjunction d;
  const UnimodularMap& fr = body.frame;
  switch (body.kind) {
    case BodyKind::kSplit:
      d.terms.push_back(to_model(fr, -body.split_a, -body.split_b, -body.split_c));
      d.terms.push_back(to_model(fr, body.split_a, body.split_b, body.split_c + 1));
      break;
    case BodyKind::kWedge:
      d.terms.push_back(to_model(fr, body.eta, 1.0, 1.0));
      d.terms.push_back(to_model(fr, body.mu, -1.0, 0.0));
      break;
    case BodyKind::kTriangle:
      if (body.canonical) {
        d.terms.push_back(to_model(fr, -1.0, 0.0, 1.0));
        d.terms.push_back(to_model(fr, body.eta, 1.0, 1.0));
        d.terms.push_back(to_model(fr, body.mu, -1.0, 0.0));
      } else {
        // Outward normal of each edge; the term is the open far side.
        const auto& v = body.vertices;
        for (int k = 0; k < 3; ++k) {
          const Vec2 a = v[k], b = v[(k + 1) % 3], c = v[(k + 2) % 3];
          double nx = b.l - a.l, ny = a.i - b.i;
          if (nx * (c.i - a.i) + ny * (c.l - a.l) > 0) {
            nx = -nx;
            ny = -ny;
          }
          d.terms.push_back(to_model(fr, nx, ny, nx * a.i + ny * a.l));
        }
      }
      break;
  }
  return d;
}

double intersection_coefficient(std::span<const double> ray,
                                std::span<const double> f,
                                const Disjunction& d) {
  double best = -kInf;
  for (const DisjunctionTerm& t : d.terms) {
    double pr = 0.0, pf = 0.0;
    for (std::size_t k = 0; k < t.pi.size(); ++k) {
      pr += t.pi[k] * ray[k];
      pf += t.pi[k] * f[k];
    }
    const double den = t.pi0 - pf;
    if (!(den > tol::kZero)) throw CutError("f satisfies a term");
    best = std::max(best, pr / den);
  }
  return best;
}

double shifted_intersection_coefficient(
    std::span<const double> ray, std::span<const double> f,
    const Disjunction& d, const std::vector<std::vector<double>>& shifts) {
  double best = kInf;
  std::vector<double> moved(ray.size());
  for (const auto& w : shifts) {
    for (std::size_t k = 0; k < ray.size(); ++k) moved[k] = ray[k] - w[k];
    best = std::min(best, intersection_coefficient(moved, f, d));
  }
  return best;
}

std::string to_string(CutKind k) {
  switch (k) {
    case CutKind::kGmi: return "gmi";
    case CutKind::kSplit: return "split";
    case CutKind::kTriangle: return "triangle";
    case CutKind::kWedge: return "wedge";
  }
  return "?";
}

nlohmann::json to_json(const Provenance& p) {
  nlohmann::json j;
  j["kind"] = to_string(p.kind);
  if (p.kind == CutKind::kTriangle || p.kind == CutKind::kWedge) {
    j["type"] = to_string(p.type);
  }
  if (p.kind != CutKind::kGmi) {
    j["side"] = to_string(p.side);
    j["case"] = p.lattice_case;
    j["int_basic"] = p.int_basic;
  }
  j["frac_basic"] = p.frac_basic;
  j["lifted"] = p.lifted;
  j["round"] = p.round;
  return j;
}

CutFunction intersection_cut(const std::vector<std::vector<double>>& rays,
                             std::span<const double> f, const Disjunction& d) {
  CutFunction cut;
  cut.coef.reserve(rays.size());
  for (const auto& r : rays) cut.coef.push_back(intersection_coefficient(r, f, d));
  return cut;
}

double triangle_coefficient(Vec2 f, Vec2 r, double eta, double mu) {
  const double d1 = 1.0 + f.i;
  const double d2 = 1.0 - eta * f.i - f.l;
  const double d3 = f.l - mu * f.i;
  if (!(d1 > tol::kZero && d2 > tol::kZero && d3 > tol::kZero)) {
    throw CutError("f satisfies a term");
  }
  return std::max({-r.i / d1, (eta * r.i + r.l) / d2, (mu * r.i - r.l) / d3});
}

double wedge_coefficient(Vec2 f, Vec2 r, double eta, double mu) {
  const double d2 = 1.0 - eta * f.i - f.l;
  const double d3 = f.l - mu * f.i;
  if (!(d2 > tol::kZero && d3 > tol::kZero)) throw CutError("f satisfies a term");
  return std::max((eta * r.i + r.l) / d2, (mu * r.i - r.l) / d3);
}

namespace {

Provenance pair_provenance(const TwoRowModel& model, const LatticeFreeBody& b,
                           CutKind kind) {
  Provenance p;
  p.kind = kind;
  p.type = b.type;
  p.side = b.side;
  p.lattice_case = b.lattice_case;
  p.frac_basic = model.frac_basic;
  p.int_basic = model.int_basic;
  return p;
}

void require_canonical_triangle(const LatticeFreeBody& body) {
  if ((body.kind != BodyKind::kTriangle && body.kind != BodyKind::kWedge) ||
      !body.canonical) {
    throw CutError("expected a canonical triangle");
  }
}

}  // namespace

CutFunction triangle_cut(const TwoRowModel& model, const LatticeFreeBody& body) {
  require_canonical_triangle(body);
  CutFunction cut;
  cut.prov = pair_provenance(model, body, CutKind::kTriangle);
  cut.coef.assign(model.num_nonbasic, 0.0);
  const Vec2 f = body.frame.apply_point(model.f);
  for (std::size_t k = 0; k < model.rays.size(); ++k) {
    const Vec2 r = body.frame.apply_vector(model.rays[k]);
    cut.coef[model.position[k]] = triangle_coefficient(f, r, body.eta, body.mu);
  }
  return cut;
}

bool wedge_bound_ok(const TwoRowModel& model, Side side) {
  return side == Side::kLeft ? model.int_at_lower : model.int_at_upper;
}

CutFunction wedge_cut(const TwoRowModel& model, const LatticeFreeBody& body,
                      bool bound_ok) {
  require_canonical_triangle(body);
  if (!bound_ok) {
    throw CutError("wedge needs the integer basic variable at its bound");
  }
  CutFunction cut;
  cut.prov = pair_provenance(model, body, CutKind::kWedge);
  cut.coef.assign(model.num_nonbasic, 0.0);
  const Vec2 f = body.frame.apply_point(model.f);
  for (std::size_t k = 0; k < model.rays.size(); ++k) {
    const Vec2 r = body.frame.apply_vector(model.rays[k]);
    cut.coef[model.position[k]] = wedge_coefficient(f, r, body.eta, body.mu);
  }
  return cut;
}

CutFunction split_cut(const TwoRowModel& model, const LatticeFreeBody& body) {
  if (body.kind != BodyKind::kSplit) throw CutError("expected a split");
  const Disjunction d = edge_disjunction(body);
  CutFunction cut;
  cut.prov = pair_provenance(model, body, CutKind::kSplit);
  cut.coef.assign(model.num_nonbasic, 0.0);
  const double f[2] = {model.f.i, model.f.l};
  for (std::size_t k = 0; k < model.rays.size(); ++k) {
    const double r[2] = {model.rays[k].i, model.rays[k].l};
    cut.coef[model.position[k]] = intersection_coefficient(r, f, d);
  }
  return cut;
}

CutFunction gmi_cut(const TableauRow& row, const std::vector<bool>& integer,
                    const GmiOptions& opts) {
  const double fl = std::floor(row.value);
  const double f0 = row.value - fl;
  if (!(f0 >= opts.min_fraction && f0 <= 1.0 - opts.min_fraction)) {
    throw CutError("fractional part outside the accepted range");
  }
  Disjunction d;
  d.terms.push_back({{-1.0}, -fl});
  d.terms.push_back({{1.0}, fl + 1.0});
  CutFunction cut;
  cut.prov.kind = CutKind::kGmi;
  cut.prov.frac_basic = row.basic;
  cut.prov.lifted = opts.lift_integer;
  cut.coef.resize(row.coef.size());
  const double f[1] = {row.value};
  for (std::size_t j = 0; j < row.coef.size(); ++j) {
    const double r[1] = {row.coef[j]};
    if (opts.lift_integer && j < integer.size() && integer[j]) {
      cut.coef[j] = shifted_intersection_coefficient(
          r, f, d, {{std::floor(r[0])}, {std::ceil(r[0])}});
    } else {
      cut.coef[j] = intersection_coefficient(r, f, d);
    }
  }
  return cut;
}

CutFunction gmi_cut(const TableauRow& row,
                    std::span<const NonbasicInfo> nonbasic,
                    const GmiOptions& opts) {
  std::vector<bool> integer(nonbasic.size());
  for (std::size_t j = 0; j < nonbasic.size(); ++j) {
    integer[j] = nonbasic[j].integer;
  }
  return gmi_cut(row, integer, opts);
}

SafeguardResult apply_safeguards(std::span<const double> coef,
                                 double max_dynamism) {
  double lo = kInf, hi = 0.0;
  for (double c : coef) {
    if (!std::isfinite(c)) return {false, "non_finite"};
    const double a = std::fabs(c);
    if (a < tol::kZero) continue;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (hi == 0.0) return {false, "empty"};
  if (hi / lo > max_dynamism) return {false, "dynamism"};
  return {true, {}};
}

double StructuralCut::activity(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < coef.size(); ++j) s += coef[j] * x[j];
  return s;
}

double StructuralCut::violation(const std::vector<double>& x) const {
  return std::max(0.0, rhs - activity(x));
}

namespace {

// s_j = sign * x_col + offset where x_col is a structural value or a row
// slack rhs - a.x.
struct Displacement {
  double sign;
  double offset;
};

Displacement displacement(const NonbasicInfo& nb, const LpSolution& lp) {
  if (nb.free) return {1.0, 0.0};
  if (nb.at_upper) return {-1.0, lp.upper[nb.column]};
  return {1.0, -lp.lower[nb.column]};
}

}  // namespace

StructuralCut to_structural_space(const CutFunction& cut,
                                  std::span<const NonbasicInfo> nonbasic,
                                  const LpSolution& lp,
                                  const MilpInstance& inst) {
  if (cut.coef.size() != nonbasic.size()) {
    throw CutError("cut and nonbasic map differ in length");
  }
  const int n = inst.num_cols();
  StructuralCut out;
  out.coef.assign(n, 0.0);
  double constant = 0.0;
  for (std::size_t j = 0; j < nonbasic.size(); ++j) {
    const double psi = cut.coef[j];
    if (psi == 0.0) continue;
    const NonbasicInfo& nb = nonbasic[j];
    if (nb.column < 0 || nb.column >= n + inst.num_rows()) {
      throw CutError("nonbasic index does not resolve to a column");
    }
    const Displacement d = displacement(nb, lp);
    constant += psi * d.offset;
    if (nb.column < n) {
      out.coef[nb.column] += psi * d.sign;
    } else {
      const Row& row = inst.rows[nb.column - n];
      constant += psi * d.sign * row.rhs;
      for (int k = 0; k < n; ++k) {
        if (row.coefs[k] != 0.0) out.coef[k] -= psi * d.sign * row.coefs[k];
      }
    }
  }
  out.rhs = cut.rhs - constant;
  for (int k = 0; k < n; ++k) {
    const double a = out.coef[k];
    if (a == 0.0 || std::fabs(a) >= tol::kZero) continue;
    const double lo = inst.vars[k].lower, up = inst.vars[k].upper;
    if (!std::isfinite(lo) || !std::isfinite(up)) continue;
    out.rhs -= std::max(a * lo, a * up);
    out.coef[k] = 0.0;
  }
  return out;
}

double nonbasic_activity(const CutFunction& cut,
                         std::span<const NonbasicInfo> nonbasic,
                         const LpSolution& lp, const MilpInstance& inst,
                         const std::vector<double>& x) {
  const int n = inst.num_cols();
  double s = 0.0;
  for (std::size_t j = 0; j < nonbasic.size(); ++j) {
    if (cut.coef[j] == 0.0) continue;
    const NonbasicInfo& nb = nonbasic[j];
    const double v = nb.column < n ? x[nb.column]
                                   : inst.rows[nb.column - n].rhs -
                                         inst.rows[nb.column - n].activity(x);
    const Displacement d = displacement(nb, lp);
    s += cut.coef[j] * (d.sign * v + d.offset);
  }
  return s;
}

double cut_depth(std::span<const double> coef) {
  double sq = 0.0;
  for (double c : coef) sq += c * c;
  if (!(sq > 0.0)) throw CutError("zero cut vector has no depth");
  return 1.0 / std::sqrt(sq);
}

nlohmann::json cut_record(const Provenance& prov, const StructuralCut& cut,
                          double depth, bool accepted,
                          const std::string& reject_reason) {
  nlohmann::json j;
  j["provenance"] = to_json(prov);
  j["coefficients"] = cut.coef;
  j["rhs"] = cut.rhs;
  j["depth"] = depth;
  j["accepted"] = accepted;
  j["reject_reason"] = reject_reason;
  return j;
}

}  // namespace tworow
