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

#include "tworow/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tworow/tolerances.hpp"

namespace tworow {

namespace {

double d1(const LiftContext& c) { return 1.0 + c.f.i; }
double d2(const LiftContext& c) { return 1.0 - c.eta * c.f.i - c.f.l; }
double d3(const LiftContext& c) { return c.f.l - c.mu * c.f.i; }

}  // namespace

void LiftContext::check() const {
  if (!(d2(*this) > tol::kZero && d3(*this) > tol::kZero)) {
    throw CutError("lifting denominators must be positive");
  }
  if (mode == LiftMode::kTriangle && !(d1(*this) > tol::kZero)) {
    throw CutError("lifting denominators must be positive");
  }
}

double LiftContext::phi1(double m1, double) const {
  return (m1 - r.i) / d1(*this);
}

double LiftContext::phi2(double m1, double m2) const {
  return (eta * (r.i - m1) + r.l - m2) / d2(*this);
}

double LiftContext::phi3(double m1, double m2) const {
  return (mu * (r.i - m1) - r.l + m2) / d3(*this);
}

double LiftContext::phi(double m1, double m2) const {
  return std::max({phi1(m1, m2), phi2(m1, m2), phi3(m1, m2)});
}

double LiftContext::psi(double m1, double m2) const {
  return std::max((eta * (r.i + m1) + r.l - m2) / d2(*this),
                  (mu * (r.i + m1) + m2 - r.l) / d3(*this));
}

double LiftContext::unlifted() const {
  return mode == LiftMode::kTriangle ? phi(0, 0) : psi(0, 0);
}

double LiftContext::m_bar_1() const {
  return r.i - (1.0 + f.i) * (r.l - std::floor(r.l)) / (1.0 + eta - f.l);
}

double LiftContext::m_hat_1() const {
  return r.i - (1.0 + f.i) * (std::ceil(r.l) - r.l) / (mu + f.l);
}

double LiftContext::m_bar_2() const {
  const double den = 1.0 - (mu + eta) * f.i;
  if (!(std::fabs(den) > tol::kZero)) {
    throw CutError("shift estimate undefined: 1 - (mu + eta) f_i vanishes");
  }
  const double ri = mode == LiftMode::kTriangle ? r.i - std::floor(r.i) : r.i;
  return r.l + ri * (-mu + (mu + eta) * f.l) / den;
}

double trivial_lift(const LiftContext& ctx) {
  ctx.check();
  std::set<double> c1, c2;
  auto add_around = [](std::set<double>& s, double v) {
    if (!std::isfinite(v)) return;
    for (double base : {std::floor(v), std::ceil(v)}) {
      for (double d : {-1.0, 0.0, 1.0}) s.insert(base + d);
    }
  };
  add_around(c1, ctx.r.i);
  add_around(c1, ctx.m_bar_1());
  add_around(c1, ctx.m_hat_1());
  add_around(c2, ctx.r.l);
  add_around(c2, ctx.m_bar_2());
  double best = ctx.phi(0, 0);
  for (double m1 : c1) {
    for (double m2 : c2) best = std::min(best, ctx.phi(m1, m2));
  }
  return best;
}

double wedge_lift(const LiftContext& ctx) {
  ctx.check();
  const double mb = ctx.m_bar_2();
  const double lo = (ctx.eta * ctx.r.i + ctx.r.l - std::floor(mb)) / d2(ctx);
  const double hi = (ctx.mu * ctx.r.i + std::ceil(mb) - ctx.r.l) / d3(ctx);
  return std::min(lo, hi);
}

namespace {

struct BoxMin {
  double value = kInf;
  int m1 = 0;
  int m2 = 0;
};

BoxMin box_min(const LiftContext& ctx, int b) {
  BoxMin best;
  const int m1_lo = ctx.mode == LiftMode::kTriangle ? -b : 0;
  for (int m1 = m1_lo; m1 <= b; ++m1) {
    for (int m2 = -b; m2 <= b; ++m2) {
      const double v = ctx.mode == LiftMode::kTriangle ? ctx.phi(m1, m2)
                                                       : ctx.psi(m1, m2);
      if (v < best.value) best = {v, m1, m2};
    }
  }
  return best;
}

}  // namespace

double brute_force_lift(const LiftContext& ctx, int b) {
  ctx.check();
  return box_min(ctx, std::max(b, 0)).value;
}

double certified_brute_force_lift(const LiftContext& ctx, int b) {
  ctx.check();
  b = std::max(b, 1);
  for (;;) {
    const BoxMin m = box_min(ctx, b);
    const bool m1_edge = m.m1 == b || (ctx.mode == LiftMode::kTriangle && m.m1 == -b);
    const bool m2_edge = std::abs(m.m2) == b;
    if ((!m1_edge && !m2_edge) || b >= (1 << 12)) return m.value;
    b *= 2;
  }
}

double split_lift(double rho, double f0) {
  const double phi = rho - std::floor(rho);
  return std::min(phi / (1.0 - f0), (1.0 - phi) / f0);
}

CutFunction lift_cut(const CutFunction& cut, const TwoRowModel& model,
                     const LatticeFreeBody& body) {
  CutFunction out = cut;
  const Vec2 f = body.frame.apply_point(model.f);
  double split_f0 = 0.0;
  if (body.kind == BodyKind::kSplit) {
    split_f0 = body.split_a * f.i + body.split_b * f.l - body.split_c;
  }
  bool any = false;
  for (std::size_t k = 0; k < model.rays.size(); ++k) {
    if (!model.integer[k]) continue;
    const Vec2 r = body.frame.apply_vector(model.rays[k]);
    double v = 0.0;
    if (body.kind == BodyKind::kSplit) {
      v = split_lift(body.split_a * r.i + body.split_b * r.l, split_f0);
    } else {
      LiftContext ctx{f, body.eta, body.mu, r,
                      body.kind == BodyKind::kWedge ? LiftMode::kWedge
                                                    : LiftMode::kTriangle};
      v = ctx.mode == LiftMode::kWedge ? wedge_lift(ctx) : trivial_lift(ctx);
    }
    out.coef[model.position[k]] = v;
    any = true;
  }
  out.prov.lifted = cut.prov.lifted || any;
  return out;
}

}  // namespace tworow
