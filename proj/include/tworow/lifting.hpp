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

// Strengthened coefficients for integer nonbasic columns.
//
// For a canonical triangle the coefficient of an integer ray r is
// min over (m1, m2) in Z^2 of Phi(m1, m2) = max{Phi1, Phi2, Phi3} with
//   Phi1 = (m1 - r_i) / (1 + f_i)
//   Phi2 = (eta (r_i - m1) + r_l - m2) / (1 - eta f_i - f_l)
//   Phi3 = (mu (r_i - m1) - r_l + m2) / (f_l - mu f_i).
// For the wedge the shifts are restricted to m1 >= 0 and
//   Psi(m1, m2) = max{(eta (r_i + m1) + r_l - m2) / (1 - f_l - eta f_i),
//                     (mu (r_i + m1) + m2 - r_l) / (f_l - mu f_i)}.

#ifndef TWOROW_LIFTING_HPP_
#define TWOROW_LIFTING_HPP_

#include "tworow/cutgen.hpp"
#include "tworow/latgeom.hpp"
#include "tworow/tworow.hpp"

namespace tworow {

enum class LiftMode { kTriangle, kWedge };

struct LiftContext {
  Vec2 f;
  double eta = 0.0;
  double mu = 0.0;
  Vec2 r;
  LiftMode mode = LiftMode::kTriangle;

  // Throws CutError when a denominator is not positive.
  void check() const;

  double phi1(double m1, double m2) const;
  double phi2(double m1, double m2) const;
  double phi3(double m1, double m2) const;
  double phi(double m1, double m2) const;
  double psi(double m1, double m2) const;
  // Phi(0, 0) or Psi(0, 0) depending on the mode.
  double unlifted() const;

  double m_bar_1() const;
  double m_hat_1() const;
  // Triangle mode uses the fractional part of r_i, wedge mode r_i itself.
  double m_bar_2() const;
};

double trivial_lift(const LiftContext& ctx);
double wedge_lift(const LiftContext& ctx);

// Exhaustive minimum over [-b, b]^2 (triangle) or [0, b] x [-b, b] (wedge).
double brute_force_lift(const LiftContext& ctx, int b);

// Exhaustive minimum starting at box `b`, doubling the box while the
// minimizer touches its boundary.
double certified_brute_force_lift(const LiftContext& ctx, int b = 8);

// Lifted coefficient of an integer ray whose projection on the split
// normal is `rho`, for a split with f sitting at fraction `f0`:
// min(phi / (1 - f0), (1 - phi) / f0), phi = rho - floor(rho).
double split_lift(double rho, double f0);

// Replaces the coefficients of the model's integer rays by their lifted
// values. The body must be the one the cut was built from.
CutFunction lift_cut(const CutFunction& cut, const TwoRowModel& model,
                     const LatticeFreeBody& body);

}  // namespace tworow

#endif  // TWOROW_LIFTING_HPP_
