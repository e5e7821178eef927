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

// Lattice-free bodies (splits, triangles, wedges) around the point f of a
// two-row model.
//
// Every body lives in a "frame": integer coordinates obtained from the
// model's (x_i, x_l) plane by a unimodular affine map. Bodies coming out of
// construct_body use the side frame, which is the identity for the left side
// and the reflection x_i -> -x_i for the right side; in that frame the
// vertical edge is on x_i = -1. canonicalize() then composes an integer
// shear x_l -> x_l + k x_i and possibly the flip x_l -> 1 - x_l, giving a
// triangle with vertices (-1, 1 + eta), (-1, -mu) and
// (1 / (eta + mu), mu / (eta + mu)) whose sloped edges pass through (0, 1)
// and (0, 0).

#ifndef TWOROW_LATGEOM_HPP_
#define TWOROW_LATGEOM_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tworow/tworow.hpp"

namespace tworow {

enum class Side { kLeft, kRight };
enum class BodyKind { kSplit, kTriangle, kWedge };
enum class TriangleType { kNone, kType1, kType2 };

std::string to_string(Side s);
std::string to_string(BodyKind k);
std::string to_string(TriangleType t);

// y = M x + t with integer M (row-major, det = +-1) and integer t.
struct UnimodularMap {
  std::array<int, 4> m{1, 0, 0, 1};
  std::array<int, 2> t{0, 0};

  Vec2 apply_point(Vec2 p) const;
  Vec2 apply_vector(Vec2 v) const;
  // The map x -> next(this(x)).
  UnimodularMap then(const UnimodularMap& next) const;
  int determinant() const;

  static UnimodularMap reflection();     // x_i -> -x_i
  static UnimodularMap shear(int k);     // x_l -> x_l + k x_i
  static UnimodularMap flip();           // x_l -> 1 - x_l
  static UnimodularMap for_side(Side s);
};

struct LatticeFreeBody {
  BodyKind kind = BodyKind::kTriangle;
  TriangleType type = TriangleType::kNone;
  // 1, 2 or 3 for the number-of-interior-lattice-points cases
  // (>= 2, exactly 1, none).
  int lattice_case = 0;
  Side side = Side::kLeft;
  // Frame coordinates. Triangles: {p1, p2, p3} with p2 the upper and p3 the
  // lower end of the vertical edge. Wedges: {apex}. Splits: empty.
  std::vector<Vec2> vertices;
  // Sloped edges: eta x_i + x_l <= 1 and mu x_i - x_l <= 0 bound the body
  // once canonical. Before canonicalize() they are read off the vertical
  // edge as p2_l - 1 and -p3_l.
  double eta = 0.0;
  double mu = 0.0;
  // Splits: c <= a x_i + b x_l <= c + 1 in frame coordinates.
  int split_a = 0;
  int split_b = 0;
  int split_c = 0;
  UnimodularMap frame;
  bool canonical = false;

  Vec2 to_frame(Vec2 model_point) const { return frame.apply_point(model_point); }
};

// The two endpoints of the vertical edge on x_i = -1, in the side frame.
// Empty when no ray points to x_i < 0 or when both endpoints coincide.
std::optional<std::pair<Vec2, Vec2>> boundary_points(const TwoRowModel& model,
                                                     Side side);

// Rounds values within the snap tolerance of an integer.
double snap_to_integer(double v);

// Number of integers strictly between p3.l and p2.l (after snapping).
int count_strict_interior_lattice(Vec2 p2, Vec2 p3);

struct BodyResult {
  std::optional<LatticeFreeBody> body;
  std::string reason;  // why no body was produced
};

// Builds the body from the vertical edge p2 (upper) / p3 (lower) on
// x_i = -1. `f` must be (0, f_l) with f_l in (0, 1).
BodyResult construct_body(Vec2 f, Vec2 p2, Vec2 p3, Side side = Side::kLeft);
BodyResult construct_body(const TwoRowModel& model, Side side);

// Moves a triangle into canonical position. Splits pass through unchanged.
BodyResult canonicalize(const LatticeFreeBody& body);

// The triangle without its vertical edge. Requires a canonical triangle.
LatticeFreeBody make_wedge(const LatticeFreeBody& canonical_triangle);

// Enumerates lattice points over the body's bounding box (wedges: the strip
// -1 < x_i <= wedge_extent). Throws std::invalid_argument for a non-finite
// or excessively large enumeration box.
bool is_lattice_free(const LatticeFreeBody& body, int wedge_extent = 50);

// Strict containment of a frame-coordinate point, with margin `eps`.
bool strictly_contains(const LatticeFreeBody& body, Vec2 p,
                       double eps = 1e-9);

nlohmann::json to_json(const LatticeFreeBody& body);

}  // namespace tworow

#endif  // TWOROW_LATGEOM_HPP_
