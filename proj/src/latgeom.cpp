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

#include "tworow/latgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tworow/tolerances.hpp"

namespace tworow {

std::string to_string(Side s) { return s == Side::kLeft ? "left" : "right"; }

std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::kSplit: return "split";
    case BodyKind::kTriangle: return "triangle";
    case BodyKind::kWedge: return "wedge";
  }
  return "?";
}

std::string to_string(TriangleType t) {
  switch (t) {
    case TriangleType::kNone: return "none";
    case TriangleType::kType1: return "type1";
    case TriangleType::kType2: return "type2";
  }
  return "?";
}

Vec2 UnimodularMap::apply_vector(Vec2 v) const {
  return {m[0] * v.i + m[1] * v.l, m[2] * v.i + m[3] * v.l};
}

Vec2 UnimodularMap::apply_point(Vec2 p) const {
  Vec2 q = apply_vector(p);
  return {q.i + t[0], q.l + t[1]};
}

UnimodularMap UnimodularMap::then(const UnimodularMap& next) const {
  UnimodularMap out;
  const auto& a = next.m;
  out.m = {a[0] * m[0] + a[1] * m[2], a[0] * m[1] + a[1] * m[3],
           a[2] * m[0] + a[3] * m[2], a[2] * m[1] + a[3] * m[3]};
  out.t = {a[0] * t[0] + a[1] * t[1] + next.t[0],
           a[2] * t[0] + a[3] * t[1] + next.t[1]};
  return out;
}

int UnimodularMap::determinant() const { return m[0] * m[3] - m[1] * m[2]; }

UnimodularMap UnimodularMap::reflection() { return {{-1, 0, 0, 1}, {0, 0}}; }
UnimodularMap UnimodularMap::shear(int k) { return {{1, 0, k, 1}, {0, 0}}; }
UnimodularMap UnimodularMap::flip() { return {{1, 0, 0, -1}, {0, 1}}; }
UnimodularMap UnimodularMap::for_side(Side s) {
  return s == Side::kLeft ? UnimodularMap{} : reflection();
}

double snap_to_integer(double v) {
  const double r = std::round(v);
  return std::fabs(v - r) <= tol::kSnap ? r : v;
}

std::optional<std::pair<Vec2, Vec2>> boundary_points(const TwoRowModel& model,
                                                     Side side) {
  const UnimodularMap frame = UnimodularMap::for_side(side);
  const Vec2 f = frame.apply_point(model.f);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool any = false;
  for (const Vec2& raw : model.rays) {
    const Vec2 r = frame.apply_vector(raw);
    if (!(r.i < 0.0)) continue;
    const double ratio = r.l / r.i;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    any = true;
  }
  if (!any) return std::nullopt;
  Vec2 p2{-1.0, f.l - lo};
  Vec2 p3{-1.0, f.l - hi};
  if (!(p2.l > p3.l)) return std::nullopt;
  return std::make_pair(p2, p3);
}

int count_strict_interior_lattice(Vec2 p2, Vec2 p3) {
  const double hi = snap_to_integer(p2.l);
  const double lo = snap_to_integer(p3.l);
  if (!(hi > lo)) return 0;
  // Integers z with lo < z < hi.
  const double first = std::floor(lo) + 1.0;
  const double last = std::ceil(hi) - 1.0;
  return last >= first ? static_cast<int>(last - first + 1.0) : 0;
}

namespace {

bool is_integral(double v) { return std::fabs(v - std::round(v)) <= tol::kSnap; }

TriangleType vertex_type(const std::vector<Vec2>& v) {
  for (const Vec2& p : v) {
    if (!is_integral(p.i) || !is_integral(p.l)) return TriangleType::kType2;
  }
  return TriangleType::kType1;
}

double cross(Vec2 a, Vec2 b) { return a.i * b.l - a.l * b.i; }
Vec2 sub(Vec2 a, Vec2 b) { return {a.i - b.i, a.l - b.l}; }

// Triangle with vertical edge from (-1, top) down to (-1, bottom) and sloped
// edges through (0, 1) and (0, 0).
std::vector<Vec2> triangle_vertices(double top, double bottom) {
  const double d = top - 1.0 - bottom;
  return {{1.0 / d, -bottom / d}, {-1.0, top}, {-1.0, bottom}};
}

bool triangle_contains(const std::vector<Vec2>& v, Vec2 p, double eps) {
  const double orient = cross(sub(v[1], v[0]), sub(v[2], v[0]));
  if (orient == 0.0) return false;
  const double s = orient > 0 ? 1.0 : -1.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2 a = v[k];
    const Vec2 b = v[(k + 1) % 3];
    const Vec2 e = sub(b, a);
    const double len = std::hypot(e.i, e.l);
    if (s * cross(e, sub(p, a)) <= eps * len) return false;
  }
  return true;
}

}  // namespace

BodyResult construct_body(Vec2 f, Vec2 p2, Vec2 p3, Side side) {
  if (f.i != 0.0 || !(f.l > 0.0 && f.l < 1.0)) {
    return {std::nullopt, "f is not translated into (0, (0,1))"};
  }
  const double a = snap_to_integer(p2.l);
  const double b = snap_to_integer(p3.l);
  if (!(a > b)) return {std::nullopt, "degenerate vertical segment"};

  LatticeFreeBody body;
  body.side = side;
  body.frame = UnimodularMap::for_side(side);
  const int inner = count_strict_interior_lattice({-1.0, a}, {-1.0, b});
  double top = a;
  double bottom = b;
  if (inner >= 2) {
    body.lattice_case = 1;
  } else if (inner == 1) {
    body.lattice_case = 2;
    const double q2 = std::ceil(a);
    const double q3 = std::floor(b);
    if (q2 - a <= b - q3) {
      top = q2;
    } else {
      bottom = q3;
    }
  } else {
    body.lattice_case = 3;
    const double q2 = std::ceil(a);
    const double q3 = std::floor(b);
    if (q2 - 1.0 != q3) {
      return {std::nullopt, "split lines through rounded endpoints not parallel"};
    }
    body.kind = BodyKind::kSplit;
    body.type = TriangleType::kNone;
    body.split_a = static_cast<int>(q3);
    body.split_b = 1;
    body.split_c = 0;
    return {body, {}};
  }
  if (!(top - 1.0 - bottom > tol::kZero)) {
    return {std::nullopt, "defining lines parallel"};
  }
  body.kind = BodyKind::kTriangle;
  body.vertices = triangle_vertices(top, bottom);
  body.eta = top - 1.0;
  body.mu = -bottom;
  body.type = vertex_type(body.vertices);
  return {body, {}};
}

BodyResult construct_body(const TwoRowModel& model, Side side) {
  auto seg = boundary_points(model, side);
  if (!seg) return {std::nullopt, "no boundary segment"};
  const Vec2 f = UnimodularMap::for_side(side).apply_point(model.f);
  return construct_body(f, seg->first, seg->second, side);
}

BodyResult canonicalize(const LatticeFreeBody& body) {
  if (body.kind == BodyKind::kSplit) {
    LatticeFreeBody out = body;
    out.canonical = true;
    return {out, {}};
  }
  if (body.kind != BodyKind::kTriangle || body.vertices.size() != 3) {
    return {std::nullopt, "canonicalize expects a triangle"};
  }
  if (body.canonical) return {body, {}};
  const double top = body.vertices[1].l;
  const double bottom = body.vertices[2].l;
  const double k_lo = std::ceil(bottom - tol::kSnap);
  const double k_hi = std::floor(top - 1.0 + tol::kSnap);
  if (k_lo > k_hi) {
    return {std::nullopt, "vertical edge does not cover two consecutive integers"};
  }
  const int k = static_cast<int>(std::clamp(0.0, k_lo, k_hi));
  LatticeFreeBody out = body;
  out.frame = body.frame.then(UnimodularMap::shear(k));
  double eta = top - k - 1.0;
  double mu = k - bottom;
  if (eta > mu) {
    out.frame = out.frame.then(UnimodularMap::flip());
    std::swap(eta, mu);
  }
  eta = snap_to_integer(eta);
  mu = snap_to_integer(mu);
  if (!(eta >= 0.0 && eta <= mu) || !(eta + mu > 0.0)) {
    return {std::nullopt, "canonical parameters violate 0 <= eta <= mu"};
  }
  out.eta = eta;
  out.mu = mu;
  out.vertices = triangle_vertices(1.0 + eta, -mu);
  out.type = vertex_type(out.vertices);
  out.canonical = true;
  return {out, {}};
}

LatticeFreeBody make_wedge(const LatticeFreeBody& tri) {
  if (tri.kind != BodyKind::kTriangle || !tri.canonical) {
    throw std::invalid_argument("make_wedge needs a canonical triangle");
  }
  LatticeFreeBody w = tri;
  w.kind = BodyKind::kWedge;
  w.vertices = {tri.vertices[0]};
  return w;
}

bool strictly_contains(const LatticeFreeBody& body, Vec2 p, double eps) {
  switch (body.kind) {
    case BodyKind::kTriangle:
      return triangle_contains(body.vertices, p, eps);
    case BodyKind::kWedge:
      return body.eta * p.i + p.l < 1.0 - eps && body.mu * p.i - p.l < -eps;
    case BodyKind::kSplit: {
      const double v = body.split_a * p.i + body.split_b * p.l;
      return v > body.split_c + eps && v < body.split_c + 1.0 - eps;
    }
  }
  return false;
}

namespace {

constexpr double kMaxEnumeration = 1e7;

void check_box(double lo_i, double hi_i, double lo_l, double hi_l) {
  const double count = (hi_i - lo_i + 1.0) * (hi_l - lo_l + 1.0);
  if (!std::isfinite(count) || count > kMaxEnumeration) {
    throw std::invalid_argument("lattice enumeration box too large");
  }
}

}  // namespace

bool is_lattice_free(const LatticeFreeBody& body, int wedge_extent) {
  if (body.kind == BodyKind::kSplit) {
    // a x_i + b x_l is an integer at lattice points, so it never lies
    // strictly between c and c + 1.
    return true;
  }
  if (body.kind == BodyKind::kTriangle) {
    double lo_i = kInf, hi_i = -kInf, lo_l = kInf, hi_l = -kInf;
    for (const Vec2& v : body.vertices) {
      lo_i = std::min(lo_i, v.i);
      hi_i = std::max(hi_i, v.i);
      lo_l = std::min(lo_l, v.l);
      hi_l = std::max(hi_l, v.l);
    }
    lo_i = std::floor(lo_i);
    hi_i = std::ceil(hi_i);
    lo_l = std::floor(lo_l);
    hi_l = std::ceil(hi_l);
    check_box(lo_i, hi_i, lo_l, hi_l);
    for (double x = lo_i; x <= hi_i; x += 1.0) {
      for (double y = lo_l; y <= hi_l; y += 1.0) {
        if (triangle_contains(body.vertices, {x, y}, tol::kSnap)) return false;
      }
    }
    return true;
  }
  if (wedge_extent < 0) throw std::invalid_argument("negative wedge extent");
  // Strip -1 < x_i <= wedge_extent: rows x_i = 0 .. wedge_extent.
  for (int x = 0; x <= wedge_extent; ++x) {
    const double ylo = std::floor(body.mu * x);
    const double yhi = std::ceil(1.0 - body.eta * x);
    check_box(0.0, 0.0, ylo, yhi);
    for (double y = ylo; y <= yhi; y += 1.0) {
      if (strictly_contains(body, {static_cast<double>(x), y}, tol::kSnap)) {
        return false;
      }
    }
  }
  return true;
}

nlohmann::json to_json(const LatticeFreeBody& body) {
  nlohmann::json j;
  j["kind"] = to_string(body.kind);
  j["type"] = to_string(body.type);
  j["case"] = body.lattice_case;
  j["side"] = to_string(body.side);
  j["canonical"] = body.canonical;
  j["eta"] = body.eta;
  j["mu"] = body.mu;
  nlohmann::json verts = nlohmann::json::array();
  for (const Vec2& v : body.vertices) verts.push_back({v.i, v.l});
  j["vertices"] = verts;
  if (body.kind == BodyKind::kSplit) {
    j["split"] = {{"a", body.split_a}, {"b", body.split_b}, {"c", body.split_c}};
  }
  j["frame"] = {{"m", body.frame.m}, {"t", body.frame.t}};
  return j;
}

}  // namespace tworow
