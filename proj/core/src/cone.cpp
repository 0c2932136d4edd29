// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cornerem/error.hpp"

namespace cornerem {
namespace {

double min_dot(const Vec3& u, std::span<const Vec3> edges) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : edges) m = std::min(m, dot(u, w));
  return m;
}

// Orthonormal pair spanning the plane orthogonal to the unit vector n.
std::array<Vec3, 2> orthonormal_complement(const Vec3& n) {
  const Vec3 seed = std::abs(n.x) < 0.6 ? Vec3{1, 0, 0}
                    : std::abs(n.y) < 0.6 ? Vec3{0, 1, 0}
                                          : Vec3{0, 0, 1};
  Vec3 a = cross(n, seed);
  a = a / norm(a);
  return {a, cross(n, a)};
}

// The maximizer of min_j u·w_j over the sphere has one, two or three active
// edges with equal values; enumerating those candidates is exact.
std::pair<Vec3, double> max_min_direction(std::span<const Vec3> w) {
  const std::size_t n = w.size();
  Vec3 best_u = w[0];
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](Vec3 u) {
    const double len = norm(u);
    if (!(len > 1e-300)) return;
    u = u / len;
    const double m = min_dot(u, w);
    if (m > best) {
      best = m;
      best_u = u;
    }
  };
  for (std::size_t i = 0; i < n; ++i) consider(w[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) consider(w[i] + w[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        // rows w_i, w_j, w_k; solve M u = 1.
        const Vec3 c0{w[i].x, w[j].x, w[k].x};
        const Vec3 c1{w[i].y, w[j].y, w[k].y};
        const Vec3 c2{w[i].z, w[j].z, w[k].z};
        const auto sol = solve_columns(c0, c1, c2, Vec3{1, 1, 1}, 1e-14);
        if (!sol) continue;
        consider(*sol);
        consider(-*sol);
      }
  return {best_u, best};
}

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Indices of strict convex-hull vertices (monotone chain).
std::vector<std::size_t> hull_vertices(const std::vector<std::array<double, 2>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pts[a] < pts[b];
  });
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  std::vector<std::size_t> h(2 * n);
  std::size_t m = 0;
  for (std::size_t t = 0; t < n; ++t) {
    while (m >= 2 && cross2(pts[h[m - 2]], pts[h[m - 1]], pts[idx[t]]) <= tol) --m;
    h[m++] = idx[t];
  }
  for (std::size_t t = n - 1, lower = m + 1; t-- > 0;) {
    while (m >= lower && cross2(pts[h[m - 2]], pts[h[m - 1]], pts[idx[t]]) <= tol) --m;
    h[m++] = idx[t];
  }
  h.resize(m > 0 ? m - 1 : 0);
  return h;
}

}  // namespace

ConvexityReport validate_cone(std::span<const Vec3> edges) {
  if (edges.size() < 3) {
    throw Error(ErrorKind::TooFewEdges, "a polyhedral cone needs at least 3 edges");
  }
  for (const auto& w : edges) {
    if (!(std::abs(dot(w, w) - 1.0) <= UnitVector3::kUnitTolerance)) {
      throw Error(ErrorKind::InvalidArgument, "edge directions must be unit vectors");
    }
  }
  ConvexityReport report;
  const auto [u, delta] = max_min_direction(edges);
  report.delta = delta;
  report.witness = UnitVector3::normalize(u);
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::NotStrictlyConvex,
                "edges do not fit in an open half-space (delta = " + std::to_string(delta) + ")");
  }

  const std::size_t n = edges.size();
  double tmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        tmin = std::min(tmin, std::abs(det3(edges[i], edges[j], edges[k])));
  report.min_triple_product = tmin;
  if (!(tmin > kDegeneracyEpsilon)) {
    throw Error(ErrorKind::DegenerateCone, "three edges are coplanar (|det| = " +
                                               std::to_string(tmin) + ")");
  }

  // Central projection onto the plane u·x = 1; extreme rays are the strict
  // vertices of the projected convex hull.
  const auto [a, b] = orthonormal_complement(report.witness);
  std::vector<std::array<double, 2>> pts;
  pts.reserve(n);
  for (const auto& w : edges) {
    const double h = dot(w, report.witness.vec());
    pts.push_back({dot(w, a) / h, dot(w, b) / h});
  }
  const auto hull = hull_vertices(pts);
  std::vector<bool> extreme(n, false);
  for (auto i : hull) extreme[i] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!extreme[i]) report.redundant.push_back(i);
  report.accepted = report.redundant.empty();
  return report;
}

PolyhedralCone PolyhedralCone::create(const Vec3& apex, std::span<const Vec3> edges) {
  PolyhedralCone cone;
  cone.report_ = validate_cone(edges);
  if (!cone.report_.accepted) {
    throw Error(ErrorKind::RedundantEdge,
                "edge " + std::to_string(cone.report_.redundant.front()) +
                    " lies in the conical hull of the others");
  }
  cone.apex_ = apex;
  cone.edges_.reserve(edges.size());
  for (const auto& w : edges) cone.edges_.push_back(UnitVector3::from_unit(w));

  const Vec3& u = cone.report_.witness;
  const auto [a, b] = orthonormal_complement(u);
  std::vector<double> angle(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    angle[i] = std::atan2(dot(edges[i], b), dot(edges[i], a));
  }
  cone.order_.resize(edges.size());
  std::iota(cone.order_.begin(), cone.order_.end(), 0);
  std::sort(cone.order_.begin(), cone.order_.end(),
            [&](std::size_t i, std::size_t j) { return angle[i] < angle[j]; });
  return cone;
}

std::array<std::size_t, 2> PolyhedralCone::fan_neighbors(std::size_t edge_index) const {
  const std::size_t n = order_.size();
  const auto it = std::find(order_.begin(), order_.end(), edge_index);
  if (it == order_.end()) throw Error(ErrorKind::InvalidArgument, "edge index out of range");
  const std::size_t pos = static_cast<std::size_t>(it - order_.begin());
  return {order_[(pos + n - 1) % n], order_[(pos + 1) % n]};
}

PolyhedralCone PolyhedralCone::translated(const Vec3& new_apex) const {
  PolyhedralCone c = *this;
  c.apex_ = new_apex;
  return c;
}

TruncatedCone::TruncatedCone(PolyhedralCone c, double radius) : cone(std::move(c)), r0(radius) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) {
    throw Error(ErrorKind::InvalidArgument, "truncation radius must be positive");
  }
}

std::vector<SimplicialCone> simplicial_fan(const PolyhedralCone& cone, std::size_t root) {
  const auto order = cone.angular_order();
  const std::size_t n = order.size();
  if (root >= n) throw Error(ErrorKind::InvalidArgument, "fan root out of range");
  std::vector<SimplicialCone> cells;
  cells.reserve(n - 2);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    SimplicialCone sc{cone.apex(),
                      {cone.edge(order[root]), cone.edge(order[(root + k) % n]),
                       cone.edge(order[(root + k + 1) % n])}};
    if (!(sc.abs_det() > kDegeneracyEpsilon)) {
      throw Error(ErrorKind::DegenerateCone, "degenerate fan cell");
    }
    cells.push_back(sc);
  }
  return cells;
}

Separator separating_direction(const PolyhedralCone& cone, std::size_t edge_index) {
  if (edge_index >= cone.size()) throw Error(ErrorKind::InvalidArgument, "edge index out of range");
  const Vec3& w1 = cone.edge(edge_index);
  const auto [a, b] = orthonormal_complement(w1);

  std::vector<std::array<double, 2>> proj;
  for (std::size_t j = 0; j < cone.size(); ++j) {
    if (j == edge_index) continue;
    proj.push_back({dot(cone.edge(j).vec(), a), dot(cone.edge(j).vec(), b)});
  }
  // On the circle z(phi) = cos(phi) a + sin(phi) b every -z·w_j is a
  // sinusoid; the max-min sits at a single peak or at a pairwise crossing.
  auto value = [&](double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : proj) m = std::min(m, -(c * p[0] + s * p[1]));
    return m;
  };
  double best_phi = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](double phi) {
    const double v = value(phi);
    if (v > best) {
      best = v;
      best_phi = phi;
    }
  };
  for (const auto& p : proj) consider(std::atan2(-p[1], -p[0]));
  for (std::size_t i = 0; i < proj.size(); ++i)
    for (std::size_t j = i + 1; j < proj.size(); ++j) {
      const double dx = proj[i][0] - proj[j][0], dy = proj[i][1] - proj[j][1];
      const double phi = std::atan2(dx, -dy);
      consider(phi);
      consider(phi + kPi);
    }
  if (!(best > 1e-12)) {
    throw Error(ErrorKind::NoSeparator,
                "no plane through edge " + std::to_string(edge_index) +
                    " separates it from the remaining edges");
  }
  const Vec3 z = std::cos(best_phi) * a + std::sin(best_phi) * b;
  return {UnitVector3::normalize(z), best};
}

bool contains(const PolyhedralCone& cone, const Vec3& x) {
  const Vec3 y = x - cone.apex();
  const auto order = cone.angular_order();
  const std::size_t n = order.size();
  const Vec3& w0 = cone.edge(order[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Vec3& wa = cone.edge(order[k]);
    const Vec3& wb = cone.edge(order[k + 1]);
    const auto c = solve_columns(w0, wa, wb, y);
    if (!c) continue;
    // Coefficients opposite a true boundary face must be strictly positive;
    // those opposite an internal fan diagonal may vanish.
    const bool first = (k == 1), last = (k + 2 == n);
    const bool ok0 = c->x > 0.0;
    const bool oka = last ? c->y > 0.0 : c->y >= 0.0;
    const bool okb = first ? c->z > 0.0 : c->z >= 0.0;
    if (ok0 && oka && okb) return true;
  }
  return false;
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  auto arc = [](const Vec3& p, const Vec3& q) { return std::atan2(norm(cross(p, q)), dot(p, q)); };
  const double la = arc(b, c), lb = arc(c, a), lc = arc(a, b);
  const double s = 0.5 * (la + lb + lc);
  const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - la)) * std::tan(0.5 * (s - lb)) *
                   std::tan(0.5 * (s - lc));
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

SphericalPolygon spherical_patch(const PolyhedralCone& cone) {
  SphericalPolygon poly;
  const auto order = cone.angular_order();
  const std::size_t n = order.size();
  for (auto i : order) poly.vertices.push_back(cone.edge(i));
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(std::abs(det3(poly.vertices[0], poly.vertices[k], poly.vertices[k + 1])) >
          kDegeneracyEpsilon)) {
      throw Error(ErrorKind::DegenerateCone, "degenerate spherical cell");
    }
    poly.cells.push_back({0, k, k + 1});
    const double area =
        spherical_triangle_area(poly.vertices[0], poly.vertices[k], poly.vertices[k + 1]);
    poly.cell_solid_angles.push_back(area);
    poly.solid_angle += area;
  }
  return poly;
}

}  // namespace cornerem
