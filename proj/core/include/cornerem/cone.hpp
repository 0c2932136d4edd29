// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Strictly convex polyhedral cones K = {x0 + sum c_j w_j : c_j > 0}, their
// truncations K ∩ B_r0(x0), and the geometric primitives built on them:
// simplicial fans, separating planes through an edge, and the spherical
// polygon K ∩ S^2.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cornerem/linalg.hpp"

namespace cornerem {

// Triple products below this magnitude are treated as coplanar.
inline constexpr double kDegeneracyEpsilon = 1e-9;

struct ConvexityReport {
  double delta = 0.0;              // max_u min_j u·w_j
  UnitVector3 witness;             // the maximizing u
  double min_triple_product = 0.0; // min over i<j<k of |det[w_i w_j w_k]|
  std::vector<std::size_t> redundant;  // edges lying in the hull of the others
  bool accepted = false;
};

// Checks pointedness and non-degeneracy of a set of unit edge directions.
// Throws TooFewEdges, NotStrictlyConvex or DegenerateCone; redundant edges
// are reported (accepted == false) but do not throw here.
ConvexityReport validate_cone(std::span<const Vec3> edges);

struct SimplicialCone {
  Vec3 apex;
  std::array<UnitVector3, 3> edges;

  double abs_det() const { return std::abs(det3(edges[0], edges[1], edges[2])); }
};

class PolyhedralCone {
 public:
  // Validates and builds a cone. Edges must be unit vectors (within 1e-12 on
  // the squared norm); throws the validate_cone errors plus RedundantEdge.
  static PolyhedralCone create(const Vec3& apex, std::span<const Vec3> edges);
  static PolyhedralCone create(const Vec3& apex, std::initializer_list<Vec3> edges) {
    return create(apex, std::span<const Vec3>(edges.begin(), edges.size()));
  }

  const Vec3& apex() const { return apex_; }
  std::size_t size() const { return edges_.size(); }
  const UnitVector3& edge(std::size_t i) const { return edges_.at(i); }
  std::span<const UnitVector3> edges() const { return edges_; }

  // Edge indices sorted counter-clockwise around the pointedness witness.
  std::span<const std::size_t> angular_order() const { return order_; }
  const ConvexityReport& report() const { return report_; }

  // The two edges adjacent to `edge_index` on the cross-section polygon.
  std::array<std::size_t, 2> fan_neighbors(std::size_t edge_index) const;

  PolyhedralCone translated(const Vec3& new_apex) const;

 private:
  PolyhedralCone() = default;

  Vec3 apex_;
  std::vector<UnitVector3> edges_;
  std::vector<std::size_t> order_;
  ConvexityReport report_;
};

struct TruncatedCone {
  PolyhedralCone cone;
  double r0;

  TruncatedCone(PolyhedralCone c, double radius);
};

// Fan split rooted at the edge with angular position `root` (an index into
// angular_order()). Produces n - 2 interior-disjoint simplicial cones.
std::vector<SimplicialCone> simplicial_fan(const PolyhedralCone& cone, std::size_t root = 0);

struct Separator {
  UnitVector3 z;
  double kappa;
};

// Finds z ⊥ w_edge maximizing kappa = -max_{j != edge} z·w_j. Throws
// NoSeparator when kappa is not positive.
Separator separating_direction(const PolyhedralCone& cone, std::size_t edge_index);

// Open-cone membership (boundary points are outside).
bool contains(const PolyhedralCone& cone, const Vec3& x);

struct SphericalPolygon {
  std::vector<UnitVector3> vertices;            // angular order
  std::vector<std::array<std::size_t, 3>> cells;  // fan triangles, indices into vertices
  std::vector<double> cell_solid_angles;
  double solid_angle = 0.0;
};

SphericalPolygon spherical_patch(const PolyhedralCone& cone);

// Area of the geodesic triangle with unit vertices a, b, c (l'Huilier).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace cornerem
