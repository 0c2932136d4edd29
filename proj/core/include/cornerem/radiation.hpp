// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Fields radiated by compactly supported current pairs (J1, J2) for
//
//   curl E - iωμ0 H = J1,   curl H + iωε0 E = J2,
//
// with outgoing (Silver–Müller) behaviour at infinity. With the outgoing
// kernel Φ(x, y) = e^{ik|x-y|} / (4π|x-y|) and the potentials
// F1 = ∫ Φ J1, A2 = ∫ Φ J2,
//
//   E = curl F1 + iωμ0 (A2 + ∇∇·A2 / k²),
//   H = curl A2 - iωε0 (F1 + ∇∇·F1 / k²).
//
// Far-field patterns follow from Φ ~ e^{ik|x|}/(4π|x|) e^{-ik x̂·y}:
//
//   E∞ = (1/4π) ∫ e^{-ik x̂·y} [ik x̂×J1 + iωμ0 (J2 - x̂(x̂·J2))],
//   H∞ = (1/4π) ∫ e^{-ik x̂·y} [ik x̂×J2 - iωε0 (J1 - x̂(x̂·J1))],
//
// so that H∞ = x̂ × E∞ / η with η = sqrt(μ0/ε0).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cornerem/cone.hpp"
#include "cornerem/fields.hpp"
#include "cornerem/linalg.hpp"
#include "cornerem/medium.hpp"
#include "cornerem/quadrature.hpp"
#include "cornerem/cone_integrals.hpp"

namespace cornerem {

struct Ball {
  Vec3 center;
  double radius;
};

struct Box {
  Vec3 lo;
  Vec3 hi;
};

// Convex hull of a vertex list in which every vertex is extreme.
class ConvexPolyhedron {
 public:
  struct Facet {
    Vec3 normal;     // outward unit normal
    double offset;   // normal·x = offset on the facet plane
    std::vector<std::size_t> vertices;  // counter-clockwise seen from outside
  };

  // Throws InvalidArgument for fewer than four vertices, a flat point set or
  // a vertex that is not extreme.
  static ConvexPolyhedron create(std::vector<Vec3> vertices);

  static ConvexPolyhedron cube(const Vec3& center, double side);
  static ConvexPolyhedron regular_tetrahedron(const Vec3& centroid, double edge);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::array<Vec3, 4>>& tetrahedra() const { return tets_; }
  Vec3 centroid() const;
  double volume() const { return volume_; }
  double diameter() const;

  // Closed membership with an absolute tolerance.
  bool contains(const Vec3& x, double tol = 0.0) const;
  std::vector<std::size_t> neighbors(std::size_t vertex) const;
  // Tangent cone at a vertex, spanned by the incident hull edges.
  PolyhedralCone vertex_cone(std::size_t vertex) const;

 private:
  ConvexPolyhedron() = default;

  std::vector<Vec3> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::array<Vec3, 4>> tets_;
  double volume_ = 0.0;
};

using Support = std::variant<Ball, Box, ConvexPolyhedron, TruncatedCone>;

std::string support_kind(const Support& s);
double support_volume(const Support& s);
double support_diameter(const Support& s);
Vec3 support_center(const Support& s);
// Closed membership; tol is absolute.
bool support_contains(const Support& s, const Vec3& x, double tol = 0.0);

struct SourceQuadratureOptions {
  double points_per_wavelength = 10.0;  // across the support diameter
  int min_order = 10;
  int max_order = 48;
  RadialAngularRule cone_rule{8, 1, 8};
};

PointRule support_rule(const Support& s, double k, const SourceQuadratureOptions& options = {});

// Corner of the support in the sense of the admissible class: a vertex with
// its tangent cone, a Lipschitz flag and a declared path to infinity.
struct Corner {
  Vec3 apex;
  std::optional<PolyhedralCone> cone;
  bool lipschitz_support = true;
  bool path_to_infinity = false;  // declared by the scene author, never computed
  std::optional<double> holder_alpha;

  bool admissible() const { return lipschitz_support && path_to_infinity && cone.has_value(); }
};

// Every vertex of a convex polyhedron or box is a corner; its complement is
// connected, so the path flag is set.
std::vector<Corner> support_corners(const Support& s);

struct CurrentSource {
  VectorFn j1;  // Faraday-side density; empty means zero
  VectorFn j2;  // Ampère-side density; empty means zero
  Support support;
  std::vector<Corner> corners;
  std::string label;

  static CurrentSource constant(Support support, const CVec3& j1, const CVec3& j2,
                                std::string label = "constant");
  static CurrentSource zero(Support support);

  // Densities extended by zero outside the closed support.
  CVec3 J1(const Vec3& x) const;
  CVec3 J2(const Vec3& x) const;
  bool is_zero() const { return !j1 && !j2; }
};

struct SphereGrid {
  std::vector<UnitVector3> directions;
  std::vector<double> theta;
  std::vector<double> phi;

  std::size_t size() const { return directions.size(); }
};

// θ_i = (i + ½)π/n_theta, φ_j = 2πj/n_phi, plus ±e1, ±e2, ±e3 when requested.
SphereGrid sphere_grid(int n_theta = 21, int n_phi = 42, bool axis_points = true);

struct FarFieldPattern {
  SphereGrid grid;
  std::vector<CVec3> e_inf;
  std::vector<CVec3> h_inf;
  // A-priori bound (1/4π) ∫ (k|J1| + ωμ0|J2|) on |E∞|; sets the rounding
  // scale when the pattern itself is radiationless.
  double magnitude_bound = 0.0;

  double sup_e() const;
  double sup_h() const;
};

struct NearField {
  CVec3 E;
  CVec3 H;
};

// Samples a source once on its support rule and evaluates its fields.
class RadiationEvaluator {
 public:
  RadiationEvaluator(const CurrentSource& source, const Medium& medium,
                     const SourceQuadratureOptions& options = {});

  // Throws PointInSupport unless x is strictly outside the closed support.
  NearField near_field(const Vec3& x) const;
  std::pair<CVec3, CVec3> far_field_at(const Vec3& xhat) const;
  FarFieldPattern far_field(const SphereGrid& grid) const;

  const Medium& medium() const { return medium_; }
  std::size_t size() const { return points_.size(); }
  double max_density() const { return max_density_; }
  double volume() const { return volume_; }
  // 1e-3 max|J| vol k / (4π): the level below which a pattern counts as zero.
  double quadrature_floor() const;

 private:
  Medium medium_;
  Support support_;
  double tol_ = 0.0;
  std::vector<Vec3> points_;
  std::vector<CVec3> j1w_, j2w_;  // weight-premultiplied densities
  bool has_j1_ = false, has_j2_ = false;
  double max_density_ = 0.0;
  double volume_ = 0.0;
  double magnitude_bound_ = 0.0;
};

NearField near_field(const CurrentSource& source, const Medium& medium, const Vec3& x,
                     const SourceQuadratureOptions& options = {});
FarFieldPattern far_field(const CurrentSource& source, const Medium& medium,
                          const SphereGrid& grid, const SourceQuadratureOptions& options = {});

enum class DipoleKind {
  electric,  // J2 = m δ(y - y0)
  magnetic,  // J1 = m δ(y - y0)
};

FarFieldPattern dipole_far_field_analytic(const CVec3& moment, const Vec3& position,
                                          const Medium& medium, const SphereGrid& grid,
                                          DipoleKind kind = DipoleKind::electric);
NearField dipole_near_field(const CVec3& moment, const Vec3& position, const Medium& medium,
                            const Vec3& x, DipoleKind kind = DipoleKind::electric);

// max over nodes of |E∞ᵃ - E∞ᵇ|. Throws GridMismatch.
double far_field_difference(const FarFieldPattern& a, const FarFieldPattern& b);

// Worst residuals over the grid, |x̂·E∞|, η|x̂·H∞|, |ηH∞ - x̂×E∞| and
// |E∞ + η x̂×H∞|, each divided by max(sup|E∞|, η sup|H∞|, magnitude_bound).
struct FarFieldRelations {
  double tangential_e = 0.0;
  double tangential_h = 0.0;
  double h_from_e = 0.0;
  double e_from_h = 0.0;
  double scale = 0.0;

  double worst() const;
};
FarFieldRelations far_field_relations(const FarFieldPattern& pattern, const Medium& medium);

// J1 = curl Ψ1 - iωμ0 Ψ2, J2 = curl Ψ2 + iωε0 Ψ1 on the potentials' common
// ball. Throws UnsupportedPotential when a curl is not available.
CurrentSource nonradiating_from_potentials(const Potential& psi1, const Potential& psi2,
                                           const Medium& medium);

// J1 = (i/(ωε0)) (curl curl M + c0 M), J2 = 0 for the bump M. This is the
// radiationless pair with Ψ2 = M, Ψ1 = (i/(ωε0)) curl M exactly when c0 = -k².
CurrentSource curl_curl_source(const Vec3& center, double radius, int m, const CVec3& v,
                               double c0, const Medium& medium);

// sup |E∞| of the reference radiationless source Ψ1 = bump·v scaled to peak
// density `magnitude`, on the given ball and grid: the measured floor.
double nonradiating_floor(const Medium& medium, const SphereGrid& grid, const Ball& ball,
                          double magnitude, const SourceQuadratureOptions& options = {});

}  // namespace cornerem
