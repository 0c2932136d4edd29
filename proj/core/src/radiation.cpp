// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/radiation.hpp"

#include <algorithm>
#include <cmath>

#include "cornerem/error.hpp"
#include "cornerem/parallel.hpp"

namespace cornerem {
namespace {

constexpr cplx kI{0.0, 1.0};

double point_scale(const std::vector<Vec3>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, norm(p));
  return std::max(s, 1.0);
}

// Closed membership in a polyhedral cone through its face half-spaces.
bool closed_cone_contains(const PolyhedralCone& cone, const Vec3& x, double tol) {
  const Vec3 y = x - cone.apex();
  const auto order = cone.angular_order();
  const Vec3& u = cone.report().witness;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 nf = cross(cone.edge(order[i]).vec(), cone.edge(order[(i + 1) % n]).vec());
    if (dot(nf, u) < 0.0) nf = -nf;
    nf = nf / norm(nf);
    if (dot(nf, y) < -tol) return false;
  }
  return true;
}

int order_for(double k, double diameter, const SourceQuadratureOptions& o) {
  const double want = std::ceil(o.points_per_wavelength * k * diameter / (2.0 * kPi));
  return std::clamp(std::max(o.min_order, static_cast<int>(want)), 1, std::max(o.max_order, 1));
}

}  // namespace

ConvexPolyhedron ConvexPolyhedron::create(std::vector<Vec3> vertices) {
  const std::size_t n = vertices.size();
  if (n < 4) throw Error(ErrorKind::InvalidArgument, "a polyhedron needs at least four vertices");
  const double scale = point_scale(vertices);
  const double tol = 1e-10 * scale;

  ConvexPolyhedron poly;
  poly.vertices_ = std::move(vertices);
  const auto& v = poly.vertices_;

  // Supporting planes through every non-collinear triple.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Vec3 nrm = cross(v[b] - v[a], v[c] - v[a]);
        const double len = norm(nrm);
        if (len <= 1e-12 * scale * scale) continue;
        nrm = nrm / len;
        double off = dot(nrm, v[a]);
        bool above = false, below = false;
        for (std::size_t q = 0; q < n; ++q) {
          const double h = dot(nrm, v[q]) - off;
          if (h > tol) above = true;
          if (h < -tol) below = true;
        }
        if (above && below) continue;
        if (above) {
          nrm = -nrm;
          off = -off;
        }
        const bool seen = std::any_of(poly.facets_.begin(), poly.facets_.end(), [&](const Facet& f) {
          return norm(f.normal - nrm) < 1e-9 && std::abs(f.offset - off) < 1e-9 * scale;
        });
        if (!seen) poly.facets_.push_back({nrm, off, {}});
      }
  if (poly.facets_.size() < 4) {
    throw Error(ErrorKind::InvalidArgument, "polyhedron vertices are coplanar");
  }

  std::vector<int> incidence(n, 0);
  for (auto& f : poly.facets_) {
    Vec3 center{};
    for (std::size_t q = 0; q < n; ++q) {
      if (std::abs(dot(f.normal, v[q]) - f.offset) <= tol) {
        f.vertices.push_back(q);
        center += v[q];
        ++incidence[q];
      }
    }
    center = center / static_cast<double>(f.vertices.size());
    // Counter-clockwise around the outward normal.
    Vec3 e1 = v[f.vertices[0]] - center;
    e1 = e1 / norm(e1);
    const Vec3 e2 = cross(f.normal, e1);
    std::vector<std::pair<double, std::size_t>> ang;
    for (std::size_t q : f.vertices) {
      const Vec3 r = v[q] - center;
      ang.push_back({std::atan2(dot(r, e2), dot(r, e1)), q});
    }
    std::sort(ang.begin(), ang.end());
    for (std::size_t i = 0; i < ang.size(); ++i) f.vertices[i] = ang[i].second;
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (incidence[q] < 3) {
      throw Error(ErrorKind::InvalidArgument,
                  "vertex " + std::to_string(q) + " is not an extreme point");
    }
  }

  const Vec3 c = poly.centroid();
  for (const auto& f : poly.facets_) {
    for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
      poly.tets_.push_back({c, v[f.vertices[0]], v[f.vertices[i]], v[f.vertices[i + 1]]});
      const auto& t = poly.tets_.back();
      poly.volume_ += std::abs(det3(t[1] - t[0], t[2] - t[0], t[3] - t[0])) / 6.0;
    }
  }
  return poly;
}

ConvexPolyhedron ConvexPolyhedron::cube(const Vec3& center, double side) {
  if (!(side > 0.0)) throw Error(ErrorKind::InvalidArgument, "cube side must be positive");
  std::vector<Vec3> v;
  const double h = 0.5 * side;
  for (int i = 0; i < 8; ++i) {
    v.push_back(center + Vec3{(i & 1) ? h : -h, (i & 2) ? h : -h, (i & 4) ? h : -h});
  }
  return create(std::move(v));
}

ConvexPolyhedron ConvexPolyhedron::regular_tetrahedron(const Vec3& centroid, double edge) {
  if (!(edge > 0.0)) throw Error(ErrorKind::InvalidArgument, "edge length must be positive");
  const double a = edge / (2.0 * std::sqrt(2.0));
  return create({centroid + a * Vec3{1, 1, 1}, centroid + a * Vec3{1, -1, -1},
                 centroid + a * Vec3{-1, 1, -1}, centroid + a * Vec3{-1, -1, 1}});
}

Vec3 ConvexPolyhedron::centroid() const {
  Vec3 c{};
  for (const auto& p : vertices_) c += p;
  return c / static_cast<double>(vertices_.size());
}

double ConvexPolyhedron::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      d = std::max(d, norm(vertices_[i] - vertices_[j]));
  return d;
}

bool ConvexPolyhedron::contains(const Vec3& x, double tol) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return dot(f.normal, x) - f.offset <= tol; });
}

std::vector<std::size_t> ConvexPolyhedron::neighbors(std::size_t vertex) const {
  if (vertex >= vertices_.size()) throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < vertices_.size(); ++u) {
    if (u == vertex) continue;
    int shared = 0;
    for (const auto& f : facets_) {
      const bool has_v = std::find(f.vertices.begin(), f.vertices.end(), vertex) != f.vertices.end();
      const bool has_u = std::find(f.vertices.begin(), f.vertices.end(), u) != f.vertices.end();
      if (has_v && has_u) ++shared;
    }
    if (shared >= 2) out.push_back(u);
  }
  return out;
}

PolyhedralCone ConvexPolyhedron::vertex_cone(std::size_t vertex) const {
  std::vector<Vec3> edges;
  for (std::size_t u : neighbors(vertex)) {
    const Vec3 e = vertices_[u] - vertices_[vertex];
    edges.push_back(e / norm(e));
  }
  return PolyhedralCone::create(vertices_[vertex], edges);
}

std::string support_kind(const Support& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return "ball";
        else if constexpr (std::is_same_v<T, Box>) return "box";
        else if constexpr (std::is_same_v<T, ConvexPolyhedron>) return "convex-polyhedron";
        else return "truncated-cone";
      },
      s);
}

double support_volume(const Support& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return 4.0 / 3.0 * kPi * v.radius * v.radius * v.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          const Vec3 d = v.hi - v.lo;
          return d.x * d.y * d.z;
        } else if constexpr (std::is_same_v<T, ConvexPolyhedron>) {
          return v.volume();
        } else {
          return spherical_patch(v.cone).solid_angle * v.r0 * v.r0 * v.r0 / 3.0;
        }
      },
      s);
}

double support_diameter(const Support& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return 2.0 * v.radius;
        else if constexpr (std::is_same_v<T, Box>) return norm(v.hi - v.lo);
        else if constexpr (std::is_same_v<T, ConvexPolyhedron>) return v.diameter();
        else return 2.0 * v.r0;
      },
      s);
}

Vec3 support_center(const Support& s) {
  return std::visit(
      [](const auto& v) -> Vec3 {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return v.center;
        else if constexpr (std::is_same_v<T, Box>) return 0.5 * (v.lo + v.hi);
        else if constexpr (std::is_same_v<T, ConvexPolyhedron>) return v.centroid();
        else return v.cone.apex();
      },
      s);
}

bool support_contains(const Support& s, const Vec3& x, double tol) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return norm(x - v.center) <= v.radius + tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          for (int i = 0; i < 3; ++i)
            if (x[i] < v.lo[i] - tol || x[i] > v.hi[i] + tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ConvexPolyhedron>) {
          return v.contains(x, tol);
        } else {
          return norm(x - v.cone.apex()) <= v.r0 + tol && closed_cone_contains(v.cone, x, tol);
        }
      },
      s);
}

PointRule support_rule(const Support& s, double k, const SourceQuadratureOptions& o) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "wavenumber must be positive");
  return std::visit(
      [&](const auto& v) -> PointRule {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          if (!(v.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
          const int n = order_for(k, 2.0 * v.radius, o);
          return ball_rule(v.center, v.radius, n, n, 2 * n);
        } else if constexpr (std::is_same_v<T, Box>) {
          std::array<int, 3> n{};
          for (int i = 0; i < 3; ++i) {
            if (!(v.hi[i] > v.lo[i])) throw Error(ErrorKind::InvalidArgument, "empty box");
            n[i] = order_for(k, v.hi[i] - v.lo[i], o);
          }
          return box_rule(v.lo, v.hi, n);
        } else if constexpr (std::is_same_v<T, ConvexPolyhedron>) {
          const int n = order_for(k, v.diameter(), o);
          PointRule r;
          for (const auto& t : v.tetrahedra()) r.append(tetrahedron_rule(t, n));
          return r;
        } else {
          RadialAngularRule rule = o.cone_rule;
          rule.radial_order = std::max(rule.radial_order, order_for(k, v.r0, o) / 4);
          return truncated_cone_rule(v, rule);
        }
      },
      s);
}

std::vector<Corner> support_corners(const Support& s) {
  std::vector<Corner> out;
  auto from_poly = [&](const ConvexPolyhedron& p) {
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
      out.push_back({p.vertices()[i], p.vertex_cone(i), true, true, std::nullopt});
    }
  };
  if (const auto* p = std::get_if<ConvexPolyhedron>(&s)) {
    from_poly(*p);
  } else if (const auto* b = std::get_if<Box>(&s)) {
    std::vector<Vec3> v;
    for (int i = 0; i < 8; ++i) {
      v.push_back({(i & 1) ? b->hi.x : b->lo.x, (i & 2) ? b->hi.y : b->lo.y,
                   (i & 4) ? b->hi.z : b->lo.z});
    }
    from_poly(ConvexPolyhedron::create(std::move(v)));
  } else if (const auto* c = std::get_if<TruncatedCone>(&s)) {
    out.push_back({c->cone.apex(), c->cone, true, true, std::nullopt});
  }
  return out;
}

CurrentSource CurrentSource::constant(Support support, const CVec3& j1, const CVec3& j2,
                                      std::string label) {
  CurrentSource src;
  if (j1 != CVec3{}) src.j1 = [j1](const Vec3&) { return j1; };
  if (j2 != CVec3{}) src.j2 = [j2](const Vec3&) { return j2; };
  src.corners = support_corners(support);
  src.support = std::move(support);
  src.label = std::move(label);
  return src;
}

CurrentSource CurrentSource::zero(Support support) {
  CurrentSource src;
  src.support = std::move(support);
  src.label = "zero";
  return src;
}

CVec3 CurrentSource::J1(const Vec3& x) const {
  return j1 && support_contains(support, x) ? j1(x) : CVec3{};
}
CVec3 CurrentSource::J2(const Vec3& x) const {
  return j2 && support_contains(support, x) ? j2(x) : CVec3{};
}

SphereGrid sphere_grid(int n_theta, int n_phi, bool axis_points) {
  if (n_theta < 1 || n_phi < 1) throw Error(ErrorKind::InvalidArgument, "empty sphere grid");
  SphereGrid g;
  for (int i = 0; i < n_theta; ++i) {
    const double th = (i + 0.5) * kPi / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * kPi * j / n_phi;
      g.theta.push_back(th);
      g.phi.push_back(ph);
      g.directions.push_back(UnitVector3::normalize(
          {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
    }
  }
  if (axis_points) {
    const std::array<std::array<double, 2>, 6> tp{{{kPi / 2, 0.0},
                                                   {kPi / 2, kPi},
                                                   {kPi / 2, kPi / 2},
                                                   {kPi / 2, 3 * kPi / 2},
                                                   {0.0, 0.0},
                                                   {kPi, 0.0}}};
    const std::array<Vec3, 6> axes{Vec3{1, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, 1, 0},
                                   Vec3{0, -1, 0}, Vec3{0, 0, 1}, Vec3{0, 0, -1}};
    for (int a = 0; a < 6; ++a) {
      g.theta.push_back(tp[a][0]);
      g.phi.push_back(tp[a][1]);
      g.directions.push_back(UnitVector3::from_unit(axes[a]));
    }
  }
  return g;
}

double FarFieldPattern::sup_e() const {
  double s = 0.0;
  for (const auto& e : e_inf) s = std::max(s, norm(e));
  return s;
}

double FarFieldPattern::sup_h() const {
  double s = 0.0;
  for (const auto& h : h_inf) s = std::max(s, norm(h));
  return s;
}

RadiationEvaluator::RadiationEvaluator(const CurrentSource& source, const Medium& medium,
                                       const SourceQuadratureOptions& options)
    : medium_(medium), support_(source.support) {
  tol_ = 1e-12 * std::max(1.0, support_diameter(support_));
  volume_ = support_volume(support_);
  if (source.is_zero()) return;
  const PointRule rule = support_rule(support_, medium_.k(), options);
  has_j1_ = static_cast<bool>(source.j1);
  has_j2_ = static_cast<bool>(source.j2);
  const std::size_t n = rule.size();
  points_ = rule.points;
  j1w_.assign(has_j1_ ? n : 0, CVec3{});
  j2w_.assign(has_j2_ ? n : 0, CVec3{});
  std::vector<double> peak(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const Vec3& y = rule.points[i];
    double m = 0.0;
    if (has_j1_) {
      const CVec3 j = source.j1(y);
      m = std::max(m, norm(j));
      j1w_[i] = j * rule.weights[i];
    }
    if (has_j2_) {
      const CVec3 j = source.j2(y);
      m = std::max(m, norm(j));
      j2w_[i] = j * rule.weights[i];
    }
    peak[i] = m;
  });
  for (double m : peak) max_density_ = std::max(max_density_, m);
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (has_j1_) b += medium_.k() * norm(j1w_[i]);
    if (has_j2_) b += medium_.omega * medium_.mu0 * norm(j2w_[i]);
  }
  magnitude_bound_ = b / (4.0 * kPi);
}

double RadiationEvaluator::quadrature_floor() const {
  return 1e-3 * max_density_ * volume_ * medium_.k() / (4.0 * kPi);
}

NearField RadiationEvaluator::near_field(const Vec3& x) const {
  if (support_contains(support_, x, tol_)) {
    throw Error(ErrorKind::PointInSupport, "near-field point lies in the closed support");
  }
  const double k = medium_.k();
  const double k2 = k * k;
  const cplx iwmu = kI * medium_.omega * medium_.mu0;
  const cplx iweps = kI * medium_.omega * medium_.eps0;
  CVec3 E{}, H{};
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Vec3 R = x - points_[i];
    const double r = norm(R);
    const Vec3 n = R / r;
    const cplx phi = std::exp(kI * k * r) / (4.0 * kPi * r);
    const cplx a = kI * k - 1.0 / r;
    const cplx g = phi * a;
    const cplx gp = phi * (a * a + 1.0 / (r * r));
    // Hessian of Φ applied to J: g' n(n·J) + (g/r)(J - n(n·J)).
    auto hess = [&](const CVec3& j) {
      const cplx nj = dot(n, j);
      return gp * nj * n + (g / r) * (j - nj * n);
    };
    if (has_j1_) {
      const CVec3& j = j1w_[i];
      E += g * cross(n, j);
      H -= iweps * (phi * j + hess(j) / k2);
    }
    if (has_j2_) {
      const CVec3& j = j2w_[i];
      H += g * cross(n, j);
      E += iwmu * (phi * j + hess(j) / k2);
    }
  }
  return {E, H};
}

std::pair<CVec3, CVec3> RadiationEvaluator::far_field_at(const Vec3& xhat) const {
  const double k = medium_.k();
  CVec3 s1{}, s2{};
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const cplx e = std::exp(-kI * k * dot(xhat, points_[i]));
    if (has_j1_) s1 += e * j1w_[i];
    if (has_j2_) s2 += e * j2w_[i];
  }
  const cplx ik = kI * k;
  const cplx iwmu = kI * medium_.omega * medium_.mu0;
  const cplx iweps = kI * medium_.omega * medium_.eps0;
  const double c = 1.0 / (4.0 * kPi);
  const CVec3 t1 = s1 - dot(xhat, s1) * xhat;
  const CVec3 t2 = s2 - dot(xhat, s2) * xhat;
  return {c * (ik * cross(xhat, s1) + iwmu * t2), c * (ik * cross(xhat, s2) - iweps * t1)};
}

FarFieldPattern RadiationEvaluator::far_field(const SphereGrid& grid) const {
  FarFieldPattern out{grid, std::vector<CVec3>(grid.size()), std::vector<CVec3>(grid.size()),
                      magnitude_bound_};
  parallel_for(grid.size(), [&](std::size_t i) {
    auto [e, h] = far_field_at(grid.directions[i]);
    out.e_inf[i] = e;
    out.h_inf[i] = h;
  });
  return out;
}

NearField near_field(const CurrentSource& source, const Medium& medium, const Vec3& x,
                     const SourceQuadratureOptions& options) {
  return RadiationEvaluator(source, medium, options).near_field(x);
}

FarFieldPattern far_field(const CurrentSource& source, const Medium& medium,
                          const SphereGrid& grid, const SourceQuadratureOptions& options) {
  return RadiationEvaluator(source, medium, options).far_field(grid);
}

FarFieldPattern dipole_far_field_analytic(const CVec3& moment, const Vec3& position,
                                          const Medium& medium, const SphereGrid& grid,
                                          DipoleKind kind) {
  const double k = medium.k();
  const double c = 1.0 / (4.0 * kPi);
  const cplx ik = kI * k;
  const cplx iwmu = kI * medium.omega * medium.mu0;
  const cplx iweps = kI * medium.omega * medium.eps0;
  const double mag = kind == DipoleKind::electric ? medium.omega * medium.mu0 : k;
  FarFieldPattern out{grid, {}, {}, c * mag * norm(moment)};
  for (const auto& d : grid.directions) {
    const Vec3& x = d;
    const cplx ph = c * std::exp(-ik * dot(x, position));
    const CVec3 t = moment - dot(x, moment) * x;
    if (kind == DipoleKind::electric) {
      out.e_inf.push_back(ph * iwmu * t);
      out.h_inf.push_back(ph * ik * cross(x, moment));
    } else {
      out.e_inf.push_back(ph * ik * cross(x, moment));
      out.h_inf.push_back(-ph * iweps * t);
    }
  }
  return out;
}

NearField dipole_near_field(const CVec3& moment, const Vec3& position, const Medium& medium,
                            const Vec3& x, DipoleKind kind) {
  const double k = medium.k();
  const Vec3 R = x - position;
  const double r = norm(R);
  if (!(r > 0.0)) throw Error(ErrorKind::PointInSupport, "field point at the dipole position");
  const Vec3 n = R / r;
  const cplx phi = std::exp(kI * k * r) / (4.0 * kPi * r);
  const cplx a = kI * k - 1.0 / r;
  const cplx g = phi * a;
  const cplx gp = phi * (a * a + 1.0 / (r * r));
  const cplx nm = dot(n, moment);
  const CVec3 hess = gp * nm * n + (g / r) * (moment - nm * n);
  const CVec3 rot = g * cross(n, moment);
  const CVec3 grad_div = phi * moment + hess / (k * k);
  if (kind == DipoleKind::electric) {
    return {kI * medium.omega * medium.mu0 * grad_div, rot};
  }
  return {rot, -kI * medium.omega * medium.eps0 * grad_div};
}

double far_field_difference(const FarFieldPattern& a, const FarFieldPattern& b) {
  if (a.grid.size() != b.grid.size() || a.e_inf.size() != b.e_inf.size()) {
    throw Error(ErrorKind::GridMismatch, "patterns are sampled on different grids");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    if (norm(a.grid.directions[i].vec() - b.grid.directions[i].vec()) > 1e-14) {
      throw Error(ErrorKind::GridMismatch, "grid directions differ at node " + std::to_string(i));
    }
    d = std::max(d, norm(a.e_inf[i] - b.e_inf[i]));
  }
  return d;
}

double FarFieldRelations::worst() const {
  return std::max({tangential_e, tangential_h, h_from_e, e_from_h});
}

FarFieldRelations far_field_relations(const FarFieldPattern& p, const Medium& medium) {
  const double eta = medium.impedance();
  FarFieldRelations r;
  r.scale = std::max({p.sup_e(), eta * p.sup_h(), p.magnitude_bound});
  if (r.scale == 0.0) return r;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    const Vec3& x = p.grid.directions[i];
    const CVec3& e = p.e_inf[i];
    const CVec3& h = p.h_inf[i];
    r.tangential_e = std::max(r.tangential_e, std::abs(dot(x, e)) / r.scale);
    r.tangential_h = std::max(r.tangential_h, eta * std::abs(dot(x, h)) / r.scale);
    r.h_from_e = std::max(r.h_from_e, norm(eta * h - cross(x, e)) / r.scale);
    r.e_from_h = std::max(r.e_from_h, norm(e + eta * cross(x, h)) / r.scale);
  }
  return r;
}

CurrentSource nonradiating_from_potentials(const Potential& psi1, const Potential& psi2,
                                           const Medium& medium) {
  for (const Potential* p : {&psi1, &psi2}) {
    if (!p->is_zero() && !p->has_curl()) {
      throw Error(ErrorKind::UnsupportedPotential, "potential without a closed-form curl");
    }
  }
  if (psi1.is_zero() && psi2.is_zero()) {
    CurrentSource z = CurrentSource::zero(Ball{{0.0, 0.0, 0.0}, 1.0});
    z.label = "nonradiating";
    return z;
  }
  Ball ball;
  if (psi1.is_zero() || psi2.is_zero()) {
    const auto& b = (psi1.is_zero() ? psi2 : psi1).support();
    ball = {b->center, b->radius};
  } else {
    const auto& a = *psi1.support();
    const auto& b = *psi2.support();
    const double d = norm(b.center - a.center);
    if (d + b.radius <= a.radius) {
      ball = {a.center, a.radius};
    } else if (d + a.radius <= b.radius) {
      ball = {b.center, b.radius};
    } else {
      const double r = 0.5 * (d + a.radius + b.radius);
      ball = {a.center + ((r - a.radius) / d) * (b.center - a.center), r};
    }
  }
  const cplx iwmu = kI * medium.omega * medium.mu0;
  const cplx iweps = kI * medium.omega * medium.eps0;
  CurrentSource src;
  src.support = ball;
  src.label = "nonradiating";
  src.j1 = [psi1, psi2, iwmu](const Vec3& x) { return psi1.curl(x) - iwmu * psi2.value(x); };
  src.j2 = [psi1, psi2, iweps](const Vec3& x) { return psi2.curl(x) + iweps * psi1.value(x); };
  return src;
}

CurrentSource curl_curl_source(const Vec3& center, double radius, int m, const CVec3& v,
                               double c0, const Medium& medium) {
  if (!(radius > 0.0) || m < 3) {
    throw Error(ErrorKind::InvalidArgument, "bump needs a positive radius and m >= 3");
  }
  const cplx scale = kI / (medium.omega * medium.eps0);
  CurrentSource src;
  src.support = Ball{center, radius};
  src.label = "curl-curl";
  src.j1 = [=](const Vec3& x) {
    const Vec3 y = x - center;
    return scale * (curl_curl_bump(y, radius, m, v) + c0 * bump_derivatives(y, radius, m).f * v);
  };
  return src;
}

double nonradiating_floor(const Medium& medium, const SphereGrid& grid, const Ball& ball,
                          double magnitude, const SourceQuadratureOptions& options) {
  const Potential psi = Potential::bump(ball.center, ball.radius, 4, CVec3{0.0, 0.0, 1.0});
  const RadiationEvaluator ev(nonradiating_from_potentials(psi, Potential::zero(), medium), medium,
                              options);
  if (ev.max_density() == 0.0) return 0.0;
  return ev.far_field(grid).sup_e() * magnitude / ev.max_density();
}

}  // namespace cornerem
