// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cornerem/error.hpp"

namespace cornerem {
namespace {

Rule1D compute_gauss_legendre(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

const Rule1D& cached_gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace

const Rule1D& gauss_legendre_reference(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "reference Gauss–Legendre order must be >= 2");
  return cached_gauss_legendre(n);
}

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss–Legendre order must be >= 1");
  if (n == 1) return {{0.5 * (a + b)}, {b - a}};
  Rule1D r = cached_gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

void PointRule::append(const PointRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

PointRule triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c, int order) {
  const Rule1D g = gauss_legendre(order, 0.0, 1.0);
  const double area2 = norm(cross(b - a, c - a));
  PointRule r;
  r.points.reserve(order * order);
  r.weights.reserve(order * order);
  for (int i = 0; i < order; ++i) {
    const double u = g.nodes[i];
    for (int j = 0; j < order; ++j) {
      const double v = g.nodes[j];
      r.points.push_back(a + u * (b - a) + (u * v) * (c - b));
      r.weights.push_back(g.weights[i] * g.weights[j] * u * area2);
    }
  }
  return r;
}

PointRule graded_triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c, int order, int levels) {
  if (levels <= 0) return triangle_rule(a, b, c, order);
  const Rule1D g = gauss_legendre(order, 0.0, 1.0);
  const double area2 = norm(cross(b - a, c - a));
  PointRule r;
  r.points.reserve(static_cast<std::size_t>(order) * order * (levels + 1));
  r.weights.reserve(r.points.capacity());
  for (int l = levels; l >= 0; --l) {
    const double lo = l == levels ? 0.0 : std::ldexp(1.0, -(l + 1));
    const double hi = std::ldexp(1.0, -l);
    for (int i = 0; i < order; ++i) {
      const double u = lo + (hi - lo) * g.nodes[i];
      const double wu = (hi - lo) * g.weights[i];
      for (int j = 0; j < order; ++j) {
        const double v = g.nodes[j];
        r.points.push_back(a + u * (b - a) + (u * v) * (c - b));
        r.weights.push_back(wu * g.weights[j] * u * area2);
      }
    }
  }
  return r;
}

PointRule tetrahedron_rule(const std::array<Vec3, 4>& v, int order) {
  const Rule1D g = gauss_legendre(order, 0.0, 1.0);
  const double vol6 = std::abs(det3(v[1] - v[0], v[2] - v[0], v[3] - v[0]));
  PointRule r;
  const std::size_t n3 = static_cast<std::size_t>(order) * order * order;
  r.points.reserve(n3);
  r.weights.reserve(n3);
  for (int i = 0; i < order; ++i) {
    const double u = g.nodes[i];
    for (int j = 0; j < order; ++j) {
      const double s = g.nodes[j];
      for (int l = 0; l < order; ++l) {
        const double t = g.nodes[l];
        r.points.push_back(v[0] + u * (v[1] - v[0]) + (u * s) * (v[2] - v[1]) +
                           (u * s * t) * (v[3] - v[2]));
        r.weights.push_back(g.weights[i] * g.weights[j] * g.weights[l] * u * u * s * vol6);
      }
    }
  }
  return r;
}

PointRule box_rule(const Vec3& lo, const Vec3& hi, std::array<int, 3> order) {
  const Rule1D gx = gauss_legendre(order[0], lo.x, hi.x);
  const Rule1D gy = gauss_legendre(order[1], lo.y, hi.y);
  const Rule1D gz = gauss_legendre(order[2], lo.z, hi.z);
  PointRule r;
  for (int i = 0; i < order[0]; ++i)
    for (int j = 0; j < order[1]; ++j)
      for (int l = 0; l < order[2]; ++l) {
        r.points.push_back({gx.nodes[i], gy.nodes[j], gz.nodes[l]});
        r.weights.push_back(gx.weights[i] * gy.weights[j] * gz.weights[l]);
      }
  return r;
}

PointRule ball_rule(const Vec3& center, double radius, int n_radial, int n_polar,
                    int n_azimuth) {
  const Rule1D gr = gauss_legendre(n_radial, 0.0, radius);
  const Rule1D gc = gauss_legendre(n_polar, -1.0, 1.0);
  PointRule r;
  const double dphi = 2.0 * kPi / n_azimuth;
  for (int i = 0; i < n_radial; ++i) {
    const double rad = gr.nodes[i];
    for (int j = 0; j < n_polar; ++j) {
      const double ct = gc.nodes[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int l = 0; l < n_azimuth; ++l) {
        const double phi = dphi * l;
        r.points.push_back(center + rad * Vec3{st * std::cos(phi), st * std::sin(phi), ct});
        r.weights.push_back(gr.weights[i] * rad * rad * gc.weights[j] * dphi);
      }
    }
  }
  return r;
}

std::vector<std::array<Vec3, 3>> subdivide_triangle(const Vec3& a, const Vec3& b, const Vec3& c,
                                                    int level) {
  std::vector<std::array<Vec3, 3>> tris{{a, b, c}};
  for (int l = 0; l < level; ++l) {
    std::vector<std::array<Vec3, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const Vec3 ab = 0.5 * (t[0] + t[1]), bc = 0.5 * (t[1] + t[2]), ca = 0.5 * (t[2] + t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  return tris;
}

}  // namespace cornerem
