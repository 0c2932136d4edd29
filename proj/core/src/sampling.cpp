// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cornerem/error.hpp"

namespace cornerem {

double Rng::log_uniform(double a, double b) {
  return std::exp(uniform(std::log(a), std::log(b)));
}

double Rng::normal() {
  // Box–Muller; the second variate is discarded to keep the stream simple.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

UnitVector3 Rng::direction() {
  for (;;) {
    const Vec3 v{normal(), normal(), normal()};
    if (norm(v) > 1e-8) return UnitVector3::normalize(v);
  }
}

Vec3 Rng::rotate_from_pole(const Vec3& v, const UnitVector3& axis, double spin) const {
  const double c = std::cos(spin), s = std::sin(spin);
  const Vec3 spun{c * v.x - s * v.y, s * v.x + c * v.y, v.z};
  const Vec3& a = axis;
  Vec3 t = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = cross(t, a) / norm(cross(t, a));
  const Vec3 e2 = cross(a, e1);
  return spun.x * e1 + spun.y * e2 + spun.z * a;
}

PolyhedralCone random_cone(Rng& rng, std::size_t n, double half_angle, const Vec3& apex,
                           double jitter) {
  if (n < 3) throw Error(ErrorKind::TooFewEdges, "a cone needs at least three edges");
  if (!(half_angle > 0.0 && half_angle < 0.5 * kPi)) {
    throw Error(ErrorKind::InvalidArgument, "half angle must lie in (0, π/2)");
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const UnitVector3 axis = rng.direction();
    const double spin = rng.uniform(0.0, 2.0 * kPi);
    // Azimuths: equal spacing perturbed by at most a third of a gap.
    const double gap = 2.0 * kPi / static_cast<double>(n);
    std::vector<Vec3> edges;
    for (std::size_t i = 0; i < n; ++i) {
      const double phi = gap * (static_cast<double>(i) + rng.uniform(-1.0 / 3.0, 1.0 / 3.0));
      const double th = half_angle * (1.0 - jitter * rng.uniform());
      const Vec3 local{std::sin(th) * std::cos(phi), std::sin(th) * std::sin(phi), std::cos(th)};
      const Vec3 w = rng.rotate_from_pole(local, axis, spin);
      edges.push_back(w / norm(w));
    }
    try {
      return PolyhedralCone::create(apex, edges);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorKind::DegenerateCone, "could not draw a valid random cone");
}

}  // namespace cornerem
