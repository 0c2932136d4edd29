// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Seeded random draws with a fixed bit-to-value mapping, so that a seed gives
// the same samples with any standard library.

#pragma once

#include <cstdint>
#include <random>

#include "cornerem/cone.hpp"
#include "cornerem/linalg.hpp"

namespace cornerem {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Log-uniform on [a, b], a > 0.
  double log_uniform(double a, double b);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }
  double normal();
  UnitVector3 direction();
  // Rotation taking e3 to `axis` composed with a random spin about it.
  Vec3 rotate_from_pole(const Vec3& v, const UnitVector3& axis, double spin) const;

 private:
  std::mt19937_64 eng_;
};

// Cone whose n edges lie at polar angles θ ∈ [half_angle (1 - jitter),
// half_angle] about a random axis, with azimuths spread so that every edge
// stays extreme. Retries until the cone validates.
PolyhedralCone random_cone(Rng& rng, std::size_t n, double half_angle, const Vec3& apex = {},
                           double jitter = 0.15);

}  // namespace cornerem
