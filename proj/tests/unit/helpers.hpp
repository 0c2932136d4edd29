// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "cornerem/cone.hpp"
#include "cornerem/linalg.hpp"
#include "cornerem/sampling.hpp"

namespace cornerem::testing {

inline PolyhedralCone octant(const Vec3& apex = {}) {
  return PolyhedralCone::create(apex, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

// Square pyramid about e3 with edges at polar angle `polar`.
inline PolyhedralCone square_pyramid(double polar = 0.7, const Vec3& apex = {}) {
  const double s = std::sin(polar), c = std::cos(polar);
  return PolyhedralCone::create(apex, {Vec3{s, 0, c}, Vec3{0, s, c}, Vec3{-s, 0, c}, Vec3{0, -s, c}});
}

inline double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

inline double dist(const CVec3& a, const CVec3& b) { return norm(a - b); }

}  // namespace cornerem::testing
