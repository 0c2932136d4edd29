// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Basic product rules. Everything here has positive weights.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "cornerem/linalg.hpp"

namespace cornerem {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss–Legendre rule on [a, b]. Nodes on [-1, 1] are cached.
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Cached reference rule on [-1, 1]; the reference stays valid for the life
// of the program.
const Rule1D& gauss_legendre_reference(int n);

struct PointRule {
  std::vector<Vec3> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  void append(const PointRule& other);
};

// Collapsed (Duffy) order² rule on the planar triangle with vertices a, b, c.
PointRule triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c, int order);

// The same rule with the collapsed coordinate split into geometric panels
// [0, 2^-levels], ..., [1/2, 1], resolving integrands peaked at vertex a.
PointRule graded_triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c, int order, int levels);

// Collapsed (Stroud conical product) order³ rule on a tetrahedron.
PointRule tetrahedron_rule(const std::array<Vec3, 4>& v, int order);

// Tensor Gauss rule on the axis-aligned box [lo, hi].
PointRule box_rule(const Vec3& lo, const Vec3& hi, std::array<int, 3> order);

// Spherical product rule on a ball: Gauss in r and cos(theta), trapezoid in phi.
PointRule ball_rule(const Vec3& center, double radius, int n_radial, int n_polar, int n_azimuth);

// Splits the flat triangle (a, b, c) into 4^level congruent sub-triangles.
std::vector<std::array<Vec3, 3>> subdivide_triangle(const Vec3& a, const Vec3& b, const Vec3& c,
                                                    int level);

// Sum in a fixed pairwise order so results do not depend on how the terms
// were produced.
template <class T>
T pairwise_sum(std::span<const T> terms) {
  if (terms.empty()) return T{};
  if (terms.size() <= 8) {
    T acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc += terms[i];
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace cornerem
