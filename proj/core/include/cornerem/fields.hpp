// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form vector fields with exact curls: polynomial manufactured fields
// and compactly supported bump potentials.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "cornerem/linalg.hpp"

namespace cornerem {

using VectorFn = std::function<CVec3(const Vec3&)>;

// Finite sum of c * x^i y^j z^l with complex coefficients.
class Polynomial3 {
 public:
  using Exponent = std::array<int, 3>;

  Polynomial3() = default;
  static Polynomial3 constant(cplx c);
  static Polynomial3 monomial(cplx c, int i, int j, int l);

  cplx operator()(const Vec3& x) const;
  Polynomial3 derivative(int axis) const;
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, cplx>& terms() const { return terms_; }

  Polynomial3& operator+=(const Polynomial3& o);
  Polynomial3& operator*=(cplx s);
  friend Polynomial3 operator+(Polynomial3 a, const Polynomial3& b) { return a += b; }
  friend Polynomial3 operator-(Polynomial3 a, Polynomial3 b) { return a += (b *= -1.0); }
  friend Polynomial3 operator*(cplx s, Polynomial3 a) { return a *= s; }

 private:
  void add(const Exponent& e, cplx c);
  std::map<Exponent, cplx> terms_;
};

struct PolyVectorField {
  std::array<Polynomial3, 3> c;

  CVec3 operator()(const Vec3& x) const { return {c[0](x), c[1](x), c[2](x)}; }
  PolyVectorField curl() const;
  Polynomial3 divergence() const;
  int degree() const;
};

// A field together with its curl, both as evaluators.
struct AnalyticField {
  VectorFn value;
  VectorFn curl;

  static AnalyticField zero();
  static AnalyticField polynomial(const PolyVectorField& f);
};

// Potential for the radiationless construction. The built-in kinds are
//   bump:          Ψ = a (1 - |x-c|²/R²)^m v on |x-c| ≤ R,
//   curl_of_bump:  Ψ = a ∇×[(1 - |x-c|²/R²)^m v],
// and both carry closed-form curls. Custom potentials may omit the curl.
class Potential {
 public:
  enum class Kind { zero, bump, curl_of_bump, custom };

  struct Ball {
    Vec3 center;
    double radius;
  };

  static Potential zero();
  static Potential bump(const Vec3& center, double radius, int m, const CVec3& v, cplx amplitude = 1.0);
  static Potential curl_of_bump(const Vec3& center, double radius, int m, const CVec3& v,
                                cplx amplitude = 1.0);
  static Potential custom(VectorFn value, std::optional<VectorFn> curl, Ball support,
                          std::string name = "custom");

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  bool has_curl() const { return curl_.has_value(); }
  const std::optional<Ball>& support() const { return support_; }

  CVec3 value(const Vec3& x) const { return value_ ? value_(x) : CVec3{}; }
  // Throws UnsupportedPotential when no closed-form curl is available.
  CVec3 curl(const Vec3& x) const;

  // Scaled copy a·Ψ.
  Potential scaled(cplx a) const;

 private:
  Kind kind_ = Kind::zero;
  VectorFn value_;
  std::optional<VectorFn> curl_;
  std::optional<Ball> support_;
  std::string name_ = "zero";
};

// Pieces of f = (1 - |y|²/R²)^m, y = x - c, on the ball (zero outside).
struct BumpDerivatives {
  double f;
  Vec3 grad;
  std::array<std::array<double, 3>, 3> hessian;
};
BumpDerivatives bump_derivatives(const Vec3& y, double radius, int m);

// curl(f v) = ∇f × v;  curl curl(f v) = (Hess f) v - (Δf) v.
CVec3 curl_bump(const Vec3& y, double radius, int m, const CVec3& v);
CVec3 curl_curl_bump(const Vec3& y, double radius, int m, const CVec3& v);

// Central-difference curl and divergence with step h (second order).
CVec3 finite_difference_curl(const VectorFn& f, const Vec3& x, double h);
cplx finite_difference_divergence(const VectorFn& f, const Vec3& x, double h);

}  // namespace cornerem
