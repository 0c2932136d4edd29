// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>

namespace cornerem {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Three-component vector over double or std::complex<double>. All products
// are bilinear: dot() never conjugates.
template <class T>
struct Vector3 {
  T x{}, y{}, z{};

  constexpr T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr const T& operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  constexpr Vector3& operator+=(const Vector3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vector3& operator-=(const Vector3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  template <class S>
  constexpr Vector3& operator*=(const S& s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr bool operator==(const Vector3&) const = default;
};

using Vec3 = Vector3<double>;
using CVec3 = Vector3<cplx>;

template <class A, class B>
using product_t = decltype(std::declval<A>() * std::declval<B>());

template <class A, class B>
constexpr auto operator+(const Vector3<A>& a, const Vector3<B>& b) {
  using R = decltype(std::declval<A>() + std::declval<B>());
  return Vector3<R>{a.x + b.x, a.y + b.y, a.z + b.z};
}
template <class A, class B>
constexpr auto operator-(const Vector3<A>& a, const Vector3<B>& b) {
  using R = decltype(std::declval<A>() - std::declval<B>());
  return Vector3<R>{a.x - b.x, a.y - b.y, a.z - b.z};
}
template <class A>
constexpr Vector3<A> operator-(const Vector3<A>& a) {
  return {-a.x, -a.y, -a.z};
}
template <class A>
constexpr Vector3<product_t<A, double>> operator*(const Vector3<A>& a, double s) {
  return {a.x * s, a.y * s, a.z * s};
}
template <class A>
constexpr Vector3<product_t<A, double>> operator*(double s, const Vector3<A>& a) {
  return a * s;
}
template <class A>
constexpr Vector3<cplx> operator*(const Vector3<A>& a, cplx s) {
  return {a.x * s, a.y * s, a.z * s};
}
template <class A>
constexpr Vector3<cplx> operator*(cplx s, const Vector3<A>& a) {
  return a * s;
}
template <class A>
constexpr auto operator/(const Vector3<A>& a, double s) {
  return a * (1.0 / s);
}
inline CVec3 operator/(const CVec3& a, cplx s) { return {a.x / s, a.y / s, a.z / s}; }

template <class A, class B>
constexpr product_t<A, B> dot(const Vector3<A>& a, const Vector3<B>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class A, class B>
constexpr Vector3<product_t<A, B>> cross(const Vector3<A>& a, const Vector3<B>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm(const CVec3& a) {
  return std::sqrt(std::norm(a.x) + std::norm(a.y) + std::norm(a.z));
}

inline CVec3 to_complex(const Vec3& a) { return {a.x, a.y, a.z}; }
inline Vec3 real(const CVec3& a) { return {a.x.real(), a.y.real(), a.z.real()}; }
inline Vec3 imag(const CVec3& a) { return {a.x.imag(), a.y.imag(), a.z.imag()}; }

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }
inline cplx det3(const CVec3& a, const CVec3& b, const CVec3& c) {
  return dot(a, cross(b, c));
}

// Solves [c0 c1 c2] x = rhs (columns) by Cramer's rule. Returns nullopt when
// the determinant is below `tiny` in magnitude.
template <class T>
std::optional<Vector3<T>> solve_columns(const Vector3<T>& c0, const Vector3<T>& c1,
                                        const Vector3<T>& c2, const Vector3<T>& rhs,
                                        double tiny = 1e-300) {
  const T det = dot(c0, cross(c1, c2));
  if (std::abs(det) <= tiny) return std::nullopt;
  return Vector3<T>{dot(rhs, cross(c1, c2)) / det, dot(c0, cross(rhs, c2)) / det,
                    dot(c0, cross(c1, rhs)) / det};
}

// Unit vector in R^3. Construction normalizes; from_unit() insists the input
// already has unit length.
class UnitVector3 {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  UnitVector3() : v_{0.0, 0.0, 1.0} {}
  static UnitVector3 normalize(const Vec3& v);
  static UnitVector3 from_unit(const Vec3& v, double tol = kUnitTolerance);

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)
  double operator[](std::size_t i) const { return v_[i]; }
  UnitVector3 operator-() const { return UnitVector3(-v_); }

 private:
  explicit UnitVector3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

}  // namespace cornerem
