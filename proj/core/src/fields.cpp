// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/fields.hpp"

#include <algorithm>
#include <cmath>

#include "cornerem/error.hpp"

namespace cornerem {

Polynomial3 Polynomial3::constant(cplx c) { return monomial(c, 0, 0, 0); }

Polynomial3 Polynomial3::monomial(cplx c, int i, int j, int l) {
  if (i < 0 || j < 0 || l < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  Polynomial3 p;
  p.add({i, j, l}, c);
  return p;
}

void Polynomial3::add(const Exponent& e, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx Polynomial3::operator()(const Vec3& x) const {
  cplx acc{};
  for (const auto& [e, c] : terms_) {
    acc += c * std::pow(x.x, e[0]) * std::pow(x.y, e[1]) * std::pow(x.z, e[2]);
  }
  return acc;
}

Polynomial3 Polynomial3::derivative(int axis) const {
  Polynomial3 out;
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponent f = e;
    f[axis] -= 1;
    out.add(f, c * static_cast<double>(e[axis]));
  }
  return out;
}

int Polynomial3::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

Polynomial3& Polynomial3::operator+=(const Polynomial3& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

Polynomial3& Polynomial3::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

PolyVectorField PolyVectorField::curl() const {
  return {{c[2].derivative(1) - c[1].derivative(2), c[0].derivative(2) - c[2].derivative(0),
           c[1].derivative(0) - c[0].derivative(1)}};
}

Polynomial3 PolyVectorField::divergence() const {
  return c[0].derivative(0) + c[1].derivative(1) + c[2].derivative(2);
}

int PolyVectorField::degree() const {
  return std::max({c[0].degree(), c[1].degree(), c[2].degree()});
}

AnalyticField AnalyticField::zero() {
  auto z = [](const Vec3&) { return CVec3{}; };
  return {z, z};
}

AnalyticField AnalyticField::polynomial(const PolyVectorField& f) {
  const PolyVectorField cf = f.curl();
  return {[f](const Vec3& x) { return f(x); }, [cf](const Vec3& x) { return cf(x); }};
}

BumpDerivatives bump_derivatives(const Vec3& y, double radius, int m) {
  BumpDerivatives out{0.0, {}, {}};
  const double r2 = radius * radius;
  const double b = 1.0 - dot(y, y) / r2;
  if (b <= 0.0) return out;
  const double bm2 = m >= 2 ? std::pow(b, m - 2) : 0.0;
  const double bm1 = std::pow(b, m - 1);
  out.f = bm1 * b;
  // ∇b = -2y/R², ∂i∂j b = -2δij/R².
  out.grad = (-2.0 * m * bm1 / r2) * y;
  const double c1 = 4.0 * m * (m - 1) * bm2 / (r2 * r2);
  const double c2 = -2.0 * m * bm1 / r2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.hessian[i][j] = c1 * y[i] * y[j] + (i == j ? c2 : 0.0);
  return out;
}

CVec3 curl_bump(const Vec3& y, double radius, int m, const CVec3& v) {
  return cross(bump_derivatives(y, radius, m).grad, v);
}

CVec3 curl_curl_bump(const Vec3& y, double radius, int m, const CVec3& v) {
  const BumpDerivatives bd = bump_derivatives(y, radius, m);
  const double lap = bd.hessian[0][0] + bd.hessian[1][1] + bd.hessian[2][2];
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = bd.hessian[i][0] * v.x + bd.hessian[i][1] * v.y + bd.hessian[i][2] * v.z - lap * v[i];
  }
  return out;
}

Potential Potential::zero() { return Potential{}; }

Potential Potential::bump(const Vec3& center, double radius, int m, const CVec3& v,
                          cplx amplitude) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump radius must be positive");
  if (m < 3) throw Error(ErrorKind::InvalidArgument, "bump exponent must be at least 3");
  Potential p;
  p.kind_ = Kind::bump;
  p.name_ = "bump";
  p.support_ = Ball{center, radius};
  const CVec3 av = v * amplitude;
  p.value_ = [=](const Vec3& x) { return av * bump_derivatives(x - center, radius, m).f; };
  p.curl_ = [=](const Vec3& x) { return curl_bump(x - center, radius, m, av); };
  return p;
}

Potential Potential::curl_of_bump(const Vec3& center, double radius, int m, const CVec3& v,
                                  cplx amplitude) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump radius must be positive");
  if (m < 3) throw Error(ErrorKind::InvalidArgument, "bump exponent must be at least 3");
  Potential p;
  p.kind_ = Kind::curl_of_bump;
  p.name_ = "curl_of_bump";
  p.support_ = Ball{center, radius};
  const CVec3 av = v * amplitude;
  p.value_ = [=](const Vec3& x) { return curl_bump(x - center, radius, m, av); };
  p.curl_ = [=](const Vec3& x) { return curl_curl_bump(x - center, radius, m, av); };
  return p;
}

Potential Potential::custom(VectorFn value, std::optional<VectorFn> curl, Ball support,
                            std::string name) {
  if (!value) throw Error(ErrorKind::InvalidArgument, "custom potential needs a value");
  Potential p;
  p.kind_ = Kind::custom;
  p.name_ = std::move(name);
  p.support_ = support;
  p.value_ = std::move(value);
  if (curl && *curl) p.curl_ = std::move(curl);
  return p;
}

CVec3 Potential::curl(const Vec3& x) const {
  if (kind_ == Kind::zero) return {};
  if (!curl_) {
    throw Error(ErrorKind::UnsupportedPotential,
                "potential '" + name_ + "' has no closed-form curl");
  }
  return (*curl_)(x);
}

Potential Potential::scaled(cplx a) const {
  if (kind_ == Kind::zero) return *this;
  Potential p = *this;
  VectorFn v = value_;
  p.value_ = [v, a](const Vec3& x) { return v(x) * a; };
  if (curl_) {
    VectorFn c = *curl_;
    p.curl_ = [c, a](const Vec3& x) { return c(x) * a; };
  }
  return p;
}

namespace {
// Jacobian column j: ∂f/∂x_j by central differences.
std::array<CVec3, 3> fd_columns(const VectorFn& f, const Vec3& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "difference step must be positive");
  std::array<CVec3, 3> col;
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    col[j] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return col;
}
}  // namespace

CVec3 finite_difference_curl(const VectorFn& f, const Vec3& x, double h) {
  const auto c = fd_columns(f, x, h);
  return {c[1].z - c[2].y, c[2].x - c[0].z, c[0].y - c[1].x};
}

cplx finite_difference_divergence(const VectorFn& f, const Vec3& x, double h) {
  const auto c = fd_columns(f, x, h);
  return c[0].x + c[1].y + c[2].z;
}

}  // namespace cornerem
