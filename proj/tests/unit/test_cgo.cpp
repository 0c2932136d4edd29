// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "cornerem/cgo.hpp"
#include "cornerem/error.hpp"
#include "cornerem/fields.hpp"
#include "helpers.hpp"

using namespace cornerem;
using cornerem::testing::octant;
using cornerem::testing::square_pyramid;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// Largest relative residual of the two Maxwell equations by central differences.
double fd_residual(const ExpMaxwellPair& f, const Medium& m, const Vec3& x) {
  const double rho = norm(f.rho);
  const double h = 1e-4 / std::max(1.0, rho);
  const cplx iwm{0.0, m.omega * m.mu0}, iwe{0.0, m.omega * m.eps0};
  const CVec3 v = f.V(x), w = f.W(x);
  const CVec3 cv = finite_difference_curl([&](const Vec3& y) { return f.V(y); }, x, h);
  const CVec3 cw = finite_difference_curl([&](const Vec3& y) { return f.W(y); }, x, h);
  const double r1 = norm(cv - iwm * w) / (rho * norm(v) + std::abs(iwm) * norm(w));
  const double r2 = norm(cw + iwe * v) / (rho * norm(w) + std::abs(iwe) * norm(v));
  return std::max(r1, r2);
}

}  // namespace

TEST_CASE("octant construction matches its closed form") {
  const PolyhedralCone c = octant();
  // For w1 = e1 the best separator is z = -(e2 + e3)/√2 with κ = 1/√2.
  const double kappa = 1.0 / std::sqrt(2.0);
  const double s0 = std::pow(kappa, 3) / (128.0 * kPi);
  CHECK(s_upper_bound(c, 0) == doctest::Approx(s0).epsilon(1e-12));
  CHECK(s0 == doctest::Approx(8.79215e-4).epsilon(1e-5));
  CHECK(s_limit(c, 0, SRange::admissible) == doctest::Approx(kappa / 3).epsilon(1e-12));

  const double s = 0.5 * s0, k = 2.0, tau = 7.0;
  const CgoParameters p = build_cgo(c, 0, k, tau, s);
  const Vec3 z{0, -kappa, -kappa};
  CHECK(norm(p.z - z) < 1e-12);
  CHECK(norm(p.d - (z - s * Vec3{1, 0, 0}) / std::sqrt(1 + s * s)) < 1e-12);
  CHECK(norm(p.d_perp - Vec3{0, kappa, -kappa}) < 1e-12);
  const cplx beta = std::sqrt(tau * tau + k * k);
  CHECK(norm(p.rho - (tau * p.d + cplx{0, 1} * beta * p.d_perp)) < 1e-12);
  const cplx gamma = std::sqrt(1 + k * k / (tau * tau));
  CHECK(norm(p.p - (to_complex(p.d_perp) - cplx{0, 1} * gamma * p.d)) < 1e-12);
}

TEST_CASE("construction identities hold on random draws") {
  Rng rng(101);
  double worst_ext = 0, worst_floor = 0;
  for (int i = 0; i < 500; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + rng.index(4), rng.uniform(0.3, 1.2));
    const std::size_t e = rng.index(c.size());
    const double k = rng.log_uniform(0.1, 10.0);
    const double s = s_upper_bound(c, e) * rng.uniform(1e-3, 1.0);
    const double tau = k * rng.log_uniform(1.0, 1e3);
    const CgoParameters p = build_cgo(c, e, k, tau, s);
    CHECK(std::abs(norm(p.d) - 1) < 1e-14);
    CHECK(std::abs(norm(p.d_perp) - 1) < 1e-14);
    CHECK(std::abs(dot(p.d, p.d_perp)) < 1e-14);
    CHECK(dot(p.d, p.w1) == doctest::Approx(-s / std::sqrt(1 + s * s)).epsilon(1e-10));
    const auto x = cgo_identity_residuals_extended(p);
    worst_ext = std::max({worst_ext, x.p_dot_rho, x.dispersion, x.cross_identity});
    const auto r = cgo_identity_residuals(p);
    const double cond = std::max(1.0, std::pow(norm(p.rho) / k, 2));
    worst_floor = std::max({worst_floor, r.dispersion / (64 * kEps * cond), r.cross_identity / (64 * kEps * cond)});
  }
  CHECK(worst_ext <= 1e-12);
  CHECK(worst_floor <= 1.0);
}

TEST_CASE("admissible s keeps the exponent decaying on the closed cone") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + rng.index(4), rng.uniform(0.3, 1.2));
    const std::size_t e = rng.index(c.size());
    const double kappa = separating_direction(c, e).kappa;
    const double s = kappa / 3 * rng.uniform(0.01, 1.0);
    const CgoParameters p = build_cgo(c, e, 1.0, 5.0, s, SRange::admissible);
    CHECK(decay_constant(c, p.d) > 0);
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != e) CHECK(dot(p.d, c.edge(j).vec()) <= -kappa / 2);
  }
}

TEST_CASE("fields solve the homogeneous Maxwell system in both probe modes") {
  Rng rng(21);
  const Medium m(1.7, 2.0, 0.5);
  for (int i = 0; i < 100; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + rng.index(4), rng.uniform(0.3, 1.2), rng.direction().vec());
    const std::size_t e = rng.index(c.size());
    const double tau = m.k() * rng.log_uniform(1.0, 1e3);
    const CgoParameters p = build_cgo(c, e, m.k(), tau, s_upper_bound(c, e) * rng.uniform(0.01, 1.0));
    const Vec3 x = c.apex() + (rng.uniform(0, 3) / tau) * rng.direction().vec();
    for (ProbeMode mode : {ProbeMode::electric, ProbeMode::magnetic}) {
      CHECK(fd_residual(cgo_fields(p, m, mode, c.apex()), m, x) <= 1e-6);
    }
  }
}

TEST_CASE("magnetic probe is the electric probe of the dual medium") {
  const PolyhedralCone c = square_pyramid();
  const Medium m(1.3, 2.0, 0.7), dual(1.3, 0.7, 2.0);
  const CgoParameters p = build_cgo(c, 2, m.k(), 4.0, 0.5 * s_upper_bound(c, 2));
  const ExpMaxwellPair mag = cgo_fields(p, m, ProbeMode::magnetic);
  const ExpMaxwellPair ele = cgo_fields(p, dual, ProbeMode::electric);
  // (V, W) ↦ (-W, V) with ε0 ↔ μ0 maps solutions to solutions.
  CHECK(norm(mag.w0 - ele.v0) < 1e-14);
  CHECK(norm(mag.v0 + ele.w0) < 1e-14);
}

TEST_CASE("p tends to its limit and with_tau agrees with a fresh build") {
  const PolyhedralCone c = octant();
  const CgoParameters p = build_cgo(c, 1, 1.0, 3.0, 1e-4);
  const CgoParameters far = with_tau(p, 1e8);
  CHECK(norm(far.p - p_limit(p)) < 1e-15);
  const CgoParameters q = build_cgo(c, 1, 1.0, 40.0, 1e-4);
  const CgoParameters r = with_tau(p, 40.0);
  CHECK(norm(q.rho - r.rho) < 1e-12);
  CHECK(norm(q.p - r.p) < 1e-15);
}

TEST_CASE("invalid parameters raise the documented errors") {
  const PolyhedralCone c = octant();
  const double s0 = s_upper_bound(c, 0);
  CHECK(kind_of([&] { build_cgo(c, 0, 1.0, 2.0, s0); }) == ErrorKind::SOutOfRange);
  CHECK(kind_of([&] { build_cgo(c, 0, 1.0, 2.0, 0.0); }) == ErrorKind::SOutOfRange);
  CHECK(kind_of([&] { build_cgo(c, 0, 1.0, 2.0, 0.3, SRange::admissible); }) == ErrorKind::SOutOfRange);
  CHECK_NOTHROW(build_cgo(c, 0, 1.0, 2.0, 0.2, SRange::admissible));
  CHECK(kind_of([&] { build_cgo(c, 0, 1.0, 0.5, 0.5 * s0); }) == ErrorKind::TauBelowK);
  const CgoParameters p = build_cgo(c, 0, 1.0, 2.0, 0.5 * s0);
  CHECK(kind_of([&] { cgo_fields(p, Medium(2.0, 1.0, 1.0), ProbeMode::electric); }) ==
        ErrorKind::DispersionMismatch);
  CHECK(kind_of([&] { select_s(CVec3{}, c, 0); }) == ErrorKind::ZeroSource);
  CHECK(kind_of([&] { plane_wave_pair({0, 0, 1}, {0, 0, 1}, Medium{}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("select_s is invariant under complex scaling of F0") {
  Rng rng(4);
  const PolyhedralCone c = square_pyramid(0.6);
  for (int i = 0; i < 20; ++i) {
    const CVec3 f0{cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()},
                   cplx{rng.normal(), rng.normal()}};
    const std::size_t e = rng.index(c.size());
    const SSelection a = select_s(f0, c, e);
    const cplx scale{rng.normal(), rng.normal()};
    const SSelection b = select_s(f0 * scale, c, e);
    CHECK(a.s == b.s);
    CHECK(std::abs(b.limit - scale * a.limit) <= 1e-12 * std::abs(b.limit));
    // The reported limit is F0·p∞ at the selected s.
    const CgoParameters p = build_cgo(c, e, 1.0, 2.0, a.s);
    CHECK(std::abs(a.limit - dot(f0, p_limit(p))) <= 1e-12 * norm(f0));
  }
}

TEST_CASE("plane waves solve the homogeneous Maxwell system") {
  const Medium m(2.0, 1.5, 0.8);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Vec3 q = rng.direction();
    const Vec3 pol = cross(q, rng.direction().vec());
    const ExpMaxwellPair f = plane_wave_pair(q, pol / norm(pol), m);
    CHECK(std::abs(dot(f.rho, f.rho) + m.k() * m.k()) < 1e-12);
    CHECK(fd_residual(f, m, rng.direction().vec()) <= 1e-7);
  }
}
