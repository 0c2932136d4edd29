// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "cornerem/cgo.hpp"
#include "cornerem/cone_integrals.hpp"
#include "cornerem/error.hpp"
#include "cornerem/fields.hpp"
#include "cornerem/quadrature.hpp"
#include "helpers.hpp"

using namespace cornerem;
using cornerem::testing::octant;
using cornerem::testing::rel_diff;
using cornerem::testing::square_pyramid;

namespace {

// ∫ g(θ) dΩ over the geodesic triangle (a, b, c): Duffy map of the flat
// triangle, P = a + u(b - a) + uv(c - b), radially projected, with
// dΩ = |det[a b c]| u / |P|³ du dv.
template <class G>
cplx angular_oracle(const Vec3& a, const Vec3& b, const Vec3& c, G&& g, int n = 80) {
  const Rule1D r = gauss_legendre(n, 0.0, 1.0);
  const double det = std::abs(det3(a, b, c));
  cplx acc{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = r.nodes[i], v = r.nodes[j];
      const Vec3 p = a + u * (b - a) + (u * v) * (c - b);
      const double np = norm(p);
      acc += r.weights[i] * r.weights[j] * det * u / (np * np * np) * g(p / np);
    }
  return acc;
}

// ∫_K |y|^α e^{ρ·y} dy = Γ(3+α) ∫ (-ρ·θ)^{-(3+α)} dΩ, summed over a fan.
cplx radial_moment_oracle(const PolyhedralCone& c, const CVec3& rho, double alpha) {
  cplx acc{};
  for (const auto& sc : simplicial_fan(c, 0)) {
    acc += angular_oracle(sc.edges[0], sc.edges[1], sc.edges[2], [&](const Vec3& th) {
      return std::tgamma(3 + alpha) * std::pow(-dot(rho, th), -(3 + alpha));
    });
  }
  return acc;
}

}  // namespace

TEST_CASE("octant integral factorizes") {
  const PolyhedralCone c = octant();
  const CVec3 rho{cplx{-1, 2}, cplx{-0.5, -1}, cplx{-2, 0.5}};
  const cplx want = 1.0 / ((-rho.x) * (-rho.y) * (-rho.z));
  CHECK(rel_diff(exponential_integral(c, rho), want) < 1e-14);
}

TEST_CASE("closed form matches an independent angular quadrature") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + rng.index(4), rng.uniform(0.3, 1.0));
    const CgoParameters p = build_cgo(c, rng.index(c.size()), 1.0, rng.uniform(1, 5),
                                      0.5 * s_limit(c, 0, SRange::admissible), SRange::admissible);
    const cplx oracle = radial_moment_oracle(c, p.rho, 0.0);
    CHECK(rel_diff(exponential_integral(c, p.rho), oracle) < 1e-9);
  }
}

TEST_CASE("every fan root and an explicit split give the same value") {
  Rng rng(2);
  const PolyhedralCone c = square_pyramid(0.8);
  const CVec3 rho{cplx{0.3, 1.0}, cplx{-0.2, 0.4}, cplx{-2.0, -0.7}};
  const cplx ref = exponential_integral(c, rho, 0);
  for (std::size_t r = 1; r < c.size(); ++r) CHECK(rel_diff(exponential_integral(c, rho, r), ref) < 1e-13);

  const PolyhedralCone o = octant();
  const Vec3 m = Vec3{1, 1, 0} / std::sqrt(2.0);
  const CVec3 q{cplx{-1, 0.3}, cplx{-0.7, -2}, cplx{-1.1, 0.1}};
  const cplx a = exponential_integral(PolyhedralCone::create({}, {Vec3{1, 0, 0}, m, Vec3{0, 0, 1}}), q);
  const cplx b = exponential_integral(PolyhedralCone::create({}, {m, Vec3{0, 1, 0}, Vec3{0, 0, 1}}), q);
  CHECK(rel_diff(a + b, exponential_integral(o, q)) < 1e-13);
}

TEST_CASE("apex translation contributes the phase e^{rho.x0}") {
  const Vec3 x0{0.2, -0.4, 0.1};
  const CVec3 rho{cplx{-1, 0.3}, cplx{-0.7, -2}, cplx{-1.1, 0.1}};
  CHECK(rel_diff(exponential_integral(octant(x0), rho), std::exp(dot(rho, x0)) * exponential_integral(octant(), rho)) <
        1e-14);
}

TEST_CASE("divergent exponents are rejected") {
  CHECK_THROWS_AS(exponential_integral(octant(), CVec3{-1, -1, cplx{0.0, 1.0}}), Error);
  try {
    exponential_integral(octant(), CVec3{-1, -1, 0.5});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergent);
  }
}

TEST_CASE("constant integrand and rule weights give the truncated volume") {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + i, rng.uniform(0.4, 1.2), rng.direction().vec());
    const double r0 = rng.uniform(0.5, 2.0);
    const double vol = spherical_patch(c).solid_angle * r0 * r0 * r0 / 3;
    const TruncatedCone tc(c, r0);
    CHECK(rel_diff(truncated_integral(tc, ConstantIntegrand{}).value, vol) < 1e-10);
    const PointRule rule = truncated_cone_rule(tc, {8, 1, 8});
    double w = 0;
    for (double x : rule.weights) w += x;
    CHECK(w == doctest::Approx(vol).epsilon(1e-6));
    for (const auto& x : rule.points) CHECK(norm(x - c.apex()) <= r0 * (1 + 1e-12));
  }
}

TEST_CASE("truncated integrals approach the closed form within the tail bound") {
  Rng rng(14);
  for (int i = 0; i < 5; ++i) {
    const PolyhedralCone c = random_cone(rng, 3 + rng.index(4), rng.uniform(0.4, 1.1));
    const std::size_t e = rng.index(c.size());
    const double s = s_limit(c, e, SRange::admissible) * rng.uniform(0.5, 1.0);
    const double tau = rng.log_uniform(1, 30);
    const CgoParameters p = build_cgo(c, e, 1.0, tau, s, SRange::admissible);
    const double dc = decay_constant(c, p.d);
    const cplx exact = exponential_integral(c, p.rho);
    for (double x : {4.0, 8.0}) {
      const double r0 = x / (dc * tau);
      const cplx q = truncated_integral(TruncatedCone(c, r0), PureExponential{p.rho}).value;
      CHECK(std::abs(exact - q) <= tail_bound(r0, tau, dc));
    }
    const double r0 = 45 / (dc * tau);
    CHECK(tail_bound(r0, tau, dc) < 1e-10 * std::abs(exact));
    const cplx q = truncated_integral(TruncatedCone(c, r0), PureExponential{p.rho}).value;
    CHECK(rel_diff(q, exact) <= 1e-6);
  }
}

TEST_CASE("Hölder moments match the Gamma-function oracle and scale as tau^-(3+alpha)") {
  const PolyhedralCone c = square_pyramid(0.6);
  const CgoParameters p = build_cgo(c, 0, 1.0, 5.0, 0.5 * s_limit(c, 0, SRange::admissible), SRange::admissible);
  const double dc = decay_constant(c, p.d);
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double tau = 5.0;
    const double r0 = 60 / (dc * tau);
    const cplx h1 = truncated_integral(TruncatedCone(c, r0), HolderWeighted{alpha, p.d, tau}).value;
    const cplx oracle = radial_moment_oracle(c, to_complex(tau * p.d), alpha);
    CHECK(rel_diff(h1, oracle) < 1e-7);
    const cplx h2 = truncated_integral(TruncatedCone(c, r0), HolderWeighted{alpha, p.d, 2 * tau}).value;
    CHECK(std::abs(h2 / h1 - std::pow(2.0, -(3 + alpha))) < 1e-7);
  }
  CHECK(holder_envelope_constant(0.4, 0.5) ==
        doctest::Approx(2 * kPi * std::tgamma(3.5) / std::pow(0.2, 3.5)).epsilon(1e-14));
}

TEST_CASE("vector-dotted integrand is linear and matches the general form") {
  const PolyhedralCone c = octant({0.1, 0.2, -0.3});
  const CgoParameters p = build_cgo(c, 2, 1.0, 3.0, 0.1, SRange::admissible);
  const TruncatedCone tc(c, 8.0);
  const VectorFn f = [](const Vec3& x) { return CVec3{x.x * x.y, cplx{0, 1} * x.z, 1.0 + x.x}; };
  const VectorFn g = [](const Vec3& x) { return CVec3{1.0, x.y * x.y, cplx{2, -1}}; };
  const cplx a{0.3, -1.2}, b{2.0, 0.5};
  auto dotted = [&](const VectorFn& h) { return truncated_integral(tc, VectorDotted{h, p.p, p.rho}).value; };
  const VectorFn comb = [&](const Vec3& x) { return a * f(x) + b * g(x); };
  CHECK(rel_diff(dotted(comb), a * dotted(f) + b * dotted(g)) < 1e-8);
  const GeneralIntegrand gen{[&](const Vec3& x) { return dot(f(x), p.p) * std::exp(dot(p.rho, x - c.apex())); }, p.rho};
  CHECK(rel_diff(dotted(f), truncated_integral(tc, gen).value) < 1e-8);
}

TEST_CASE("tail bound dominates the measured tail") {
  const PolyhedralCone c = octant();
  const CgoParameters p = build_cgo(c, 0, 1.0, 4.0, 0.2, SRange::admissible);
  const double dc = decay_constant(c, p.d);
  const cplx exact = exponential_integral(c, p.rho);
  for (double r0 : {0.5, 1.0, 2.0, 4.0}) {
    QuadratureOptions q;
    q.rtol = 1e-11;
    const cplx trunc = truncated_integral(TruncatedCone(c, r0), PureExponential{p.rho}, q).value;
    CHECK(std::abs(exact - trunc) <= tail_bound(r0, 4.0, dc));
  }
}

TEST_CASE("graded collapsed rule integrates polynomials on the triangle") {
  const Vec3 a{0, 0, 1}, b{1, 0, 1}, c{0, 2, 1};
  for (int levels : {0, 3, 12}) {
    const PointRule r = graded_triangle_rule(a, b, c, 6, levels);
    double area = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      area += r.weights[i];
      mx += r.weights[i] * r.points[i].x * r.points[i].y;
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-13));
    // ∫ x y over the right triangle with legs 1 and 2 is 1/6.
    CHECK(mx == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  }
}

TEST_CASE("slowly decaying exponentials converge to the closed form") {
  // Small s puts the slowest decay along w1 with relative angular width ~ s.
  Rng rng(99);
  for (int i = 0; i < 3; ++i) {
    const PolyhedralCone cone = random_cone(rng, 6, 0.9);
    const double kappa = separating_direction(cone, 0).kappa;
    const CgoParameters p = build_cgo(cone, 0, 1.0, 40.0, kappa / 24.0, SRange::admissible);
    const double c = decay_constant(cone, p.d);
    const double r0 = 40.0 / (c * p.tau);
    QuadratureOptions q;
    q.rtol = 1e-12;
    const QuadratureResult res = truncated_integral(TruncatedCone(cone, r0), PureExponential{p.rho}, q);
    const cplx exact = exponential_integral(cone, p.rho);
    CHECK(std::abs(res.value - exact) <= tail_bound(r0, p.tau, c) + 1e-12 * std::abs(exact));
  }
}

TEST_CASE("refinement that cannot touch the angular rule reports NoConvergence") {
  const PolyhedralCone cone = octant();
  const CgoParameters p = build_cgo(cone, 0, 1.0, 20.0, 0.3 * s_upper_bound(cone, 0));
  QuadratureOptions q;
  q.rtol = 1e-15;
  q.initial = {8, 0, 8};
  q.max_angular_order = 8;
  q.max_angular_subdivision = 0;
  try {
    truncated_integral(TruncatedCone(cone, 1.0), PureExponential{p.rho}, q);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}
