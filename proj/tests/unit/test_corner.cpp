// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "cornerem/corner.hpp"
#include "cornerem/error.hpp"
#include "cornerem/sampling.hpp"
#include "helpers.hpp"

using namespace cornerem;
using cornerem::testing::octant;

namespace {

const cplx I{0.0, 1.0};

TauSweep power_law(double exponent, cplx c = {2.0, -1.0}, int n = 8) {
  TauSweep sw;
  sw.taus = geometric_taus(1.0, 10.0, 100.0, n);
  for (double t : sw.taus) sw.values.push_back(c * std::pow(t, exponent));
  return sw;
}

ClassifyConfig quick_config(double k) {
  ClassifyConfig cc;
  cc.taus = geometric_taus(k, 10.0, 100.0, 6);
  return cc;
}

PolyVectorField random_poly(Rng& rng, int degree) {
  PolyVectorField f;
  for (auto& comp : f.c)
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j)
        for (int l = 0; i + j + l <= degree; ++l)
          comp += Polynomial3::monomial({rng.normal(), rng.normal()}, i, j, l);
  return f;
}

}  // namespace

TEST_CASE("geometric taus") {
  const auto t = geometric_taus(2.0, 10.0, 100.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == doctest::Approx(20.0));
  CHECK(t.back() == doctest::Approx(200.0));
  for (std::size_t i = 1; i + 1 < t.size(); ++i) CHECK(t[i] * t[i] == doctest::Approx(t[i - 1] * t[i + 1]));
}

TEST_CASE("decay fit on synthetic power laws") {
  const DecayReport a = decay_exponent(power_law(-3.0));
  CHECK(a.slope == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(a.residual < 1e-12);
  CHECK(a.verdict == Verdict::apex_nonvanishing);
  for (double s : a.running_slopes) CHECK(s == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(decay_exponent(power_law(-3.5)).verdict == Verdict::apex_vanishing);
  CHECK(decay_exponent(power_law(-3.1)).verdict == Verdict::apex_nonvanishing);
  CHECK(decay_exponent(power_law(-3.2)).verdict == Verdict::apex_vanishing);
  CHECK(decay_exponent(power_law(-2.8)).verdict == Verdict::inconclusive);
  CHECK(decay_exponent(power_law(-2.0)).verdict == Verdict::inconclusive);

  // Oscillating modulus fails the residual clause.
  TauSweep wobble = power_law(-3.0);
  for (std::size_t i = 0; i < wobble.values.size(); ++i) wobble.values[i] *= (i % 2 ? 2.0 : 0.5);
  CHECK(decay_exponent(wobble).verdict == Verdict::inconclusive);

  try {
    decay_exponent(power_law(-3.0, 1.0, 4));
    FAIL("expected TooFewPoints");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewPoints);
  }
  TauSweep zero = power_law(-3.0);
  zero.values[3] = 0.0;
  try {
    decay_exponent(zero);
    FAIL("expected BelowNoiseFloor");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BelowNoiseFloor);
  }
}

TEST_CASE("octant functional of a constant density matches the product formula") {
  const Medium md(1.0, 1.5, 0.8);
  const double k = md.k();
  const PolyhedralCone cone = octant();
  const CVec3 f2{0.2, cplx{0, -1}, 1.0};
  for (double tau : {10 * k, 40 * k}) {
    const CgoParameters p = build_cgo(cone, 0, k, tau, s_limit(cone, 0, SRange::admissible) / 2,
                                      SRange::admissible);
    const double r0 = recommended_radius(cone, p, tau);
    const cplx got = cgo_functional({}, [&](const Vec3&) { return f2; }, TruncatedCone(cone, r0), p, md,
                                    ProbeMode::electric);
    const ExpMaxwellPair pair = cgo_fields(p, md, ProbeMode::electric);
    // ∫_{R+^3} e^{ρ·x} dx = Π (-1/ρ_i).
    const cplx exact = dot(f2, pair.v0) * (-1.0 / (p.rho.x * p.rho.y * p.rho.z));
    CHECK(std::abs(got - exact) < 1e-7 * std::abs(exact));
  }
}

TEST_CASE("recommended radius uses the patch decay constant") {
  Rng rng(3);
  const PolyhedralCone cone = random_cone(rng, 5, 0.7);
  const CgoParameters p = build_cgo(cone, 2, 1.0, 20.0, 0.5 * s_limit(cone, 2, SRange::admissible),
                                    SRange::admissible);
  double c = 1e300;
  for (const auto& w : cone.edges()) c = std::min(c, -dot(p.d, w.vec()));
  CHECK(c > 0.0);
  CHECK(recommended_radius(cone, p, 20.0) == doctest::Approx(50.0 / (c * 20.0)).epsilon(1e-12));
  CHECK(recommended_radius(cone, p, 20.0, 30.0) == doctest::Approx(30.0 / (c * 20.0)).epsilon(1e-12));
}

TEST_CASE("classification of constant and Holder densities") {
  const Medium md;
  const PolyhedralCone cone = octant({0.2, -0.1, 0.3});
  ClassifyConfig cc = quick_config(md.k());
  const double s = classification_s(cone, cc);
  CHECK(s == doctest::Approx(s_limit(cone, 0, SRange::admissible) / 2));
  const CgoParameters base = build_cgo(cone, 0, md.k(), cc.taus.front(), s, SRange::admissible);
  const TruncatedCone tc(cone, recommended_radius(cone, base, cc.taus.front()));

  SUBCASE("constant F2, zero F1") {
    const auto c = classify_apex({}, [](const Vec3&) { return CVec3{0, 0, 1}; }, tc, md, cc);
    CHECK(c.electric.verdict == Verdict::apex_nonvanishing);
    CHECK(std::abs(c.electric.slope + 3.0) < 0.05);
    // F2 still enters the magnetic probe through V, one order faster.
    CHECK(c.magnetic.verdict == Verdict::apex_vanishing);
  }
  SUBCASE("zero densities") {
    const auto c = classify_apex({}, {}, tc, md, cc);
    CHECK(c.electric.exact_zero);
    CHECK(c.magnetic.exact_zero);
    CHECK(c.magnetic.verdict == Verdict::apex_vanishing);
  }
  SUBCASE("Holder density vanishing at the apex") {
    const double alpha = 0.5;
    const Vec3 x0 = cone.apex();
    const auto f = [=](const Vec3& x) { return CVec3{1.0, -0.5, 0.25} * std::pow(norm(x - x0), alpha); };
    const auto c = classify_apex(f, f, tc, md, cc);
    CHECK(c.electric.verdict == Verdict::apex_vanishing);
    CHECK(c.magnetic.verdict == Verdict::apex_vanishing);
    CHECK(c.electric.slope <= -(3.0 + alpha) + 0.15);
  }
}

TEST_CASE("apex estimate is exact for constant densities and recovers F0") {
  const Medium md;
  const double k = md.k();
  const PolyhedralCone cone = octant();
  const CVec3 f0{0.3, cplx{0.5, 0.2}, 1.0};
  ApexEstimateOptions eo;
  eo.alpha = 1.0;
  eo.taus = geometric_taus(k, 10.0, 100.0, 5);
  std::array<ApexEstimate, 3> est;
  for (std::size_t e = 0; e < 3; ++e) {
    const CgoParameters p = build_cgo(cone, e, k, eo.taus.front(), 0.5 * s_limit(cone, e, SRange::admissible),
                                      SRange::admissible);
    est[e] = estimate_apex_value([&](const Vec3&) { return f0; },
                                 TruncatedCone(cone, recommended_radius(cone, p, eo.taus.front())), p, eo);
    CHECK(norm(est[e].p_inf - p_limit(p)) < 1e-14);
    CHECK(std::abs(est[e].value - dot(f0, est[e].p_inf)) < 1e-7 * norm(f0));
  }
  CHECK(norm(recover_apex_vector(est) - f0) < 1e-6 * norm(f0));
}

TEST_CASE("recover_apex_vector solves the synthetic system") {
  Rng rng(8);
  const CVec3 f0{cplx{1, 2}, -0.3, cplx{0, 0.7}};
  std::array<ApexEstimate, 3> est;
  for (auto& e : est) {
    e.p_inf = CVec3{rng.normal(), rng.normal(), rng.normal()} + I * CVec3{rng.normal(), rng.normal(), rng.normal()};
    e.value = dot(f0, e.p_inf);
  }
  CHECK(norm(recover_apex_vector(est) - f0) < 1e-12);
  est[2].p_inf = est[0].p_inf * cplx{2, 1};
  CHECK_THROWS_AS(recover_apex_vector(est), Error);
}

TEST_CASE("reciprocity identities for manufactured fields") {
  const Medium md(1.2, 1.1, 0.9);
  const double k = md.k();
  Rng rng(17);
  const PolyhedralCone cone = octant();
  const ReciprocityDomain box = Box{{0, 0, 0}, {1, 1, 1}};
  const ReciprocityDomain tet = ConvexPolyhedron::regular_tetrahedron({0.3, 0.3, 0.3}, 1.2);
  for (int i = 0; i < 4; ++i) {
    const AnalyticField e = AnalyticField::polynomial(random_poly(rng, 2));
    const AnalyticField h = AnalyticField::polynomial(random_poly(rng, 2));
    const CgoParameters p = build_cgo(cone, rng.index(3), k, k * rng.uniform(1, 5),
                                      0.5 * s_limit(cone, 0, SRange::admissible), SRange::admissible);
    const ExpMaxwellPair cgo = cgo_fields(p, md, i % 2 ? ProbeMode::magnetic : ProbeMode::electric);
    const ExpMaxwellPair pw = plane_wave_pair({0, 0, 1}, {1, 0, 0}, md);
    for (const auto* dom : {&box, &tet}) {
      for (const auto* test : {&cgo, &pw}) {
        const ReciprocityReport r = reciprocity_check(*dom, e, h, *test, md);
        CHECK(r.residual1 < 1e-10);
        CHECK(r.residual2 < 1e-10);
      }
    }
    // Negative control: a wrong curl for E breaks the identity.
    AnalyticField bad = e;
    bad.curl = [c = e.curl](const Vec3& x) { return c(x) + CVec3{1.0, 1.0, 1.0}; };
    const ReciprocityReport r = reciprocity_check(box, bad, h, pw, md);
    CHECK(r.residual1 > 1e-4);
  }
}

TEST_CASE("uniqueness: identical supports coincide, cube and tetrahedron differ") {
  const Medium md;
  const SphereGrid grid = sphere_grid(7, 14);
  const auto cube = CurrentSource::constant(ConvexPolyhedron::cube({0, 0, 0}, 2.0), {}, {0, 0, 1});
  const auto tet = CurrentSource::constant(ConvexPolyhedron::regular_tetrahedron({0, 0, 0}, 2.0), {}, {0, 0, 1});
  const UniquenessReport same = uniqueness_demo(cube, cube, md, grid);
  CHECK(same.difference <= same.floor);
  CHECK_FALSE(same.distinguishable);
  const UniquenessReport diff = uniqueness_demo(cube, tet, md, grid);
  CHECK(diff.floor > 0.0);
  CHECK(diff.difference >= 10 * diff.floor);
  CHECK(diff.distinguishable);
  const auto ball = CurrentSource::constant(Ball{{0, 0, 0}, 1.0}, {}, {0, 0, 1});
  CHECK_THROWS_AS(uniqueness_demo(cube, ball, md, grid), Error);
}
