// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Integrals of exponential-type integrands over polyhedral cones: closed
// forms on infinite cones and adaptive radial × angular quadrature on
// truncated cones.

#pragma once

#include <functional>
#include <variant>

#include "cornerem/cone.hpp"
#include "cornerem/linalg.hpp"
#include "cornerem/quadrature.hpp"

namespace cornerem {

// ∫_{K0} e^{ρ·x} dx = |det[w1 w2 w3]| / ∏ (-ρ·w_j) for a simplicial cone with
// apex at the origin. Throws NonConvergent unless Re(ρ·w_j) < 0 for all j.
cplx exact_exponential_integral(const SimplicialCone& sc, const CVec3& rho);

// ∫_K e^{ρ·x} dx over the whole cone (apex included: the value carries the
// factor e^{ρ·apex}). Evaluated as a sum over the fan rooted at `fan_root`.
cplx exponential_integral(const PolyhedralCone& cone, const CVec3& rho, std::size_t fan_root = 0);

// Product rule over K^{r0}: angular Duffy rules on the gnomonic image of each
// fan triangle, radial Gauss–Legendre panels along every ray.
struct RadialAngularRule {
  int angular_order = 8;        // points per direction on each sub-triangle
  int angular_subdivision = 1;  // each fan triangle is split into 4^level pieces
  int radial_order = 8;         // Gauss points per radial panel
};

// Integrand kinds. y = x - apex throughout; densities see absolute x.
struct ConstantIntegrand {
  cplx value{1.0, 0.0};
};
struct PureExponential {
  CVec3 rho;  // e^{ρ·y}
};
struct HolderWeighted {
  double alpha;  // |y|^α e^{τ d·y}, α ∈ (0, 1)
  Vec3 d;
  double tau;
};
struct VectorDotted {
  std::function<CVec3(const Vec3&)> density;  // F(x) · a e^{ρ·y}
  CVec3 amplitude;
  CVec3 rho;
};
struct GeneralIntegrand {
  std::function<cplx(const Vec3&)> f;  // f(x); carrier only shapes the radial panels
  CVec3 carrier;
};

using IntegrandSpec =
    std::variant<ConstantIntegrand, PureExponential, HolderWeighted, VectorDotted, GeneralIntegrand>;

struct QuadratureOptions {
  RadialAngularRule initial{};
  double rtol = 1e-8;
  double atol = 0.0;
  int max_angular_order = 32;
  int max_radial_order = 64;
  // Once the angular order is capped, fan triangles are split instead.
  int max_angular_subdivision = 3;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;  // |last - previous|
  RadialAngularRule rule;       // rule of the accepted value
  int levels = 0;
};

// One evaluation of the product rule, no refinement.
cplx truncated_integral_fixed(const TruncatedCone& tc, const IntegrandSpec& spec,
                              const RadialAngularRule& rule);

// Refines until successive values agree to rtol (relative) or atol. Every
// step refines the angular rule (order doubling, then subdivision) and
// doubles the radial order up to its cap; throws NoConvergence when the
// angular rule can no longer be refined.
QuadratureResult truncated_integral(const TruncatedCone& tc, const IntegrandSpec& spec,
                                    const QuadratureOptions& options = {});

// Nodes and weights of the product rule for a smooth, non-oscillatory
// integrand (used for volume sources supported on truncated cones).
PointRule truncated_cone_rule(const TruncatedCone& tc, const RadialAngularRule& rule);

// Upper bound on |∫_{K \ K^{r0}} e^{ρ·x} dx| when Re ρ·θ ≤ -c τ on the patch:
// 2π e^{-cτr0} (r0²/(cτ) + 2r0/(cτ)² + 2/(cτ)³).
double tail_bound(double r0, double tau, double decay_constant);

// 2π Γ(3+α) / (κ/2)^{3+α}.
double holder_envelope_constant(double kappa, double alpha);

}  // namespace cornerem
