// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Corner experiments: CGO functionals over truncated cones, decay-rate
// classification of the apex value, apex-value recovery, the reciprocity
// identities and far-field uniqueness demonstrations.

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cornerem/cgo.hpp"
#include "cornerem/cone.hpp"
#include "cornerem/cone_integrals.hpp"
#include "cornerem/fields.hpp"
#include "cornerem/medium.hpp"
#include "cornerem/radiation.hpp"

namespace cornerem {

// n log-spaced values from lo·k to hi·k.
std::vector<double> geometric_taus(double k, double lo = 10.0, double hi = 100.0, int n = 8);

struct TauSweep {
  std::vector<double> taus;
  std::vector<cplx> values;
  std::vector<CgoParameters> params;
};

struct DecayThresholds {
  double delta = 0.15;  // |slope + 3| ≤ delta for a non-vanishing apex
  double gap = 0.15;    // slope ≤ -3 - gap for a vanishing apex
  double rfit = 0.05;   // RMS of the log-log fit residuals
  double noise_floor = 1e3 * std::numeric_limits<double>::epsilon();
};

enum class Verdict { apex_vanishing, apex_nonvanishing, inconclusive };
std::string to_string(Verdict v);

struct DecayReport {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  Verdict verdict = Verdict::inconclusive;
  DecayThresholds thresholds;
  bool exact_zero = false;
  std::vector<double> running_slopes;  // local slope at each sweep point
  TauSweep sweep;
};

// ∫_{K^{r0}} F1·W + ∫_{K^{r0}} F2·V with the CGO pair of `params` centred at
// the apex. Empty densities count as zero.
cplx cgo_functional(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                    const CgoParameters& params, const Medium& medium, ProbeMode mode,
                    const QuadratureOptions& quad = {});

// ∫_{K^{r0}} |y|^α e^{τ d·y} dy.
cplx holder_moment(const TruncatedCone& tc, double alpha, const CgoParameters& params,
                   const QuadratureOptions& quad = {});

TauSweep sweep_functional(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                          const CgoParameters& base, const Medium& medium, ProbeMode mode,
                          const std::vector<double>& taus, const QuadratureOptions& quad = {});

// Least-squares fit of log|value| against log τ. Throws TooFewPoints below
// five points and BelowNoiseFloor when a modulus is at or below the floor.
DecayReport decay_exponent(const TauSweep& sweep, const DecayThresholds& thresholds = {});

// Truncation radius giving c τ_min r0 = exponent, with c the decay constant
// of d on the closed patch. The cut-off then contributes e^{-exponent}.
double recommended_radius(const PolyhedralCone& cone, const CgoParameters& params, double tau_min,
                          double exponent = 50.0);

struct ClassifyConfig {
  std::size_t edge_index = 0;
  std::optional<double> s;             // explicit slope parameter
  std::optional<CVec3> constant_part;  // drives select_s when given
  std::vector<double> taus;            // empty: geometric_taus(k)
  DecayThresholds thresholds;
  QuadratureOptions quad;
};

struct ApexClassification {
  DecayReport electric;  // probes F2(x0)
  DecayReport magnetic;  // probes F1(x0)
  double s = 0.0;
};

// The s used by classify_apex: explicit, else select_s on the constant part
// over [κ/24, κ/3], else κ/6.
double classification_s(const PolyhedralCone& cone, const ClassifyConfig& config);

ApexClassification classify_apex(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                                 const Medium& medium, const ClassifyConfig& config = {});

struct ApexEstimateOptions {
  std::optional<double> alpha;  // Hölder index of the remainder; fitted when absent
  std::vector<double> taus;     // empty: geometric_taus(k)
  QuadratureOptions quad;
};

struct ApexEstimate {
  cplx value;           // estimate of F(x0)·p∞
  double error_bar = 0.0;
  double alpha = 0.0;   // exponent used for the extrapolation
  CVec3 p_inf;
  std::vector<double> taus;
  std::vector<cplx> ratios;        // r(τ) = ∫F·p e / ∫e
  std::vector<cplx> extrapolants;  // one per consecutive pair of τ
};

// Extrapolates r(τ) = ∫F·p e^{ρ·y} / ∫e^{ρ·y} to τ → ∞. The d⊥ and d parts of
// p are extrapolated separately in τ^{-α}, so constant densities are exact.
// Throws ExtrapolationUnstable when successive extrapolants stop converging.
ApexEstimate estimate_apex_value(const VectorFn& f, const TruncatedCone& tc,
                                 const CgoParameters& family, const ApexEstimateOptions& options = {});

// Solves F0·p∞_j = value_j for three estimates with independent p∞.
CVec3 recover_apex_vector(const std::array<ApexEstimate, 3>& estimates);

using ReciprocityDomain = std::variant<Box, ConvexPolyhedron>;

struct ReciprocityOptions {
  int order = 16;  // Gauss points per direction on cells and faces
};

struct ReciprocityReport {
  cplx lhs1, rhs1, lhs2, rhs2;
  double floor1 = 0.0, floor2 = 0.0;
  double residual1 = 0.0, residual2 = 0.0;
};

// Both integral identities for manufactured (E, H) with J1 = curl E - iωμ0 H,
// J2 = curl H + iωε0 E and a test pair solving the homogeneous equations:
//   ∫ J1·W + J2·V          = ∮ W·(ν×E) + V·(ν×H),
//   ε0 ∫ J1·V - μ0 ∫ J2·W  = ε0 ∮ V·(ν×E) - μ0 ∮ W·(ν×H).
// residual = |lhs - rhs| / (|lhs| + |rhs| + floor) with floor the integral of
// the absolute boundary integrands.
ReciprocityReport reciprocity_check(const ReciprocityDomain& domain, const AnalyticField& e,
                                    const AnalyticField& h, const ExpMaxwellPair& test,
                                    const Medium& medium, const ReciprocityOptions& options = {});

struct UniquenessReport {
  double difference = 0.0;
  double floor = 0.0;
  bool distinguishable = false;
};

// Requires polyhedral (box or convex-polyhedron) supports. The floor is the
// measured radiationless floor on a ball enclosing both supports at the peak
// density of the two scenes; distinguishable iff difference ≥ 10 floor.
UniquenessReport uniqueness_demo(const CurrentSource& a, const CurrentSource& b,
                                 const Medium& medium, const SphereGrid& grid,
                                 const SourceQuadratureOptions& options = {});

}  // namespace cornerem
