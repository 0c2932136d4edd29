// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Complex geometrical optics (CGO) Maxwell solutions adapted to a corner:
//
//   d   = (z - s w1) / sqrt(1 + s^2),     d⊥ = w1 × z,
//   rho = tau d + i sqrt(tau^2 + k^2) d⊥,
//   p   = d⊥ - i sqrt(1 + k^2/tau^2) d,
//
// so that rho·rho = -k^2, p·rho = 0 and rho × p = -(k^2/tau) d × d⊥.

#pragma once

#include <cstddef>
#include <optional>

#include "cornerem/cone.hpp"
#include "cornerem/linalg.hpp"
#include "cornerem/medium.hpp"

namespace cornerem {

// Which range of the slope parameter s a construction accepts.
enum class SRange {
  // 0 < s < s0: the range on which |τ³ ∫_K e^{ρ·x}| > 16π κ⁻³ is certified.
  lower_bound,
  // 0 < s ≤ κ/3: d·θ < 0 on the whole closed cone and d·θ ≤ -κ/2 away from
  // the simplicial sub-cone around w1.
  admissible,
};

struct CgoParameters {
  double k = 0.0;
  double tau = 0.0;
  double s = 0.0;
  double s0 = 0.0;
  double kappa = 0.0;
  std::size_t edge_index = 0;
  Vec3 w1, z, d, d_perp;
  CVec3 rho, p;
};

// s0 = min(κ/3, |det[w1 w2 w3]| κ³ / (128π)) with w2, w3 the fan neighbours of w1.
double s_upper_bound(const PolyhedralCone& cone, std::size_t edge_index);

// Largest s accepted by build_cgo for the given range.
double s_limit(const PolyhedralCone& cone, std::size_t edge_index, SRange range);

CgoParameters build_cgo(const PolyhedralCone& cone, std::size_t edge_index, double k, double tau,
                        double s, SRange range = SRange::lower_bound);

// Same direction data (s, z, d, d⊥), new tau.
CgoParameters with_tau(const CgoParameters& params, double tau);

// lim_{tau->inf} p = d⊥ - i d.
CVec3 p_limit(const CgoParameters& params);

// min_j (-d·w_j): the largest c with d·θ ≤ -c on the closed spherical patch.
double decay_constant(const PolyhedralCone& cone, const Vec3& d);

struct SSelection {
  double s;
  cplx limit;  // lim_{tau->inf} F0·p at this s
};

struct SInterval {
  double lo;
  double hi;
};

// Grid search (64 geometric samples, largest s first) for the s maximizing
// |b3 + i(s b1 - b2)/sqrt(1+s^2)| where F0 = b1 w1 + b2 z + b3 d⊥. The default
// interval is [1e-6 s0, (1 - 1e-6) s0].
SSelection select_s(const CVec3& f0, const PolyhedralCone& cone, std::size_t edge_index,
                    std::optional<SInterval> interval = std::nullopt);

// |p·ρ|, |ρ·ρ + k²|/k² and |ρ×p + (k²/τ) d×d⊥| τ/k².
struct CgoIdentityResiduals {
  double p_dot_rho = 0.0;
  double dispersion = 0.0;
  double cross_identity = 0.0;
};

// Residuals of the stored double vectors. The dispersion and cross terms
// cancel sums of size |ρ|², so they sit near ε|ρ|²/k² however ρ is rounded.
CgoIdentityResiduals cgo_identity_residuals(const CgoParameters& params);

// The same identities with d, d⊥, ρ and p rebuilt from (w1, z, s, τ, k) in
// long double, which isolates the algebra of the construction from the
// conditioning of the double representation.
CgoIdentityResiduals cgo_identity_residuals_extended(const CgoParameters& params);

enum class ProbeMode { electric, magnetic };

// Plane-exponential Maxwell pair V = v0 e^{ρ·(x-origin)}, W = w0 e^{ρ·(x-origin)}
// solving curl V - iωμ0 W = 0, curl W + iωε0 V = 0.
struct ExpMaxwellPair {
  CVec3 rho;
  CVec3 v0;
  CVec3 w0;
  Vec3 origin;

  cplx phase(const Vec3& x) const { return std::exp(dot(rho, x - origin)); }
  CVec3 V(const Vec3& x) const { return v0 * phase(x); }
  CVec3 W(const Vec3& x) const { return w0 * phase(x); }
  CVec3 curl_V(const Vec3& x) const { return cross(rho, v0) * phase(x); }
  CVec3 curl_W(const Vec3& x) const { return cross(rho, w0) * phase(x); }
};

// electric-probe: V = p e, W = (ρ×p) e / (iωμ0)
// magnetic-probe: V = -(ρ×p) e / (iωε0), W = p e
// Throws DispersionMismatch unless k² = ω² ε0 μ0 to 1e-12 relative.
ExpMaxwellPair cgo_fields(const CgoParameters& params, const Medium& medium, ProbeMode mode,
                          const Vec3& origin = {});

// Propagating pair with direction q and polarization pol ⊥ q (real unit vectors).
ExpMaxwellPair plane_wave_pair(const Vec3& direction, const Vec3& polarization,
                               const Medium& medium);

}  // namespace cornerem
