// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/cgo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "cornerem/error.hpp"

namespace cornerem {
namespace {

constexpr cplx kI{0.0, 1.0};

void fill_tau_dependent(CgoParameters& c) {
  // Both radicands are positive reals, so the principal branch is the only one.
  const double im_scale = std::sqrt(c.tau * c.tau + c.k * c.k);
  const double p_scale = std::sqrt(1.0 + (c.k * c.k) / (c.tau * c.tau));
  c.rho = to_complex(c.d) * c.tau + to_complex(c.d_perp) * (kI * im_scale);
  c.p = to_complex(c.d_perp) - to_complex(c.d) * (kI * p_scale);
}

}  // namespace

double s_upper_bound(const PolyhedralCone& cone, std::size_t edge_index) {
  const Separator sep = separating_direction(cone, edge_index);
  const auto nb = cone.fan_neighbors(edge_index);
  const double det = std::abs(det3(cone.edge(edge_index), cone.edge(nb[0]), cone.edge(nb[1])));
  const double kappa = sep.kappa;
  return std::min(kappa / 3.0, det * kappa * kappa * kappa / (128.0 * kPi));
}

double s_limit(const PolyhedralCone& cone, std::size_t edge_index, SRange range) {
  if (range == SRange::lower_bound) return s_upper_bound(cone, edge_index);
  return separating_direction(cone, edge_index).kappa / 3.0;
}

CgoParameters build_cgo(const PolyhedralCone& cone, std::size_t edge_index, double k, double tau,
                        double s, SRange range) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "wavenumber must be positive");
  if (!(tau >= k)) throw Error(ErrorKind::TauBelowK, "tau must satisfy tau >= k");
  const Separator sep = separating_direction(cone, edge_index);
  CgoParameters c;
  c.k = k;
  c.tau = tau;
  c.s = s;
  c.kappa = sep.kappa;
  c.edge_index = edge_index;
  c.s0 = s_upper_bound(cone, edge_index);
  const bool in_range = range == SRange::lower_bound ? (s > 0.0 && s < c.s0)
                                                     : (s > 0.0 && s <= c.kappa / 3.0);
  if (!in_range) {
    throw Error(ErrorKind::SOutOfRange,
                "s = " + std::to_string(s) + " outside the accepted interval (s0 = " +
                    std::to_string(c.s0) + ", kappa/3 = " + std::to_string(c.kappa / 3.0) + ")");
  }
  c.w1 = cone.edge(edge_index);
  c.z = sep.z;
  c.d = (c.z - s * c.w1) / std::sqrt(1.0 + s * s);
  c.d_perp = cross(c.w1, c.z);
  fill_tau_dependent(c);
  return c;
}

CgoParameters with_tau(const CgoParameters& params, double tau) {
  if (!(tau >= params.k)) throw Error(ErrorKind::TauBelowK, "tau must satisfy tau >= k");
  CgoParameters c = params;
  c.tau = tau;
  fill_tau_dependent(c);
  return c;
}

CgoIdentityResiduals cgo_identity_residuals(const CgoParameters& c) {
  const double k2 = c.k * c.k;
  return {std::abs(dot(c.p, c.rho)), std::abs(dot(c.rho, c.rho) + k2) / k2,
          norm(cross(c.rho, c.p) + (k2 / c.tau) * cross(c.d, c.d_perp)) * c.tau / k2};
}

namespace {
using LD = long double;
using LC = std::complex<long double>;
using V = std::array<LD, 3>;
using CV = std::array<LC, 3>;

template <class A, class B>
auto dot3(const A& a, const B& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
template <class T>
std::array<T, 3> cross3(const std::array<T, 3>& a, const std::array<T, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
V unit(V v) {
  const LD n = std::sqrt(dot3(v, v));
  for (auto& x : v) x /= n;
  return v;
}
}  // namespace

CgoIdentityResiduals cgo_identity_residuals_extended(const CgoParameters& c) {
  const V w = unit({c.w1.x, c.w1.y, c.w1.z});
  V z{c.z.x, c.z.y, c.z.z};
  const LD zw = dot3(z, w);
  for (int i = 0; i < 3; ++i) z[i] -= zw * w[i];
  z = unit(z);
  const LD s = c.s, tau = c.tau, k = c.k, k2 = k * k;
  const LD ns = std::sqrt(1.0L + s * s);
  V d, dp = cross3(w, z);
  for (int i = 0; i < 3; ++i) d[i] = (z[i] - s * w[i]) / ns;
  const LD beta = std::sqrt(tau * tau + k2);
  const LD gamma = std::sqrt(1.0L + k2 / (tau * tau));
  CV rho, p, dc, dpc;
  for (int i = 0; i < 3; ++i) {
    rho[i] = LC(tau * d[i], beta * dp[i]);
    p[i] = LC(dp[i], -gamma * d[i]);
    dc[i] = d[i];
    dpc[i] = dp[i];
  }
  const CV rp = cross3(rho, p), ddp = cross3(dc, dpc);
  LD cr = 0;
  for (int i = 0; i < 3; ++i) cr += std::norm(rp[i] + (k2 / tau) * ddp[i]);
  return {static_cast<double>(std::abs(dot3(p, rho))),
          static_cast<double>(std::abs(dot3(rho, rho) + k2) / k2),
          static_cast<double>(std::sqrt(cr) * tau / k2)};
}

CVec3 p_limit(const CgoParameters& params) {
  return to_complex(params.d_perp) - to_complex(params.d) * kI;
}

double decay_constant(const PolyhedralCone& cone, const Vec3& d) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& w : cone.edges()) c = std::min(c, -dot(d, w.vec()));
  return c;
}

SSelection select_s(const CVec3& f0, const PolyhedralCone& cone, std::size_t edge_index,
                    std::optional<SInterval> interval) {
  if (!(norm(f0) > 1e-14)) throw Error(ErrorKind::ZeroSource, "F0 vanishes");
  const Separator sep = separating_direction(cone, edge_index);
  const Vec3& w1 = cone.edge(edge_index);
  const Vec3 z = sep.z;
  const Vec3 dp = cross(w1, z);
  // (w1, z, d⊥) is orthonormal, so the coordinates are bilinear projections.
  const cplx b1 = dot(f0, w1), b2 = dot(f0, z), b3 = dot(f0, dp);

  SInterval iv;
  if (interval) {
    iv = *interval;
  } else {
    const double s0 = s_upper_bound(cone, edge_index);
    iv = {1e-6 * s0, (1.0 - 1e-6) * s0};
  }
  if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo)) {
    throw Error(ErrorKind::SOutOfRange, "invalid s interval");
  }
  constexpr int kSamples = 64;
  const double ratio = std::pow(iv.lo / iv.hi, 1.0 / (kSamples - 1));
  SSelection best{iv.hi, 0.0};
  double best_abs = -1.0;
  double s = iv.hi;
  for (int j = 0; j < kSamples; ++j, s *= ratio) {
    const double sj = (j == kSamples - 1) ? iv.lo : s;
    const cplx lim = b3 + kI * (sj * b1 - b2) / std::sqrt(1.0 + sj * sj);
    if (std::abs(lim) > best_abs) {
      best_abs = std::abs(lim);
      best = {sj, lim};
    }
  }
  return best;
}

ExpMaxwellPair cgo_fields(const CgoParameters& params, const Medium& medium, ProbeMode mode,
                          const Vec3& origin) {
  const double k2 = params.k * params.k;
  const double m2 = medium.omega * medium.omega * medium.eps0 * medium.mu0;
  if (!(std::abs(k2 - m2) <= 1e-12 * std::max(k2, m2))) {
    throw Error(ErrorKind::DispersionMismatch, "k^2 != omega^2 eps0 mu0");
  }
  const CVec3 rp = cross(params.rho, params.p);
  ExpMaxwellPair pair;
  pair.rho = params.rho;
  pair.origin = origin;
  if (mode == ProbeMode::electric) {
    pair.v0 = params.p;
    pair.w0 = rp / (kI * medium.omega * medium.mu0);
  } else {
    pair.v0 = -rp / (kI * medium.omega * medium.eps0);
    pair.w0 = params.p;
  }
  return pair;
}

ExpMaxwellPair plane_wave_pair(const Vec3& direction, const Vec3& polarization,
                               const Medium& medium) {
  const UnitVector3 q = UnitVector3::normalize(direction);
  if (!(std::abs(dot(q.vec(), polarization)) <= 1e-12 * norm(polarization))) {
    throw Error(ErrorKind::InvalidArgument, "plane-wave polarization must be transverse");
  }
  const double k = medium.k();
  ExpMaxwellPair pair;
  pair.rho = to_complex(q.vec()) * (kI * k);
  pair.v0 = to_complex(polarization);
  pair.w0 = to_complex(cross(q.vec(), polarization)) * (k / (medium.omega * medium.mu0));
  return pair;
}

}  // namespace cornerem
