// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// verify-cgo, cone-integral and lower-bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "config.hpp"
#include "cornerem/cgo.hpp"
#include "cornerem/error.hpp"
#include "cornerem/fields.hpp"
#include "cornerem/io.hpp"
#include "cornerem/sampling.hpp"

namespace cornerem::cli::detail {
namespace {

using io::format_double;

constexpr double kAlgebraTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-6;

struct Draw {
  PolyhedralCone cone;
  CgoParameters params;
};

PolyhedralCone draw_cone(Rng& rng) {
  const std::size_t n = 3 + rng.index(4);
  return random_cone(rng, n, rng.uniform(0.35, 1.15));
}

// Radius at which tail_bound(r0, tau, c) equals `target` (it decreases in r0
// past the prefactor maximum, which lies below c τ r0 = 3).
double radius_for_tail(double tau, double c, double target) {
  double lo = 3.0 / (c * tau), hi = 400.0 / (c * tau);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_bound(mid, tau, c) > target ? lo : hi) = mid;
  }
  return hi;
}

// Relative residuals of curl V - iωμ0 W and curl W + iωε0 V by central
// differences, each scaled by the sizes of the two terms it balances.
std::pair<double, double> maxwell_residuals(const ExpMaxwellPair& f, const Medium& m,
                                            const Vec3& x) {
  const double rho = norm(f.rho);
  const double h = 1e-4 / std::max(1.0, rho);
  const cplx iwm{0.0, m.omega * m.mu0}, iwe{0.0, m.omega * m.eps0};
  const CVec3 v = f.V(x), w = f.W(x);
  const CVec3 cv = finite_difference_curl([&](const Vec3& y) { return f.V(y); }, x, h);
  const CVec3 cw = finite_difference_curl([&](const Vec3& y) { return f.W(y); }, x, h);
  const double r1 = norm(cv - iwm * w) / (rho * norm(v) + std::abs(iwm) * norm(w));
  const double r2 = norm(cw + iwe * v) / (rho * norm(w) + std::abs(iwe) * norm(v));
  return {r1, r2};
}

}  // namespace

void verify_cgo(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const int draws = integer_or(cfg, "draws", 1000, 1, 1000000);
  const int fd_points = integer_or(cfg, "fd_points", 100, 0, 1000000);
  const double tau_max = number_or(cfg, "tau_max", 1e3, 1.0, 1e6);
  const std::optional<PolyhedralCone> fixed =
      cfg.contains("cone") ? std::optional(cone_of(cfg, rec)) : std::nullopt;

  Rng rng(options.seed);
  auto draw = [&]() {
    PolyhedralCone cone = fixed ? *fixed : draw_cone(rng);
    const std::size_t edge = rng.index(cone.size());
    const double s0 = s_upper_bound(cone, edge);
    const double s = s0 * rng.uniform(1e-3, 1.0);
    const double tau = k * rng.log_uniform(1.0, tau_max);
    CgoParameters p = build_cgo(cone, edge, k, tau, s, SRange::lower_bound);
    return Draw{std::move(cone), std::move(p)};
  };

  // The identities are checked on the construction in extended precision;
  // the stored doubles are checked against their rounding floor
  // 64 ε max(1, |ρ|²/k²) (relative measures) or 64 ε |ρ| (for |p·ρ|).
  CgoIdentityResiduals worst{};
  double worst_rounding = 0.0;
  rec.write_artifact("cgo_identities.csv", [&](std::ostream& os) {
    os << "draw,n_edges,edge_index,s,s0,tau,p_dot_rho,dispersion,cross_identity,"
          "double_p_dot_rho,double_dispersion,double_cross_identity\n";
    for (int i = 0; i < draws; ++i) {
      const Draw d = draw();
      const CgoParameters& p = d.params;
      const CgoIdentityResiduals x = cgo_identity_residuals_extended(p);
      const CgoIdentityResiduals r = cgo_identity_residuals(p);
      worst.p_dot_rho = std::max(worst.p_dot_rho, x.p_dot_rho);
      worst.dispersion = std::max(worst.dispersion, x.dispersion);
      worst.cross_identity = std::max(worst.cross_identity, x.cross_identity);
      const double eps = std::numeric_limits<double>::epsilon();
      const double nr = norm(p.rho);
      const double cond = std::max(1.0, nr * nr / (k * k));
      worst_rounding = std::max({worst_rounding, r.p_dot_rho / (64.0 * eps * std::max(1.0, nr)),
                                 r.dispersion / (64.0 * eps * cond),
                                 r.cross_identity / (64.0 * eps * cond)});
      os << i << ',' << d.cone.size() << ',' << p.edge_index << ',' << format_double(p.s) << ','
         << format_double(p.s0) << ',' << format_double(p.tau) << ',' << format_double(x.p_dot_rho)
         << ',' << format_double(x.dispersion) << ',' << format_double(x.cross_identity) << ','
         << format_double(r.p_dot_rho) << ',' << format_double(r.dispersion) << ','
         << format_double(r.cross_identity) << '\n';
    }
  });

  double worst_fd = 0.0;
  rec.write_artifact("fd_residuals.csv", [&](std::ostream& os) {
    os << "point,mode,tau,x,y,z,faraday,ampere\n";
    for (int i = 0; i < fd_points; ++i) {
      const Draw d = draw();
      // Points within a few decay lengths of the apex keep e^{ρ·x} in range.
      const Vec3 x = d.cone.apex() + (rng.uniform(0.0, 3.0) / d.params.tau) * rng.direction().vec();
      for (ProbeMode mode : {ProbeMode::electric, ProbeMode::magnetic}) {
        const ExpMaxwellPair f = cgo_fields(d.params, medium, mode, d.cone.apex());
        const auto [r1, r2] = maxwell_residuals(f, medium, x);
        worst_fd = std::max({worst_fd, r1, r2});
        os << i << ',' << (mode == ProbeMode::electric ? "electric" : "magnetic") << ','
           << format_double(d.params.tau) << ',' << format_double(x.x) << ',' << format_double(x.y)
           << ',' << format_double(x.z) << ',' << format_double(r1) << ',' << format_double(r2)
           << '\n';
      }
    }
  });

  rec.check("max |p.rho|", worst.p_dot_rho, "<=", kAlgebraTolerance);
  rec.check("max |rho.rho + k^2| / k^2", worst.dispersion, "<=", kAlgebraTolerance);
  rec.check("max |rho x p + (k^2/tau) d x dperp| tau / k^2", worst.cross_identity, "<=",
            kAlgebraTolerance);
  rec.check("double-precision residuals / rounding floor", worst_rounding, "<=", 1.0);
  if (fd_points > 0) {
    rec.check("max finite-difference Maxwell residual", worst_fd, "<=", kResidualTolerance);
  }
  rec.results() = {{"draws", draws},
                   {"fd_points", fd_points},
                   {"max_p_dot_rho", worst.p_dot_rho},
                   {"max_dispersion", worst.dispersion},
                   {"max_cross_identity", worst.cross_identity},
                   {"max_double_over_rounding_floor", worst_rounding},
                   {"max_fd_residual", worst_fd}};
}

void cone_integral(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const QuadratureOptions quad = quadrature_of(cfg, options);

  // Closed-form sweep on the configured cone.
  const PolyhedralCone cone = cone_of(cfg, rec);
  const auto edge = static_cast<std::size_t>(integer_or(cfg, "edge_index", 0, 0, 1 << 20));
  if (edge >= cone.size()) throw Error(ErrorKind::InvalidArgument, "edge_index out of range");
  const double s0 = s_upper_bound(cone, edge);
  const double s = number_or(cfg, "s", 0.5 * s0, 0.0, s_limit(cone, edge, SRange::admissible));
  const SRange range = s < s0 ? SRange::lower_bound : SRange::admissible;
  const double r0 = number_or(cfg, "r0", 1.0, 1e-12, 1e12);
  const std::vector<double> taus = taus_of(cfg, k, 1.0, 1e3, 13);
  std::vector<io::ConeSweepRow> rows;
  for (double tau : taus) {
    const CgoParameters p = build_cgo(cone, edge, k, tau, s, range);
    const double inv = 1.0 / (p.kappa * tau);
    rows.push_back({tau, exponential_integral(cone, p.rho), 16.0 * kPi * inv * inv * inv,
                    tail_bound(r0, tau, decay_constant(cone, p.d))});
  }
  rec.write_artifact("cone_sweep.csv", [&](std::ostream& os) { io::write_cone_sweep_csv(os, rows); });

  // Closed form against quadrature on random truncated cones. Even-numbered
  // configurations use a moderate radius, c τ r0 ∈ [6, 10]; odd ones take the
  // radius at which tail_bound = 5e-11 |value|, so that the relative clause
  // is active. Both clauses are checked on every configuration.
  const int count = integer_or(cfg, "configurations", 20, 1, 10000);
  Rng rng(options.seed);
  double worst_tail_ratio = 0.0, worst_rel = 0.0;
  int rel_cases = 0;
  rec.write_artifact("cone_integral_checks.csv", [&](std::ostream& os) {
    os << "config,n_edges,edge_index,s,tau,r0,decay_constant,exact_re,exact_im,quad_re,quad_im,"
          "gap,tail_bound,relative_gap,relative_clause\n";
    for (int i = 0; i < count; ++i) {
      const PolyhedralCone c = draw_cone(rng);
      const std::size_t e = rng.index(c.size());
      const double kappa = separating_direction(c, e).kappa;
      const double si = kappa * rng.uniform(1.0 / 24.0, 1.0 / 3.0);
      const double tau = k * rng.log_uniform(1.0, 100.0);
      const CgoParameters p = build_cgo(c, e, k, tau, si, SRange::admissible);
      const double dc = decay_constant(c, p.d);
      const cplx exact = exponential_integral(c, p.rho);
      const double radius = i % 2 == 0 ? rng.uniform(6.0, 10.0) / (dc * tau)
                                       : radius_for_tail(tau, dc, 5e-11 * std::abs(exact));
      const QuadratureResult q =
          truncated_integral(TruncatedCone(c, radius), PureExponential{p.rho}, quad);
      const double gap = std::abs(exact - q.value);
      const double tb = tail_bound(radius, tau, dc);
      const double rel = gap / std::abs(exact);
      const bool relative_clause = tb < 1e-10 * std::abs(exact);
      worst_tail_ratio = std::max(worst_tail_ratio, gap / tb);
      if (relative_clause) {
        worst_rel = std::max(worst_rel, rel);
        ++rel_cases;
      }
      os << i << ',' << c.size() << ',' << e << ',' << format_double(si) << ','
         << format_double(tau) << ',' << format_double(radius) << ',' << format_double(dc) << ','
         << format_double(exact.real()) << ',' << format_double(exact.imag()) << ','
         << format_double(q.value.real()) << ',' << format_double(q.value.imag()) << ','
         << format_double(gap) << ',' << format_double(tb) << ',' << format_double(rel) << ','
         << (relative_clause ? 1 : 0) << '\n';
    }
  });

  rec.check("max |closed form - quadrature| / tail_bound", worst_tail_ratio, "<=", 1.0);
  rec.check("configurations inside the relative clause", static_cast<double>(rel_cases), ">=",
            static_cast<double>(count / 2));
  rec.check("max relative gap where tail_bound < 1e-10 |value|", worst_rel, "<=", 1e-6);
  rec.results() = {{"sweep", {{"edge_index", edge}, {"s", s}, {"s0", s0}, {"r0", r0}, {"points", rows.size()}}},
                   {"configurations", count},
                   {"relative_clause_cases", rel_cases},
                   {"max_gap_over_tail_bound", worst_tail_ratio},
                   {"max_relative_gap", worst_rel}};
}

void lower_bound(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  std::vector<PolyhedralCone> cones;
  if (cfg.contains("cones")) {
    for (const auto& c : cfg.at("cones")) {
      io::LoadedCone lc = io::cone_from_json(c);
      for (const auto& w : lc.warnings) rec.warn(w);
      cones.push_back(std::move(lc.cone));
    }
  } else {
    cones.push_back(cone_of(cfg, rec));
    Rng rng(options.seed);
    const int extra = integer_or(cfg, "random_cones", 4, 0, 1000);
    for (int i = 0; i < extra; ++i) cones.push_back(draw_cone(rng));
  }
  std::vector<double> fractions = {1e-3, 1e-2, 0.1, 0.5, 0.9, 0.999};
  if (cfg.contains("s_fractions")) {
    fractions.clear();
    for (const auto& f : cfg.at("s_fractions")) {
      const double v = io::to_real(f, "s_fractions");
      if (!(v > 0.0 && v < 1.0)) throw Error(ErrorKind::SOutOfRange, "s_fractions must lie in (0, 1)");
      fractions.push_back(v);
    }
  }
  const std::vector<double> taus = taus_of(cfg, k, 1.0, 1e3, 13);

  double worst_cone = std::numeric_limits<double>::infinity();
  double worst_simplicial = std::numeric_limits<double>::infinity();
  std::size_t cases = 0;
  rec.write_artifact("lower_bound.csv", [&](std::ostream& os) {
    os << "cone,edge_index,s,tau,re,im,abs,bound_lower,bound_tail,simplicial_abs,simplicial_bound\n";
    for (std::size_t ci = 0; ci < cones.size(); ++ci) {
      const PolyhedralCone& cone = cones[ci];
      for (std::size_t e = 0; e < cone.size(); ++e) {
        const double s0 = s_upper_bound(cone, e);
        const auto nb = cone.fan_neighbors(e);
        const SimplicialCone k0{cone.apex(), {cone.edge(e), cone.edge(nb[0]), cone.edge(nb[1])}};
        for (double f : fractions) {
          const double s = f * s0;
          for (double tau : taus) {
            const CgoParameters p = build_cgo(cone, e, k, tau, s, SRange::lower_bound);
            const cplx full = exponential_integral(cone, p.rho);
            const cplx part = exact_exponential_integral(k0, p.rho);
            const double t3 = tau * tau * tau;
            const double inv = 1.0 / p.kappa;
            const double bound = 16.0 * kPi * inv * inv * inv / t3;
            const double sbound = k0.abs_det() / (4.0 * s) / t3;
            worst_cone = std::min(worst_cone, std::abs(full) / bound);
            worst_simplicial = std::min(worst_simplicial, std::abs(part) / sbound);
            ++cases;
            os << ci << ',' << e << ',' << format_double(s) << ',' << format_double(tau) << ','
               << format_double(full.real()) << ',' << format_double(full.imag()) << ','
               << format_double(std::abs(full)) << ',' << format_double(bound) << ','
               << format_double(tail_bound(1.0, tau, decay_constant(cone, p.d))) << ','
               << format_double(std::abs(part)) << ',' << format_double(sbound) << '\n';
          }
        }
      }
    }
  });

  rec.check("min |tau^3 I_K| / (16 pi kappa^-3)", worst_cone, ">", 1.0);
  rec.check("min |tau^3 I_K0| / (|det| / 4s)", worst_simplicial, ">", 1.0);
  rec.results() = {{"cones", cones.size()},
                   {"cases", cases},
                   {"min_ratio_cone", worst_cone},
                   {"min_ratio_simplicial", worst_simplicial}};
}

}  // namespace cornerem::cli::detail
