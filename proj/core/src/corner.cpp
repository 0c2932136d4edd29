// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/corner.hpp"

#include <algorithm>
#include <cmath>

#include "cornerem/error.hpp"
#include "cornerem/quadrature.hpp"

namespace cornerem {
namespace {

constexpr cplx kI{0.0, 1.0};

struct LineFit {
  double slope, intercept, rms;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (icpt + slope * x[i]);
    ss += r * r;
  }
  return {slope, icpt, std::sqrt(ss / n)};
}

std::vector<double> taus_or_default(const std::vector<double>& taus, double k) {
  return taus.empty() ? geometric_taus(k) : taus;
}

// Quadrature points and outward normals on the boundary of a domain.
struct SurfaceRule {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<double> weights;
};

SurfaceRule surface_rule(const ReciprocityDomain& domain, int order) {
  SurfaceRule out;
  if (const auto* box = std::get_if<Box>(&domain)) {
    const Rule1D g = gauss_legendre(order, 0.0, 1.0);
    for (int axis = 0; axis < 3; ++axis) {
      const int a = (axis + 1) % 3, b = (axis + 2) % 3;
      const double la = box->hi[a] - box->lo[a], lb = box->hi[b] - box->lo[b];
      for (int side = 0; side < 2; ++side) {
        Vec3 nrm{};
        nrm[axis] = side == 0 ? -1.0 : 1.0;
        for (int i = 0; i < order; ++i)
          for (int j = 0; j < order; ++j) {
            Vec3 p{};
            p[axis] = side == 0 ? box->lo[axis] : box->hi[axis];
            p[a] = box->lo[a] + la * g.nodes[i];
            p[b] = box->lo[b] + lb * g.nodes[j];
            out.points.push_back(p);
            out.normals.push_back(nrm);
            out.weights.push_back(g.weights[i] * g.weights[j] * la * lb);
          }
      }
    }
  } else {
    const auto& poly = std::get<ConvexPolyhedron>(domain);
    const auto& v = poly.vertices();
    for (const auto& f : poly.facets()) {
      for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
        const PointRule t =
            triangle_rule(v[f.vertices[0]], v[f.vertices[i]], v[f.vertices[i + 1]], order);
        for (std::size_t q = 0; q < t.size(); ++q) {
          out.points.push_back(t.points[q]);
          out.normals.push_back(f.normal);
          out.weights.push_back(t.weights[q]);
        }
      }
    }
  }
  return out;
}

PointRule volume_rule(const ReciprocityDomain& domain, int order) {
  if (const auto* box = std::get_if<Box>(&domain)) return box_rule(box->lo, box->hi, {order, order, order});
  PointRule r;
  for (const auto& t : std::get<ConvexPolyhedron>(domain).tetrahedra()) r.append(tetrahedron_rule(t, order));
  return r;
}

double relative_residual(cplx lhs, cplx rhs, double floor) {
  const double den = std::abs(lhs) + std::abs(rhs) + floor;
  return den > 0.0 ? std::abs(lhs - rhs) / den : 0.0;
}

void polyhedral_vertices(const Support& s, std::vector<Vec3>& out) {
  if (const auto* p = std::get_if<ConvexPolyhedron>(&s)) {
    out.insert(out.end(), p->vertices().begin(), p->vertices().end());
  } else if (const auto* b = std::get_if<Box>(&s)) {
    for (int i = 0; i < 8; ++i) {
      out.push_back({(i & 1) ? b->hi.x : b->lo.x, (i & 2) ? b->hi.y : b->lo.y,
                     (i & 4) ? b->hi.z : b->lo.z});
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "uniqueness demo needs polyhedral supports");
  }
}

}  // namespace

std::vector<double> geometric_taus(double k, double lo, double hi, int n) {
  if (!(k > 0.0) || !(lo >= 1.0) || !(hi > lo) || n < 2) {
    throw Error(ErrorKind::InvalidArgument, "tau sweep needs k > 0, 1 <= lo < hi and n >= 2");
  }
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = k * lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return t;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::apex_vanishing: return "apex-vanishing";
    case Verdict::apex_nonvanishing: return "apex-nonvanishing";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

cplx cgo_functional(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                    const CgoParameters& params, const Medium& medium, ProbeMode mode,
                    const QuadratureOptions& quad) {
  if (!f1 && !f2) return {};
  const ExpMaxwellPair pair = cgo_fields(params, medium, mode, tc.cone.apex());
  const Vec3 apex = tc.cone.apex();
  const CVec3 rho = pair.rho, v0 = pair.v0, w0 = pair.w0;
  GeneralIntegrand g{[=](const Vec3& x) {
                       cplx acc{};
                       if (f1) acc += dot(f1(x), w0);
                       if (f2) acc += dot(f2(x), v0);
                       return acc * std::exp(dot(rho, x - apex));
                     },
                     rho};
  return truncated_integral(tc, g, quad).value;
}

cplx holder_moment(const TruncatedCone& tc, double alpha, const CgoParameters& params,
                   const QuadratureOptions& quad) {
  return truncated_integral(tc, HolderWeighted{alpha, params.d, params.tau}, quad).value;
}

TauSweep sweep_functional(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                          const CgoParameters& base, const Medium& medium, ProbeMode mode,
                          const std::vector<double>& taus, const QuadratureOptions& quad) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] >= base.k)) throw Error(ErrorKind::TauBelowK, "sweep tau below k");
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "sweep taus must increase strictly");
    }
  }
  TauSweep sw;
  sw.taus = taus;
  for (double tau : taus) {
    CgoParameters p = with_tau(base, tau);
    sw.values.push_back(cgo_functional(f1, f2, tc, p, medium, mode, quad));
    sw.params.push_back(p);
  }
  return sw;
}

DecayReport decay_exponent(const TauSweep& sweep, const DecayThresholds& th) {
  const std::size_t n = sweep.taus.size();
  if (n < 5 || sweep.values.size() != n) {
    throw Error(ErrorKind::TooFewPoints, "decay fit needs at least five sweep points");
  }
  std::vector<double> lt(n), lv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(sweep.values[i]);
    if (!(a > th.noise_floor)) {
      throw Error(ErrorKind::BelowNoiseFloor, "functional modulus at or below the noise floor");
    }
    lt[i] = std::log(sweep.taus[i]);
    lv[i] = std::log(a);
  }
  const LineFit fit = fit_line(lt, lv);
  DecayReport r;
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.residual = fit.rms;
  r.thresholds = th;
  r.sweep = sweep;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i == 0 ? 1 : i;
    r.running_slopes.push_back((lv[b] - lv[a]) / (lt[b] - lt[a]));
  }
  if (std::abs(fit.slope + 3.0) <= th.delta && fit.rms < th.rfit) {
    r.verdict = Verdict::apex_nonvanishing;
  } else if (fit.slope <= -3.0 - th.gap) {
    r.verdict = Verdict::apex_vanishing;
  } else {
    r.verdict = Verdict::inconclusive;
  }
  return r;
}

double recommended_radius(const PolyhedralCone& cone, const CgoParameters& params, double tau_min,
                          double exponent) {
  const double c = decay_constant(cone, params.d);
  if (!(c > 0.0) || !(tau_min > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "decay constant and tau must be positive");
  }
  return exponent / (c * tau_min);
}

double classification_s(const PolyhedralCone& cone, const ClassifyConfig& config) {
  if (config.s) return *config.s;
  const double hi = s_limit(cone, config.edge_index, SRange::admissible);
  if (config.constant_part && norm(*config.constant_part) > 1e-14) {
    return select_s(*config.constant_part, cone, config.edge_index, SInterval{hi / 8.0, hi}).s;
  }
  return 0.5 * hi;
}

ApexClassification classify_apex(const VectorFn& f1, const VectorFn& f2, const TruncatedCone& tc,
                                 const Medium& medium, const ClassifyConfig& config) {
  const double k = medium.k();
  const std::vector<double> taus = taus_or_default(config.taus, k);
  ApexClassification out;
  out.s = classification_s(tc.cone, config);
  const CgoParameters base =
      build_cgo(tc.cone, config.edge_index, k, taus.front(), out.s, SRange::admissible);
  for (ProbeMode mode : {ProbeMode::electric, ProbeMode::magnetic}) {
    const TauSweep sw = sweep_functional(f1, f2, tc, base, medium, mode, taus, config.quad);
    DecayReport rep;
    const bool all_zero = std::all_of(sw.values.begin(), sw.values.end(), [&](cplx v) {
      return !(std::abs(v) > config.thresholds.noise_floor);
    });
    if (all_zero) {
      rep.verdict = Verdict::apex_vanishing;
      rep.exact_zero = true;
      rep.thresholds = config.thresholds;
      rep.sweep = sw;
    } else {
      rep = decay_exponent(sw, config.thresholds);
    }
    (mode == ProbeMode::electric ? out.electric : out.magnetic) = std::move(rep);
  }
  return out;
}

ApexEstimate estimate_apex_value(const VectorFn& f, const TruncatedCone& tc,
                                 const CgoParameters& family, const ApexEstimateOptions& options) {
  if (!f) throw Error(ErrorKind::InvalidArgument, "apex estimate needs a density");
  const std::vector<double> taus = taus_or_default(options.taus, family.k);
  const std::size_t n = taus.size();
  if (n < 3) throw Error(ErrorKind::TooFewPoints, "apex estimate needs at least three taus");
  if (options.alpha && !(*options.alpha > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "extrapolation exponent must be positive");
  }

  ApexEstimate est;
  est.taus = taus;
  est.p_inf = p_limit(family);
  const CVec3 dp = to_complex(family.d_perp), dd = to_complex(family.d);
  std::vector<cplx> a_perp(n), a_d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CgoParameters p = with_tau(family, taus[i]);
    const cplx base = truncated_integral(tc, PureExponential{p.rho}, options.quad).value;
    a_perp[i] = truncated_integral(tc, VectorDotted{f, dp, p.rho}, options.quad).value / base;
    a_d[i] = truncated_integral(tc, VectorDotted{f, dd, p.rho}, options.quad).value / base;
    const double beta = std::sqrt(1.0 + (p.k / p.tau) * (p.k / p.tau));
    est.ratios.push_back(a_perp[i] - kI * beta * a_d[i]);
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max({scale, std::abs(a_perp[i]), std::abs(a_d[i])});
  const double noise = 1e-7 * std::max(scale, 1e-300);

  std::vector<double> dif(n - 1);
  bool resolved = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dif[i] = std::hypot(std::abs(a_perp[i + 1] - a_perp[i]), std::abs(a_d[i + 1] - a_d[i]));
    resolved = resolved || dif[i] > noise;
  }

  if (!resolved) {
    // Constant ratio: the density equals its apex value on the cone.
    est.alpha = options.alpha.value_or(1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) est.extrapolants.push_back(a_perp[i + 1] - kI * a_d[i + 1]);
    est.value = est.extrapolants.back();
    est.error_bar = std::abs(est.extrapolants.back() - est.extrapolants[est.extrapolants.size() - 2]);
    return est;
  }

  auto extrapolate = [&](std::size_t i, double alpha) {
    const double t0 = std::pow(taus[i], -alpha), t1 = std::pow(taus[i + 1], -alpha);
    const cplx ep = (a_perp[i + 1] * t0 - a_perp[i] * t1) / (t0 - t1);
    const cplx ed = (a_d[i + 1] * t0 - a_d[i] * t1) / (t0 - t1);
    return ep - kI * ed;
  };
  if (options.alpha) {
    est.alpha = *options.alpha;
    for (std::size_t i = 0; i + 1 < n; ++i) est.extrapolants.push_back(extrapolate(i, est.alpha));
  } else {
    if (n < 4) throw Error(ErrorKind::TooFewPoints, "fitting alpha needs at least four taus");
    // Local exponent from three consecutive points: the ratio of successive
    // differences of a·τ^{-α} pins α.
    for (std::size_t i = 0; i + 2 < n; ++i) {
      if (!(dif[i] > noise && dif[i + 1] > noise)) {
        throw Error(ErrorKind::ExtrapolationUnstable, "differences below noise while fitting alpha");
      }
      const double target = dif[i] / dif[i + 1];
      auto ratio = [&](double a) {
        const double u0 = std::pow(taus[i], -a), u1 = std::pow(taus[i + 1], -a),
                     u2 = std::pow(taus[i + 2], -a);
        return (u0 - u1) / (u1 - u2);
      };
      double lo = 1e-3, hi = 3.0;
      if (!(target > ratio(lo) && target < ratio(hi))) {
        throw Error(ErrorKind::ExtrapolationUnstable,
                    "remainder exponent outside (0, 3) at tau = " + std::to_string(taus[i]));
      }
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ratio(mid) < target ? lo : hi) = mid;
      }
      est.alpha = 0.5 * (lo + hi);
      est.extrapolants.push_back(extrapolate(i + 1, est.alpha));
    }
  }

  const auto& ex = est.extrapolants;
  double emax = 0.0;
  for (const auto& e : ex) emax = std::max(emax, std::abs(e));
  const double e_noise = 1e-6 * emax;
  for (std::size_t j = 0; j + 2 < ex.size(); ++j) {
    const double d0 = std::abs(ex[j + 1] - ex[j]);
    const double d1 = std::abs(ex[j + 2] - ex[j + 1]);
    if (d1 > d0 && d1 > e_noise) {
      throw Error(ErrorKind::ExtrapolationUnstable,
                  "extrapolant differences grow at tau = " + std::to_string(taus[j + 2]));
    }
  }
  est.value = ex.back();
  est.error_bar = std::abs(ex.back() - ex[ex.size() - 2]);
  return est;
}

CVec3 recover_apex_vector(const std::array<ApexEstimate, 3>& e) {
  const CVec3 c0{e[0].p_inf.x, e[1].p_inf.x, e[2].p_inf.x};
  const CVec3 c1{e[0].p_inf.y, e[1].p_inf.y, e[2].p_inf.y};
  const CVec3 c2{e[0].p_inf.z, e[1].p_inf.z, e[2].p_inf.z};
  const double scale = norm(e[0].p_inf) * norm(e[1].p_inf) * norm(e[2].p_inf);
  const auto sol = solve_columns(c0, c1, c2, CVec3{e[0].value, e[1].value, e[2].value}, 1e-8 * scale);
  if (!sol) throw Error(ErrorKind::InvalidArgument, "probe directions p∞ are linearly dependent");
  return *sol;
}

ReciprocityReport reciprocity_check(const ReciprocityDomain& domain, const AnalyticField& e,
                                    const AnalyticField& h, const ExpMaxwellPair& test,
                                    const Medium& medium, const ReciprocityOptions& options) {
  if (options.order < 1) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
  const cplx iwmu = kI * medium.omega * medium.mu0;
  const cplx iweps = kI * medium.omega * medium.eps0;
  const double eps0 = medium.eps0, mu0 = medium.mu0;

  const PointRule vol = volume_rule(domain, options.order);
  std::vector<cplx> t1(vol.size()), t2(vol.size());
  for (std::size_t i = 0; i < vol.size(); ++i) {
    const Vec3& x = vol.points[i];
    const CVec3 ev = e.value(x), hv = h.value(x);
    const CVec3 j1 = e.curl(x) - iwmu * hv;
    const CVec3 j2 = h.curl(x) + iweps * ev;
    const CVec3 v = test.V(x), w = test.W(x);
    t1[i] = vol.weights[i] * (dot(j1, w) + dot(j2, v));
    t2[i] = vol.weights[i] * (eps0 * dot(j1, v) - mu0 * dot(j2, w));
  }

  const SurfaceRule surf = surface_rule(domain, options.order);
  std::vector<cplx> b1(surf.points.size()), b2(surf.points.size());
  std::vector<double> f1(surf.points.size()), f2(surf.points.size());
  for (std::size_t i = 0; i < surf.points.size(); ++i) {
    const Vec3& x = surf.points[i];
    const Vec3& nu = surf.normals[i];
    const CVec3 ne = cross(nu, e.value(x)), nh = cross(nu, h.value(x));
    const CVec3 v = test.V(x), w = test.W(x);
    const cplx we = dot(w, ne), vh = dot(v, nh), ve = dot(v, ne), wh = dot(w, nh);
    const double wt = surf.weights[i];
    b1[i] = wt * (we + vh);
    b2[i] = wt * (eps0 * ve - mu0 * wh);
    f1[i] = wt * (std::abs(we) + std::abs(vh));
    f2[i] = wt * (eps0 * std::abs(ve) + mu0 * std::abs(wh));
  }

  ReciprocityReport r;
  r.lhs1 = pairwise_sum<cplx>(t1);
  r.lhs2 = pairwise_sum<cplx>(t2);
  r.rhs1 = pairwise_sum<cplx>(b1);
  r.rhs2 = pairwise_sum<cplx>(b2);
  r.floor1 = pairwise_sum<double>(f1);
  r.floor2 = pairwise_sum<double>(f2);
  r.residual1 = relative_residual(r.lhs1, r.rhs1, r.floor1);
  r.residual2 = relative_residual(r.lhs2, r.rhs2, r.floor2);
  return r;
}

UniquenessReport uniqueness_demo(const CurrentSource& a, const CurrentSource& b,
                                 const Medium& medium, const SphereGrid& grid,
                                 const SourceQuadratureOptions& options) {
  std::vector<Vec3> verts;
  polyhedral_vertices(a.support, verts);
  polyhedral_vertices(b.support, verts);
  Vec3 c{};
  for (const auto& v : verts) c += v;
  c = c / static_cast<double>(verts.size());
  double radius = 0.0;
  for (const auto& v : verts) radius = std::max(radius, norm(v - c));

  const RadiationEvaluator ea(a, medium, options), eb(b, medium, options);
  UniquenessReport r;
  r.difference = far_field_difference(ea.far_field(grid), eb.far_field(grid));
  const double magnitude = std::max(ea.max_density(), eb.max_density());
  r.floor = magnitude > 0.0 ? nonradiating_floor(medium, grid, Ball{c, radius}, magnitude, options) : 0.0;
  r.distinguishable = r.difference >= 10.0 * r.floor && r.difference > 0.0;
  return r;
}

}  // namespace cornerem
