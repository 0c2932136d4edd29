// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/cone_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cornerem/error.hpp"
#include "cornerem/parallel.hpp"

namespace cornerem {
namespace {

// Geometric levels toward the apex; they absorb the r^α cusp.
constexpr int kGeometricLevels = 6;
// e^{-46} ≈ 1e-20: beyond L/λ the exponential carrier is negligible.
constexpr double kLayerExponent = 46.0;
constexpr std::size_t kMaxUniformPanels = 400;
constexpr int kMaxGradingLevels = 40;

struct Panel {
  double a, b;
};

// Radial panels for a ray whose carrier exponent is e^{a r}.
void radial_panels(double r0, cplx a, std::vector<Panel>& out) {
  out.clear();
  const double lam = -a.real();
  const double osc = std::abs(a.imag());
  const double scale = std::max({lam, osc / (2.0 * kPi), 0.0});
  const double b = scale > 0.0 ? std::min(r0, 1.0 / scale) : r0;

  double lo = b / std::ldexp(1.0, kGeometricLevels);
  out.push_back({0.0, lo});
  for (int l = kGeometricLevels - 1; l >= 0; --l) {
    const double hi = b / std::ldexp(1.0, l);
    out.push_back({lo, hi});
    lo = hi;
  }
  if (b >= r0) return;

  const double r_end = lam > 0.0 ? std::min(r0, kLayerExponent / lam) : r0;
  double width = r_end - b;
  if (lam > 0.0) width = std::min(width, 2.0 / lam);
  if (osc > 0.0) width = std::min(width, 4.0 * kPi / osc);
  std::size_t count = static_cast<std::size_t>(std::ceil((r_end - b) / width));
  count = std::clamp<std::size_t>(count, 1, kMaxUniformPanels);
  const double h = (r_end - b) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({b + h * static_cast<double>(i), i + 1 == count ? r_end : b + h * (i + 1.0)});
  }
  if (r_end < r0) out.push_back({r_end, r0});
}

// Flat sub-triangles of every fan cell, with the distance h of their plane
// from the apex (the gnomonic Jacobian is h / |x|^3). Pieces touching the fan
// root carry it as tri[0] and get `levels` geometric grading levels.
struct AngularPiece {
  std::array<Vec3, 3> tri;
  double plane_distance;
  int levels = 0;
};

std::vector<AngularPiece> angular_pieces(const PolyhedralCone& cone, int subdivision,
                                         std::size_t root = 0, int levels = 0) {
  std::vector<AngularPiece> pieces;
  for (const auto& cell : simplicial_fan(cone, root)) {
    const Vec3& a = cell.edges[0];
    const Vec3& b = cell.edges[1];
    const Vec3& c = cell.edges[2];
    const Vec3 n = cross(b - a, c - a);
    const double h = std::abs(dot(n, a)) / norm(n);
    const int piece_levels = std::max(0, levels - subdivision);
    for (const auto& t : subdivide_triangle(a, b, c, subdivision)) {
      pieces.push_back({t, h, t[0] == a ? piece_levels : 0});
    }
  }
  return pieces;
}

// The integrand e^{carrier·θ r} is concentrated, after the radial integral,
// around the edge of slowest decay, with relative angular width about
// |carrier·w| / |carrier|. Returns the fan root (angular position) and the
// grading depth that resolves it.
std::pair<std::size_t, int> peak_root(const PolyhedralCone& cone, const CVec3& carrier) {
  const double size = norm(carrier);
  if (!(size > 0.0)) return {0, 0};
  const auto order = cone.angular_order();
  std::size_t best = 0;
  double best_re = -std::numeric_limits<double>::infinity();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const double re = dot(carrier, cone.edge(order[pos]).vec()).real();
    if (re > best_re) {
      best_re = re;
      best = pos;
    }
  }
  const double width = std::abs(dot(carrier, cone.edge(order[best]).vec())) / size;
  const int levels = width > 0.0 ? static_cast<int>(std::ceil(-std::log2(width))) : kMaxGradingLevels;
  return {best, std::clamp(levels, 0, kMaxGradingLevels)};
}

// Carrier and per-ray evaluator of an integrand spec.
struct RayIntegrand {
  CVec3 carrier;
  // value(x, theta, r, e^{a r}) with x = apex + r theta
  std::function<cplx(const Vec3&, const Vec3&, double, cplx)> value;
  bool uses_carrier_exp = true;
};

RayIntegrand make_ray_integrand(const IntegrandSpec& spec) {
  return std::visit(
      [](const auto& s) -> RayIntegrand {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantIntegrand>) {
          const cplx v = s.value;
          return {CVec3{}, [v](const Vec3&, const Vec3&, double, cplx) { return v; }, false};
        } else if constexpr (std::is_same_v<T, PureExponential>) {
          return {s.rho, [](const Vec3&, const Vec3&, double, cplx e) { return e; }, true};
        } else if constexpr (std::is_same_v<T, HolderWeighted>) {
          if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "Hölder index must lie in (0, 1)");
          }
          const double alpha = s.alpha;
          return {to_complex(s.d) * s.tau,
                  [alpha](const Vec3&, const Vec3&, double r, cplx e) {
                    return std::pow(r, alpha) * e;
                  },
                  true};
        } else if constexpr (std::is_same_v<T, VectorDotted>) {
          auto density = s.density;
          const CVec3 amp = s.amplitude;
          return {s.rho,
                  [density, amp](const Vec3& x, const Vec3&, double, cplx e) {
                    return dot(density(x), amp) * e;
                  },
                  true};
        } else {
          auto f = s.f;
          return {s.carrier, [f](const Vec3& x, const Vec3&, double, cplx) { return f(x); },
                  false};
        }
      },
      spec);
}

}  // namespace

cplx exact_exponential_integral(const SimplicialCone& sc, const CVec3& rho) {
  cplx denom{1.0, 0.0};
  for (const auto& w : sc.edges) {
    const cplx rw = dot(rho, w.vec());
    if (!(rw.real() < 0.0)) {
      throw Error(ErrorKind::NonConvergent, "Re(rho·w) must be negative on every edge");
    }
    denom *= -rw;
  }
  return sc.abs_det() / denom;
}

cplx exponential_integral(const PolyhedralCone& cone, const CVec3& rho, std::size_t fan_root) {
  for (const auto& w : cone.edges()) {
    if (!(dot(rho, w.vec()).real() < 0.0)) {
      throw Error(ErrorKind::NonConvergent, "Re(rho·w) must be negative on every edge");
    }
  }
  cplx sum{0.0, 0.0};
  for (const auto& cell : simplicial_fan(cone, fan_root)) sum += exact_exponential_integral(cell, rho);
  return sum * std::exp(dot(rho, cone.apex()));
}

cplx truncated_integral_fixed(const TruncatedCone& tc, const IntegrandSpec& spec,
                              const RadialAngularRule& rule) {
  if (rule.angular_order < 1 || rule.radial_order < 2 || rule.angular_subdivision < 0) {
    throw Error(ErrorKind::InvalidArgument, "invalid quadrature orders");
  }
  const RayIntegrand ray = make_ray_integrand(spec);
  const auto [root, levels] = peak_root(tc.cone, ray.carrier);
  const auto pieces = angular_pieces(tc.cone, rule.angular_subdivision, root, levels);
  const Rule1D& gr = gauss_legendre_reference(rule.radial_order);
  const Vec3 apex = tc.cone.apex();
  const double r0 = tc.r0;

  std::vector<cplx> partial(pieces.size());
  parallel_for(pieces.size(), [&](std::size_t ip) {
    const auto& piece = pieces[ip];
    const PointRule ang = graded_triangle_rule(piece.tri[0], piece.tri[1], piece.tri[2],
                                               rule.angular_order, piece.levels);
    std::vector<Panel> panels;
    std::vector<cplx> ray_sums(ang.size());
    for (std::size_t q = 0; q < ang.size(); ++q) {
      const Vec3& xp = ang.points[q];
      const double len = norm(xp);
      const Vec3 theta = xp / len;
      const double wa = ang.weights[q] * piece.plane_distance / (len * len * len);
      const cplx a = dot(ray.carrier, theta);
      radial_panels(r0, a, panels);
      cplx acc{0.0, 0.0};
      for (const auto& pn : panels) {
        const double half = 0.5 * (pn.b - pn.a), mid = 0.5 * (pn.a + pn.b);
        cplx pacc{0.0, 0.0};
        for (int i = 0; i < rule.radial_order; ++i) {
          const double r = mid + half * gr.nodes[i];
          const cplx e = ray.uses_carrier_exp ? std::exp(a * r) : cplx{1.0, 0.0};
          pacc += (gr.weights[i] * r * r) * ray.value(apex + r * theta, theta, r, e);
        }
        acc += half * pacc;
      }
      ray_sums[q] = wa * acc;
    }
    partial[ip] = pairwise_sum<cplx>(ray_sums);
  });
  return pairwise_sum<cplx>(partial);
}

QuadratureResult truncated_integral(const TruncatedCone& tc, const IntegrandSpec& spec,
                                    const QuadratureOptions& options) {
  RadialAngularRule rule = options.initial;
  cplx prev = truncated_integral_fixed(tc, spec, rule);
  double last_diff = std::abs(prev);
  for (int level = 1;; ++level) {
    // A step that leaves the angular rule alone cannot see the angular error.
    RadialAngularRule next = rule;
    if (2 * rule.angular_order <= options.max_angular_order) {
      next.angular_order = 2 * rule.angular_order;
    } else if (rule.angular_subdivision < options.max_angular_subdivision) {
      next.angular_subdivision = rule.angular_subdivision + 1;
    } else {
      throw Error(ErrorKind::NoConvergence,
                  "angular refinement cap reached without meeting rtol (last change " +
                      std::to_string(last_diff) + ", value " + std::to_string(std::abs(prev)) +
                      ")");
    }
    next.radial_order = std::min(2 * rule.radial_order, options.max_radial_order);
    const cplx cur = truncated_integral_fixed(tc, spec, next);
    const double diff = std::abs(cur - prev);
    if (diff <= options.rtol * std::abs(cur) + options.atol) {
      return {cur, diff, next, level};
    }
    prev = cur;
    last_diff = diff;
    rule = next;
  }
}

PointRule truncated_cone_rule(const TruncatedCone& tc, const RadialAngularRule& rule) {
  const auto pieces = angular_pieces(tc.cone, rule.angular_subdivision);
  const Rule1D& gr = gauss_legendre_reference(rule.radial_order);
  PointRule out;
  std::vector<Panel> panels;
  for (const auto& piece : pieces) {
    const PointRule ang =
        triangle_rule(piece.tri[0], piece.tri[1], piece.tri[2], rule.angular_order);
    for (std::size_t q = 0; q < ang.size(); ++q) {
      const double len = norm(ang.points[q]);
      const Vec3 theta = ang.points[q] / len;
      const double wa = ang.weights[q] * piece.plane_distance / (len * len * len);
      radial_panels(tc.r0, cplx{0.0, 0.0}, panels);
      for (const auto& pn : panels) {
        const double half = 0.5 * (pn.b - pn.a), mid = 0.5 * (pn.a + pn.b);
        for (int i = 0; i < rule.radial_order; ++i) {
          const double r = mid + half * gr.nodes[i];
          out.points.push_back(tc.cone.apex() + r * theta);
          out.weights.push_back(wa * half * gr.weights[i] * r * r);
        }
      }
    }
  }
  return out;
}

double tail_bound(double r0, double tau, double decay_constant) {
  const double a = decay_constant * tau;
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "decay rate must be positive");
  return 2.0 * kPi * std::exp(-a * r0) * (r0 * r0 / a + 2.0 * r0 / (a * a) + 2.0 / (a * a * a));
}

double holder_envelope_constant(double kappa, double alpha) {
  if (!(kappa > 0.0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "Hölder index must lie in [0, 1)");
  }
  return 2.0 * kPi * std::tgamma(3.0 + alpha) / std::pow(0.5 * kappa, 3.0 + alpha);
}

}  // namespace cornerem
