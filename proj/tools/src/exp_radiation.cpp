// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// far-field, nonradiating-demo and uniqueness-demo.

#include <algorithm>
#include <cmath>
#include <ostream>

#include "config.hpp"
#include "cornerem/error.hpp"
#include "cornerem/io.hpp"

namespace cornerem::cli::detail {
namespace {

using io::format_double;

constexpr double kRelationTolerance = 1e-8;

CurrentSource load_scene(const json& cfg, const char* key, const json& fallback,
                         const RunOptions& options, const Medium& medium, Recorder& rec) {
  const json node = cfg.contains(key) ? scene_json(cfg.at(key), options) : fallback;
  io::LoadedScene s = io::scene_from_json(node, medium);
  for (const auto& w : s.warnings) rec.warn(w);
  return std::move(s.source);
}

json default_bump_scene() {
  return {{"label", "bump"},
          {"bump_potential",
           {{"psi1", {{"center", {0, 0, 0}}, {"radius", 1.0}, {"m", 4}, {"v", {0, 0, 1}}}},
            {"psi2", nullptr}}}};
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// max over probe directions of |R e^{-ikR} E(R x̂) - E∞(x̂)| / sup|E∞|.
void check_asymptotics(const json& cfg, const RadiationEvaluator& ev, const FarFieldPattern& pattern,
                       Recorder& rec) {
  std::vector<double> radii = {1e2, 1e3, 1e4};
  if (cfg.contains("asymptotic_radii")) {
    radii.clear();
    for (const auto& r : cfg.at("asymptotic_radii")) radii.push_back(io::to_real(r, "asymptotic_radii"));
    if (radii.size() < 2) throw Error(ErrorKind::TooFewPoints, "asymptotic_radii needs two radii");
  }
  const double k = ev.medium().k();
  const double sup = pattern.sup_e();
  std::vector<double> errors;
  for (double radius : radii) {
    double worst = 0.0;
    for (std::size_t i = 0; i < pattern.grid.size(); i += 37) {
      const Vec3 xhat = pattern.grid.directions[i];
      const NearField nf = ev.near_field(radius * xhat);
      const CVec3 scaled = nf.E * (radius * std::exp(cplx{0.0, -k * radius}));
      worst = std::max(worst, norm(scaled - pattern.e_inf[i]) / sup);
    }
    errors.push_back(worst);
  }
  const double slope = loglog_slope(radii, errors);
  rec.write_artifact("asymptotics.csv", [&](std::ostream& os) {
    os << "radius,relative_error\n";
    for (std::size_t i = 0; i < radii.size(); ++i)
      os << format_double(radii[i]) << ',' << format_double(errors[i]) << '\n';
  });
  rec.check("near/far asymptotic slope deviation from -1", std::abs(slope + 1.0), "<=", 0.1);
  rec.results()["asymptotic_slope"] = slope;
}

}  // namespace

void far_field(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const SphereGrid grid = grid_of(cfg);
  const SourceQuadratureOptions sq = source_quadrature_of(cfg);
  const double rel_tol = number_or(cfg, "relation_tolerance", kRelationTolerance, 0.0, 1.0);

  if (cfg.contains("dipole")) {
    // A small uniformly polarized ball stands in for the point dipole; its
    // pattern is the dipole's times 3 j1(ka)/(ka) = 1 - (ka)²/10 + ...
    const json& d = cfg.at("dipole");
    const CVec3 moment = io::to_cvec3(d.at("moment"), "moment");
    const Vec3 position = d.contains("position") ? io::to_vec3(d.at("position"), "position") : Vec3{};
    const double a = number_or(d, "radius", 0.05, 1e-6, 1e3);
    const std::string kind = d.value("kind", "electric");
    if (kind != "electric" && kind != "magnetic") {
      throw Error(ErrorKind::ParseError, "dipole kind must be 'electric' or 'magnetic'");
    }
    const DipoleKind dk = kind == "electric" ? DipoleKind::electric : DipoleKind::magnetic;
    const double vol = 4.0 / 3.0 * kPi * a * a * a;
    const CVec3 j = moment / vol;
    const CurrentSource src = CurrentSource::constant(Ball{position, a}, dk == DipoleKind::magnetic ? j : CVec3{},
                                                      dk == DipoleKind::electric ? j : CVec3{}, "dipole-ball");
    const RadiationEvaluator ev(src, medium, sq);
    const FarFieldPattern num = ev.far_field(grid);
    const FarFieldPattern ana = dipole_far_field_analytic(moment, position, medium, grid, dk);
    const double rel = far_field_difference(num, ana) / ana.sup_e();
    write_pattern(rec, "far_field", num);
    write_pattern(rec, "far_field_analytic", ana);
    rec.check("dipole sup-relative pattern error", rel, "<=", 1e-2);
    check_relations(rec, "numeric", num, medium, rel_tol);
    check_relations(rec, "analytic", ana, medium, rel_tol);
    rec.results()["dipole_relative_error"] = rel;
    rec.results()["sup_E"] = num.sup_e();
    check_asymptotics(cfg, ev, num, rec);
    return;
  }

  if (!cfg.contains("scene")) throw Error(ErrorKind::InvalidArgument, "far-field needs 'scene' or 'dipole'");
  const CurrentSource src = load_scene(cfg, "scene", {}, options, medium, rec);
  const RadiationEvaluator ev(src, medium, sq);
  const FarFieldPattern p = ev.far_field(grid);
  write_pattern(rec, "far_field", p);
  check_relations(rec, "pattern", p, medium, rel_tol);
  rec.results()["sup_E"] = p.sup_e();
  rec.results()["sup_H"] = p.sup_h();
  rec.results()["quadrature_floor"] = ev.quadrature_floor();
  rec.results()["quadrature_points"] = ev.size();
  if (p.sup_e() > ev.quadrature_floor()) {
    check_asymptotics(cfg, ev, p, rec);
  } else {
    rec.warn("pattern below the quadrature floor; asymptotic check skipped");
  }
}

void nonradiating_demo(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const SphereGrid grid = grid_of(cfg);
  const SourceQuadratureOptions sq = source_quadrature_of(cfg);
  const bool expect_zero = cfg.value("expect_radiationless", true);

  CurrentSource src;
  Ball ball{{0, 0, 0}, 1.0};
  const std::string construction = cfg.value("construction", "potentials");
  if (construction == "potentials") {
    src = load_scene(cfg, "scene", default_bump_scene(), options, medium, rec);
    const auto* b = std::get_if<Ball>(&src.support);
    if (!b) throw Error(ErrorKind::InvalidArgument, "nonradiating-demo expects a bump-potential scene");
    ball = *b;
  } else if (construction == "curl-curl") {
    const json cc = cfg.value("curl_curl", json::object());
    ball.center = cc.contains("center") ? io::to_vec3(cc.at("center"), "center") : Vec3{};
    ball.radius = number_or(cc, "radius", 1.0, 1e-9, 1e9);
    const int m = integer_or(cc, "m", 4, 3, 32);
    const CVec3 v = cc.contains("v") ? io::to_cvec3(cc.at("v"), "v") : CVec3{0, 0, 1};
    const double c0 = number_or(cc, "c0", -k * k, -1e12, 1e12);
    src = curl_curl_source(ball.center, ball.radius, m, v, c0, medium);
    rec.results()["c0"] = c0;
  } else {
    throw Error(ErrorKind::ParseError, "construction must be 'potentials' or 'curl-curl'");
  }

  const RadiationEvaluator ev(src, medium, sq);
  const FarFieldPattern p = ev.far_field(grid);
  const double floor = ev.quadrature_floor();

  // Generic comparison: constant density of the same peak magnitude on the
  // cube inscribed in the potential's ball.
  const double side = 2.0 * ball.radius / std::sqrt(3.0);
  const CurrentSource generic = CurrentSource::constant(ConvexPolyhedron::cube(ball.center, side), {},
                                                        CVec3{0, 0, ev.max_density()}, "generic-cube");
  const FarFieldPattern g = far_field(generic, medium, grid, sq);

  write_pattern(rec, "far_field", p);
  write_pattern(rec, "generic_far_field", g);
  const double sup = p.sup_e();
  const double ratio = sup > 0.0 ? g.sup_e() / sup : std::numeric_limits<double>::infinity();
  if (expect_zero) {
    rec.check("sup |E_inf| below the quadrature floor", sup, "<=", floor);
    rec.check("generic / constructed sup ratio", ratio, ">=", 100.0);
  } else {
    rec.check("sup |E_inf| above the quadrature floor", sup, ">", floor);
  }
  check_relations(rec, "constructed", p, medium, kRelationTolerance);
  check_relations(rec, "generic", g, medium, kRelationTolerance);
  rec.results()["construction"] = construction;
  rec.results()["sup_E"] = sup;
  rec.results()["sup_H"] = p.sup_h();
  rec.results()["quadrature_floor"] = floor;
  rec.results()["max_density"] = ev.max_density();
  rec.results()["generic_sup_E"] = g.sup_e();
  rec.results()["ratio"] = std::isfinite(ratio) ? json(ratio) : json("inf");
}

void uniqueness(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const SphereGrid grid = grid_of(cfg);
  const SourceQuadratureOptions sq = source_quadrature_of(cfg);
  const json cube = {{"label", "cube"},
                     {"support", {{"kind", "cube"}, {"center", {0, 0, 0}}, {"side", 2.0}}},
                     {"J2", {{"kind", "constant"}, {"value", {0, 0, 1}}}},
                     {"path_to_infinity", true}};
  const json tet = {{"label", "tetrahedron"},
                    {"support", {{"kind", "tetrahedron"}, {"centroid", {0, 0, 0}}, {"edge", 2.0}}},
                    {"J2", {{"kind", "constant"}, {"value", {0, 0, 1}}}},
                    {"path_to_infinity", true}};
  const CurrentSource a = load_scene(cfg, "scene_a", cube, options, medium, rec);
  const CurrentSource b = load_scene(cfg, "scene_b", tet, options, medium, rec);
  const std::string expect = cfg.value("expect", "distinguishable");
  if (expect != "distinguishable" && expect != "indistinguishable") {
    throw Error(ErrorKind::ParseError, "expect must be 'distinguishable' or 'indistinguishable'");
  }

  const UniquenessReport r = uniqueness_demo(a, b, medium, grid, sq);
  const FarFieldPattern pa = far_field(a, medium, grid, sq);
  const FarFieldPattern pb = far_field(b, medium, grid, sq);
  write_pattern(rec, "far_field_a", pa);
  write_pattern(rec, "far_field_b", pb);
  check_relations(rec, "scene_a", pa, medium, kRelationTolerance);
  check_relations(rec, "scene_b", pb, medium, kRelationTolerance);
  if (expect == "distinguishable") {
    rec.check("pattern difference", r.difference, ">=", 10.0 * r.floor);
  } else {
    rec.check("pattern difference", r.difference, "<=", r.floor);
  }
  rec.results() = {{"difference", r.difference},
                   {"floor", r.floor},
                   {"distinguishable", r.distinguishable},
                   {"sup_E_a", pa.sup_e()},
                   {"sup_E_b", pb.sup_e()},
                   {"expect", expect}};
}

}  // namespace cornerem::cli::detail
