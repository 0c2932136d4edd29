// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "cornerem/error.hpp"

namespace cornerem::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

bool present(const json& j, const char* key) {
  return j.is_object() && j.contains(key) && !j.at(key).is_null();
}

Potential bump_from_json(const json& j) {
  if (j.is_null()) return Potential::zero();
  const Vec3 c = to_vec3(required(j, "center"), "center");
  const double r = to_real(required(j, "radius"), "radius");
  const int m = present(j, "m") ? j.at("m").get<int>() : 4;
  const CVec3 v = to_cvec3(required(j, "v"), "v");
  const cplx a = present(j, "amplitude") ? to_complex(j.at("amplitude"), "amplitude") : cplx{1.0, 0.0};
  const bool curl = present(j, "curl") && j.at("curl").get<bool>();
  return curl ? Potential::curl_of_bump(c, r, m, v, a) : Potential::bump(c, r, m, v, a);
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

double to_real(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + ": expected a number");
  return j.get<double>();
}

cplx to_complex(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  parse_error(std::string(what) + ": expected a number or [re, im]");
}

Vec3 to_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) parse_error(std::string(what) + ": expected [x, y, z]");
  return {to_real(j[0], what), to_real(j[1], what), to_real(j[2], what)};
}

CVec3 to_cvec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) parse_error(std::string(what) + ": expected three components");
  return {to_complex(j[0], what), to_complex(j[1], what), to_complex(j[2], what)};
}

json from_complex(cplx c) { return json::array({c.real(), c.imag()}); }
json from_vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
json from_cvec3(const CVec3& v) {
  return json::array({from_complex(v.x), from_complex(v.y), from_complex(v.z)});
}

LoadedCone cone_from_json(const json& j) {
  const Vec3 apex = present(j, "apex") ? to_vec3(j.at("apex"), "apex") : Vec3{};
  const json& e = required(j, "edges");
  if (!e.is_array()) parse_error("edges: expected an array");
  std::vector<Vec3> edges;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec3 w = to_vec3(e[i], "edge");
    const double n = norm(w);
    if (!(n > 0.0)) parse_error("edge " + std::to_string(i) + " is zero");
    if (std::abs(n - 1.0) > 1e-8) {
      warnings.push_back("edge " + std::to_string(i) + " renormalized (|w| = " +
                         format_double(n) + ")");
    }
    edges.push_back(w / n);
  }
  return {PolyhedralCone::create(apex, edges), std::move(warnings)};
}

json cone_to_json(const PolyhedralCone& cone) {
  json edges = json::array();
  for (const auto& w : cone.edges()) edges.push_back(from_vec3(w));
  return {{"apex", from_vec3(cone.apex())}, {"edges", edges}};
}

Medium medium_from_json(const json& j) {
  if (j.is_null()) return {};
  const double w = present(j, "omega") ? to_real(j.at("omega"), "omega") : 1.0;
  const double e = present(j, "eps0") ? to_real(j.at("eps0"), "eps0") : 1.0;
  const double m = present(j, "mu0") ? to_real(j.at("mu0"), "mu0") : 1.0;
  return Medium(w, e, m);
}

json medium_to_json(const Medium& m) {
  return {{"omega", m.omega}, {"eps0", m.eps0}, {"mu0", m.mu0}, {"k", m.k()}};
}

json cgo_to_json(const CgoParameters& p) {
  return {{"k", p.k},         {"tau", p.tau},
          {"s", p.s},         {"s0", p.s0},
          {"kappa", p.kappa}, {"edge_index", p.edge_index},
          {"w1", from_vec3(p.w1)}, {"z", from_vec3(p.z)},
          {"d", from_vec3(p.d)},   {"d_perp", from_vec3(p.d_perp)},
          {"rho", from_cvec3(p.rho)}, {"p", from_cvec3(p.p)}};
}

CgoParameters cgo_from_json(const json& j, const PolyhedralCone& cone) {
  const auto edge = required(j, "edge_index").get<std::size_t>();
  const double k = to_real(required(j, "k"), "k");
  const double tau = to_real(required(j, "tau"), "tau");
  const double s = to_real(required(j, "s"), "s");
  const SRange range = s < s_upper_bound(cone, edge) ? SRange::lower_bound : SRange::admissible;
  return build_cgo(cone, edge, k, tau, s, range);
}

VectorFn density_from_json(const json& j, const Vec3& default_center) {
  if (j.is_null()) return {};
  const std::string kind = required(j, "kind").get<std::string>();
  if (kind == "constant") {
    const CVec3 v = to_cvec3(required(j, "value"), "value");
    return [v](const Vec3&) { return v; };
  }
  if (kind == "polynomial") {
    PolyVectorField f;
    for (const auto& t : required(j, "terms")) {
      const int c = required(t, "component").get<int>();
      if (c < 0 || c > 2) parse_error("polynomial component must be 0, 1 or 2");
      const auto e = required(t, "exp");
      if (!e.is_array() || e.size() != 3) parse_error("exp: expected [i, j, l]");
      f.c[c] += Polynomial3::monomial(to_complex(required(t, "coeff"), "coeff"), e[0].get<int>(),
                                      e[1].get<int>(), e[2].get<int>());
    }
    return [f](const Vec3& x) { return f(x); };
  }
  if (kind == "holder-radial") {
    const CVec3 f0 = present(j, "F0") ? to_cvec3(j.at("F0"), "F0") : CVec3{};
    const double alpha = to_real(required(j, "alpha"), "alpha");
    if (!(alpha > 0.0 && alpha < 1.0)) parse_error("alpha must lie in (0, 1)");
    const CVec3 u = to_cvec3(required(j, "direction"), "direction");
    const Vec3 c = present(j, "center") ? to_vec3(j.at("center"), "center") : default_center;
    return [=](const Vec3& x) { return f0 + std::pow(norm(x - c), alpha) * u; };
  }
  parse_error("unknown density kind '" + kind + "'");
}

Support support_from_json(const json& j, std::vector<std::string>* warnings) {
  const std::string kind = required(j, "kind").get<std::string>();
  if (kind == "ball") {
    return Ball{to_vec3(required(j, "center"), "center"), to_real(required(j, "radius"), "radius")};
  }
  if (kind == "box") {
    return Box{to_vec3(required(j, "lo"), "lo"), to_vec3(required(j, "hi"), "hi")};
  }
  if (kind == "cube") {
    return ConvexPolyhedron::cube(to_vec3(required(j, "center"), "center"),
                                  to_real(required(j, "side"), "side"));
  }
  if (kind == "tetrahedron") {
    return ConvexPolyhedron::regular_tetrahedron(to_vec3(required(j, "centroid"), "centroid"),
                                                 to_real(required(j, "edge"), "edge"));
  }
  if (kind == "convex-polyhedron") {
    std::vector<Vec3> v;
    for (const auto& p : required(j, "vertices")) v.push_back(to_vec3(p, "vertex"));
    return ConvexPolyhedron::create(std::move(v));
  }
  if (kind == "truncated-cone") {
    LoadedCone lc = cone_from_json(required(j, "cone"));
    if (warnings) warnings->insert(warnings->end(), lc.warnings.begin(), lc.warnings.end());
    return TruncatedCone(std::move(lc.cone), to_real(required(j, "r0"), "r0"));
  }
  parse_error("unknown support kind '" + kind + "'");
}

LoadedScene scene_from_json(const json& j, const Medium& medium) {
  LoadedScene out;
  if (present(j, "bump_potential")) {
    const json& b = j.at("bump_potential");
    const Potential p1 = b.contains("psi1") ? bump_from_json(b.at("psi1")) : Potential::zero();
    const Potential p2 = b.contains("psi2") ? bump_from_json(b.at("psi2")) : Potential::zero();
    out.source = nonradiating_from_potentials(p1, p2, medium);
  } else {
    Support s = support_from_json(required(j, "support"), &out.warnings);
    const Vec3 c = support_center(s);
    out.source.support = std::move(s);
    out.source.j1 = present(j, "J1") ? density_from_json(j.at("J1"), c) : VectorFn{};
    out.source.j2 = present(j, "J2") ? density_from_json(j.at("J2"), c) : VectorFn{};
    out.source.corners = support_corners(out.source.support);
    if (present(j, "path_to_infinity")) {
      const bool flag = j.at("path_to_infinity").get<bool>();
      for (auto& corner : out.source.corners) corner.path_to_infinity = flag;
    }
  }
  out.source.label = present(j, "label") ? j.at("label").get<std::string>() : out.source.label;
  return out;
}

json decay_report_to_json(const DecayReport& r) {
  json taus = json::array(), values = json::array();
  for (std::size_t i = 0; i < r.sweep.taus.size(); ++i) {
    taus.push_back(r.sweep.taus[i]);
    values.push_back(from_complex(r.sweep.values[i]));
  }
  return {{"slope", r.slope},
          {"intercept", r.intercept},
          {"fit_residual", r.residual},
          {"verdict", to_string(r.verdict)},
          {"exact_zero", r.exact_zero},
          {"thresholds",
           {{"delta", r.thresholds.delta},
            {"gap", r.thresholds.gap},
            {"rfit", r.thresholds.rfit},
            {"noise_floor", r.thresholds.noise_floor}}},
          {"taus", taus},
          {"values", values}};
}

json pattern_to_json(const FarFieldPattern& p) {
  json nodes = json::array();
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    nodes.push_back({{"theta", p.grid.theta[i]},
                     {"phi", p.grid.phi[i]},
                     {"E", from_cvec3(p.e_inf[i])},
                     {"H", from_cvec3(p.h_inf[i])}});
  }
  return {{"sup_E", p.sup_e()}, {"sup_H", p.sup_h()}, {"nodes", nodes}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_cone_sweep_csv(std::ostream& os, const std::vector<ConeSweepRow>& rows) {
  os << "tau,re,im,abs,bound_lower,bound_tail\n";
  for (const auto& r : rows) {
    os << format_double(r.tau) << ',' << format_double(r.value.real()) << ','
       << format_double(r.value.imag()) << ',' << format_double(std::abs(r.value)) << ','
       << format_double(r.bound_lower) << ',' << format_double(r.bound_tail) << '\n';
  }
}

void write_far_field_csv(std::ostream& os, const FarFieldPattern& p) {
  os << "theta,phi,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,Hx_re,Hx_im,Hy_re,Hy_im,Hz_re,Hz_im\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    os << format_double(p.grid.theta[i]) << ',' << format_double(p.grid.phi[i]);
    for (const CVec3* v : {&p.e_inf[i], &p.h_inf[i]}) {
      for (int c = 0; c < 3; ++c) {
        os << ',' << format_double((*v)[c].real()) << ',' << format_double((*v)[c].imag());
      }
    }
    os << '\n';
  }
}

void write_decay_csv(std::ostream& os, const DecayReport& r) {
  os << "tau,abs_value,slope_running\n";
  for (std::size_t i = 0; i < r.sweep.taus.size(); ++i) {
    const double running = i < r.running_slopes.size() ? r.running_slopes[i] : std::nan("");
    os << format_double(r.sweep.taus[i]) << ',' << format_double(std::abs(r.sweep.values[i]))
       << ',' << format_double(running) << '\n';
  }
}

}  // namespace cornerem::io
