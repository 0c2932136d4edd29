// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cmath>
#include <ostream>

#include "cornerem/error.hpp"
#include "cornerem/io.hpp"

namespace cornerem::cli::detail {
namespace {

[[noreturn]] void out_of_range(const char* key, double lo, double hi) {
  throw Error(ErrorKind::InvalidArgument, std::string(key) + " must lie in [" +
                                              io::format_double(lo) + ", " +
                                              io::format_double(hi) + "]");
}

const json& section(const json& cfg, const char* key) {
  static const json empty = json::object();
  if (!cfg.is_object() || !cfg.contains(key) || cfg.at(key).is_null()) return empty;
  const json& s = cfg.at(key);
  if (!s.is_object()) throw Error(ErrorKind::ParseError, std::string(key) + ": expected an object");
  return s;
}

}  // namespace

double number_or(const json& cfg, const char* key, double def, double lo, double hi) {
  if (!cfg.is_object() || !cfg.contains(key) || cfg.at(key).is_null()) return def;
  const double v = io::to_real(cfg.at(key), key);
  if (!(v >= lo && v <= hi)) out_of_range(key, lo, hi);
  return v;
}

int integer_or(const json& cfg, const char* key, int def, int lo, int hi) {
  if (!cfg.is_object() || !cfg.contains(key) || cfg.at(key).is_null()) return def;
  const json& j = cfg.at(key);
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, std::string(key) + ": expected an integer");
  const int v = j.get<int>();
  if (v < lo || v > hi) out_of_range(key, lo, hi);
  return v;
}

Medium medium_of(const json& cfg) {
  if (!cfg.is_object() || !cfg.contains("medium")) return Medium{};
  return io::medium_from_json(cfg.at("medium"));
}

PolyhedralCone cone_of(const json& cfg, Recorder& rec, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key) || cfg.at(key).is_null()) {
    return PolyhedralCone::create(Vec3{}, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
  }
  io::LoadedCone lc = io::cone_from_json(cfg.at(key));
  for (const auto& w : lc.warnings) rec.warn(w);
  return std::move(lc.cone);
}

QuadratureOptions quadrature_of(const json& cfg, const RunOptions& options) {
  const json& q = section(cfg, "quadrature");
  QuadratureOptions out;
  out.rtol = number_or(q, "rtol", out.rtol, 1e-14, 1e-2);
  if (options.rtol) {
    if (!(*options.rtol >= 1e-14 && *options.rtol <= 1e-2)) out_of_range("--rtol", 1e-14, 1e-2);
    out.rtol = *options.rtol;
  }
  out.atol = number_or(q, "atol", out.atol, 0.0, 1.0);
  out.max_angular_order = integer_or(q, "max_angular_order", out.max_angular_order, 2, 256);
  out.max_radial_order = integer_or(q, "max_radial_order", out.max_radial_order, 2, 512);
  out.max_angular_subdivision =
      integer_or(q, "max_angular_subdivision", out.max_angular_subdivision, 0, 5);
  out.initial.angular_order = integer_or(q, "angular_order", out.initial.angular_order, 2,
                                         out.max_angular_order);
  out.initial.angular_subdivision =
      integer_or(q, "angular_subdivision", out.initial.angular_subdivision, 0, 4);
  out.initial.radial_order =
      integer_or(q, "radial_order", out.initial.radial_order, 2, out.max_radial_order);
  return out;
}

std::vector<double> taus_of(const json& cfg, double k, double lo, double hi, int n) {
  const json& t = section(cfg, "tau_sweep");
  std::vector<double> taus;
  if (t.contains("values")) {
    for (const auto& v : t.at("values")) taus.push_back(io::to_real(v, "tau_sweep.values"));
  } else {
    lo = number_or(t, "lo", lo, 1.0, 1e6);
    hi = number_or(t, "hi", hi, lo, 1e6);
    n = integer_or(t, "n", n, 2, 256);
    if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "tau_sweep.hi must exceed tau_sweep.lo");
    taus = geometric_taus(k, lo, hi, n);
  }
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] >= k)) throw Error(ErrorKind::TauBelowK, "every swept tau must be at least k");
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "tau_sweep values must increase strictly");
    }
  }
  return taus;
}

json scene_json(const json& node, const RunOptions& options) {
  if (node.is_string()) {
    std::filesystem::path p = node.get<std::string>();
    if (p.is_relative()) p = options.config_dir / p;
    return io::read_json_file(p.string());
  }
  if (!node.is_object()) throw Error(ErrorKind::ParseError, "scene: expected an object or a path");
  return node;
}

SphereGrid grid_of(const json& cfg) {
  const json& g = section(cfg, "grid");
  const int nt = integer_or(g, "n_theta", 21, 2, 512);
  const int np = integer_or(g, "n_phi", 42, 3, 1024);
  const bool axis = g.value("axis_points", true);
  return sphere_grid(nt, np, axis);
}

SourceQuadratureOptions source_quadrature_of(const json& cfg) {
  const json& q = section(cfg, "source_quadrature");
  SourceQuadratureOptions out;
  out.points_per_wavelength =
      number_or(q, "points_per_wavelength", out.points_per_wavelength, 1.0, 100.0);
  out.min_order = integer_or(q, "min_order", out.min_order, 2, 128);
  out.max_order = integer_or(q, "max_order", out.max_order, out.min_order, 256);
  return out;
}

void write_pattern(Recorder& rec, const std::string& stem, const FarFieldPattern& pattern) {
  rec.write_artifact(stem + ".csv", [&](std::ostream& os) { io::write_far_field_csv(os, pattern); });
  rec.write_artifact(stem + ".json",
                     [&](std::ostream& os) { os << io::pattern_to_json(pattern).dump(1) << '\n'; });
}

void check_relations(Recorder& rec, const std::string& label, const FarFieldPattern& pattern,
                     const Medium& medium, double tolerance) {
  const FarFieldRelations r = far_field_relations(pattern, medium);
  rec.check(label + ".tangential_E", r.tangential_e, "<=", tolerance);
  rec.check(label + ".tangential_H", r.tangential_h, "<=", tolerance);
  rec.check(label + ".H_from_E", r.h_from_e, "<=", tolerance);
  rec.check(label + ".E_from_H", r.e_from_h, "<=", tolerance);
}

}  // namespace cornerem::cli::detail
