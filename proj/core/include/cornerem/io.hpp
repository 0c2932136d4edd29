// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// JSON input (cones, media, CGO parameters, source scenes) and CSV/JSON
// output. Complex numbers are written as [re, im]; on input a bare number is
// accepted as a real value.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerem/cgo.hpp"
#include "cornerem/cone.hpp"
#include "cornerem/corner.hpp"
#include "cornerem/medium.hpp"
#include "cornerem/radiation.hpp"

namespace cornerem::io {

using json = nlohmann::json;

// Reads and parses a JSON file; throws ParseError.
json read_json_file(const std::string& path);

double to_real(const json& j, const char* what);
cplx to_complex(const json& j, const char* what);
Vec3 to_vec3(const json& j, const char* what);
CVec3 to_cvec3(const json& j, const char* what);

json from_complex(cplx c);
json from_vec3(const Vec3& v);
json from_cvec3(const CVec3& v);

struct LoadedCone {
  PolyhedralCone cone;
  std::vector<std::string> warnings;  // edges renormalized by more than 1e-8
};

// { "apex": [x, y, z], "edges": [[..], [..], ...] }
LoadedCone cone_from_json(const json& j);
json cone_to_json(const PolyhedralCone& cone);

// { "omega": w, "eps0": e, "mu0": m }, all optional (default 1).
Medium medium_from_json(const json& j);
json medium_to_json(const Medium& m);

json cgo_to_json(const CgoParameters& p);
// Rebuilds the parameters from the recorded edge_index, s, tau and k.
CgoParameters cgo_from_json(const json& j, const PolyhedralCone& cone);

// Density specs:
//   {"kind": "constant", "value": cvec}
//   {"kind": "polynomial", "terms": [{"component": 0..2, "coeff": c, "exp": [i, j, l]}, ...]}
//   {"kind": "holder-radial", "F0": cvec, "alpha": a, "direction": cvec, "center": vec}
//     meaning F0 + |x - center|^alpha direction
VectorFn density_from_json(const json& j, const Vec3& default_center);

Support support_from_json(const json& j, std::vector<std::string>* warnings = nullptr);

struct LoadedScene {
  CurrentSource source;
  std::vector<std::string> warnings;
};

// {"support": {...}, "J1": density|null, "J2": density|null,
//  "path_to_infinity": bool}
// or {"bump_potential": {"psi1": bump|null, "psi2": bump|null}} with
// bump = {"center", "radius", "m", "v", "amplitude", "curl": bool}.
LoadedScene scene_from_json(const json& j, const Medium& medium);

json decay_report_to_json(const DecayReport& r);
json pattern_to_json(const FarFieldPattern& p);

// CSV writers, doubles printed with %.17g.
std::string format_double(double v);

struct ConeSweepRow {
  double tau;
  cplx value;
  double bound_lower;
  double bound_tail;
};
void write_cone_sweep_csv(std::ostream& os, const std::vector<ConeSweepRow>& rows);
void write_far_field_csv(std::ostream& os, const FarFieldPattern& p);
void write_decay_csv(std::ostream& os, const DecayReport& r);

}  // namespace cornerem::io
