// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>

#include "cornerem/error.hpp"
#include "cornerem/io.hpp"
#include "helpers.hpp"

using namespace cornerem;
using io::json;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

long lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1.0}) {
    CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("complex and vector parsing") {
  CHECK(io::to_complex(json(2.5), "x") == cplx{2.5, 0.0});
  CHECK(io::to_complex(json::array({1.0, -2.0}), "x") == cplx{1.0, -2.0});
  CHECK(kind_of([] { io::to_complex(json("a"), "x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::to_vec3(json::array({1, 2}), "x"); }) == ErrorKind::ParseError);
  const CVec3 v{cplx{1, 2}, 3.0, cplx{0, -1}};
  CHECK(norm(io::to_cvec3(io::from_cvec3(v), "v") - v) == 0.0);
}

TEST_CASE("cone round trip and renormalization warning") {
  const PolyhedralCone cone = testing::square_pyramid(0.6, {1, -2, 0.5});
  const io::LoadedCone back = io::cone_from_json(io::cone_to_json(cone));
  CHECK(back.warnings.empty());
  REQUIRE(back.cone.size() == cone.size());
  for (std::size_t i = 0; i < cone.size(); ++i) CHECK(norm(back.cone.edge(i).vec() - cone.edge(i).vec()) == 0.0);
  CHECK(norm(back.cone.apex() - cone.apex()) == 0.0);

  const json raw = json::parse(R"({"edges": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]})");
  const io::LoadedCone lc = io::cone_from_json(raw);
  REQUIRE(lc.warnings.size() == 1);
  CHECK(lc.warnings[0].find("edge 0") != std::string::npos);
  CHECK(norm(lc.cone.edge(0).vec() - Vec3{1, 0, 0}) < 1e-15);
  CHECK(kind_of([] { io::cone_from_json(json::parse(R"({"edges": [[0, 0, 0], [0, 1, 0], [0, 0, 1]]})")); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { io::cone_from_json(json::parse(R"({"apex": [0, 0, 0]})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::cone_from_json(json::parse(R"({"edges": [[1, 0, 0], [0, 1, 0]]})")); }) ==
        ErrorKind::TooFewEdges);
}

TEST_CASE("medium and cgo round trips") {
  const Medium m = io::medium_from_json(json::parse(R"({"omega": 2, "mu0": 3})"));
  CHECK(m.omega == 2.0);
  CHECK(m.eps0 == 1.0);
  CHECK(io::medium_to_json(m).at("k").get<double>() == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(kind_of([] { io::medium_from_json(json::parse(R"({"omega": -1})")); }) == ErrorKind::InvalidArgument);

  const PolyhedralCone cone = testing::octant();
  for (SRange r : {SRange::lower_bound, SRange::admissible}) {
    const double s = 0.5 * s_limit(cone, 1, r);
    const CgoParameters p = build_cgo(cone, 1, 1.5, 30.0, s, r);
    const CgoParameters q = io::cgo_from_json(io::cgo_to_json(p), cone);
    CHECK(q.edge_index == 1);
    CHECK(norm(q.rho - p.rho) == 0.0);
    CHECK(norm(q.p - p.p) == 0.0);
  }
}

TEST_CASE("density specs") {
  const Vec3 x{0.5, -1.0, 2.0};
  const VectorFn c = io::density_from_json(json::parse(R"({"kind": "constant", "value": [1, [0, 2], 3]})"), {});
  CHECK(norm(c(x) - CVec3{1.0, cplx{0, 2}, 3.0}) == 0.0);
  const VectorFn p = io::density_from_json(
      json::parse(R"({"kind": "polynomial", "terms": [{"component": 1, "coeff": [0, 1], "exp": [1, 0, 2]}]})"), {});
  CHECK(norm(p(x) - CVec3{0.0, cplx{0, 1} * 0.5 * 4.0, 0.0}) < 1e-15);
  const VectorFn h = io::density_from_json(
      json::parse(R"({"kind": "holder-radial", "F0": [1, 0, 0], "alpha": 0.5, "direction": [0, 0, 1]})"), {0.5, -1, 0});
  CHECK(norm(h(x) - CVec3{1.0, 0.0, std::sqrt(2.0)}) < 1e-15);
  CHECK(!io::density_from_json(json(nullptr), {}));
  CHECK(kind_of([] { io::density_from_json(json::parse(R"({"kind": "spline"})"), {}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          io::density_from_json(json::parse(R"({"kind": "holder-radial", "alpha": 1.5, "direction": [0, 0, 1]})"), {});
        }) == ErrorKind::ParseError);
}

TEST_CASE("scene parsing") {
  const Medium md;
  const io::LoadedScene cube = io::scene_from_json(
      json::parse(R"({"support": {"kind": "cube", "center": [0, 0, 0], "side": 2},
                      "J2": {"kind": "constant", "value": [0, 0, 1]}, "label": "cube"})"),
      md);
  CHECK(cube.source.label == "cube");
  CHECK(support_kind(cube.source.support) == "convex-polyhedron");
  CHECK(cube.source.corners.size() == 8);
  CHECK(!cube.source.j1);
  CHECK(norm(cube.source.J2({0.5, 0.5, 0.5}) - CVec3{0, 0, 1}) == 0.0);
  CHECK(norm(cube.source.J2({1.5, 0.5, 0.5})) == 0.0);

  const io::LoadedScene off = io::scene_from_json(
      json::parse(R"({"support": {"kind": "box", "lo": [0, 0, 0], "hi": [1, 1, 1]}, "path_to_infinity": false})"), md);
  for (const auto& c : off.source.corners) CHECK_FALSE(c.admissible());

  const io::LoadedScene bump = io::scene_from_json(
      json::parse(R"({"bump_potential": {"psi1": {"center": [0, 0, 0], "radius": 1, "v": [0, 0, 1]}, "psi2": null}})"),
      md);
  CHECK(support_kind(bump.source.support) == "ball");
  CHECK(kind_of([&] { io::scene_from_json(json::parse(R"({"support": {"kind": "torus"}})"), md); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { io::read_json_file("/nonexistent/scene.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("csv writers emit fixed headers and one row per sample") {
  std::ostringstream a;
  io::write_cone_sweep_csv(a, {{1.0, {2.0, 3.0}, 4.0, 5.0}, {2.0, {0.0, 1.0}, 0.5, 0.25}});
  CHECK(first_line(a.str()) == "tau,re,im,abs,bound_lower,bound_tail");
  CHECK(lines(a.str()) == 3);
  CHECK(a.str().find("\n1,2,3,3.6055512754639891,4,5\n") != std::string::npos);

  const auto src = CurrentSource::constant(Ball{{0, 0, 0}, 0.5}, {}, {0, 0, 1});
  const FarFieldPattern p = far_field(src, Medium{}, sphere_grid(3, 6, false));
  std::ostringstream b;
  io::write_far_field_csv(b, p);
  CHECK(first_line(b.str()) == "theta,phi,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,Hx_re,Hx_im,Hy_re,Hy_im,Hz_re,Hz_im");
  CHECK(lines(b.str()) == 19);
  const json pj = io::pattern_to_json(p);
  CHECK(pj.is_object());

  TauSweep sw;
  for (int i = 1; i <= 5; ++i) {
    sw.taus.push_back(10.0 * i);
    sw.values.push_back(std::pow(10.0 * i, -3.0));
  }
  const DecayReport r = decay_exponent(sw);
  std::ostringstream c;
  io::write_decay_csv(c, r);
  CHECK(first_line(c.str()) == "tau,abs_value,slope_running");
  CHECK(lines(c.str()) == 6);
  const json rj = io::decay_report_to_json(r);
  CHECK(rj.at("verdict").get<std::string>() == to_string(Verdict::apex_nonvanishing));
}
