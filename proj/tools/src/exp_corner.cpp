// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// corner-decay, apex-estimate and reciprocity.

#include <algorithm>
#include <cmath>
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

VectorFn density_or_empty(const json& cfg, const char* key, const Vec3& center) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return {};
  return io::density_from_json(cfg.at(key), center);
}

std::size_t edge_of(const json& cfg, const PolyhedralCone& cone) {
  const auto e = static_cast<std::size_t>(integer_or(cfg, "edge_index", 0, 0, 1 << 20));
  if (e >= cone.size()) throw Error(ErrorKind::InvalidArgument, "edge_index out of range");
  return e;
}

DecayThresholds thresholds_of(const json& cfg) {
  DecayThresholds t;
  if (!cfg.contains("thresholds")) return t;
  const json& j = cfg.at("thresholds");
  t.delta = number_or(j, "delta", t.delta, 0.0, 3.0);
  t.gap = number_or(j, "gap", t.gap, 0.0, 3.0);
  t.rfit = number_or(j, "rfit", t.rfit, 0.0, 10.0);
  t.noise_floor = number_or(j, "noise_floor", t.noise_floor, 0.0, 1.0);
  return t;
}

PolyVectorField poly_from_json(const json& j) {
  PolyVectorField f;
  for (const auto& t : j.at("terms")) {
    const int c = t.at("component").get<int>();
    if (c < 0 || c > 2) throw Error(ErrorKind::ParseError, "polynomial component must be 0, 1 or 2");
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::ParseError, "exp: expected [i, j, l]");
    f.c[c] += Polynomial3::monomial(io::to_complex(t.at("coeff"), "coeff"), e[0].get<int>(),
                                    e[1].get<int>(), e[2].get<int>());
  }
  return f;
}

PolyVectorField random_poly(Rng& rng, int degree) {
  PolyVectorField f;
  for (auto& comp : f.c)
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j)
        for (int l = 0; i + j + l <= degree; ++l)
          comp += Polynomial3::monomial({rng.normal(), rng.normal()}, i, j, l);
  return f;
}

ReciprocityDomain domain_of(const json& cfg) {
  if (!cfg.contains("domain")) return Box{{0, 0, 0}, {1, 1, 1}};
  Support s = io::support_from_json(cfg.at("domain"));
  if (auto* b = std::get_if<Box>(&s)) return *b;
  if (auto* p = std::get_if<ConvexPolyhedron>(&s)) return *p;
  throw Error(ErrorKind::InvalidArgument, "reciprocity domain must be a box or a convex polyhedron");
}

ProbeMode mode_of(const std::string& m) {
  if (m == "electric") return ProbeMode::electric;
  if (m == "magnetic") return ProbeMode::magnetic;
  throw Error(ErrorKind::ParseError, "mode must be 'electric' or 'magnetic'");
}

}  // namespace

void corner_decay(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const PolyhedralCone cone = cone_of(cfg, rec);

  ClassifyConfig cc;
  cc.edge_index = edge_of(cfg, cone);
  if (cfg.contains("s")) cc.s = io::to_real(cfg.at("s"), "s");
  cc.taus = taus_of(cfg, k, 10.0, 100.0, 8);
  cc.thresholds = thresholds_of(cfg);
  cc.quad = quadrature_of(cfg, options);
  const double s = classification_s(cone, cc);
  const CgoParameters base = build_cgo(cone, cc.edge_index, k, cc.taus.front(), s, SRange::admissible);
  const double r0 = cfg.contains("r0") ? number_or(cfg, "r0", 1.0, 1e-12, 1e12)
                                       : recommended_radius(cone, base, cc.taus.front());

  const VectorFn f1 = density_or_empty(cfg, "F1", cone.apex());
  const VectorFn f2 = density_or_empty(cfg, "F2", cone.apex());
  const ApexClassification c = classify_apex(f1, f2, TruncatedCone(cone, r0), medium, cc);

  rec.results() = {{"edge_index", cc.edge_index},
                   {"s", c.s},
                   {"r0", r0},
                   {"cgo", io::cgo_to_json(base)},
                   {"electric", io::decay_report_to_json(c.electric)},
                   {"magnetic", io::decay_report_to_json(c.magnetic)}};
  rec.write_artifact("decay_report.json",
                     [&](std::ostream& os) { os << rec.results().dump(2) << '\n'; });
  rec.write_artifact("decay_electric.csv", [&](std::ostream& os) { io::write_decay_csv(os, c.electric); });
  rec.write_artifact("decay_magnetic.csv", [&](std::ostream& os) { io::write_decay_csv(os, c.magnetic); });

  rec.check("electric sweep finite", std::isfinite(c.electric.slope) || c.electric.exact_zero);
  rec.check("magnetic sweep finite", std::isfinite(c.magnetic.slope) || c.magnetic.exact_zero);
  if (cfg.contains("expect")) {
    const json& ex = cfg.at("expect");
    for (const auto& [key, report] : {std::pair{"electric", &c.electric}, std::pair{"magnetic", &c.magnetic}}) {
      if (!ex.contains(key)) continue;
      const std::string want = ex.at(key).get<std::string>();
      const std::string got = to_string(report->verdict);
      rec.check(std::string(key) + " verdict", got == want, "expected " + want + ", got " + got);
    }
  }
}

void apex_estimate(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const PolyhedralCone cone = cone_of(cfg, rec);
  const double tol = number_or(cfg, "tolerance", 0.05, 0.0, 1.0);

  const json fj = cfg.contains("F") ? cfg.at("F")
                                    : json{{"kind", "holder-radial"},
                                           {"F0", {0.3, 0.5, 1.0}},
                                           {"alpha", 0.5},
                                           {"direction", {1.0, -0.5, 0.25}}};
  const VectorFn f = io::density_from_json(fj, cone.apex());

  // Expected apex value: explicit, or read off a density centred at the apex.
  std::optional<CVec3> expected;
  if (cfg.contains("expect_F0")) {
    expected = io::to_cvec3(cfg.at("expect_F0"), "expect_F0");
  } else if (fj.value("kind", "") == "constant") {
    expected = io::to_cvec3(fj.at("value"), "value");
  } else if (fj.value("kind", "") == "holder-radial" &&
             (!fj.contains("center") || norm(io::to_vec3(fj.at("center"), "center") - cone.apex()) == 0.0)) {
    expected = fj.contains("F0") ? io::to_cvec3(fj.at("F0"), "F0") : CVec3{};
  }

  std::vector<std::size_t> edges;
  if (cfg.contains("edges")) {
    for (const auto& e : cfg.at("edges")) edges.push_back(e.get<std::size_t>());
  } else {
    edges = {0, 1, 2};
  }
  for (std::size_t e : edges)
    if (e >= cone.size()) throw Error(ErrorKind::InvalidArgument, "edge index out of range");

  ApexEstimateOptions eo;
  if (cfg.contains("alpha")) eo.alpha = number_or(cfg, "alpha", 0.5, 1e-6, 1.0);
  eo.taus = taus_of(cfg, k, 10.0, 100.0, 8);
  eo.quad = quadrature_of(cfg, options);

  std::vector<ApexEstimate> estimates;
  json per_edge = json::array();
  for (std::size_t e : edges) {
    const double s = cfg.contains("s") ? io::to_real(cfg.at("s"), "s")
                                       : 0.5 * s_limit(cone, e, SRange::admissible);
    const CgoParameters p = build_cgo(cone, e, k, eo.taus.front(), s, SRange::admissible);
    const double r0 = recommended_radius(cone, p, eo.taus.front());
    ApexEstimate est = estimate_apex_value(f, TruncatedCone(cone, r0), p, eo);
    json row = {{"edge_index", e},
                {"s", s},
                {"r0", r0},
                {"value", io::from_complex(est.value)},
                {"error_bar", est.error_bar},
                {"alpha", est.alpha},
                {"p_inf", io::from_cvec3(est.p_inf)}};
    const std::string label = "edge " + std::to_string(e);
    if (expected) {
      const cplx want = dot(*expected, est.p_inf);
      // Relative to |F0·p∞| unless that projection is nearly orthogonal.
      const double scale = std::max(std::abs(want), 1e-3 * norm(*expected) * norm(est.p_inf));
      const double rel = std::abs(est.value - want) / scale;
      row["expected"] = io::from_complex(want);
      row["relative_error"] = rel;
      rec.check(label + " relative error of F0.p_inf", rel, "<=", tol);
    } else {
      rec.check(label + " error bar / |value|", est.error_bar / std::abs(est.value), "<=", tol);
    }
    per_edge.push_back(row);
    estimates.push_back(std::move(est));
  }

  json results = {{"estimates", per_edge}, {"tolerance", tol}};
  if (estimates.size() >= 3) {
    const CVec3 f0 = recover_apex_vector({estimates[0], estimates[1], estimates[2]});
    results["recovered_F0"] = io::from_cvec3(f0);
    if (expected) {
      const double rel = norm(f0 - *expected) / norm(*expected);
      results["recovered_relative_error"] = rel;
      rec.check("recovered F0 relative error", rel, "<=", tol);
    }
  }
  rec.results() = results;
  rec.write_artifact("apex_estimate.json", [&](std::ostream& os) { os << results.dump(2) << '\n'; });
  rec.write_artifact("apex_ratios.csv", [&](std::ostream& os) {
    os << "edge_index,tau,ratio_re,ratio_im\n";
    for (std::size_t i = 0; i < estimates.size(); ++i)
      for (std::size_t t = 0; t < estimates[i].taus.size(); ++t)
        os << edges[i] << ',' << format_double(estimates[i].taus[t]) << ','
           << format_double(estimates[i].ratios[t].real()) << ','
           << format_double(estimates[i].ratios[t].imag()) << '\n';
  });
}

void reciprocity(const json& cfg, const RunOptions& options, Recorder& rec) {
  const Medium medium = medium_of(cfg);
  const double k = medium.k();
  const ReciprocityDomain domain = domain_of(cfg);
  const PolyhedralCone cone = cone_of(cfg, rec);
  const double tol = number_or(cfg, "tolerance", 1e-6, 0.0, 1.0);
  ReciprocityOptions ro;
  ro.order = integer_or(cfg, "order", ro.order, 2, 64);

  struct Case {
    PolyVectorField e, h;
    std::vector<std::pair<std::string, ExpMaxwellPair>> tests;
  };
  std::vector<Case> cases;
  Rng rng(options.seed);

  auto random_cgo = [&](ProbeMode mode) {
    const std::size_t e = rng.index(cone.size());
    const double s = s_limit(cone, e, SRange::admissible) * rng.uniform(0.1, 1.0);
    const double tau = k * rng.uniform(1.0, 5.0);
    return cgo_fields(build_cgo(cone, e, k, tau, s, SRange::admissible), medium, mode, cone.apex());
  };
  auto random_plane_wave = [&]() {
    const UnitVector3 q = rng.direction();
    const UnitVector3 pol = UnitVector3::normalize(cross(q.vec(), rng.direction().vec()));
    return plane_wave_pair(q, pol, medium);
  };

  if (cfg.contains("cases")) {
    for (const auto& c : cfg.at("cases")) {
      Case cs{poly_from_json(c.at("E")), poly_from_json(c.at("H")), {}};
      for (const auto& t : c.at("tests")) {
        const std::string kind = t.at("kind").get<std::string>();
        if (kind == "cgo") {
          const std::size_t e = t.value("edge_index", std::size_t{0});
          if (e >= cone.size()) throw Error(ErrorKind::InvalidArgument, "edge_index out of range");
          const double s = t.contains("s") ? io::to_real(t.at("s"), "s")
                                           : 0.5 * s_limit(cone, e, SRange::admissible);
          const double tau = io::to_real(t.at("tau"), "tau");
          const CgoParameters p = build_cgo(cone, e, k, tau, s, SRange::admissible);
          cs.tests.emplace_back("cgo", cgo_fields(p, medium, mode_of(t.value("mode", "electric")), cone.apex()));
        } else if (kind == "plane-wave") {
          cs.tests.emplace_back("plane-wave",
                                plane_wave_pair(io::to_vec3(t.at("direction"), "direction"),
                                                io::to_vec3(t.at("polarization"), "polarization"), medium));
        } else {
          throw Error(ErrorKind::ParseError, "test kind must be 'cgo' or 'plane-wave'");
        }
      }
      cases.push_back(std::move(cs));
    }
  } else {
    const int n = integer_or(cfg, "random_cases", 10, 1, 1000);
    const int degree = integer_or(cfg, "degree", 2, 0, 6);
    for (int i = 0; i < n; ++i) {
      Case cs{random_poly(rng, degree), random_poly(rng, degree), {}};
      cs.tests.emplace_back("cgo", random_cgo(i % 2 == 0 ? ProbeMode::electric : ProbeMode::magnetic));
      cs.tests.emplace_back("plane-wave", random_plane_wave());
      cases.push_back(std::move(cs));
    }
  }

  double worst = 0.0;
  std::size_t checks = 0;
  rec.write_artifact("reciprocity.csv", [&](std::ostream& os) {
    os << "case,test,lhs1_re,lhs1_im,rhs1_re,rhs1_im,residual1,lhs2_re,lhs2_im,rhs2_re,rhs2_im,residual2\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const AnalyticField e = AnalyticField::polynomial(cases[i].e);
      const AnalyticField h = AnalyticField::polynomial(cases[i].h);
      for (const auto& [name, test] : cases[i].tests) {
        const ReciprocityReport r = reciprocity_check(domain, e, h, test, medium, ro);
        worst = std::max({worst, r.residual1, r.residual2});
        ++checks;
        os << i << ',' << name << ',' << format_double(r.lhs1.real()) << ','
           << format_double(r.lhs1.imag()) << ',' << format_double(r.rhs1.real()) << ','
           << format_double(r.rhs1.imag()) << ',' << format_double(r.residual1) << ','
           << format_double(r.lhs2.real()) << ',' << format_double(r.lhs2.imag()) << ','
           << format_double(r.rhs2.real()) << ',' << format_double(r.rhs2.imag()) << ','
           << format_double(r.residual2) << '\n';
      }
    }
  });
  rec.check("max reciprocity residual", worst, "<=", tol);
  rec.results() = {{"cases", cases.size()}, {"checks", checks}, {"max_residual", worst}};
}

}  // namespace cornerem::cli::detail
