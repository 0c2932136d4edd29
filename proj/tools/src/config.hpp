// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Config readers shared by the experiments. Every reader validates its
// overrides and throws InvalidArgument or ParseError on bad input.

#pragma once

#include <string>
#include <vector>

#include "cornerem/cli/run.hpp"
#include "cornerem/cone_integrals.hpp"
#include "cornerem/corner.hpp"
#include "cornerem/medium.hpp"
#include "cornerem/radiation.hpp"

namespace cornerem::cli::detail {

Medium medium_of(const json& cfg);

// cfg[key] as a cone; the unit octant at the origin when absent.
PolyhedralCone cone_of(const json& cfg, Recorder& rec, const char* key = "cone");

// cfg["quadrature"] = {rtol, atol, max_angular_order, max_radial_order, max_angular_subdivision,
// angular_order, angular_subdivision, radial_order}; --rtol wins over rtol.
QuadratureOptions quadrature_of(const json& cfg, const RunOptions& options);

// cfg["tau_sweep"] = {lo, hi, n} in units of k, or {values: [...]} absolute.
std::vector<double> taus_of(const json& cfg, double k, double lo, double hi, int n);

// A scene given inline or as a path relative to the config directory.
json scene_json(const json& node, const RunOptions& options);

// cfg["grid"] = {n_theta, n_phi, axis_points}.
SphereGrid grid_of(const json& cfg);

// cfg["source_quadrature"] = {points_per_wavelength, min_order, max_order}.
SourceQuadratureOptions source_quadrature_of(const json& cfg);

// Number in cfg[key] or a default; checked against [lo, hi].
double number_or(const json& cfg, const char* key, double def, double lo, double hi);
int integer_or(const json& cfg, const char* key, int def, int lo, int hi);

// Writes <stem>.csv and <stem>.json for a pattern.
void write_pattern(Recorder& rec, const std::string& stem, const FarFieldPattern& pattern);

// Records the four far-field relations of a pattern as assertions.
void check_relations(Recorder& rec, const std::string& label, const FarFieldPattern& pattern,
                     const Medium& medium, double tolerance);

void verify_cgo(const json& cfg, const RunOptions& options, Recorder& rec);
void cone_integral(const json& cfg, const RunOptions& options, Recorder& rec);
void lower_bound(const json& cfg, const RunOptions& options, Recorder& rec);
void corner_decay(const json& cfg, const RunOptions& options, Recorder& rec);
void apex_estimate(const json& cfg, const RunOptions& options, Recorder& rec);
void reciprocity(const json& cfg, const RunOptions& options, Recorder& rec);
void far_field(const json& cfg, const RunOptions& options, Recorder& rec);
void nonradiating_demo(const json& cfg, const RunOptions& options, Recorder& rec);
void uniqueness(const json& cfg, const RunOptions& options, Recorder& rec);

}  // namespace cornerem::cli::detail
