// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/cli/run.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "config.hpp"
#include "cornerem/error.hpp"
#include "cornerem/io.hpp"
#include "cornerem/parallel.hpp"

#ifndef CORNEREM_VERSION
#define CORNEREM_VERSION "unknown"
#endif

namespace cornerem::cli {
namespace {

constexpr const char* kManifestSchema = "cornerem.manifest/1";

bool compare(double v, const std::string& rel, double limit) {
  if (rel == "<=") return v <= limit;
  if (rel == ">=") return v >= limit;
  if (rel == "<") return v < limit;
  if (rel == ">") return v > limit;
  if (rel == "==") return v == limit;
  throw Error(ErrorKind::InvalidArgument, "unknown relation '" + rel + "'");
}

// Error::what() carries a "Kind: " prefix that the JSON records separately.
std::string bare_message(const Error& e) {
  const std::string w = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

json error_json(const std::string& kind, const std::string& message, const std::string& experiment) {
  return {{"error", {{"kind", kind}, {"message", message}}},
          {"experiment", experiment},
          {"exit_code", kExitError}};
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write '" + p.string() + "'");
  os << j.dump(2) << '\n';
}

// Best effort: an unwritable output directory must not hide the original error.
void emit_error(const json& err_json, const std::filesystem::path& out_dir, std::ostream& err) {
  err << err_json.dump() << '\n';
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return;
  std::ofstream os(out_dir / "error.json", std::ios::binary);
  if (os) os << err_json.dump(2) << '\n';
}

}  // namespace

json to_json(const Assertion& a) {
  json j = {{"name", a.name}, {"relation", a.relation}, {"passed", a.passed}};
  j["value"] = a.value ? json(*a.value) : json(nullptr);
  j["limit"] = a.limit ? json(*a.limit) : json(nullptr);
  if (!a.detail.empty()) j["detail"] = a.detail;
  return j;
}

Recorder::Recorder(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {}

bool Recorder::check(const std::string& name, double value, const std::string& relation,
                     double limit) {
  const bool ok = compare(value, relation, limit);
  assertions_.push_back({name, value, relation, limit, {}, ok});
  return ok;
}

bool Recorder::check(const std::string& name, bool holds, const std::string& detail) {
  assertions_.push_back({name, std::nullopt, "holds", std::nullopt, detail, holds});
  return holds;
}

void Recorder::write_artifact(const std::string& file,
                              const std::function<void(std::ostream&)>& writer) {
  std::ofstream os(out_dir_ / file, std::ios::binary);
  if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write '" + (out_dir_ / file).string() + "'");
  writer(os);
  artifacts_.push_back(file);
}

bool Recorder::passed() const {
  for (const auto& a : assertions_)
    if (!a.passed) return false;
  return true;
}

const std::map<std::string, Experiment>& experiments() {
  static const std::map<std::string, Experiment> table = {
      {"verify-cgo", detail::verify_cgo},
      {"cone-integral", detail::cone_integral},
      {"lower-bound", detail::lower_bound},
      {"corner-decay", detail::corner_decay},
      {"apex-estimate", detail::apex_estimate},
      {"reciprocity", detail::reciprocity},
      {"far-field", detail::far_field},
      {"nonradiating-demo", detail::nonradiating_demo},
      {"uniqueness-demo", detail::uniqueness},
  };
  return table;
}

int run_experiment(const std::string& name, const json& config, const RunOptions& options,
                   std::ostream& log, std::ostream& err) {
  const auto it = experiments().find(name);
  if (it == experiments().end()) {
    emit_error(error_json("InvalidArgument", "unknown experiment '" + name + "'", name),
               options.out_dir, err);
    return kExitError;
  }

  json manifest = {{"schema", kManifestSchema},
                   {"tool", "cornerem"},
                   {"version", CORNEREM_VERSION},
                   {"experiment", name},
                   {"config", config},
                   {"seed", options.seed},
                   {"threads_requested", options.threads},
                   {"rtol_override", options.rtol ? json(*options.rtol) : json(nullptr)}};

  const auto start = std::chrono::steady_clock::now();
  Recorder rec(options.out_dir);
  json error = nullptr;
  try {
    std::filesystem::create_directories(options.out_dir);
    set_thread_count(options.threads);
    manifest["threads_used"] = thread_count();
    it->second(config, options, rec);
    rec.write_artifact("results.json",
                       [&](std::ostream& os) { os << rec.results().dump(2) << '\n'; });
  } catch (const Error& e) {
    error = error_json(std::string(to_string(e.kind())), bare_message(e), name);
  } catch (const json::exception& e) {
    error = error_json("ParseError", e.what(), name);
  } catch (const std::filesystem::filesystem_error& e) {
    error = error_json("InvalidArgument", e.what(), name);
  } catch (const std::exception& e) {
    error = error_json("InternalError", e.what(), name);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json assertions = json::array();
  for (const auto& a : rec.assertions()) assertions.push_back(to_json(a));
  const bool passed = error.is_null() && rec.passed();
  const int code = !error.is_null() ? kExitError : passed ? kExitPassed : kExitAssertionFailed;
  manifest["wall_time_seconds"] = wall;
  manifest["assertions"] = assertions;
  manifest["artifacts"] = rec.artifacts();
  manifest["warnings"] = rec.warnings();
  manifest["passed"] = passed;
  manifest["exit_code"] = code;
  manifest["error"] = error.is_null() ? json(nullptr) : error.at("error");

  if (!error.is_null()) emit_error(error, options.out_dir, err);
  try {
    write_json(options.out_dir / "manifest.json", manifest);
  } catch (const Error& e) {
    err << error_json("InvalidArgument", bare_message(e), name).dump() << '\n';
    return kExitError;
  }

  for (const auto& w : rec.warnings()) log << "warning: " << w << '\n';
  for (const auto& a : rec.assertions()) {
    log << (a.passed ? "PASS " : "FAIL ") << a.name;
    if (a.value) log << "  " << io::format_double(*a.value) << ' ' << a.relation << ' ' << io::format_double(*a.limit);
    if (!a.detail.empty()) log << "  (" << a.detail << ')';
    log << '\n';
  }
  log << name << ": " << (code == kExitPassed ? "passed" : code == kExitAssertionFailed ? "FAILED" : "ERROR")
      << " in " << wall << " s, output in " << options.out_dir.string() << '\n';
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"cornerem: corner-vanishing experiments for time-harmonic Maxwell sources"};
  app.require_subcommand(1);

  std::string experiment, positional_config, flag_config;
  RunOptions options;
  double rtol = 0.0;

  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  std::vector<std::string> names;
  for (const auto& [n, fn] : experiments()) names.push_back(n);
  // Unknown names reach run_experiment so that they produce error JSON too.
  run->add_option("experiment", experiment, "Experiment name (see `cornerem list`)")->required();
  run->add_option("config_file", positional_config, "JSON config (same as --config)");
  run->add_option("--config", flag_config, "JSON config file");
  run->add_option("--out", options.out_dir, "Output directory")->capture_default_str();
  run->add_option("--threads", options.threads, "Worker threads, 0 = auto")
      ->check(CLI::Range(0u, 1024u))
      ->capture_default_str();
  run->add_option("--seed", options.seed, "Seed for every sampled check")->capture_default_str();
  CLI::Option* rtol_opt =
      run->add_option("--rtol", rtol, "Quadrature relative tolerance")->check(CLI::Range(1e-14, 1e-2));

  CLI::App* list = app.add_subcommand("list", "List the experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPassed : kExitError;
  }

  if (list->parsed()) {
    for (const auto& n : names) std::cout << n << '\n';
    return kExitPassed;
  }

  if (!positional_config.empty() && !flag_config.empty() && positional_config != flag_config) {
    emit_error(error_json("InvalidArgument", "config given twice with different paths", experiment),
               options.out_dir, std::cerr);
    return kExitError;
  }
  const std::string path = flag_config.empty() ? positional_config : flag_config;
  if (*rtol_opt) options.rtol = rtol;

  json config = json::object();
  if (!path.empty()) {
    try {
      config = io::read_json_file(path);
    } catch (const Error& e) {
      emit_error(error_json(std::string(to_string(e.kind())), bare_message(e), experiment),
                 options.out_dir, std::cerr);
      return kExitError;
    }
    options.config_dir = std::filesystem::path(path).parent_path();
    if (options.config_dir.empty()) options.config_dir = ".";
  }
  return run_experiment(experiment, config, options, std::cout, std::cerr);
}

}  // namespace cornerem::cli
