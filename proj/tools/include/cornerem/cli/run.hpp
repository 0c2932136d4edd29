// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner behind the `cornerem` executable. Each experiment reads a
// JSON config, writes its tables into the output directory and records
// assertions; the runner adds manifest.json and maps the outcome to an exit
// status (0 all assertions hold, 1 an assertion failed, 2 an error).

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cornerem::cli {

using json = nlohmann::json;

inline constexpr int kExitPassed = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitError = 2;

struct RunOptions {
  std::filesystem::path out_dir = "cornerem-out";
  std::filesystem::path config_dir = ".";  // base for relative scene paths
  unsigned threads = 0;                    // 0: hardware concurrency
  std::uint64_t seed = 20260101;
  std::optional<double> rtol;              // quadrature override
};

struct Assertion {
  std::string name;
  std::optional<double> value;
  std::string relation;  // "<=", ">=", "<", ">", "==" or "holds"
  std::optional<double> limit;
  std::string detail;
  bool passed = false;
};

json to_json(const Assertion& a);

// Collects assertions, results and artifacts of one run.
class Recorder {
 public:
  explicit Recorder(std::filesystem::path out_dir);

  bool check(const std::string& name, double value, const std::string& relation, double limit);
  bool check(const std::string& name, bool holds, const std::string& detail = {});

  // Writes `file` in the output directory and lists it as an artifact.
  void write_artifact(const std::string& file, const std::function<void(std::ostream&)>& writer);
  void warn(const std::string& message) { warnings_.push_back(message); }

  json& results() { return results_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }
  const std::vector<std::string>& artifacts() const { return artifacts_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool passed() const;

 private:
  std::filesystem::path out_dir_;
  std::vector<Assertion> assertions_;
  std::vector<std::string> artifacts_;
  std::vector<std::string> warnings_;
  json results_ = json::object();
};

using Experiment = std::function<void(const json& config, const RunOptions& options, Recorder& rec)>;

// The nine experiments by name.
const std::map<std::string, Experiment>& experiments();

// Runs one experiment and writes manifest.json (plus error.json on failure).
// Progress goes to `log`, machine-readable errors to `err`.
int run_experiment(const std::string& name, const json& config, const RunOptions& options,
                   std::ostream& log, std::ostream& err);

// Entry point of the executable: `cornerem run <experiment> [config] [flags]`.
int main_entry(int argc, char** argv);

}  // namespace cornerem::cli
