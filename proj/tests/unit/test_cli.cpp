// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "cornerem/cli/run.hpp"

using namespace cornerem::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cornerem_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

json read(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  return json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

RunOptions options_for(const fs::path& out) {
  RunOptions o;
  o.out_dir = out.string();
  if (const char* dir = std::getenv("CORNEREM_CONFIG_DIR")) o.config_dir = dir;
  return o;
}

const json kSmallCgo = {{"draws", 50}, {"fd_points", 10}, {"tau_max", 100.0}};

}  // namespace

TEST_CASE("every documented experiment is registered") {
  for (const char* name : {"verify-cgo", "cone-integral", "lower-bound", "corner-decay", "apex-estimate",
                           "reciprocity", "far-field", "nonradiating-demo", "uniqueness-demo"}) {
    CHECK(experiments().count(name) == 1);
  }
}

TEST_CASE("a passing run writes a manifest and exits 0") {
  const fs::path out = scratch("pass");
  std::ostringstream log, err;
  const int code = run_experiment("verify-cgo", kSmallCgo, options_for(out), log, err);
  CHECK(code == kExitPassed);
  CHECK(err.str().empty());
  const json m = read(out / "manifest.json");
  CHECK(m.at("schema") == "cornerem.manifest/1");
  CHECK(m.at("experiment") == "verify-cgo");
  CHECK(m.at("passed") == true);
  CHECK(m.at("exit_code") == 0);
  CHECK(m.at("config") == kSmallCgo);
  CHECK(!m.at("assertions").empty());
  for (const auto& a : m.at("artifacts")) CHECK(fs::exists(out / a.get<std::string>()));
  CHECK(fs::exists(out / "cgo_identities.csv"));
  CHECK(log.str().find("PASS") != std::string::npos);
}

TEST_CASE("a failed expectation exits 1") {
  const fs::path out = scratch("fail");
  json cfg = {{"cone", {{"edges", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}},
              {"F2", {{"kind", "constant"}, {"value", {0, 0, 1}}}},
              {"tau_sweep", {{"lo", 10.0}, {"hi", 100.0}, {"n", 5}}},
              {"expect", {{"electric", "apex-vanishing"}}}};
  std::ostringstream log, err;
  CHECK(run_experiment("corner-decay", cfg, options_for(out), log, err) == kExitAssertionFailed);
  const json m = read(out / "manifest.json");
  CHECK(m.at("passed") == false);
  CHECK(log.str().find("FAIL") != std::string::npos);
}

TEST_CASE("errors exit 2 with error.json") {
  SUBCASE("unknown experiment") {
    const fs::path out = scratch("unknown");
    std::ostringstream log, err;
    CHECK(run_experiment("no-such-thing", json::object(), options_for(out), log, err) == kExitError);
    const json e = read(out / "error.json");
    CHECK(e.at("exit_code") == 2);
    CHECK(json::parse(err.str()).at("error").contains("kind"));
  }
  SUBCASE("out-of-range parameter") {
    const fs::path out = scratch("range");
    std::ostringstream log, err;
    CHECK(run_experiment("verify-cgo", {{"draws", -3}}, options_for(out), log, err) == kExitError);
    CHECK(read(out / "error.json").at("error").at("kind") == "InvalidArgument");
  }
  SUBCASE("invalid cone") {
    const fs::path out = scratch("cone");
    std::ostringstream log, err;
    const json cfg = {{"cone", {{"edges", {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}}}}}};
    CHECK(run_experiment("cone-integral", cfg, options_for(out), log, err) == kExitError);
    CHECK(read(out / "error.json").at("experiment") == "cone-integral");
  }
}

TEST_CASE("outputs do not depend on the thread count") {
  const fs::path a = scratch("t1"), b = scratch("t4");
  RunOptions oa = options_for(a), ob = options_for(b);
  oa.threads = 1;
  ob.threads = 4;
  std::ostringstream log, err;
  REQUIRE(run_experiment("verify-cgo", kSmallCgo, oa, log, err) == 0);
  REQUIRE(run_experiment("verify-cgo", kSmallCgo, ob, log, err) == 0);
  for (const char* f : {"cgo_identities.csv", "fd_residuals.csv", "results.json"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("main entry parses the command line") {
  const fs::path out = scratch("main");
  const fs::path cfg = out.string() + ".json";
  {
    std::ofstream f(cfg);
    f << kSmallCgo.dump();
  }
  std::string args[] = {"cornerem", "run", "verify-cgo", cfg.string(), "--out", out.string(), "--threads", "2"};
  char* argv[std::size(args)];
  for (std::size_t i = 0; i < std::size(args); ++i) argv[i] = args[i].data();
  CHECK(main_entry(static_cast<int>(std::size(args)), argv) == 0);
  CHECK(read(out / "manifest.json").at("threads_requested") == 2);
  fs::remove(cfg);
}
