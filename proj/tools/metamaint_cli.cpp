// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the simulator only through the C API.
//
// Exit status: 0 on success, 1 when the run or query fails, 2 for malformed
// input (bad scenario, bad arguments).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "metamaint/metamaint.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

int report(mm_status status) {
  if (status == MM_ERR_PARSE) {
    std::cerr << "parse error: " << mm_last_error() << "\n";
    return kExitUsage;
  }
  std::cerr << "error [" << mm_last_error_name() << "]: " << mm_last_error() << "\n";
  return status == MM_ERR_UNKNOWN_QUERY || status == MM_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
}

struct ScenarioHandle {
  mm_scenario* p = nullptr;
  ~ScenarioHandle() { mm_scenario_free(p); }
};
struct SimulationHandle {
  mm_simulation* p = nullptr;
  ~SimulationHandle() { mm_simulation_free(p); }
};

int cmd_check(const std::string& path) {
  ScenarioHandle scenario;
  if (auto s = mm_scenario_load(path.c_str(), &scenario.p); s != MM_OK) return report(s);
  std::cout << "ok " << mm_scenario_command_count(scenario.p) << " commands\n";
  return 0;
}

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            const std::string& matrix) {
  ScenarioHandle scenario;
  if (auto s = mm_scenario_load(path.c_str(), &scenario.p); s != MM_OK) return report(s);
  SimulationHandle sim;
  const std::uint64_t* seed_ptr = seed ? &*seed : nullptr;
  if (auto s = mm_simulation_run(scenario.p, seed_ptr, matrix.empty() ? nullptr : matrix.c_str(), &sim.p);
      s != MM_OK) {
    return report(s);
  }
  if (auto s = mm_simulation_write(sim.p, out_dir.c_str()); s != MM_OK) return report(s);
  char digest[65];
  if (auto s = mm_simulation_digest(sim.p, digest); s != MM_OK) return report(s);
  std::cout << "height " << mm_simulation_height(sim.p) << "\n" << "state_digest " << digest << "\n";
  return 0;
}

int cmd_query(const std::string& kind, const std::vector<std::string>& args, const std::string& out_dir) {
  SimulationHandle sim;
  if (auto s = mm_simulation_load(out_dir.c_str(), &sim.p); s != MM_OK) return report(s);
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  char* result = nullptr;
  if (auto s = mm_simulation_query(sim.p, kind.c_str(), argv.data(), argv.size(), &result); s != MM_OK) {
    return report(s);
  }
  std::fputs(result, stdout);
  mm_string_free(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metamaint: clone-and-own release tracking on a simulated ledger"};
  app.set_version_flag("--version", std::string(mm_version()));
  app.require_subcommand(1);

  std::string scenario_path, out_dir, matrix, kind;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> query_args;

  auto* run = app.add_subcommand("run", "Run a scenario and write its dumps");
  run->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the scenario's seed");
  run->add_option("--matrix", matrix, "License compatibility fixture")->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "Parse a scenario without running it");
  check->add_option("scenario", scenario_path, "Scenario file")->required();

  auto* query = app.add_subcommand("query", "Query a finished run");
  query->add_option("kind", kind, "downstream | outdated | impact | issues | graph | chain | digest")->required();
  query->add_option("args", query_args, "Query arguments");
  query->add_option("--out", out_dir, "Directory written by `run`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(scenario_path, out_dir, seed, matrix);
  if (*check) return cmd_check(scenario_path);
  return cmd_query(kind, query_args, out_dir);
}
