// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/metamaint.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "metamaint/scenario.hpp"

struct mm_scenario {
  std::string text;
  metamaint::ScenarioFile file;
};

struct mm_simulation {
  std::string scenario_text;
  metamaint::Simulation sim;
};

namespace {

struct LastError {
  std::string message;
  std::string name;
  std::size_t line = 0;
  std::size_t column = 0;
};

thread_local LastError last_error;

mm_status fail(mm_status status, std::string message, std::string name) {
  last_error = LastError{std::move(message), std::move(name), 0, 0};
  return status;
}

mm_status status_for(metamaint::ErrorCode code) {
  using metamaint::ErrorCode;
  switch (code) {
    case ErrorCode::ParseError: return MM_ERR_PARSE;
    case ErrorCode::IoError: return MM_ERR_IO;
    case ErrorCode::MissingDump: return MM_ERR_MISSING_DUMP;
    case ErrorCode::UnknownQuery: return MM_ERR_UNKNOWN_QUERY;
    default: return MM_ERR_RUNTIME;
  }
}

// Runs `fn`, translating exceptions into a status and the thread's last error.
template <typename Fn>
mm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return MM_OK;
  } catch (const metamaint::ScenarioParseError& e) {
    last_error = LastError{e.what(), "ParseError", e.line(), e.column()};
    return MM_ERR_PARSE;
  } catch (const metamaint::Error& e) {
    return fail(status_for(e.code()), e.what(), std::string(metamaint::error_name(e.code())));
  } catch (const std::bad_alloc&) {
    return fail(MM_ERR_INTERNAL, "out of memory", "Internal");
  } catch (const std::exception& e) {
    return fail(MM_ERR_INTERNAL, e.what(), "Internal");
  } catch (...) {
    return fail(MM_ERR_INTERNAL, "unknown exception", "Internal");
  }
}

mm_status null_argument(const char* what) {
  return fail(MM_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null", "InvalidArgument");
}

char* copy_out(const std::string& s) {
  auto* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* mm_version(void) { return "0.1.0"; }

const char* mm_last_error(void) { return last_error.message.c_str(); }
const char* mm_last_error_name(void) { return last_error.name.c_str(); }
size_t mm_last_error_line(void) { return last_error.line; }
size_t mm_last_error_column(void) { return last_error.column; }

mm_status mm_scenario_parse(const char* text, size_t len, mm_scenario** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  if (!text && len > 0) return null_argument("text");
  return guarded([&] {
    auto s = std::make_unique<mm_scenario>();
    s->text.assign(text ? text : "", len);
    s->file = metamaint::parse_scenario(s->text);
    *out = s.release();
  });
}

mm_status mm_scenario_load(const char* path, mm_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(MM_ERR_IO, std::string("cannot open ") + path, "IoError");
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  return mm_scenario_parse(text.data(), text.size(), out);
}

size_t mm_scenario_command_count(const mm_scenario* scenario) {
  return scenario ? scenario->file.commands.size() : 0;
}

void mm_scenario_free(mm_scenario* scenario) { delete scenario; }

mm_status mm_simulation_run(const mm_scenario* scenario, const uint64_t* seed, const char* matrix_path,
                            mm_simulation** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    std::shared_ptr<const metamaint::CompatibilityMatrix> matrix;
    if (matrix_path) {
      matrix = std::make_shared<const metamaint::CompatibilityMatrix>(
          metamaint::CompatibilityMatrix::load(matrix_path));
    }
    std::optional<std::uint64_t> override_seed;
    if (seed) override_seed = *seed;
    auto sim = metamaint::Simulation::run(scenario->file, override_seed, std::move(matrix));
    *out = new mm_simulation{scenario->text, std::move(sim)};
  });
}

mm_status mm_simulation_load(const char* out_dir, mm_simulation** out) {
  if (!out_dir) return null_argument("out_dir");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto sim = metamaint::Simulation::load(out_dir);
    std::ifstream in(std::filesystem::path(out_dir) / "scenario.txt", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = new mm_simulation{ss.str(), std::move(sim)};
  });
}

mm_status mm_simulation_write(const mm_simulation* sim, const char* out_dir) {
  if (!sim) return null_argument("sim");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] { sim->sim.write_outputs(out_dir, sim->scenario_text); });
}

mm_status mm_simulation_query(const mm_simulation* sim, const char* kind, const char* const* args,
                              size_t arg_count, char** out) {
  if (!sim) return null_argument("sim");
  if (!kind) return null_argument("kind");
  if (!out) return null_argument("out");
  if (!args && arg_count > 0) return null_argument("args");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> argv;
    for (size_t i = 0; i < arg_count; ++i) {
      if (!args[i]) throw metamaint::Error(metamaint::ErrorCode::UnknownQuery, "null query argument");
      argv.emplace_back(args[i]);
    }
    auto result = sim->sim.query(metamaint::QuerySpec::parse(kind, std::move(argv)));
    *out = copy_out(result);
  });
}

mm_status mm_simulation_digest(const mm_simulation* sim, char out[65]) {
  if (!sim) return null_argument("sim");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto hex = metamaint::state_digest(sim->sim.state()).hex();
    std::memcpy(out, hex.c_str(), 65);
  });
}

uint64_t mm_simulation_height(const mm_simulation* sim) { return sim ? sim->sim.state().tip().height : 0; }

void mm_simulation_free(mm_simulation* sim) { delete sim; }

void mm_string_free(char* s) { delete[] s; }

}  // extern "C"
