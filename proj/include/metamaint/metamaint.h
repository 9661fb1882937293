/* Copyright 2026 The metamaint Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef METAMAINT_METAMAINT_H
#define METAMAINT_METAMAINT_H

/* C interface to the metamaint simulator: parse a scenario, run it over a
 * simulated network, write its dumps and answer queries over the result.
 *
 * Every call returns an mm_status. On failure the calling thread's last
 * error (message, error name and, for parse errors, line and column) is
 * set and stays valid until the next failing call on that thread. Strings
 * handed out through char** must be released with mm_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define MM_API __attribute__((visibility("default")))
#else
#define MM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mm_status {
  MM_OK = 0,
  MM_ERR_PARSE = 1,         /* scenario or matrix text is malformed */
  MM_ERR_RUNTIME = 2,       /* the run or query failed; see mm_last_error_name */
  MM_ERR_INVALID_ARGUMENT = 3,
  MM_ERR_IO = 4,
  MM_ERR_MISSING_DUMP = 5,  /* an output directory is absent or stale */
  MM_ERR_UNKNOWN_QUERY = 6,
  MM_ERR_INTERNAL = 7
} mm_status;

typedef struct mm_scenario mm_scenario;
typedef struct mm_simulation mm_simulation;

MM_API const char* mm_version(void);

MM_API const char* mm_last_error(void);
/* Error name such as "ParseError" or "UnknownRelease"; "" when none. */
MM_API const char* mm_last_error_name(void);
/* 1-based; 0 when the last error was not a scenario parse error. */
MM_API size_t mm_last_error_line(void);
MM_API size_t mm_last_error_column(void);

MM_API mm_status mm_scenario_parse(const char* text, size_t len, mm_scenario** out);
MM_API mm_status mm_scenario_load(const char* path, mm_scenario** out);
MM_API size_t mm_scenario_command_count(const mm_scenario* scenario);
MM_API void mm_scenario_free(mm_scenario* scenario);

/* `seed` overrides the scenario's seed when non-null. `matrix_path` names a
 * compatibility fixture; null uses METAMAINT_MATRIX or the built-in one. */
MM_API mm_status mm_simulation_run(const mm_scenario* scenario, const uint64_t* seed,
                                   const char* matrix_path, mm_simulation** out);
/* Reloads a run from the directory written by mm_simulation_write. */
MM_API mm_status mm_simulation_load(const char* out_dir, mm_simulation** out);
MM_API mm_status mm_simulation_write(const mm_simulation* sim, const char* out_dir);
MM_API mm_status mm_simulation_query(const mm_simulation* sim, const char* kind,
                                     const char* const* args, size_t arg_count, char** out);
/* Writes 64 hex digits and a terminating NUL. */
MM_API mm_status mm_simulation_digest(const mm_simulation* sim, char out[65]);
MM_API uint64_t mm_simulation_height(const mm_simulation* sim);
MM_API void mm_simulation_free(mm_simulation* sim);

MM_API void mm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* METAMAINT_METAMAINT_H */
