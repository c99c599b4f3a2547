#ifndef ACTLANG_ACTLANG_H
#define ACTLANG_ACTLANG_H

/* C interface to the actor-language toolchain: parse programs, run them under
 * either interpreter, check runtime traces against the source semantics, cost
 * traces, and generate benchmark programs. Handles are opaque; every string
 * the library hands out is heap-allocated and released with al_string_free.
 *
 * Functions return al_status. On failure, *err (when err is non-NULL) is set
 * to a message the caller frees with al_string_free; output parameters are
 * left untouched. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct al_program al_program;
typedef struct al_trace al_trace;

typedef enum al_status {
  AL_OK = 0,
  AL_ERR_PARSE = 1,    /* malformed program text */
  AL_ERR_VALIDATE = 2, /* well-formed text, ill-formed program */
  AL_ERR_RUNTIME = 3,  /* execution failed (overflow, dangling reference, ...) */
  AL_ERR_USAGE = 4,    /* bad argument */
  AL_ERR_IO = 5        /* file could not be read or written */
} al_status;

typedef enum al_run_result {
  AL_RUN_FINISHED = 0, /* every process ran to completion */
  AL_RUN_DEADLOCK = 1, /* pending processes, none can move */
  AL_RUN_FUEL = 2      /* step budget exhausted */
} al_run_result;

al_status al_parse(const char* text, al_program** out, char** err);
al_status al_parse_file(const char* path, al_program** out, char** err);
void al_program_free(al_program* p);

/* Canonical multi-line source rendering of the parsed program. */
al_status al_pretty(const al_program* p, char** out, char** err);

/* Stable s-expression dump of the compiled method table. */
al_status al_dump_ir(const al_program* p, char** out, char** err);

/* semantics: "source" or "rt".
 * policy (source only): "random", "rr", or "script:o0,o1,..." giving the
 * object picked at each step. seed drives "random"; both are ignored for rt.
 * fuel bounds the number of steps. */
al_status al_run(const al_program* p, const char* semantics, const char* policy, uint64_t seed,
                 uint64_t fuel, al_trace** out, char** err);

void al_trace_free(al_trace* t);
al_run_result al_trace_run_status(const al_trace* t);
size_t al_trace_steps(const al_trace* t);

/* One JSON object per step:
 * {"i":..,"obj":..,"rule":"..","stmt":"..","spawn":{..}|null} */
al_status al_trace_jsonl(const al_trace* t, char** out, char** err);

/* Replays the runtime trace of p and validates every step against the source
 * semantics. *sound becomes 1 when the whole trace checks, 0 otherwise;
 * *report gets one line per step plus a summary line. */
al_status al_check(const al_program* p, uint64_t fuel, int* sound, char** report, char** err);

/* model: "steps", "memory", or "file:PATH" for a model file (first line
 * names the model, then rule=weight lines). Output lines are
 * "object,cost" in ascending object order, then "total,cost". */
al_status al_cost_report(const al_program* p, const char* semantics, const char* model,
                         uint64_t seed, uint64_t fuel, char** out, char** err);

/* Source text of a generated benchmark program. Families: primality_low,
 * primality_high, logs, primes_range, mapreduce. */
al_status al_bench_program(const char* family, int64_t n, char** out, char** err);

/* CSV with header family,n,steps,wall_nanos and one row per requested size. */
al_status al_bench_sweep(const char* family, const int64_t* ns, size_t ns_len, char** csv,
                         char** err);

/* bounds_csv holds rows program,n,object,bound (header line optional). Rows
 * whose program column matches `name` are checked against the steps-model
 * cost of p's runtime trace. *within becomes 1 when every matched row holds.
 * *report gets one line per matched row. Matching zero rows is an error. */
al_status al_check_bounds(const al_program* p, const char* name, const char* bounds_csv,
                          uint64_t fuel, int* within, char** report, char** err);

void al_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
