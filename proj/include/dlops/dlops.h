#ifndef DLOPS_H
#define DLOPS_H

/* C interface to the Dyer-Lashof operation engine.
 *
 * Every function that returns dlops_status records a message for failures,
 * readable via dlops_last_error() on the same thread.  Strings handed back
 * through char** parameters are heap-allocated; release them with
 * dlops_string_free().  Contexts are opaque and single-owner; release them
 * with dlops_context_free().  Distinct contexts may be used concurrently,
 * but a single context must not be shared across threads without external
 * synchronization. */

#if defined(_WIN32)
#if defined(DLOPS_BUILD)
#define DLOPS_API __declspec(dllexport)
#else
#define DLOPS_API __declspec(dllimport)
#endif
#else
#define DLOPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dlops_status {
    DLOPS_OK = 0,
    DLOPS_E_INVALID_ARG = 1,   /* null pointer or malformed argument */
    DLOPS_E_PARSE = 2,         /* expression text failed to parse */
    DLOPS_E_DOMAIN = 3,        /* input outside the engine's domain */
    DLOPS_E_BOUND = 4,         /* degree bound exceeded */
    DLOPS_E_MISSING_TABLE = 5, /* no recorded value for an operation */
    DLOPS_E_BUDGET = 6,        /* search budget exhausted */
    DLOPS_E_IO = 7,            /* file could not be read */
    DLOPS_E_INTERNAL = 8       /* unexpected failure */
} dlops_status;

/* An evaluation context: a prime, a degree bound, and the operation tables
 * needed to evaluate expressions. */
typedef struct dlops_context dlops_context;

/* Library version as "major.minor.patch"; static storage, do not free. */
DLOPS_API const char* dlops_version(void);

/* Message for the most recent failure on this thread ("" after success). */
DLOPS_API const char* dlops_last_error(void);

/* Byte offset of the most recent parse error on this thread; -1 when the
 * last failure carried no position. */
DLOPS_API int dlops_last_error_pos(void);

/* Release a string returned through a char** parameter (NULL is a no-op). */
DLOPS_API void dlops_string_free(char* s);

/* Newline-separated names of the built-in contexts. */
DLOPS_API dlops_status dlops_context_builtins(char** out);

/* Create a built-in dual-algebra context by name ("p2-dual", "p3-dual").
 * bound <= 0 selects the engine default; right_action nonzero evaluates
 * operations through the right-sided action instead of the left. */
DLOPS_API dlops_status dlops_context_builtin(const char* name, int bound, int right_action,
                                             dlops_context** out);

/* Create a dual-algebra context for an arbitrary prime; p = 2 and p = 3
 * match the corresponding built-ins.  bound and right_action behave as in
 * dlops_context_builtin. */
DLOPS_API dlops_status dlops_context_dual(int p, int bound, int right_action,
                                          dlops_context** out);

/* Create a context from declarative JSON config text: prime, bound,
 * generators, relation expressions, and recorded operation values. */
DLOPS_API dlops_status dlops_context_from_config_text(const char* json_text,
                                                      dlops_context** out);

/* As dlops_context_from_config_text, reading the config from a file. */
DLOPS_API dlops_status dlops_context_from_config_file(const char* path, dlops_context** out);

DLOPS_API void dlops_context_free(dlops_context* ctx);

/* Prime of the context's coefficient field. */
DLOPS_API dlops_status dlops_context_prime(const dlops_context* ctx, int* out);

/* Evaluate an operation expression and return its rendered normal form. */
DLOPS_API dlops_status dlops_eval(const dlops_context* ctx, const char* expr, char** out);

/* Newline-separated names of the registered scenarios, in run order. */
DLOPS_API dlops_status dlops_scenario_list(char** out);

/* Run scenarios by name (comma-, space-, or newline-separated; NULL or ""
 * runs all).  parallel nonzero fans independent scenarios out across
 * threads.  *all_pass is set to 1 iff every assertion passed; *out_json
 * receives the deterministic report (schema dlops-report/1, byte-identical
 * across runs on identical inputs). */
DLOPS_API dlops_status dlops_scenario_run(const char* names, int parallel, int* all_pass,
                                          char** out_json);

/* Extension-class counts and comparison-map collapse verdicts for degrees
 * 0..n_max (schema dlops-classify/1). */
DLOPS_API dlops_status dlops_classify_table(int p, int n_max, char** out_json);

/* Free unstable-algebra report.  Config: {"prime": p, "n_max": N,
 * "generators": [{"name": ..., "degree": ...}, ...]}.  Returns the free
 * generator words with degrees and the dimension table through n_max
 * (schema dlops-unstable/1). */
DLOPS_API dlops_status dlops_unstable_report(const char* config_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
