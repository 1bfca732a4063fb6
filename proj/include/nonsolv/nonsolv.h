/* C interface to the nonsolv toolkit.
 *
 * All functions return NSV_OK on success. String results are heap-allocated
 * UTF-8 JSON documents owned by the caller; release them with
 * nsv_string_free. A context owns the loaded group catalog, scenario
 * catalog and table corpus; contexts are independent and may be used from
 * different threads (a single context must not be shared between threads
 * without external synchronization while a call is in flight).
 */
#ifndef NONSOLV_H
#define NONSOLV_H

#include <stdint.h>

#if defined(_WIN32)
#define NSV_API __declspec(dllexport)
#elif defined(__GNUC__) || defined(__clang__)
#define NSV_API __attribute__((visibility("default")))
#else
#define NSV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nsv_ctx nsv_ctx;

typedef enum nsv_status {
  NSV_OK = 0,
  NSV_ERR_BAD_ARGUMENT = 1,
  NSV_ERR_NOT_FOUND = 2,
  NSV_ERR_DATA = 3,      /* malformed or inconsistent data files */
  NSV_ERR_DOMAIN = 4,    /* precondition violated (caps, membership, ...) */
  NSV_ERR_INTERNAL = 5
} nsv_status;

NSV_API const char* nsv_version(void);

/* data_dir may be NULL: the NONSOLV_DATA environment variable is consulted,
 * then the built-in default location. */
NSV_API nsv_status nsv_ctx_create(const char* data_dir, nsv_ctx** out);
NSV_API void nsv_ctx_destroy(nsv_ctx* ctx);

/* Message for the last failing call on this context. Owned by the context;
 * valid until the next call on it. */
NSV_API const char* nsv_last_error(const nsv_ctx* ctx);

NSV_API void nsv_string_free(char* s);

/* Scenario catalog: ids, kinds and parameters as a JSON array. */
NSV_API nsv_status nsv_list_scenarios(nsv_ctx* ctx, char** json_out);
NSV_API nsv_status nsv_show_scenario(nsv_ctx* ctx, const char* id, char** json_out);

/* Runs one scenario; the report is a single JSON object. */
NSV_API nsv_status nsv_run_scenario(nsv_ctx* ctx, const char* id, uint64_t seed,
                                    char** report_json_out);

/* Runs every scenario whose id matches the glob-style filter ("*" matches
 * any substring span; NULL or "all" runs everything). Reports are returned
 * as JSON lines ordered by scenario id. *exit_status_out is 0 iff every
 * non-skipped scenario passed. workers <= 0 means one worker. */
NSV_API nsv_status nsv_run_suite(nsv_ctx* ctx, const char* filter, uint64_t seed,
                                 int workers, char** jsonl_out, int* exit_status_out);

/* Bound evaluators. The request is a JSON object selecting the lemma and
 * inputs, e.g. {"lemma":"psl2","q":7} or
 * {"lemma":"fieldaut","family":"PSL2","q0":3,"p":5}; see the CLI help. */
NSV_API nsv_status nsv_bounds_check(nsv_ctx* ctx, const char* request_json, char** json_out);

/* Sylow p-part table checks: {"family":"E7","q":2} or with "row". */
NSV_API nsv_status nsv_ppart_check(nsv_ctx* ctx, const char* request_json, char** json_out);

/* Witness search: {"group":"PSL(3,3)","element":"6:transvection",
 * "mode":"pair","budget":10000,"seed":47802,"exhaustive":false}. */
NSV_API nsv_status nsv_search(nsv_ctx* ctx, const char* request_json, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* NONSOLV_H */
