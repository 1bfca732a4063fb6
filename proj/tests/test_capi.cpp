// Exercises the shared-library C interface exactly as an embedder would:
// only nonsolv/nonsolv.h is included and only exported symbols are used.

#include <assert.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "nonsolv/nonsolv.h"

static int failures = 0;

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

int main(void) {
  CHECK(nsv_version() != NULL);

  nsv_ctx* ctx = NULL;
  CHECK(nsv_ctx_create(NULL, &ctx) == NSV_OK);
  CHECK(ctx != NULL);

  /* bad data dir reports an error */
  nsv_ctx* bad = NULL;
  CHECK(nsv_ctx_create("/no/such/dir", &bad) == NSV_ERR_DATA);
  CHECK(bad == NULL);

  char* text = NULL;
  CHECK(nsv_list_scenarios(ctx, &text) == NSV_OK);
  CHECK(text != NULL && strstr(text, "an-a5-witness") != NULL);
  nsv_string_free(text);
  text = NULL;

  CHECK(nsv_show_scenario(ctx, "an-a5-witness", &text) == NSV_OK);
  CHECK(text != NULL && strstr(text, "witness") != NULL);
  nsv_string_free(text);
  text = NULL;

  CHECK(nsv_show_scenario(ctx, "does-not-exist", &text) == NSV_ERR_NOT_FOUND);
  CHECK(strlen(nsv_last_error(ctx)) > 0);

  CHECK(nsv_run_scenario(ctx, "an-a5-witness", 1, &text) == NSV_OK);
  CHECK(text != NULL && strstr(text, "\"outcome\":\"pass\"") != NULL);
  nsv_string_free(text);
  text = NULL;

  int status = -1;
  CHECK(nsv_run_suite(ctx, "an-*", 1, 2, &text, &status) == NSV_OK);
  CHECK(status == 0);
  CHECK(text != NULL && strstr(text, "an-s7-triple") != NULL);
  nsv_string_free(text);
  text = NULL;

  CHECK(nsv_bounds_check(ctx, "{\"lemma\":\"psl2\",\"q\":7}", &text) == NSV_OK);
  CHECK(text != NULL && strstr(text, "\"outcome\":\"pass\"") != NULL);
  nsv_string_free(text);
  text = NULL;

  CHECK(nsv_ppart_check(ctx, "{\"family\":\"F4\",\"q\":2}", &text) == NSV_OK);
  CHECK(text != NULL && strstr(text, "\"outcome\":\"pass\"") != NULL);
  nsv_string_free(text);
  text = NULL;

  CHECK(nsv_search(ctx, "{\"group\":\"A5\",\"element\":\"5\",\"mode\":\"involution\"}", &text) ==
        NSV_OK);
  CHECK(text != NULL && strstr(text, "\"generated_order\":\"60\"") != NULL);
  nsv_string_free(text);
  text = NULL;

  /* argument validation */
  CHECK(nsv_run_scenario(NULL, "x", 0, &text) == NSV_ERR_BAD_ARGUMENT);
  CHECK(nsv_run_scenario(ctx, NULL, 0, &text) == NSV_ERR_BAD_ARGUMENT);

  nsv_ctx_destroy(ctx);
  if (failures == 0) printf("capi_tests: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
