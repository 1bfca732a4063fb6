#include "nonsolv/nonsolv.h"

#include <cstring>
#include <memory>
#include <string>

#include "nonsolv/scenario.hpp"

struct nsv_ctx {
  std::unique_ptr<nsv::scen::Toolkit> toolkit;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nsv_status guard(nsv_ctx* ctx, nsv_status code_on_error, const std::invocable auto& body) {
  try {
    body();
    if (ctx) ctx->last_error.clear();
    return NSV_OK;
  } catch (const std::exception& e) {
    if (ctx) ctx->last_error = e.what();
    return code_on_error;
  } catch (...) {
    if (ctx) ctx->last_error = "unknown error";
    return NSV_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* nsv_version(void) { return NONSOLV_VERSION; }

nsv_status nsv_ctx_create(const char* data_dir, nsv_ctx** out) {
  if (!out) return NSV_ERR_BAD_ARGUMENT;
  auto ctx = new nsv_ctx;
  nsv_status rc = guard(ctx, NSV_ERR_DATA, [&] {
    std::string dir = data_dir ? data_dir : nsv::scen::Toolkit::default_data_dir();
    ctx->toolkit = std::make_unique<nsv::scen::Toolkit>(dir);
  });
  if (rc != NSV_OK) {
    delete ctx;
    *out = nullptr;
    return rc;
  }
  *out = ctx;
  return NSV_OK;
}

void nsv_ctx_destroy(nsv_ctx* ctx) { delete ctx; }

const char* nsv_last_error(const nsv_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

void nsv_string_free(char* s) { std::free(s); }

nsv_status nsv_list_scenarios(nsv_ctx* ctx, char** json_out) {
  if (!ctx || !json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_INTERNAL,
               [&] { *json_out = dup_string(ctx->toolkit->list_scenarios_json()); });
}

nsv_status nsv_show_scenario(nsv_ctx* ctx, const char* id, char** json_out) {
  if (!ctx || !id || !json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_NOT_FOUND, [&] {
    const auto& s = ctx->toolkit->scenario(id);
    std::string text = std::string("{\"id\":\"") + s.id + "\",\"kind\":\"" + s.kind +
                       "\",\"params\":" + s.params_json + "}";
    *json_out = dup_string(text);
  });
}

nsv_status nsv_run_scenario(nsv_ctx* ctx, const char* id, uint64_t seed, char** report_json_out) {
  if (!ctx || !id || !report_json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_NOT_FOUND,
               [&] { *report_json_out = dup_string(ctx->toolkit->run_scenario(id, seed)); });
}

nsv_status nsv_run_suite(nsv_ctx* ctx, const char* filter, uint64_t seed, int workers,
                         char** jsonl_out, int* exit_status_out) {
  if (!ctx || !jsonl_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_INTERNAL, [&] {
    auto result = ctx->toolkit->run_suite(filter ? filter : "all", seed, workers);
    *jsonl_out = dup_string(result.jsonl);
    if (exit_status_out) *exit_status_out = result.ok() ? 0 : 1;
  });
}

nsv_status nsv_bounds_check(nsv_ctx* ctx, const char* request_json, char** json_out) {
  if (!ctx || !request_json || !json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_DOMAIN,
               [&] { *json_out = dup_string(ctx->toolkit->bounds_check_json(request_json)); });
}

nsv_status nsv_ppart_check(nsv_ctx* ctx, const char* request_json, char** json_out) {
  if (!ctx || !request_json || !json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_DOMAIN,
               [&] { *json_out = dup_string(ctx->toolkit->ppart_check_json(request_json)); });
}

nsv_status nsv_search(nsv_ctx* ctx, const char* request_json, char** json_out) {
  if (!ctx || !request_json || !json_out) return NSV_ERR_BAD_ARGUMENT;
  return guard(ctx, NSV_ERR_DOMAIN,
               [&] { *json_out = dup_string(ctx->toolkit->search_json(request_json)); });
}

}  // extern "C"
