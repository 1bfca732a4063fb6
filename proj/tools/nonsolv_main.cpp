// Command line front end. Talks to the toolkit exclusively through the C
// API in nonsolv/nonsolv.h, the same surface an embedding application
// would use.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nonsolv/nonsolv.h"

namespace {

struct CtxHolder {
  nsv_ctx* ctx = nullptr;
  ~CtxHolder() {
    if (ctx) nsv_ctx_destroy(ctx);
  }
};

int fail_with(const nsv_ctx* ctx, const char* what) {
  std::cerr << "error: " << what;
  if (ctx) std::cerr << ": " << nsv_last_error(ctx);
  std::cerr << "\n";
  return 2;
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  nsv_string_free(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonsolv: generation-by-few-conjugates toolkit"};
  app.require_subcommand(1);

  std::string data_dir;
  app.add_option("--data", data_dir, "data directory (default: $NONSOLV_DATA or built-in)");

  auto* run = app.add_subcommand("run", "run scenarios and emit JSON-line reports");
  std::string suite_filter = "all";
  uint64_t run_seed = 0xBAE2;
  int workers = 1;
  std::string out_path;
  run->add_option("--suite", suite_filter, "scenario id filter, * wildcards (default: all)");
  run->add_option("--seed", run_seed, "report seed (default 0xBAE2 = 47842)");
  run->add_option("--workers", workers, "parallel scenario workers");
  run->add_option("--out", out_path, "write reports to this file instead of stdout");

  auto* list = app.add_subcommand("list", "list scenario ids");
  auto* show = app.add_subcommand("show", "show one scenario");
  std::string show_id;
  show->add_option("id", show_id, "scenario id")->required();

  auto* search = app.add_subcommand("search", "witness search or exhaustive sweep");
  std::string s_group, s_element, s_mode = "pair";
  uint64_t s_budget = 10000, s_seed = 0xBAE2;
  bool s_exhaustive = false;
  search->add_option("--group", s_group, "group name (catalog, P<catalog>, S<n>, A<n>, ...)")
      ->required();
  search->add_option("--element", s_element, "ORDER[:PROPERTY], e.g. 6:transvection")->required();
  search->add_option("--mode", s_mode, "pair | involution | triple");
  search->add_option("--budget", s_budget, "randomized trial budget");
  search->add_option("--seed", s_seed, "search seed");
  search->add_flag("--exhaustive", s_exhaustive, "sweep the whole class instead of sampling");

  auto* bnd = app.add_subcommand("bounds", "evaluate a counting inequality");
  std::string b_lemma;
  unsigned b_q = 0, b_p = 0, b_q0 = 0;
  std::string b_case = "p_div_q_minus";
  bnd->add_option("--lemma", b_lemma, "countinv | psl2 | fieldaut | sz")->required();
  bnd->add_option("--q", b_q, "field size q");
  bnd->add_option("--q0", b_q0, "subfield size for field-automorphism bounds");
  bnd->add_option("--p", b_p, "odd prime twisting exponent");
  bnd->add_option("--case", b_case, "psl2 case: p_div_q_minus | p_div_q_plus | unipotent");

  auto* pp = app.add_subcommand("ppart", "Sylow p-part table checks");
  std::string p_family;
  unsigned p_q = 0;
  std::string p_row;
  pp->add_option("--family", p_family, "E7 | F4 | E6 | 2E6 | E8 | 2F4 | 3D4")->required();
  pp->add_option("--q", p_q, "field size");
  pp->add_option("--row", p_row, "restrict to the row with this 'p divides' column");

  CLI11_PARSE(app, argc, argv);

  CtxHolder holder;
  if (nsv_ctx_create(data_dir.empty() ? nullptr : data_dir.c_str(), &holder.ctx) != NSV_OK)
    return fail_with(holder.ctx, "cannot load data");
  nsv_ctx* ctx = holder.ctx;

  if (*list) {
    char* text = nullptr;
    if (nsv_list_scenarios(ctx, &text) != NSV_OK) return fail_with(ctx, "list failed");
    std::cout << take_string(text) << "\n";
    return 0;
  }

  if (*show) {
    char* text = nullptr;
    if (nsv_show_scenario(ctx, show_id.c_str(), &text) != NSV_OK)
      return fail_with(ctx, "show failed");
    std::cout << take_string(text) << "\n";
    return 0;
  }

  if (*run) {
    char* jsonl = nullptr;
    int status = 0;
    if (nsv_run_suite(ctx, suite_filter.c_str(), run_seed, workers, &jsonl, &status) != NSV_OK)
      return fail_with(ctx, "suite failed");
    std::string text = take_string(jsonl);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) return fail_with(nullptr, "cannot open output file");
      out << text;
      std::cout << (status == 0 ? "suite passed" : "suite FAILED") << "\n";
    } else {
      std::cout << text;
    }
    return status;
  }

  if (*search) {
    std::ostringstream req;
    req << "{\"group\":\"" << s_group << "\",\"element\":\"" << s_element << "\",\"mode\":\""
        << s_mode << "\",\"budget\":" << s_budget << ",\"seed\":" << s_seed
        << ",\"exhaustive\":" << (s_exhaustive ? "true" : "false") << "}";
    char* text = nullptr;
    if (nsv_search(ctx, req.str().c_str(), &text) != NSV_OK)
      return fail_with(ctx, "search failed");
    std::cout << take_string(text) << "\n";
    return 0;
  }

  if (*bnd) {
    std::ostringstream req;
    if (b_lemma == "psl2") {
      req << "{\"lemma\":\"psl2\",\"q\":" << b_q << ",\"case\":\"" << b_case << "\"}";
    } else if (b_lemma == "fieldaut" || b_lemma == "sz") {
      unsigned q0 = b_q0 ? b_q0 : b_q;  // --q doubles as --q0 here
      req << "{\"lemma\":\"fieldaut\",\"family\":\"" << (b_lemma == "sz" ? "Sz" : "PSL2")
          << "\",\"q0\":" << q0 << ",\"p\":" << b_p << "}";
    } else if (b_lemma == "countinv") {
      std::cerr << "countinv scenarios carry structured data; run the scenario instead, e.g.\n"
                   "  nonsolv run --suite bounds-countinv-sz8\n";
      return 2;
    } else {
      std::cerr << "unknown lemma: " << b_lemma << "\n";
      return 2;
    }
    char* text = nullptr;
    if (nsv_bounds_check(ctx, req.str().c_str(), &text) != NSV_OK)
      return fail_with(ctx, "bounds check failed");
    std::cout << take_string(text) << "\n";
    return 0;
  }

  if (*pp) {
    std::ostringstream req;
    req << "{\"family\":\"" << p_family << "\"";
    if (p_q) req << ",\"q\":" << p_q;
    if (!p_row.empty()) {
      std::string row_case = p_row;
      if (auto comma = p_row.find(','); comma != std::string::npos)
        row_case = p_row.substr(comma + 1);  // "e,case" form
      req << ",\"row_case\":\"" << row_case << "\"";
    }
    req << "}";
    char* text = nullptr;
    if (nsv_ppart_check(ctx, req.str().c_str(), &text) != NSV_OK)
      return fail_with(ctx, "ppart check failed");
    std::cout << take_string(text) << "\n";
    return 0;
  }

  return 0;
}
