#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nonsolv/bounds.hpp"
#include "nonsolv/catalog.hpp"
#include "nonsolv/chartab.hpp"
#include "nonsolv/search.hpp"

namespace nsv::scen {

class ScenError : public std::runtime_error {
 public:
  explicit ScenError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr const char* kSpecVersion = "1";

struct Scenario {
  std::string id;
  std::string kind;
  std::string params_json;  // kind-specific parameter object
};

struct SuiteResult {
  std::string jsonl;  // one report per line, ordered by scenario id
  int passed = 0, failed = 0, skipped = 0;
  bool ok() const { return failed == 0; }
};

// The loaded data context: group catalog, scenario catalog, character
// tables and the Sylow p-part tables. Immutable after construction; safe
// to share between threads.
class Toolkit {
 public:
  explicit Toolkit(const std::string& data_dir);

  // NONSOLV_DATA, else the built-in source-tree data directory.
  static std::string default_data_dir();

  const std::string& data_dir() const { return data_dir_; }
  const catalog::Catalog& groups() const { return *catalog_; }
  std::shared_ptr<const catalog::Catalog> catalog_ptr() const { return catalog_; }
  const std::vector<bounds::PPartTable>& ppart_tables() const { return ppart_tables_; }

  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  const Scenario& scenario(const std::string& id) const;
  std::string list_scenarios_json() const;

  // Runs one scenario and returns the report as a JSON object.
  std::string run_scenario(const std::string& id, uint64_t seed) const;

  // Runs every scenario matching the glob-ish filter ("*" wildcards;
  // "all" or empty matches everything) across `workers` threads.
  SuiteResult run_suite(const std::string& filter, uint64_t seed, int workers) const;

  // Request/response entry points mirroring the CLI subcommands.
  std::string bounds_check_json(const std::string& request_json) const;
  std::string ppart_check_json(const std::string& request_json) const;
  std::string search_json(const std::string& request_json) const;

  // Element lookup used by searches: "ORDER" or "ORDER:PROPERTY" with
  // PROPERTY in {any, transvection, pseudoreflection, reflection,
  // nontransvection}. For matrix-backed groups the predicate is evaluated
  // on the prime-order power of the matrix (x itself for prime order, x^2
  // for order 6, x^3 for order 9), up to scalars.
  perm::Permutation find_element(const catalog::Catalog::Resolved& g, const std::string& element_spec,
                                 uint64_t seed) const;

  chartab::CharacterTable load_table(const std::string& name) const;

 private:
  std::string data_dir_;
  std::shared_ptr<const catalog::Catalog> catalog_;
  std::vector<bounds::PPartTable> ppart_tables_;
  std::vector<Scenario> scenarios_;
  std::map<std::string, size_t> scenario_index_;
};

bool filter_matches(const std::string& filter, const std::string& id);

// Up to max_candidates distinct elements matching the element spec: generator scan
// first, then seeded random words with power-down to the target order.
std::vector<perm::Permutation> find_elements_impl(const Toolkit& tk,
                                                  const catalog::Catalog::Resolved& g,
                                                  const std::string& element_spec, uint64_t seed,
                                                  size_t max_candidates);

}  // namespace nsv::scen
