#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonsolv/ints.hpp"
#include "nonsolv/perm.hpp"
#include "nonsolv/rng.hpp"

namespace nsv::search {

class SearchError : public std::runtime_error {
 public:
  explicit SearchError(const std::string& what) : std::runtime_error(what) {}
};

enum class Mode { PairConjugate, InvolutionPartner, TripleConjugate };

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode m);

inline constexpr uint64_t kDefaultBudget = 10000;
inline constexpr uint64_t kDefaultSeed = 0xBAE2;

struct SearchTask {
  perm::PermGroupPtr group;            // ambient group; conjugators drawn here
  perm::PermGroupPtr partner_source;   // involution partners drawn here (socle);
                                       // when null the ambient group is used
  perm::Permutation x;
  Mode mode = Mode::PairConjugate;
  uint64_t budget = kDefaultBudget;
  uint64_t seed = kDefaultSeed;

  SearchTask(perm::PermGroupPtr g, perm::Permutation x_) : group(std::move(g)), x(std::move(x_)) {}
};

struct Witness {
  // Conjugators g (pair/triple mode) or the involution partner y.
  std::vector<perm::Permutation> elements;
  Int generated_order;
  std::string certificate = "derived_series_stabilizes";
  Int perfect_term_order;                           // last derived term
  std::optional<std::array<Int, 3>> thompson_orders;  // from random triples
  uint64_t trials_used = 0;
  uint64_t seed = 0;
};

// Randomized witness search; nullopt when the budget is exhausted. The
// returned witness is always re-verified through the derived series.
std::optional<Witness> find_nonsolvable(const SearchTask& task);

struct SolvabilityCertificate {
  bool solvable = false;
  size_t series_length = 0;
  Int final_term_order;  // 1 for solvable groups, else the perfect residue
  std::optional<std::array<Int, 3>> thompson_orders;
};

// Derived-series evidence for H, plus a coprime-order triple (a,b,(ab)^-1)
// when one shows up among `triple_draws` random pairs.
SolvabilityCertificate nonsolvable_certificate(const perm::PermGroup& h, Rng& rng,
                                               unsigned triple_draws = 1000);

enum class SweepOrder { Forward, Reverse };

struct SweepResult {
  bool all_solvable = true;
  uint64_t tuples_checked = 0;
  std::map<std::string, uint64_t> census;  // generated order (decimal) -> count
  // Set when a nonsolvable subgroup stops the sweep.
  std::vector<perm::Permutation> offender;
  Int offender_order;
};

// Exhaustively sweeps <x, y> (pair mode) or <x, y, z> (triple mode) with x
// the class representative and y, z ranging over the listed class elements.
// Sweeping stops at the first nonsolvable subgroup. Subgroup results are
// memoized by sorted generator key within the sweep.
SweepResult exhaustive_all_solvable(const perm::PermGroup& ambient, const perm::ConjClass& cls,
                                    Mode mode, SweepOrder order = SweepOrder::Forward);

}  // namespace nsv::search
