#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonsolv/ints.hpp"
#include "nonsolv/rng.hpp"

namespace nsv::perm {

using Point = uint16_t;

inline constexpr unsigned kDegreeCap = 4096;
inline constexpr uint64_t kExplicitClassCap = 1000000;

class PermError : public std::runtime_error {
 public:
  explicit PermError(const std::string& what) : std::runtime_error(what) {}
};

// A permutation of {0,...,degree-1}, stored as its image sequence.
class Permutation {
 public:
  explicit Permutation(unsigned degree);
  explicit Permutation(std::vector<Point> images);

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  Point operator[](unsigned i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  // Least n >= 1 with p^n = id; equals the lcm of the cycle lengths.
  Int order() const;

  // Sorted multiset of cycle lengths >= 2.
  std::vector<unsigned> cycle_type() const;

  bool is_even() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return images_ != o.images_; }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  size_t hash() const;

 private:
  std::vector<Point> images_;
};

// compose(a,b) maps i to b(a(i)): a is applied first. This matches the
// convention in which (1 2)(3 4) * (1 2)(4 5) = (3 5 4).
Permutation compose(const Permutation& a, const Permutation& b);

// g^-1 * x * g, i.e. the cycle-replacement conjugate.
Permutation conjugate(const Permutation& x, const Permutation& g);

// [a,b] = a^-1 b^-1 a b.
Permutation commutator(const Permutation& a, const Permutation& b);

// Cycle-notation text boundary: products of disjoint cycles with 1-based
// points, e.g. "(1,6)(2,5)(3,4)". Whitespace-insensitive; both comma and
// space separate points inside a cycle; fixed points omitted. "()" is the
// identity.
Permutation parse_cycles(const std::string& text, unsigned degree);
std::string format_cycles(const Permutation& p);

struct PermHash {
  size_t operator()(const Permutation& p) const { return p.hash(); }
};

// One level of a stabilizer chain: the base point, the generators of the
// group at this level, and the basic orbit with coset representatives
// (rep[p] maps base_point to p).
struct ChainLevel {
  Point base_point = 0;
  std::vector<Permutation> gens;
  std::vector<Point> orbit;                    // discovery order
  std::vector<int32_t> rep_index;              // point -> index into reps, -1 outside
  std::vector<Permutation> reps;
};

class PermGroup;
using PermGroupPtr = std::shared_ptr<const PermGroup>;

struct ConjClass {
  Permutation representative;
  Int size;
  std::vector<Permutation> elements;  // empty unless explicitly listed
};

// A permutation group with a deterministic base and strong generating set.
// Immutable once constructed; safe to share across threads.
class PermGroup {
 public:
  // Deterministic Schreier-Sims on the given generators (all of equal
  // degree; the list may not be empty).
  explicit PermGroup(std::vector<Permutation> generators);

  static PermGroupPtr make(std::vector<Permutation> generators);
  static PermGroupPtr trivial(unsigned degree);

  unsigned degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<ChainLevel>& chain() const { return chain_; }
  const Int& order() const { return order_; }
  std::vector<Point> base() const;
  std::vector<Permutation> strong_generators() const;

  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& other) const;
  bool same_group_as(const PermGroup& other) const;

  Permutation identity() const { return Permutation(degree_); }

  // Uniformly random element: one transversal representative per level.
  Permutation random_element(Rng& rng) const;

  // All elements, in transversal DFS order. Throws if order() > cap.
  std::vector<Permutation> elements(uint64_t cap = kExplicitClassCap) const;

  // Conjugation orbit of x (x must lie in the group). Elements are listed
  // iff the class size is <= cap; otherwise, with require_elements, throws.
  ConjClass conjugacy_class(const Permutation& x, uint64_t cap = kExplicitClassCap,
                            bool require_elements = true) const;

  // All conjugacy classes, each with elements listed; discovery is seeded
  // from strong generators and random elements and certified complete by
  // checking the class sizes sum to |G|. Throws if |G| > cap.
  std::vector<ConjClass> conjugacy_classes(uint64_t cap = kExplicitClassCap) const;

  // Exact number of involutions, as the sum of the order-2 class sizes.
  Int involution_count(uint64_t cap = kExplicitClassCap) const;

  // G = D0 >= D1 >= ..., stabilizing; last term repeated once is dropped.
  std::vector<PermGroupPtr> derived_series() const;
  bool is_solvable() const;
  bool is_perfect() const;

 private:
  void schreier_sims();
  size_t place_generator(size_t from, const Permutation& g);
  void fix_level(size_t level);
  void extend_orbit(ChainLevel& lvl) const;
  // Sifts g through levels [from, end); returns residue and the level at
  // which sifting stopped (levels consumed = level - from).
  std::pair<Permutation, size_t> sift(Permutation g, size_t from) const;

  unsigned degree_;
  std::vector<Permutation> generators_;
  std::vector<ChainLevel> chain_;
  Int order_;
};

// Normal closure of <seeds> under conjugation by g. Seeds may be empty
// (gives the trivial group).
PermGroupPtr normal_closure(const PermGroup& g, const std::vector<Permutation>& seeds);


}  // namespace nsv::perm
