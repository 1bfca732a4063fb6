#include "nonsolv/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nsv::perm {

Permutation::Permutation(unsigned degree) {
  if (degree > kDegreeCap) throw PermError("degree cap exceeded");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.size() > kDegreeCap) throw PermError("degree cap exceeded");
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw PermError("image sequence is not a bijection");
    seen[p] = true;
  }
}

bool Permutation::is_identity() const {
  for (unsigned i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (unsigned i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

Int Permutation::order() const {
  Int result = 1;
  for (unsigned len : cycle_type()) result = lcm(result, Int(len));
  return result;
}

std::vector<unsigned> Permutation::cycle_type() const {
  std::vector<unsigned> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (unsigned i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    unsigned len = 0;
    unsigned j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = images_[j];
      ++len;
    }
    if (len >= 2) lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

bool Permutation::is_even() const {
  unsigned transpositions = 0;
  for (unsigned len : cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

size_t Permutation::hash() const {
  size_t h = 1469598103934665603ULL;
  for (Point p : images_) {
    h ^= p;
    h *= 1099511628211ULL;
  }
  return h;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw PermError("degree mismatch in compose");
  std::vector<Point> im(a.degree());
  for (unsigned i = 0; i < a.degree(); ++i) im[i] = b[a[i]];
  return Permutation(std::move(im));
}

Permutation conjugate(const Permutation& x, const Permutation& g) {
  if (x.degree() != g.degree()) throw PermError("degree mismatch in conjugate");
  std::vector<Point> im(x.degree());
  for (unsigned i = 0; i < x.degree(); ++i) im[g[i]] = g[x[i]];
  return Permutation(std::move(im));
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return compose(compose(a.inverse(), b.inverse()), compose(a, b));
}

Permutation parse_cycles(const std::string& text, unsigned degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw PermError("expected '(' in cycle notation");
    ++i;
    std::vector<unsigned> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw PermError("expected point in cycle notation");
      unsigned v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      if (v == 0 || v > degree) throw PermError("cycle point out of range");
      cycle.push_back(v - 1);
    }
    std::unordered_set<unsigned> dup(cycle.begin(), cycle.end());
    if (dup.size() != cycle.size()) throw PermError("repeated point in cycle");
    for (size_t k = 0; k + 1 < cycle.size(); ++k) im[cycle[k]] = static_cast<Point>(cycle[k + 1]);
    if (cycle.size() >= 2) im[cycle.back()] = static_cast<Point>(cycle.front());
    skip_ws();
  }
  return Permutation(std::move(im));
}

std::string format_cycles(const Permutation& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.degree(), false);
  bool any = false;
  for (unsigned i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) continue;
    any = true;
    out << '(';
    unsigned j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out << ',';
      out << j + 1;
      first = false;
      j = p[j];
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::vector<Permutation> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw PermError("generator list may not be empty");
  degree_ = generators_[0].degree();
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw PermError("generators of unequal degree");
  schreier_sims();
}

PermGroupPtr PermGroup::make(std::vector<Permutation> generators) {
  return std::make_shared<const PermGroup>(std::move(generators));
}

PermGroupPtr PermGroup::trivial(unsigned degree) {
  return make({Permutation(degree)});
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  b.reserve(chain_.size());
  for (const auto& lvl : chain_) b.push_back(lvl.base_point);
  return b;
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  std::unordered_set<Permutation, PermHash> seen;
  for (const auto& lvl : chain_)
    for (const auto& g : lvl.gens)
      if (seen.insert(g).second) out.push_back(g);
  if (out.empty()) out.push_back(Permutation(degree_));
  return out;
}

void PermGroup::extend_orbit(ChainLevel& lvl) const {
  if (lvl.rep_index.empty()) {
    lvl.rep_index.assign(degree_, -1);
    lvl.orbit.push_back(lvl.base_point);
    lvl.rep_index[lvl.base_point] = 0;
    lvl.reps.push_back(Permutation(degree_));
  }
  for (size_t oi = 0; oi < lvl.orbit.size(); ++oi) {
    Point p = lvl.orbit[oi];
    for (const auto& g : lvl.gens) {
      Point q = g[p];
      if (lvl.rep_index[q] < 0) {
        lvl.rep_index[q] = static_cast<int32_t>(lvl.orbit.size());
        lvl.orbit.push_back(q);
        lvl.reps.push_back(compose(lvl.reps[lvl.rep_index[p]], g));
      }
    }
  }
}

std::pair<Permutation, size_t> PermGroup::sift(Permutation g, size_t from) const {
  for (size_t j = from; j < chain_.size(); ++j) {
    const auto& lvl = chain_[j];
    Point p = g[lvl.base_point];
    if (lvl.rep_index.empty() || lvl.rep_index[p] < 0) return {std::move(g), j};
    g = compose(g, lvl.reps[lvl.rep_index[p]].inverse());
  }
  return {std::move(g), chain_.size()};
}

// Strong generators are nested: a generator fixing b_0..b_{j-1} is listed
// at every level from `from` up to j. Extends the chain when g fixes all
// existing base points. Returns the deepest level g was assigned to.
size_t PermGroup::place_generator(size_t from, const Permutation& g) {
  size_t j = from;
  while (j < chain_.size() && g[chain_[j].base_point] == chain_[j].base_point) ++j;
  if (j == chain_.size()) {
    ChainLevel lvl;
    unsigned b = 0;
    while (g[b] == b) ++b;
    lvl.base_point = static_cast<Point>(b);
    chain_.push_back(std::move(lvl));
  }
  for (size_t l = from; l <= j; ++l) chain_[l].gens.push_back(g);
  return j;
}

// Verifies level i (Schreier generators all sift to identity through the
// deeper chain), assuming levels > i are already verified. Residues are
// placed at levels i+1..j and those levels re-verified deepest-first.
void PermGroup::fix_level(size_t level) {
  extend_orbit(chain_[level]);
  for (size_t oi = 0; oi < chain_[level].orbit.size(); ++oi) {
    for (size_t gi = 0; gi < chain_[level].gens.size(); ++gi) {
      const ChainLevel& lvl = chain_[level];
      Point p = lvl.orbit[oi];
      Permutation ug = compose(lvl.reps[lvl.rep_index[p]], lvl.gens[gi]);
      Point q = ug[lvl.base_point];
      Permutation schreier = compose(ug, lvl.reps[lvl.rep_index[q]].inverse());
      if (schreier.is_identity()) continue;
      auto [residue, depth] = sift(std::move(schreier), level + 1);
      (void)depth;
      if (residue.is_identity()) continue;
      size_t deepest = place_generator(level + 1, residue);
      for (size_t l = deepest + 1; l-- > level + 1;) fix_level(l);
    }
  }
}

void PermGroup::schreier_sims() {
  for (const auto& g : generators_)
    if (!g.is_identity()) place_generator(0, g);
  for (size_t l = chain_.size(); l-- > 0;) fix_level(l);
  order_ = 1;
  for (const auto& lvl : chain_) order_ *= Int(lvl.orbit.size());
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [res, lvl] = sift(g, 0);
  (void)lvl;
  return res.is_identity();
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  return true;
}

bool PermGroup::same_group_as(const PermGroup& other) const {
  return order_ == other.order_ && is_subgroup_of(other);
}

Permutation PermGroup::random_element(Rng& rng) const {
  Permutation g(degree_);
  for (size_t j = chain_.size(); j-- > 0;) {
    const auto& lvl = chain_[j];
    const Permutation& t = lvl.reps[rng.below(lvl.reps.size())];
    g = compose(g, t);
  }
  return g;
}

std::vector<Permutation> PermGroup::elements(uint64_t cap) const {
  if (order_ > Int(cap)) throw PermError("group too large to enumerate");
  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(order_));
  std::function<void(size_t, const Permutation&)> rec = [&](size_t j, const Permutation& acc) {
    if (j == chain_.size()) {
      out.push_back(acc);
      return;
    }
    size_t level = chain_.size() - 1 - j;
    for (const auto& t : chain_[level].reps) rec(j + 1, compose(acc, t));
  };
  rec(0, Permutation(degree_));
  return out;
}

ConjClass PermGroup::conjugacy_class(const Permutation& x, uint64_t cap,
                                     bool require_elements) const {
  if (!contains(x)) throw PermError("element is not in the group");
  std::vector<Permutation> gens = strong_generators();
  std::unordered_set<Permutation, PermHash> seen{x};
  std::vector<Permutation> frontier{x}, all{x};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& y : frontier) {
      for (const auto& g : gens) {
        Permutation z = conjugate(y, g);
        if (seen.insert(z).second) {
          if (seen.size() > cap) {
            if (require_elements) throw PermError("conjugacy class exceeds cap");
            // Size still needed: fall back to |G| / |centralizer| is not
            // available here, so keep expanding without storing elements.
          }
          next.push_back(z);
          if (seen.size() <= cap) all.push_back(z);
        }
      }
    }
    frontier = std::move(next);
  }
  ConjClass c{x, Int(seen.size()), {}};
  if (seen.size() <= cap) {
    std::sort(all.begin(), all.end());
    c.elements = std::move(all);
  }
  return c;
}

std::vector<ConjClass> PermGroup::conjugacy_classes(uint64_t cap) const {
  if (order_ > Int(cap)) throw PermError("group too large for full class decomposition");
  std::vector<ConjClass> classes;
  std::unordered_set<Permutation, PermHash> covered;
  Int covered_count = 0;
  auto absorb = [&](const Permutation& x) {
    if (covered.count(x)) return;
    ConjClass c = conjugacy_class(x, cap, true);
    for (const auto& e : c.elements) covered.insert(e);
    covered_count += c.size;
    classes.push_back(std::move(c));
  };
  absorb(Permutation(degree_));
  for (const auto& g : strong_generators()) absorb(g);
  Rng rng(0x5eedULL * (degree_ + 1));
  uint64_t stale = 0;
  while (covered_count < order_) {
    Permutation g = random_element(rng);
    if (covered.count(g)) {
      // Products of covered elements reach new classes when random draws
      // stall (tiny groups with few classes hit this rarely).
      if (++stale > 4096) {
        for (const auto& a : covered) {
          Permutation h = compose(a, g);
          if (!covered.count(h)) {
            absorb(h);
            break;
          }
        }
        stale = 0;
      }
      continue;
    }
    stale = 0;
    absorb(g);
  }
  std::sort(classes.begin(), classes.end(), [](const ConjClass& a, const ConjClass& b) {
    Int oa = a.representative.order(), ob = b.representative.order();
    if (oa != ob) return oa < ob;
    if (a.size != b.size) return a.size < b.size;
    return a.elements.front() < b.elements.front();
  });
  // Canonical representative: smallest element of the class.
  for (auto& c : classes) c.representative = c.elements.front();
  return classes;
}

Int PermGroup::involution_count(uint64_t cap) const {
  Int total = 0;
  for (const auto& c : conjugacy_classes(cap))
    if (c.representative.order() == 2) total += c.size;
  return total;
}

std::vector<PermGroupPtr> PermGroup::derived_series() const {
  std::vector<PermGroupPtr> series;
  PermGroupPtr current = std::make_shared<const PermGroup>(*this);
  series.push_back(current);
  for (;;) {
    std::vector<Permutation> comms;
    const auto& gens = current->generators();
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        Permutation c = commutator(gens[i], gens[j]);
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    PermGroupPtr derived = normal_closure(*current, comms);
    if (derived->order() == current->order()) break;  // perfect: series stabilized
    series.push_back(derived);
    current = derived;
    if (current->order() == 1) break;
  }
  return series;
}

bool PermGroup::is_solvable() const {
  return derived_series().back()->order() == 1;
}

bool PermGroup::is_perfect() const {
  auto s = derived_series();
  return s.size() == 1 && order_ != 1;
}

PermGroupPtr normal_closure(const PermGroup& g, const std::vector<Permutation>& seeds) {
  std::vector<Permutation> kgens;
  for (const auto& s : seeds)
    if (!s.is_identity()) kgens.push_back(s);
  if (kgens.empty()) return PermGroup::trivial(g.degree());
  auto k = PermGroup::make(kgens);
  std::vector<Permutation> queue = kgens;
  while (!queue.empty()) {
    Permutation x = std::move(queue.back());
    queue.pop_back();
    for (const auto& gen : g.generators()) {
      Permutation c = conjugate(x, gen);
      if (!k->contains(c)) {
        kgens.push_back(c);
        queue.push_back(c);
        k = PermGroup::make(kgens);
      }
    }
  }
  return k;
}


}  // namespace nsv::perm
