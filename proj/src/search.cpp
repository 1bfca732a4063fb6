#include "nonsolv/search.hpp"

#include <algorithm>
#include <unordered_map>

namespace nsv::search {

using perm::ConjClass;
using perm::Permutation;
using perm::PermGroup;
using perm::PermGroupPtr;

Mode mode_from_string(const std::string& s) {
  if (s == "pair" || s == "pair_conjugate") return Mode::PairConjugate;
  if (s == "involution" || s == "involution_partner") return Mode::InvolutionPartner;
  if (s == "triple" || s == "triple_conjugate") return Mode::TripleConjugate;
  throw SearchError("unknown search mode: " + s);
}

std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::PairConjugate: return "pair_conjugate";
    case Mode::InvolutionPartner: return "involution_partner";
    case Mode::TripleConjugate: return "triple_conjugate";
  }
  return "?";
}

namespace {

struct GenKey {
  std::vector<Permutation> gens;
  bool operator==(const GenKey& o) const { return gens == o.gens; }
};

struct GenKeyHash {
  size_t operator()(const GenKey& k) const {
    size_t h = 14695981039346656037ULL;
    for (const auto& g : k.gens) {
      h ^= g.hash();
      h *= 1099511628211ULL;
    }
    return h;
  }
};

GenKey make_key(std::vector<Permutation> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return GenKey{std::move(gens)};
}

struct SubgroupFacts {
  bool solvable;
  Int order;
};

class SolvabilityMemo {
 public:
  SubgroupFacts facts_for(std::vector<Permutation> gens) {
    GenKey key = make_key(std::move(gens));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto h = PermGroup::make(key.gens);
    SubgroupFacts f{h->is_solvable(), h->order()};
    cache_.emplace(std::move(key), f);
    return f;
  }

 private:
  std::unordered_map<GenKey, SubgroupFacts, GenKeyHash> cache_;
};

std::optional<std::array<Int, 3>> random_coprime_triple(const PermGroup& h, Rng& rng,
                                                        unsigned draws) {
  for (unsigned i = 0; i < draws; ++i) {
    Permutation a = h.random_element(rng);
    Permutation b = h.random_element(rng);
    Permutation c = perm::compose(a, b).inverse();
    Int oa = a.order(), ob = b.order(), oc = c.order();
    if (oa == 1 || ob == 1 || oc == 1) continue;
    if (gcd(oa, ob) != 1 || gcd(oa, oc) != 1 || gcd(ob, oc) != 1) continue;
    return std::array<Int, 3>{oa, ob, oc};
  }
  return std::nullopt;
}

}  // namespace

SolvabilityCertificate nonsolvable_certificate(const PermGroup& h, Rng& rng,
                                               unsigned triple_draws) {
  SolvabilityCertificate cert;
  auto series = h.derived_series();
  cert.series_length = series.size();
  cert.final_term_order = series.back()->order();
  cert.solvable = cert.final_term_order == 1;
  if (!cert.solvable) cert.thompson_orders = random_coprime_triple(h, rng, triple_draws);
  return cert;
}

std::optional<Witness> find_nonsolvable(const SearchTask& task) {
  if (task.budget < 1) throw SearchError("budget must be at least 1");
  if (!task.group) throw SearchError("task has no group");
  if (!task.group->contains(task.x)) throw SearchError("x is not in the ambient group");
  const PermGroup& g = *task.group;
  const PermGroup& partners = task.partner_source ? *task.partner_source : g;
  Rng rng(task.seed);
  SolvabilityMemo memo;

  for (uint64_t trial = 1; trial <= task.budget; ++trial) {
    std::vector<Permutation> gens{task.x};
    std::vector<Permutation> witness_elems;
    switch (task.mode) {
      case Mode::PairConjugate: {
        Permutation c = g.random_element(rng);
        gens.push_back(perm::conjugate(task.x, c));
        witness_elems.push_back(std::move(c));
        break;
      }
      case Mode::TripleConjugate: {
        Permutation c1 = g.random_element(rng);
        Permutation c2 = g.random_element(rng);
        gens.push_back(perm::conjugate(task.x, c1));
        gens.push_back(perm::conjugate(task.x, c2));
        witness_elems.push_back(std::move(c1));
        witness_elems.push_back(std::move(c2));
        break;
      }
      case Mode::InvolutionPartner: {
        Permutation h = partners.random_element(rng);
        Int o = h.order();
        if (o % 2 != 0) continue;  // draw again; the trial is still spent
        uint64_t half = (o / 2).convert_to<uint64_t>();
        Permutation y(h.degree()), base = h;
        while (half) {
          if (half & 1) y = perm::compose(y, base);
          base = perm::compose(base, base);
          half >>= 1;
        }
        gens.push_back(y);  // an involution
        witness_elems.push_back(std::move(y));
        break;
      }
    }
    auto facts = memo.facts_for(gens);
    if (facts.solvable) continue;

    // Re-verify on a fresh group value and assemble the certificate.
    auto hgrp = PermGroup::make(gens);
    Rng cert_rng(task.seed ^ 0x9e3779b97f4a7c15ULL);
    auto cert = nonsolvable_certificate(*hgrp, cert_rng);
    if (cert.solvable) throw SearchError("memoized solvability disagrees with recomputation");
    Witness w;
    w.elements = std::move(witness_elems);
    w.generated_order = hgrp->order();
    w.perfect_term_order = cert.final_term_order;
    w.thompson_orders = cert.thompson_orders;
    w.trials_used = trial;
    w.seed = task.seed;
    return w;
  }
  return std::nullopt;
}

SweepResult exhaustive_all_solvable(const PermGroup& ambient, const ConjClass& cls, Mode mode,
                                    SweepOrder order) {
  if (cls.elements.empty()) throw SearchError("sweep needs the class elements listed");
  (void)ambient;
  const Permutation& x = cls.representative;
  std::vector<size_t> idx(cls.elements.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (order == SweepOrder::Reverse) std::reverse(idx.begin(), idx.end());

  SweepResult result;
  SolvabilityMemo memo;
  auto check = [&](std::vector<Permutation> gens) {
    auto facts = memo.facts_for(gens);
    ++result.tuples_checked;
    ++result.census[facts.order.str()];
    if (!facts.solvable) {
      result.all_solvable = false;
      result.offender = std::move(gens);
      result.offender_order = facts.order;
      return false;
    }
    return true;
  };

  switch (mode) {
    case Mode::PairConjugate:
      for (size_t i : idx)
        if (!check({x, cls.elements[i]})) return result;
      break;
    case Mode::TripleConjugate:
      for (size_t i : idx)
        for (size_t j : idx)
          if (!check({x, cls.elements[i], cls.elements[j]})) return result;
      break;
    case Mode::InvolutionPartner:
      throw SearchError("exhaustive sweeps are defined for pair and triple modes");
  }
  return result;
}

}  // namespace nsv::search
