#include <map>
#include <set>

#include "doctest.h"
#include "nonsolv/catalog.hpp"
#include "nonsolv/chartab.hpp"

using namespace nsv;
using namespace nsv::chartab;
using nsv::perm::Permutation;
using nsv::perm::PermGroup;

namespace {

perm::PermGroupPtr a5() {
  return PermGroup::make(
      {perm::parse_cycles("(1,2,3,4,5)", 5), perm::parse_cycles("(1,2)(3,4)", 5)});
}

perm::PermGroupPtr s4() {
  return PermGroup::make({perm::parse_cycles("(1,2)", 4), perm::parse_cycles("(1,2,3,4)", 4)});
}

// Brute-force pair count: #{(a,b) in A x B : ab = c0} for a fixed c0 in C.
Int brute_pairs(const PermGroup& g, const CharacterTable& t, unsigned A, unsigned B, unsigned C) {
  auto elems = g.elements();
  auto order_of = [&](const Permutation& p) { return p.order(); };
  // classes in the computed table are keyed by representative cycle text
  auto cls = g.conjugacy_classes();
  // map table class index -> elements, matched by (order, size)
  // (representative strings in the table come from the same construction,
  // so match directly on the stored representative)
  std::map<std::string, std::vector<Permutation>> by_rep;
  for (const auto& c : cls) {
    std::vector<Permutation> sorted = c.elements;
    by_rep[perm::format_cycles(c.elements.front())] = sorted;
  }
  (void)order_of;
  auto find_elems = [&](unsigned idx) {
    const auto& name = t.classes[idx].name;
    // the table's class name is the representative in cycle notation; the
    // representative chosen by conjugacy_classes is the class minimum, which
    // matches compute_character_table's first-seen-over-sorted-elements rep.
    auto it = by_rep.find(name);
    REQUIRE(it != by_rep.end());
    return it->second;
  };
  auto ca = find_elems(A);
  auto cb = find_elems(B);
  auto cc = find_elems(C);
  const Permutation& c0 = cc.front();
  Int count = 0;
  for (const auto& x : ca)
    for (const auto& y : cb)
      if (perm::compose(x, y) == c0) ++count;
  return count;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  // Phi_12 = x^4 - x^2 + 1
  auto phi12 = cyclotomic_polynomial(12);
  CHECK(phi12 == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});

  // 1 + z5 + z5^2 + z5^3 + z5^4 = 0
  Cyclotomic sum(5);
  for (unsigned k = 0; k < 5; ++k) sum = sum + Cyclotomic::zeta_pow(5, k);
  CHECK(sum.is_zero());

  // zeta * conj(zeta) = 1
  auto z = Cyclotomic::zeta_pow(12, 1);
  CHECK(z * z.conj() == Cyclotomic::from_rational(12, 1));
  CHECK(Cyclotomic::zeta_pow(12, 12) == Cyclotomic::from_rational(12, 1));

  auto r = Cyclotomic::from_rational(12, Rat(3, 2));
  CHECK(r.is_rational());
  CHECK(r.to_rational() == Rat(3, 2));
  CHECK(!z.is_rational());
  CHECK_THROWS_AS(z.to_rational(), ChartabError);
}

TEST_CASE("character table of C2 and acceptance of tiny tables") {
  auto c2 = catalog::cyclic_group(2);
  auto t = compute_character_table(*c2, "C2");
  CHECK(t.n_classes() == 2);
  CHECK(t.exponent == 2);
  REQUIRE(t.irreducibles.size() == 2);
  // characters [[1,1],[1,-1]] in some row order
  std::set<std::string> rows;
  for (const auto& row : t.irreducibles)
    rows.insert(row[0].str() + "|" + row[1].str());
  CHECK(rows == std::set<std::string>{"1|1", "1|-1"});
  CHECK_NOTHROW(t.verify());
}

TEST_CASE("character table of A5") {
  auto t = compute_character_table(*a5(), "A5");
  CHECK(t.n_classes() == 5);
  CHECK(t.exponent == 30);
  CHECK(t.group_order == 60);
  std::multiset<Int> degrees;
  unsigned id = t.identity_class();
  for (const auto& row : t.irreducibles)
    degrees.insert(boost::multiprecision::numerator(row[id].to_rational()));
  CHECK(degrees == std::multiset<Int>{1, 3, 3, 4, 5});

  // a corrupted copy is rejected: flip the sign of one non-identity value
  auto bad = t;
  for (unsigned c = 0; c < bad.n_classes(); ++c)
    if (c != id && bad.irreducibles[1][c].is_rational() &&
        bad.irreducibles[1][c].to_rational() != 0) {
      bad.irreducibles[1][c] = bad.irreducibles[1][c].scaled(Rat(-1));
      break;
    }
  CHECK_THROWS_AS(bad.verify(), ChartabError);
}

TEST_CASE("structure constants match brute force") {
  auto g = a5();
  auto t = compute_character_table(*g, "A5");

  unsigned id = t.identity_class();
  // identity * identity = identity, one way
  CHECK(t.structure_constant(id, id, id) == 1);

  // locate the classes by element order
  auto class_with_order = [&](unsigned o) {
    for (unsigned c = 0; c < t.n_classes(); ++c)
      if (t.classes[c].element_order == o) return c;
    FAIL("class not found");
    return 0u;
  };
  unsigned c2 = class_with_order(2), c3 = class_with_order(3), c5 = class_with_order(5);

  // involution class against itself into the identity: |A| pairings
  CHECK(t.structure_constant(c2, c2, id) == 15);

  // (2,3,5) and assorted triples against explicit counting
  for (auto [a, b, c] : std::vector<std::array<unsigned, 3>>{
           {c2, c3, c5}, {c2, c2, c3}, {c3, c3, c5}, {c2, c3, c3}, {c5, c5, c5}}) {
    Int via_table = t.structure_constant(a, b, c);
    Int via_brute = brute_pairs(*g, t, a, b, c);
    CHECK(via_table == via_brute);
  }

  // symmetry in the first two arguments
  CHECK(t.structure_constant(c2, c3, c5) == t.structure_constant(c3, c2, c5));

  // invariance under simultaneous inversion of all three classes, exercised
  // on a group with non-real classes so that inversion moves something
  auto c13 = PermGroup::make({perm::parse_cycles("(1,2,3,4,5,6,7,8,9,10,11,12,13)", 13)});
  auto t13 = compute_character_table(*c13, "C13");
  for (unsigned a = 0; a < t13.n_classes(); ++a)
    for (unsigned b = 0; b < t13.n_classes(); ++b)
      for (unsigned c = 0; c < t13.n_classes(); ++c)
        CHECK(t13.structure_constant(a, b, c) ==
              t13.structure_constant(t13.inverse_class(a), t13.inverse_class(b),
                                     t13.inverse_class(c)));
  for (auto [a, b, c] : std::vector<std::array<unsigned, 3>>{{c2, c3, c5}, {c3, c5, c5}})
    CHECK(t.structure_constant(a, b, c) ==
          t.structure_constant(t.inverse_class(a), t.inverse_class(b), t.inverse_class(c)));

  // sum rule: for fixed A,B: sum_C n(A,B,C) |C| = |A| |B|
  for (auto [a, b] : std::vector<std::array<unsigned, 2>>{{c2, c3}, {c3, c5}, {c2, c2}}) {
    Int total = 0;
    for (unsigned c = 0; c < t.n_classes(); ++c)
      total += t.structure_constant(a, b, c) * t.classes[c].size;
    CHECK(total == t.classes[a].size * t.classes[b].size);
  }
}

TEST_CASE("thompson criterion") {
  auto tc6 = compute_character_table(*catalog::cyclic_group(6), "C6");
  CHECK(!tc6.thompson_nonsolvable().has_value());

  auto ta5 = compute_character_table(*a5(), "A5");
  auto triple = ta5.thompson_nonsolvable();
  REQUIRE(triple.has_value());
  std::multiset<unsigned> orders{triple->order_a, triple->order_b, triple->order_c};
  CHECK(orders == std::multiset<unsigned>{2, 3, 5});
  CHECK(triple->count > 0);

  auto ts4 = compute_character_table(*s4(), "S4");
  CHECK(!ts4.thompson_nonsolvable().has_value());
}

TEST_CASE("character degrees of PSL(2,7) and PSL(2,11)") {
  auto deg = [](const CharacterTable& t) {
    std::multiset<Int> out;
    unsigned id = t.identity_class();
    for (const auto& row : t.irreducibles)
      out.insert(boost::multiprecision::numerator(row[id].to_rational()));
    return out;
  };
  auto t7 = compute_character_table(*catalog::Catalog::load_dir(NONSOLV_SOURCE_DATA_DIR)
                                         ->resolve_group("PSL(2,7)")
                                         .group,
                                    "PSL(2,7)");
  CHECK(deg(t7) == std::multiset<Int>{1, 3, 3, 6, 7, 8});

  auto t11 = compute_character_table(*catalog::Catalog::load_dir(NONSOLV_SOURCE_DATA_DIR)
                                          ->resolve_group("PSL(2,11)")
                                          .group,
                                     "PSL(2,11)");
  CHECK(deg(t11) == std::multiset<Int>{1, 5, 5, 10, 10, 11, 12, 12});
}

TEST_CASE("json round trip") {
  auto t = compute_character_table(*a5(), "A5");
  std::string text = t.to_json_text();
  auto t2 = CharacterTable::from_json_text(text);
  CHECK(t2.group_order == t.group_order);
  CHECK(t2.exponent == t.exponent);
  REQUIRE(t2.n_classes() == t.n_classes());
  for (unsigned r = 0; r < t.n_classes(); ++r)
    for (unsigned c = 0; c < t.n_classes(); ++c)
      CHECK(t2.irreducibles[r][c] == t.irreducibles[r][c]);
}

TEST_CASE("inverse classes in a group with non-real classes") {
  auto c3 = catalog::cyclic_group(3);
  auto t = compute_character_table(*c3, "C3");
  unsigned id = t.identity_class();
  CHECK(t.inverse_class(id) == id);
  // the two nontrivial classes are mutually inverse
  std::vector<unsigned> non_id;
  for (unsigned c = 0; c < 3; ++c)
    if (c != id) non_id.push_back(c);
  CHECK(t.inverse_class(non_id[0]) == non_id[1]);
  CHECK(t.inverse_class(non_id[1]) == non_id[0]);
}

TEST_CASE("table computation agrees with solvability across a mixed sample") {
  std::vector<std::pair<std::string, perm::PermGroupPtr>> groups = {
      {"S4", s4()},
      {"A5", a5()},
      {"D12", catalog::dihedral_group(12)},
      {"C30", catalog::cyclic_group(30)},
      {"A4", PermGroup::make({perm::parse_cycles("(1,2,3)", 4), perm::parse_cycles("(1,2)(3,4)", 4)})},
  };
  for (auto& [name, g] : groups) {
    auto t = compute_character_table(*g, name);
    CHECK(t.thompson_nonsolvable().has_value() == !g->is_solvable());
  }
}
