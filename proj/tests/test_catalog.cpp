#include "doctest.h"
#include "nonsolv/catalog.hpp"

using namespace nsv;
using namespace nsv::catalog;

namespace {
std::shared_ptr<Catalog> cat() {
  static std::shared_ptr<Catalog> c = Catalog::load_dir(NONSOLV_SOURCE_DATA_DIR);
  return c;
}
}  // namespace

TEST_CASE("catalog loads and validates") {
  auto c = cat();
  for (const char* name :
       {"SL(2,7)", "SL(3,3)", "SU(3,3)", "SU(4,2)", "Sp(4,3)", "Sp(6,2)", "GO(5,3)",
        "O+(8,2)", "O-(8,2)", "Sz(8)", "GL(4,3)", "GU(4,3)", "GSp(4,3)"})
    CHECK(c->has(name));
  CHECK(!c->has("E8(2)"));
  CHECK_THROWS(c->get("E8(2)"));
}

TEST_CASE("catalog corruption is rejected") {
  auto c = cat();
  auto spec = *c->get("Sp(4,3)");  // copy
  auto g = spec.generators[0];
  g.set(0, 0, g.at(0, 0) == 1 ? 2 : 1);
  CHECK_THROWS_AS(spec.validate_generator(g), ffmat::FFError);
}

TEST_CASE("projectivization degrees, orders and kernels") {
  auto c = cat();

  auto psl33 = c->projectivize("SL(3,3)");
  CHECK(psl33->image->degree() == 13);
  CHECK(psl33->image->order() == 5616);
  CHECK(psl33->spec->scalar_subgroup().size() == 1);

  auto psp62 = c->projectivize("Sp(6,2)");
  CHECK(psp62->image->degree() == 63);
  CHECK(psp62->image->order() == 1451520);

  auto psu42 = c->projectivize("SU(4,2)");
  CHECK(psu42->image->degree() == 85);  // (4^4-1)/(4-1)
  CHECK(psu42->image->order() == 25920);

  auto psp43 = c->projectivize("Sp(4,3)");
  CHECK(psp43->image->degree() == 40);
  CHECK(psp43->image->order() == 25920);
  CHECK(psp43->spec->scalar_subgroup().size() == 2);

  auto pgo53 = c->projectivize("GO(5,3)");
  CHECK(pgo53->image->degree() == 121);
  CHECK(pgo53->image->order() == 51840);

  auto sz8 = c->projectivize("Sz(8)");
  CHECK(sz8->image->order() == 29120);

  // PSL(2,7) on the 8 projective points: 21 involutions in one class,
  // matching the odd-q class size q(q-1)/2
  auto psl27 = c->projectivize("SL(2,7)");
  CHECK(psl27->image->degree() == 8);
  Rng r27(11);
  perm::Permutation inv27(8);
  do {
    inv27 = psl27->image->random_element(r27);
  } while (inv27.order() != 2);
  CHECK(psl27->image->conjugacy_class(inv27).size == 21);

  // |matrix group| = |projective image| * |scalar kernel|
  for (const char* name : {"SL(2,7)", "SL(2,9)", "SL(3,3)", "GL(3,3)", "SU(3,3)", "Sp(4,3)"}) {
    auto pg = c->projectivize(name);
    Int kernel = Int(pg->spec->scalar_subgroup().size());
    CHECK(pg->image->order() * kernel == pg->spec->expected_order);
  }
}

TEST_CASE("projectivize is a homomorphism") {
  auto c = cat();
  Rng rng(2024);
  for (const char* name : {"SL(3,3)", "Sp(4,3)", "SU(3,3)"}) {
    auto pg = c->projectivize(name);
    for (int i = 0; i < 1000; ++i) {
      auto a = pg->random_matrix(rng, 12);
      auto b = pg->random_matrix(rng, 12);
      CHECK(pg->to_perm(a * b) == perm::compose(pg->to_perm(a), pg->to_perm(b)));
    }
  }
}

TEST_CASE("form preservation holds for all stored generators") {
  auto c = cat();
  for (const auto& name : c->names()) {
    auto spec = c->get(name);
    CHECK_NOTHROW(spec->validate());
  }
}

TEST_CASE("projective degree cap") {
  // (4^7 - 1)/3 = 5461 points exceeds the 4096-point cap
  CHECK_THROWS_AS(ProjectiveAction(ffmat::Gf::standard(4), 7), ffmat::FFError);
  CHECK_NOTHROW(ProjectiveAction(ffmat::Gf::standard(2), 8));  // 255 points
}

TEST_CASE("class listing cap") {
  auto s6 = symmetric_group(6);
  auto x = perm::parse_cycles("(1,2)", 6);
  CHECK_THROWS_AS(s6->conjugacy_class(x, 5, true), perm::PermError);
  auto cls = s6->conjugacy_class(x, 5, false);  // size still exact
  CHECK(cls.size == 15);
  CHECK(cls.elements.empty());
}

TEST_CASE("builtin permutation families") {
  auto c = cat();
  CHECK(c->resolve_group("S5").group->order() == 120);
  CHECK(c->resolve_group("S8").group->order() == 40320);
  CHECK(c->resolve_group("A6").group->order() == 360);
  CHECK(c->resolve_group("A8").group->order() == 20160);
  CHECK(c->resolve_group("C30").group->order() == 30);
  CHECK(c->resolve_group("D6").group->order() == 12);
  CHECK(c->resolve_group("PSL(3,3)").group->order() == 5616);
  CHECK(c->resolve_group("PSp(4,3)").group->order() == 25920);
  CHECK_THROWS(c->resolve_group("M11"));

  auto prod = direct_product(*symmetric_group(5), *cyclic_group(3));
  CHECK(prod->order() == 360);
  CHECK(prod->degree() == 8);
}
