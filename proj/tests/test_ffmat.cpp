#include <set>

#include "doctest.h"
#include "nonsolv/ffmat.hpp"

using namespace nsv;
using namespace nsv::ffmat;

TEST_CASE("field arithmetic tables") {
  auto f3 = Gf::standard(3);
  CHECK(f3->add(2, 2) == 1);
  CHECK(f3->mul(2, 2) == 1);
  CHECK(f3->inv(2) == 2);

  // GF(4) with modulus t^2+t+1: w*w = w+1.
  auto f4 = Gf::standard(4);
  uint8_t w = 2;  // the class of t
  CHECK(f4->mul(w, w) == 3);
  CHECK(f4->mul(w, 3) == 1);  // w * w^2 = w^3 = 1

  // GF(9): frobenius is an involution.
  auto f9 = Gf::standard(9);
  for (unsigned a = 0; a < 9; ++a)
    CHECK(f9->frobenius(f9->frobenius(static_cast<uint8_t>(a))) == a);
  CHECK(f9->has_twist());
  for (unsigned a = 0; a < 9; ++a)
    CHECK(f9->twist(static_cast<uint8_t>(a)) == f9->frobenius(static_cast<uint8_t>(a)));

  // field axioms, spot-checked exhaustively at these sizes
  for (unsigned q : {2u, 4u, 8u, 9u, 16u}) {
    auto f = Gf::standard(q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        if (a && b) CHECK(f->mul(a, b) != 0);
      }
    for (unsigned a = 1; a < q; ++a) CHECK(f->mul(a, f->inv(static_cast<uint8_t>(a))) == 1);
    CHECK(f->element_order(f->primitive_element()) == q - 1);
  }

  // reducible modulus rejected: t^2+1 over GF(2) = (t+1)^2
  CHECK_THROWS_AS(Gf(2, 2, std::vector<unsigned>{1, 0, 1}), FFError);
  CHECK_THROWS_AS(Gf(4, 1, std::vector<unsigned>{0, 1}), FFError);  // 4 not prime
  CHECK_THROWS_AS(Gf::standard(32), FFError);                      // above cap
}

TEST_CASE("polynomial arithmetic") {
  auto f3 = Gf::standard(3);
  Poly x = Poly::x(f3);
  Poly one = Poly::constant(f3, 1);
  Poly t2m1 = x * x - one;
  CHECK(t2m1.degree() == 2);
  auto [q, r] = Poly::divmod(t2m1, x - one);
  CHECK(r.is_zero());
  CHECK(q == x + one);
  CHECK((x - one).divides(t2m1));
  CHECK(!((x - one) * (x - one)).divides(t2m1));
  CHECK(Poly::gcd(t2m1, (x - one) * (x - one)) == x - one);
  CHECK(t2m1.is_squarefree());
  CHECK(!((x - one) * (x - one)).is_squarefree());
  // (t-1)^3 over GF(3) has zero derivative and is not squarefree
  Poly cube = (x - one) * (x - one) * (x - one);
  CHECK(!cube.is_squarefree());
  CHECK(cube.str() == "t^3+2");  // (t-1)^3 = t^3 - 1 in characteristic 3
}

TEST_CASE("matrix basics") {
  auto f3 = Gf::standard(3);
  auto id = FFMatrix::identity(f3, 3);
  CHECK(id.is_identity());
  CHECK(id.det() == 1);
  CHECK(id.rank() == 3);

  auto m = FFMatrix::from_rows(f3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(m.det() == 1);
  CHECK(m.order() == 3);
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK((m * *inv).is_identity());
  CHECK(m.pow(3).is_identity());

  auto sing = FFMatrix::from_rows(f3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 0}});
  CHECK(!sing.inverse().has_value());
  CHECK(sing.det() == 0);
  CHECK_THROWS_AS(sing.order(), FFError);
}

TEST_CASE("invariant factors") {
  auto f3 = Gf::standard(3);
  Poly x = Poly::x(f3);
  Poly one = Poly::constant(f3, 1);
  Poly tm1 = x - one;

  // identity: (t-1), (t-1), (t-1)
  auto id_factors = invariant_factors(FFMatrix::identity(f3, 3));
  REQUIRE(id_factors.size() == 3);
  for (const auto& f : id_factors) CHECK(f == tm1);

  // transvection: (t-1), (t-1)^2
  auto tv = FFMatrix::from_rows(f3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  auto tv_factors = invariant_factors(tv);
  REQUIRE(tv_factors.size() == 2);
  CHECK(tv_factors[0] == tm1);
  CHECK(tv_factors[1] == tm1 * tm1);

  // divisibility chain and char poly product on assorted matrices
  std::vector<FFMatrix> samples = {
      FFMatrix::from_rows(f3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
      FFMatrix::from_rows(f3, {{2, 1, 0}, {0, 2, 0}, {0, 0, 1}}),
      FFMatrix::from_rows(f3, {{1, 2, 2}, {0, 2, 1}, {1, 1, 1}}),
  };
  for (const auto& m : samples) {
    auto fs = invariant_factors(m);
    Poly prod = Poly::constant(f3, 1);
    for (size_t i = 0; i < fs.size(); ++i) {
      CHECK(fs[i].leading() == 1);
      if (i + 1 < fs.size()) CHECK(fs[i].divides(fs[i + 1]));
      prod = prod * fs[i];
    }
    CHECK(prod == m.char_poly());
  }

  // invariant factors are a conjugacy invariant
  auto g = FFMatrix::from_rows(f3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  REQUIRE(g.inverse().has_value());
  for (const auto& m : samples) {
    auto conj = *g.inverse() * m * g;
    CHECK(invariant_factors(conj) == invariant_factors(m));
  }
}

TEST_CASE("order-6 block construction matches the stated invariant factor shape") {
  // direct sum of a 3x3 order-6 block (J_2(-1) + [1]... built as companion of
  // (t^2-1)(t-(-1))) and a 1x1 block [-1]; square is a transvection up to sign.
  auto f3 = Gf::standard(3);
  // companion matrix of (t^2-1)(t+1) = t^3+t^2-t-1 over GF(3)
  // coeffs: t^3 + 1*t^2 + 2*t + 2 (since -1 = 2)
  auto c = FFMatrix::from_rows(f3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 2}});
  // full 4x4: block diag with [2] (= -1)
  auto m = FFMatrix::from_rows(
      f3, {{0, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 2, 0}, {0, 0, 0, 2}});
  CHECK(m.order() == 6);
  auto fs = invariant_factors(m);
  REQUIRE(fs.size() == 2);
  Poly x = Poly::x(f3);
  Poly one = Poly::constant(f3, 1);
  CHECK(fs[0] == x + one);                          // t + 1, multiplicity 1
  CHECK(fs[1] == (x * x - one) * (x + one));        // (t^2-1)(t+1)
  CHECK(is_scalar_multiple_of_transvection(m * m));
  CHECK(m.min_poly() != (x * x - one) * (x * x - one));
  (void)c;
}

TEST_CASE("unipotent shapes") {
  auto f3 = Gf::standard(3);
  auto id = FFMatrix::identity(f3, 4);
  CHECK(unipotent_shape(id) == std::vector<unsigned>{1, 1, 1, 1});

  auto tv = FFMatrix::from_rows(f3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(unipotent_shape(tv) == std::vector<unsigned>{2, 1, 1});

  auto reg = FFMatrix::from_rows(f3, {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
  CHECK(unipotent_shape(reg) == std::vector<unsigned>{4});
  CHECK(reg.order() == 9);

  auto not_uni = FFMatrix::from_rows(f3, {{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(unipotent_shape(not_uni), FFError);
}

TEST_CASE("transvection and pseudoreflection predicates") {
  auto f3 = Gf::standard(3);
  auto id3 = FFMatrix::identity(f3, 3);
  CHECK(!is_transvection(id3));
  CHECK(!is_pseudoreflection(id3));

  auto tv = FFMatrix::from_rows(f3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(is_transvection(tv));
  CHECK(!is_pseudoreflection(tv));

  // diag(w,1,1,1) over GF(4), w a primitive cube root of unity
  auto f4 = Gf::standard(4);
  auto pr = FFMatrix::from_rows(f4, {{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(!is_transvection(pr));
  CHECK(is_pseudoreflection(pr));
  CHECK(!is_reflection(pr));  // order 3

  auto refl = FFMatrix::from_rows(f3, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(is_reflection(refl));

  // scalar multiple: diag(1,w,w,w) = w * diag(w^2,1,1,1) in GF(4)
  auto spr = FFMatrix::from_rows(f4, {{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
  CHECK(!is_pseudoreflection(spr));
  CHECK(is_scalar_multiple_of_pseudoreflection(spr));
}
