#include <set>

#include "doctest.h"
#include "nonsolv/bounds.hpp"

using namespace nsv;
using namespace nsv::bounds;

namespace {
const std::vector<PPartTable>& tables() {
  static std::vector<PPartTable> t =
      load_ppart_tables(std::string(NONSOLV_SOURCE_DATA_DIR) + "/ppart_tables.json");
  return t;
}

CountingScenario sz8_order7_scenario() {
  // x of order 7 in Sz(8): |x^G| = q^2(q^2+1) = 4160, |Y| = (q^2+1)(q-1) = 455.
  CountingScenario s;
  s.ambient = "Sz(8)";
  s.class_size = 4160;
  s.involutions = 455;
  s.subgroups = {
      {"Frobenius q^2(q-1)", Int(65), Int(440), Int(7)},
      {"dihedral 2(q-1)", Int(2080), Int(7), Int(7)},
      {"Sz(2)", Int(1456), Int(0), Int(5)},
  };
  return s;
}
}  // namespace

TEST_CASE("countinv inequality") {
  // empty subgroup list: RHS 0, any positive |Y| passes
  CountingScenario empty{"trivial", Int(10), Int(1), {}};
  auto r0 = countinv_check(empty);
  CHECK(r0.rhs == 0);
  CHECK(r0.passes);

  // the Suzuki q=8, p|q-1 scenario
  auto s = sz8_order7_scenario();
  auto r = countinv_check(s);
  CHECK(r.lhs == 455);
  CHECK(r.rhs == Rat(581, 8));  // 440*65*7/4160 + 7*2080*7/4160 + 0 = 72.625
  CHECK(r.passes);

  // the bound chain displayed for this case dominates the exact sum:
  // (q^2-q-1) + (q-1)^2/2 + (q-1) = 86.5 at q = 8
  Rat chain = Rat(64 - 8 - 1) + Rat(49, 2) + Rat(7);
  CHECK(chain == Rat(173, 2));
  CHECK(r.rhs <= chain);
  CHECK(Rat(r.lhs) > chain);

  // monotonicity probe: same scenario with |Y| forced down fails
  auto weak = s;
  weak.involutions = 50;
  CHECK(!countinv_check(weak).passes);

  CountingScenario bad{"bad", Int(10), Int(5), {{"X", Int(2), Int(11), Int(1)}}};
  CHECK_THROWS_AS(countinv_check(bad), BoundsError);
}

TEST_CASE("psl2 displayed inequalities") {
  auto r7 = psl2_bounds(7);
  CHECK(r7.in_range);
  CHECK(r7.lhs == 21);  // (q^2-q)/2
  CHECK(r7.rhs == 18);  // 2 i2(B) + i2(D) = 2*7 + (7+1)/2
  CHECK(r7.passes);

  auto r8 = psl2_bounds(8);
  CHECK(r8.in_range);
  CHECK(r8.lhs == 63);  // q^2 - 1
  CHECK(r8.rhs == 21);  // 2(q-1) + (q-1)
  CHECK(r8.passes);

  auto r5 = psl2_bounds(5);
  CHECK(!r5.in_range);
  CHECK(!r5.passes);

  for (unsigned q : {7u, 8u, 9u, 11u, 13u, 16u, 17u, 19u, 23u, 25u, 27u, 29u, 31u, 32u}) {
    auto r = psl2_bounds(q, Psl2Case::PDividesQMinus);
    CHECK(r.in_range);
    CHECK(r.passes);
    auto rp = psl2_bounds(q, Psl2Case::PDividesQPlus);
    CHECK(rp.passes);
  }
  CHECK(psl2_bounds(9, Psl2Case::Unipotent).passes);
}

TEST_CASE("field automorphism bound") {
  // odd branch, q0 = 3, p = 5
  auto r = field_aut_gamma_bound(3, 5, AutFamily::PSL2);
  CHECK(r.majorant == Rat(4410));  // q0(q0+1)(3 q0^p + q0 + 3)/2 = 3*4*735/2
  CHECK(r.i2_lower == 29403);      // 243*242/2
  CHECK(r.term_sum == Rat(3186));
  CHECK(r.sum_le_majorant);
  CHECK(r.passes);

  // even branch, q0 = 4, p = 5
  auto r2 = field_aut_gamma_bound(4, 5, AutFamily::PSL2);
  CHECK(r2.majorant == Rat(41120));  // 2(q0^p+q0)(q0+1)q0
  CHECK(r2.i2_lower == 1048575);     // q0^{2p} - 1
  CHECK(r2.sum_le_majorant);
  CHECK(r2.passes);

  // Suzuki, q0 = 2, p = 5 (q = 32)
  auto rs = field_aut_gamma_bound(2, 5, AutFamily::Sz);
  CHECK(rs.i2_lower == 31775);  // (q^2+1)(q-1)
  CHECK(rs.term_sum == Rat(1215));
  CHECK(rs.majorant == Rat(2165));
  CHECK(rs.sum_le_majorant);
  CHECK(rs.passes);

  // full grid from the verification sweep
  for (unsigned q0 : {2u, 3u, 4u, 5u, 8u, 9u}) {
    for (unsigned p : {5u, 7u, 11u}) {
      if (pow_int(Int(q0), p) > Int(10000000000LL)) continue;
      auto g = field_aut_gamma_bound(q0, p, AutFamily::PSL2);
      CHECK(g.sum_le_majorant);
      CHECK(g.passes);
    }
  }
  for (auto [q0, p] : std::vector<std::pair<unsigned, unsigned>>{{2, 5}, {2, 7}, {8, 5}}) {
    auto g = field_aut_gamma_bound(q0, p, AutFamily::Sz);
    CHECK(g.sum_le_majorant);
    CHECK(g.passes);
  }

  CHECK_THROWS_AS(field_aut_gamma_bound(2, 3, AutFamily::Sz), BoundsError);   // needs p >= 5
  CHECK_THROWS_AS(field_aut_gamma_bound(4, 5, AutFamily::Sz), BoundsError);   // q0 not 2^odd
}

TEST_CASE("order polynomial evaluation") {
  CHECK(order_poly_eval(LieFamily::PSL2, 0, 7) == 168);
  CHECK(order_poly_eval(LieFamily::PSL2, 0, 8) == 504);
  CHECK(order_poly_eval(LieFamily::Sz, 0, 8) == 29120);
  CHECK(order_poly_eval(LieFamily::TwoG2, 0, 27) == Int(19683) * 19684 * 26);
  CHECK(order_poly_eval(LieFamily::SL, 3, 3) == 5616);
  CHECK(order_poly_eval(LieFamily::SL, 2, 11) == 1320);
  CHECK(order_poly_eval(LieFamily::GL, 4, 3) == 24261120);
  CHECK(order_poly_eval(LieFamily::SU, 4, 2) == 25920);
  CHECK(order_poly_eval(LieFamily::GU, 4, 3) == 52254720);
  CHECK(order_poly_eval(LieFamily::Sp, 6, 2) == 1451520);
  CHECK(order_poly_eval(LieFamily::Sp, 4, 3) == 51840);
  CHECK(order_poly_eval(LieFamily::GSp, 4, 3) == 103680);
  CHECK(order_poly_eval(LieFamily::GOOdd, 5, 3) == 103680);
  CHECK(order_poly_eval(LieFamily::OEvenPlus, 8, 2) == 348364800);
  CHECK(order_poly_eval(LieFamily::OEvenMinus, 8, 2) == 394813440);
  CHECK(order_poly_eval(LieFamily::OmegaPlus, 8, 2) == 174182400);
  CHECK(order_poly_eval(LieFamily::OmegaMinus, 8, 2) == 197406720);
  CHECK(order_poly_eval(LieFamily::ThreeD4, 0, 2) == Int(4096) * 273 * 63 * 3);
  CHECK(order_poly_eval(LieFamily::G2, 0, 2) == Int(64) * 63 * 3);

  CHECK_THROWS_AS(order_poly_eval(LieFamily::Sz, 0, 4), BoundsError);   // 4 = 2^2 even power
  CHECK_THROWS_AS(order_poly_eval(LieFamily::TwoG2, 0, 9), BoundsError);
  CHECK(family_supports_q(LieFamily::Sz, 2));
  CHECK(family_supports_q(LieFamily::Sz, 32));
  CHECK(!family_supports_q(LieFamily::E7, 6));  // not a prime power
}

TEST_CASE("zsigmondy primitive prime divisors") {
  CHECK(!zsigmondy_ppd(2, 6).has_value());       // 63 = 3^2 * 7, orders 2 and 3
  CHECK(zsigmondy_ppd(2, 18) == Int(19));
  CHECK(zsigmondy_ppd(3, 5) == Int(11));
  CHECK(zsigmondy_ppd(2, 4) == Int(5));
  CHECK(zsigmondy_ppd(2, 1) == std::nullopt);    // q - 1 = 1
  CHECK(zsigmondy_ppd(4, 1) == Int(3));
  CHECK(zsigmondy_ppd(2, 2) == Int(3));
  CHECK(zsigmondy_ppd(7, 2) == std::nullopt);    // 8 has no odd prime factor
  CHECK(zsigmondy_ppd(2, 2, 5) == std::nullopt); // 3 < 5
  CHECK(zsigmondy_ppd(4, 2, 5) == Int(5));
  CHECK(zsigmondy_ppd(2, 9) == Int(73));
  CHECK(zsigmondy_ppd(2, 30) == Int(331));       // ord_331(2) = 30

  // the returned prime really has the claimed order
  for (unsigned e : {3u, 4u, 5u, 7u, 12u, 20u}) {
    for (unsigned q : {2u, 3u, 5u}) {
      auto p = zsigmondy_ppd(q, e);
      if (!p) continue;
      Int x = 1;
      unsigned ord = 0;
      do {
        x = x * q % *p;
        ++ord;
      } while (x != 1);
      CHECK(ord == e);
    }
  }
}

TEST_CASE("ppart expression language") {
  Int q(2), p(19);
  CHECK(eval_ppart_expr("q^6-q^3+1", q, p) == Rat(57));
  CHECK(eval_ppart_expr("(q^7+1)/(q+1)", q, p) == Rat(43));
  CHECK(eval_ppart_expr("(7,p)(5,p)(q+1)^7", Int(4), Int(5)) == Rat(5) * Int(78125));
  CHECK(eval_ppart_expr("(q^2-q+1)^4(5,p)", Int(2), Int(7)) == Rat(81));
  CHECK(eval_ppart_expr("(q^2+q+1)^2", Int(2), Int(7)) == Rat(49));
  // numeric division is rational; integrality is the table checker's concern
  CHECK(eval_ppart_expr("(q^2+1)/(q+1)", Int(2), Int(3)) == Rat(5, 3));
  CHECK_THROWS_AS(eval_ppart_expr_poly("(q^2+1)/(q+1)"), BoundsError);  // inexact in q
  CHECK_THROWS_AS(eval_ppart_expr("q^", Int(2), Int(3)), BoundsError);

  // symbolic form: gcd factors drop to 1
  auto poly = eval_ppart_expr_poly("(7,p)(5,p)(q+1)^7");
  CHECK(poly.size() == 8);
  CHECK(poly[0] == 1);
  CHECK(poly[7] == 1);
}

TEST_CASE("sylow table transcription sanity") {
  const auto& ts = tables();
  REQUIRE(ts.size() == 7);
  std::set<std::string> fams;
  for (const auto& t : ts) fams.insert(t.family);
  CHECK(fams == std::set<std::string>{"E7", "F4", "E6", "2E6", "E8", "2F4", "3D4"});

  // e = smallest d_i divisible by ord, for the untwisted e-labeled tables
  std::map<std::string, std::vector<unsigned>> dis = {
      {"E7", {2, 6, 8, 10, 12, 14, 18}},
      {"F4", {2, 6, 8, 12}},
      {"E6", {2, 5, 6, 8, 9, 12}},
      {"E8", {2, 8, 12, 14, 18, 20, 24, 30}},
  };
  // Skipped rows are printed at the e of their companion case even when the
  // sub-case is vacuous there, so only live rows are validated.
  for (const auto& t : ts) {
    auto it = dis.find(t.family);
    if (it == dis.end()) continue;
    for (const auto& row : t.rows) {
      if (row.skip) continue;
      unsigned smallest = 0;
      for (unsigned d : it->second)
        if (d % row.ord == 0) {
          smallest = d;
          break;
        }
      CHECK(row.e == smallest);
    }
  }

  // every claimed p-part expression divides the order polynomial
  for (const auto& t : ts) {
    auto order = order_polynomial(t.lie, 0);
    for (const auto& row : t.rows) {
      if (row.skip) continue;
      auto expr = eval_ppart_expr_poly(row.ppart_expr);
      CHECK(qpoly_divides(expr, order));
    }
  }
}

TEST_CASE("ppart claims from the verification sweep") {
  const auto& ts = tables();
  auto find_table = [&](const std::string& fam) -> const PPartTable& {
    for (const auto& t : ts)
      if (t.family == fam) return t;
    FAIL("missing table");
    return ts[0];
  };

  // E7, ord 18 row at q=2: p = 19, p-part of q^6-q^3+1 = 57 is 19
  {
    const auto& t = find_table("E7");
    const PPartRow* row = nullptr;
    for (const auto& r : t.rows)
      if (r.ord == 18) row = &r;
    // rows are ordered with ord 18 first; the one we picked is "q^9-1";
    // look up the "+1" row explicitly.
    for (const auto& r : t.rows)
      if (r.case_expr == "q^9+1") row = &r;
    auto res = ppart_claim_check(t, *row, 2);
    CHECK(res.status == "pass");
    CHECK(res.p == 19);
    CHECK(res.claimed_ppart == 19);
  }

  // F4, q^4+1 row at q=2: p = 17
  {
    const auto& t = find_table("F4");
    for (const auto& r : t.rows)
      if (r.case_expr == "q^4+1") {
        auto res = ppart_claim_check(t, r, 2);
        CHECK(res.status == "pass");
        CHECK(res.p == 17);
        CHECK(res.actual_ppart == 17);
      }
  }

  // 3D4, q^2+q+1 row at q=2: p = 7, both sides 49
  {
    const auto& t = find_table("3D4");
    for (const auto& r : t.rows)
      if (r.case_expr == "q^2+q+1") {
        auto res = ppart_claim_check(t, r, 2);
        CHECK(res.status == "pass");
        CHECK(res.p == 7);
        CHECK(res.claimed_ppart == 49);
        CHECK(res.actual_ppart == 49);
      }
  }

  // full sweep: every non-skip row at q in {2,3,4,5} passes or is skipped
  // with an explanation; nothing fails
  for (const auto& t : ts) {
    for (const auto& row : t.rows) {
      for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto res = ppart_claim_check(t, row, q);
        INFO(t.family, " ", row.case_expr, " q=", q, ": ", res.reason);
        CHECK(res.status != "fail");
      }
    }
  }
}
