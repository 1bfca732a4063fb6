#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonsolv/ints.hpp"

namespace nsv::bounds {

class BoundsError : public std::runtime_error {
 public:
  explicit BoundsError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Generic covering inequality: |Y| > sum_i fusion_i * index_i * invol_i / |x^G|.

struct SubgroupTerm {
  std::string name;
  Int index;        // |G : X_i|
  Int fusion;       // |x^G meet X_i|
  Int involutions;  // |Y meet X_i|
};

struct CountingScenario {
  std::string ambient;
  Int class_size;    // |x^G|
  Int involutions;   // |Y|
  std::vector<SubgroupTerm> subgroups;

  void validate() const;
};

struct CountinvResult {
  Rat rhs;
  Int lhs;
  bool passes;
};

CountinvResult countinv_check(const CountingScenario& s);

// ---------------------------------------------------------------------------
// PSL(2,q) involution-count comparisons.

enum class Psl2Case { PDividesQMinus, PDividesQPlus, Unipotent };

Psl2Case psl2_case_from_string(const std::string& s);
std::string psl2_case_to_string(Psl2Case c);

struct Psl2Bounds {
  Int q;
  bool q_even = false;
  bool in_range = false;    // q >= 7 odd / q >= 8 even
  Rat i2_group_lower;       // q^2-1 (even) or q(q-1)/2 (odd)
  Rat i2_borel_upper;       // q-1 (even) or q (odd)
  Rat i2_dihedral_upper;    // q-1 (even) or (q+1)/2 (odd)
  Rat lhs, rhs;             // the compared quantities for the given case
  bool passes = false;
  std::string note;
};

Psl2Bounds psl2_bounds(unsigned q, Psl2Case c = Psl2Case::PDividesQMinus);

// ---------------------------------------------------------------------------
// Field-automorphism bound: the closed-form majorant of the subgroup-sum
// against the involution count of the socle, for G0 = PSL(2, q0^p) or
// Sz(q0^p).

enum class AutFamily { PSL2, Sz };

struct GammaBoundResult {
  Int q;              // q0^p
  Rat term_sum;       // the exact subgroup sum
  Rat majorant;       // the closed-form upper bound
  Int i2_lower;       // closed-form lower bound for the involution count
  bool sum_le_majorant = false;
  bool passes = false;  // majorant < i2_lower
};

GammaBoundResult field_aut_gamma_bound(unsigned q0, unsigned p, AutFamily family);

// ---------------------------------------------------------------------------
// Order polynomials.

enum class LieFamily {
  PSL2, SL, GL, SU, GU, Sp, GSp, GOOdd, OEvenPlus, OEvenMinus,
  OmegaOdd, OmegaPlus, OmegaMinus, Sz, G2, TwoG2, ThreeD4, TwoF4,
  F4, E6, TwoE6, E7, E8,
};

LieFamily lie_family_from_string(const std::string& s);
std::string lie_family_to_string(LieFamily f);

// Dense polynomial in q with rational coefficients, low first.
using QPoly = std::vector<Rat>;

QPoly qpoly_mul(const QPoly& a, const QPoly& b);
// Exact division; throws when the division has a remainder.
QPoly qpoly_div_exact(const QPoly& a, const QPoly& b);
bool qpoly_divides(const QPoly& divisor, const QPoly& dividend);
Rat qpoly_eval(const QPoly& p, const Int& q);

// The order of the group as a polynomial in q. d is the matrix dimension
// for classical families and is ignored for the exceptional ones (pass 0).
// Exceptional families use the universal (simply connected) order, which
// has the same p-part as the adjoint group for every odd p not dividing
// the center order.
QPoly order_polynomial(LieFamily f, unsigned d);
Int order_poly_eval(LieFamily f, unsigned d, unsigned q);

// Validity of q for the family (Suzuki/Ree need odd powers of 2 or 3).
bool family_supports_q(LieFamily f, unsigned q);

// ---------------------------------------------------------------------------
// Primitive prime divisors: the smallest prime p >= min_p whose
// multiplicative order mod q is exactly e; nullopt at the Zsigmondy
// exceptions (or when the q-1 / q+1 cases have no admissible factor).
std::optional<Int> zsigmondy_ppd(const Int& q, unsigned e, unsigned min_p = 2);

// ---------------------------------------------------------------------------
// Sylow p-part table rows.

struct PPartRow {
  unsigned e = 0;            // the printed e column (0 when absent)
  unsigned ord = 0;          // multiplicative order of q mod p for this row
  std::string case_expr;     // the "p divides" column, e.g. "q^9+1"
  std::string ppart_expr;    // claimed p-part expression (empty for x rows)
  std::string subgroup;
  bool skip = false;         // "x" rows
  bool torus_only = false;   // subgroup column defers to the text
};

struct PPartTable {
  std::string family;        // e.g. "E7"
  LieFamily lie;
  std::vector<PPartRow> rows;
};

std::vector<PPartTable> load_ppart_tables(const std::string& path);

struct PPartCheckResult {
  std::string status;  // "pass", "fail", "skip"
  std::string reason;
  Int p;               // 0 when skipped before a prime was chosen
  Int claimed_ppart;
  Int actual_ppart;
};

// Checks one row at one q. The prime is the smallest with the row's
// multiplicative order and p >= 5 (the ambient hypothesis of the lemmas).
PPartCheckResult ppart_claim_check(const PPartTable& table, const PPartRow& row, unsigned q);

// Expression evaluation for the table column language: integers, q, p,
// + - * / ^, parentheses, implicit multiplication, and (n,p) = gcd(n,p).
Rat eval_ppart_expr(const std::string& expr, const Int& q, const Int& p);
// Symbolic in q; gcd factors become 1. Throws on inexact division.
QPoly eval_ppart_expr_poly(const std::string& expr);

}  // namespace nsv::bounds
