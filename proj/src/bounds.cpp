#include "nonsolv/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nsv::bounds {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// countinv

void CountingScenario::validate() const {
  if (class_size <= 0 || involutions <= 0) throw BoundsError("scenario quantities must be positive");
  for (const auto& t : subgroups) {
    if (t.index <= 0 || t.fusion < 0 || t.involutions < 0)
      throw BoundsError("subgroup term out of range");
    if (t.fusion > class_size) throw BoundsError("fusion exceeds class size");
  }
}

CountinvResult countinv_check(const CountingScenario& s) {
  s.validate();
  Rat rhs = 0;
  for (const auto& t : s.subgroups)
    rhs += Rat(t.fusion * t.index * t.involutions) / Rat(s.class_size);
  return {rhs, s.involutions, Rat(s.involutions) > rhs};
}

// ---------------------------------------------------------------------------
// PSL(2,q) bounds

Psl2Case psl2_case_from_string(const std::string& s) {
  if (s == "p_div_q_minus" || s == "q-1") return Psl2Case::PDividesQMinus;
  if (s == "p_div_q_plus" || s == "q+1") return Psl2Case::PDividesQPlus;
  if (s == "unipotent") return Psl2Case::Unipotent;
  throw BoundsError("unknown psl2 case: " + s);
}

std::string psl2_case_to_string(Psl2Case c) {
  switch (c) {
    case Psl2Case::PDividesQMinus: return "p_div_q_minus";
    case Psl2Case::PDividesQPlus: return "p_div_q_plus";
    case Psl2Case::Unipotent: return "unipotent";
  }
  return "?";
}

Psl2Bounds psl2_bounds(unsigned q, Psl2Case c) {
  if (q < 4) throw BoundsError("psl2 bounds need q >= 4");
  Psl2Bounds r;
  r.q = q;
  r.q_even = q % 2 == 0;
  Rat Q(q);
  if (r.q_even) {
    r.i2_group_lower = Q * Q - 1;
    r.i2_borel_upper = Q - 1;
    r.i2_dihedral_upper = Q - 1;
    r.in_range = q >= 8;
  } else {
    r.i2_group_lower = Q * (Q - 1) / 2;
    r.i2_borel_upper = Q;
    r.i2_dihedral_upper = (Q + 1) / 2;
    r.in_range = q >= 7;
  }
  switch (c) {
    case Psl2Case::PDividesQMinus:
      // x lies in two Borel subgroups and one dihedral subgroup
      r.lhs = r.i2_group_lower;
      r.rhs = 2 * r.i2_borel_upper + r.i2_dihedral_upper;
      r.passes = r.in_range && r.lhs > r.rhs;
      break;
    case Psl2Case::PDividesQPlus:
      // x lies in a single dihedral subgroup
      r.lhs = r.i2_group_lower;
      r.rhs = r.i2_dihedral_upper;
      r.passes = r.in_range && r.lhs > r.rhs;
      r.note = "single dihedral overgroup";
      break;
    case Psl2Case::Unipotent:
      r.lhs = r.i2_group_lower;
      r.rhs = 0;
      r.passes = true;
      r.note = "explicit generating pair of opposite transvections; no counting bound";
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// field automorphism bound

namespace {

Int isqrt_exact(const Int& n) {
  Int r = boost::multiprecision::sqrt(n);
  if (r * r != n) throw BoundsError("expected a perfect square in Suzuki arithmetic");
  return r;
}

}  // namespace

GammaBoundResult field_aut_gamma_bound(unsigned q0u, unsigned p, AutFamily family) {
  if (p < 3 || p % 2 == 0) throw BoundsError("the twisting prime must be odd");
  Int q0(q0u);
  Int q = pow_int(q0, p);
  GammaBoundResult r;
  r.q = q;
  if (family == AutFamily::PSL2) {
    Rat Q0(q0), Qp(q);
    if (q0u % 2 == 1) {
      // subfield / Borel / two torus normalizers, then the centralizer
      r.term_sum = Qp * Q0 * (Q0 * Q0 - 1) / (Q0 * (Q0 - 1)) +
                   (Qp + 1) * Q0 * (Q0 * Q0 - 1) / (2 * (Q0 - 1)) +
                   (Qp + 3) * Q0 * (Q0 * Q0 - 1) / (2 * (Q0 + 1)) +
                   Q0 * (Q0 * Q0 - 1) / 2;
      r.majorant = Q0 * (Q0 + 1) * (3 * Qp + Q0 + 3) / 2;
      r.i2_lower = q * (q - 1) / 2;
    } else {
      r.term_sum = (Qp - 1) * Q0 * (Q0 * Q0 - 1) / (Q0 * (Q0 - 1)) +
                   (Qp - 1) * Q0 * (Q0 * Q0 - 1) / (2 * (Q0 - 1)) +
                   (Qp + 1) * Q0 * (Q0 * Q0 - 1) / (2 * (Q0 + 1)) +
                   Q0 * (Q0 * Q0 - 1);
      r.majorant = 2 * (Qp + Q0) * (Q0 + 1) * Q0;
      r.i2_lower = q * q - 1;
    }
  } else {
    if (p < 5) throw BoundsError("the Suzuki field-automorphism bound needs p >= 5");
    if (!family_supports_q(LieFamily::Sz, q0u))
      throw BoundsError("Sz needs q0 an odd power of 2, q0 >= 2");
    Int sq2q0 = isqrt_exact(2 * q0);
    Int sq2qp = isqrt_exact(2 * q);
    Rat Q0(q0), Qp(q), R2q0(sq2q0), R2qp(sq2qp);
    Rat c = Q0 * Q0 * (Q0 * Q0 + 1) * (Q0 - 1);  // |C_{G0}(x)| = |Sz(q0)|
    r.term_sum = (Qp - 1) * c / (Q0 * Q0 * (Q0 - 1)) +
                 (Qp - 1) * c / (2 * (Q0 - 1)) +
                 3 * (Qp - R2qp + 1) * c / (4 * (Q0 + R2q0 + 1)) +
                 3 * (Qp + R2qp + 1) * c / (4 * (Q0 - R2q0 + 1)) +
                 Q0 * Q0 * (Q0 * Q0 + 1) * (Q0 * Q0 - 1);
    r.majorant = (Qp - 1) * (Q0 * Q0 + 1) + (Qp - 1) * Q0 * Q0 * (Q0 * Q0 + 1) / 2 +
                 2 * (Qp + R2qp + 1) * Q0 * Q0 * (Q0 + R2q0 + 1) * (Q0 - 1) +
                 Q0 * Q0 * (Q0 * Q0 + 1) * (Q0 * Q0 - 1);
    r.i2_lower = (q * q + 1) * (q - 1);
  }
  r.sum_le_majorant = r.term_sum <= r.majorant;
  r.passes = r.majorant < Rat(r.i2_lower);
  return r;
}

// ---------------------------------------------------------------------------
// polynomials in q

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

static void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_div_exact(const QPoly& a0, const QPoly& b0) {
  QPoly a = a0, b = b0;
  qpoly_trim(a);
  qpoly_trim(b);
  if (b.empty()) throw BoundsError("polynomial division by zero");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw BoundsError("inexact polynomial division");
  QPoly q(a.size() - b.size() + 1, Rat(0));
  for (size_t i = a.size(); i-- > 0 && i + 1 >= b.size();) {
    Rat c = a[i] / b.back();
    if (c != 0) {
      size_t shift = i + 1 - b.size();
      q[shift] = c;
      for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (i == 0) break;
  }
  for (const auto& r : a)
    if (r != 0) throw BoundsError("inexact polynomial division");
  return q;
}

bool qpoly_divides(const QPoly& divisor, const QPoly& dividend) {
  try {
    qpoly_div_exact(dividend, divisor);
    return true;
  } catch (const BoundsError&) {
    return false;
  }
}

Rat qpoly_eval(const QPoly& p, const Int& q) {
  Rat r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * Rat(q) + p[i];
  return r;
}

namespace {

QPoly qp_const(const Rat& c) { return c == 0 ? QPoly{} : QPoly{c}; }

QPoly qpow_plus(unsigned k, int sign) {
  QPoly p(k + 1, Rat(0));
  p[0] = sign;
  p[k] = 1;
  return p;
}

QPoly qpow(unsigned k) {
  QPoly p(k + 1, Rat(0));
  p[k] = 1;
  return p;
}

}  // namespace

LieFamily lie_family_from_string(const std::string& s) {
  static const std::map<std::string, LieFamily> m = {
      {"PSL2", LieFamily::PSL2}, {"SL", LieFamily::SL}, {"GL", LieFamily::GL},
      {"SU", LieFamily::SU}, {"GU", LieFamily::GU}, {"Sp", LieFamily::Sp},
      {"GSp", LieFamily::GSp}, {"GOOdd", LieFamily::GOOdd}, {"GO", LieFamily::GOOdd},
      {"OEvenPlus", LieFamily::OEvenPlus}, {"O+", LieFamily::OEvenPlus},
      {"OEvenMinus", LieFamily::OEvenMinus}, {"O-", LieFamily::OEvenMinus},
      {"OmegaOdd", LieFamily::OmegaOdd},
      {"OmegaPlus", LieFamily::OmegaPlus}, {"OmegaMinus", LieFamily::OmegaMinus},
      {"Sz", LieFamily::Sz}, {"2B2", LieFamily::Sz}, {"G2", LieFamily::G2},
      {"2G2", LieFamily::TwoG2}, {"3D4", LieFamily::ThreeD4}, {"2F4", LieFamily::TwoF4},
      {"F4", LieFamily::F4}, {"E6", LieFamily::E6}, {"2E6", LieFamily::TwoE6},
      {"E7", LieFamily::E7}, {"E8", LieFamily::E8},
  };
  auto it = m.find(s);
  if (it == m.end()) throw BoundsError("unknown family: " + s);
  return it->second;
}

std::string lie_family_to_string(LieFamily f) {
  switch (f) {
    case LieFamily::PSL2: return "PSL2";
    case LieFamily::SL: return "SL";
    case LieFamily::GL: return "GL";
    case LieFamily::SU: return "SU";
    case LieFamily::GU: return "GU";
    case LieFamily::Sp: return "Sp";
    case LieFamily::GSp: return "GSp";
    case LieFamily::GOOdd: return "GO";
    case LieFamily::OEvenPlus: return "O+";
    case LieFamily::OEvenMinus: return "O-";
    case LieFamily::OmegaOdd: return "OmegaOdd";
    case LieFamily::OmegaPlus: return "OmegaPlus";
    case LieFamily::OmegaMinus: return "OmegaMinus";
    case LieFamily::Sz: return "Sz";
    case LieFamily::G2: return "G2";
    case LieFamily::TwoG2: return "2G2";
    case LieFamily::ThreeD4: return "3D4";
    case LieFamily::TwoF4: return "2F4";
    case LieFamily::F4: return "F4";
    case LieFamily::E6: return "E6";
    case LieFamily::TwoE6: return "2E6";
    case LieFamily::E7: return "E7";
    case LieFamily::E8: return "E8";
  }
  return "?";
}

QPoly order_polynomial(LieFamily f, unsigned d) {
  auto prod_minus = [&](unsigned qexp, std::vector<unsigned> ks) {
    QPoly p = qpow(qexp);
    for (unsigned k : ks) p = qpoly_mul(p, qpow_plus(k, -1));
    return p;
  };
  switch (f) {
    case LieFamily::GL: {
      if (d == 0) throw BoundsError("GL needs a dimension");
      std::vector<unsigned> ks;
      for (unsigned i = 1; i <= d; ++i) ks.push_back(i);
      return prod_minus(d * (d - 1) / 2, ks);
    }
    case LieFamily::SL:
      return qpoly_div_exact(order_polynomial(LieFamily::GL, d), qpow_plus(1, -1));
    case LieFamily::PSL2:
      // q(q^2-1) up to the parity division handled in order_poly_eval
      return prod_minus(1, {2});
    case LieFamily::GU: {
      QPoly p = qpow(d * (d - 1) / 2);
      for (unsigned i = 1; i <= d; ++i) p = qpoly_mul(p, qpow_plus(i, i % 2 == 0 ? -1 : +1));
      return p;
    }
    case LieFamily::SU:
      return qpoly_div_exact(order_polynomial(LieFamily::GU, d), qpow_plus(1, +1));
    case LieFamily::Sp: {
      if (d % 2) throw BoundsError("Sp needs even dimension");
      unsigned n = d / 2;
      std::vector<unsigned> ks;
      for (unsigned i = 1; i <= n; ++i) ks.push_back(2 * i);
      return prod_minus(n * n, ks);
    }
    case LieFamily::GSp:
      return qpoly_mul(order_polynomial(LieFamily::Sp, d), qpow_plus(1, -1));
    case LieFamily::GOOdd: {
      if (d % 2 == 0) throw BoundsError("GO(odd) needs odd dimension");
      unsigned n = (d - 1) / 2;
      std::vector<unsigned> ks;
      for (unsigned i = 1; i <= n; ++i) ks.push_back(2 * i);
      return qpoly_mul(prod_minus(n * n, ks), qp_const(2));
    }
    case LieFamily::OEvenPlus:
    case LieFamily::OEvenMinus: {
      if (d % 2) throw BoundsError("even orthogonal families need even dimension");
      unsigned n = d / 2;
      int eps = f == LieFamily::OEvenPlus ? -1 : +1;
      QPoly p = qpoly_mul(qpow(n * (n - 1)), qpow_plus(n, eps));
      for (unsigned i = 1; i + 1 <= n; ++i) p = qpoly_mul(p, qpow_plus(2 * i, -1));
      return qpoly_mul(p, qp_const(2));
    }
    case LieFamily::OmegaOdd:
    case LieFamily::OmegaPlus:
    case LieFamily::OmegaMinus:
      throw BoundsError("Omega orders are parity dependent; use order_poly_eval");
    case LieFamily::Sz:
      return qpoly_mul(qpoly_mul(qpow(2), qpow_plus(2, +1)), qpow_plus(1, -1));
    case LieFamily::G2:
      return prod_minus(6, {6, 2});
    case LieFamily::TwoG2:
      return qpoly_mul(qpoly_mul(qpow(3), qpow_plus(3, +1)), qpow_plus(1, -1));
    case LieFamily::ThreeD4: {
      QPoly mid(9, Rat(0));
      mid[0] = 1;
      mid[4] = 1;
      mid[8] = 1;
      return qpoly_mul(qpoly_mul(qpoly_mul(qpow(12), mid), qpow_plus(6, -1)), qpow_plus(2, -1));
    }
    case LieFamily::TwoF4: {
      QPoly p = qpow(12);
      p = qpoly_mul(p, qpow_plus(6, +1));
      p = qpoly_mul(p, qpow_plus(4, -1));
      p = qpoly_mul(p, qpow_plus(3, +1));
      p = qpoly_mul(p, qpow_plus(1, -1));
      return p;
    }
    case LieFamily::F4:
      return prod_minus(24, {2, 6, 8, 12});
    case LieFamily::E6:
      return prod_minus(36, {2, 5, 6, 8, 9, 12});
    case LieFamily::TwoE6: {
      QPoly p = qpow(36);
      p = qpoly_mul(p, qpow_plus(2, -1));
      p = qpoly_mul(p, qpow_plus(5, +1));
      p = qpoly_mul(p, qpow_plus(6, -1));
      p = qpoly_mul(p, qpow_plus(8, -1));
      p = qpoly_mul(p, qpow_plus(9, +1));
      p = qpoly_mul(p, qpow_plus(12, -1));
      return p;
    }
    case LieFamily::E7:
      return prod_minus(63, {2, 6, 8, 10, 12, 14, 18});
    case LieFamily::E8:
      return prod_minus(120, {2, 8, 12, 14, 18, 20, 24, 30});
  }
  throw BoundsError("unhandled family");
}

bool family_supports_q(LieFamily f, unsigned q) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  unsigned k = 0, qq = q;
  while (qq % p == 0) {
    qq /= p;
    ++k;
  }
  if (qq != 1) return false;
  switch (f) {
    case LieFamily::Sz:
    case LieFamily::TwoF4:
      return p == 2 && k % 2 == 1 && k >= 1;
    case LieFamily::TwoG2:
      return p == 3 && k % 2 == 1;
    default:
      return true;
  }
}

Int order_poly_eval(LieFamily f, unsigned d, unsigned q) {
  if (!family_supports_q(f, q))
    throw BoundsError(lie_family_to_string(f) + " does not support q=" + std::to_string(q));
  switch (f) {
    case LieFamily::PSL2: {
      Int v = Int(q) * (Int(q) * q - 1);
      return q % 2 == 0 ? v : v / 2;
    }
    case LieFamily::OmegaOdd: {
      Rat v = qpoly_eval(order_polynomial(LieFamily::GOOdd, d), Int(q)) / 2;
      Int n = boost::multiprecision::numerator(v);
      return q % 2 == 1 ? n / 2 : n;
    }
    case LieFamily::OmegaPlus:
    case LieFamily::OmegaMinus: {
      LieFamily full = f == LieFamily::OmegaPlus ? LieFamily::OEvenPlus : LieFamily::OEvenMinus;
      Rat v = qpoly_eval(order_polynomial(full, d), Int(q)) / 2;
      Int n = boost::multiprecision::numerator(v);
      return q % 2 == 1 ? n / 2 : n;
    }
    default: {
      Rat v = qpoly_eval(order_polynomial(f, d), Int(q));
      if (boost::multiprecision::denominator(v) != 1) throw BoundsError("non-integral order");
      return boost::multiprecision::numerator(v);
    }
  }
}

// ---------------------------------------------------------------------------
// Zsigmondy

namespace {

bool is_prime_int(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned> prime_factors_of(unsigned e) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= e; ++p)
    if (e % p == 0) {
      out.push_back(p);
      while (e % p == 0) e /= p;
    }
  if (e > 1) out.push_back(e);
  return out;
}

bool order_is(const Int& q, unsigned e, const Int& p, const std::vector<unsigned>& eprimes) {
  if (boost::multiprecision::powm(q % p, Int(e), p) != 1) return false;
  for (unsigned r : eprimes)
    if (boost::multiprecision::powm(q % p, Int(e / r), p) == 1) return false;
  return true;
}

}  // namespace

std::optional<Int> zsigmondy_ppd(const Int& q, unsigned e, unsigned min_p) {
  if (q < 2 || e < 1) throw BoundsError("zsigmondy needs q >= 2, e >= 1");
  if (e == 1) {
    Int n = q - 1;
    for (Int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        if (p >= min_p) return p;
        while (n % p == 0) n /= p;
      }
    if (n > 1 && n >= min_p) return n;
    return std::nullopt;
  }
  if (e == 2) {
    Int n = q + 1;
    while (n % 2 == 0) n /= 2;
    for (Int p = 3; p * p <= n; ++p)
      if (n % p == 0) {
        if (p >= min_p) return p;
        while (n % p == 0) n /= p;
      }
    if (n > 1 && n >= min_p) return n;
    return std::nullopt;
  }
  // For e >= 3 a primitive prime divisor exists except at (q,e) = (2,6),
  // and any prime of multiplicative order e is congruent to 1 mod e.
  if (q == 2 && e == 6) return std::nullopt;
  auto eprimes = prime_factors_of(e);
  Int bound = pow_int(q, e);
  for (Int p = Int(e) + 1; p <= bound; p += e) {
    if (p < min_p) continue;
    if (!is_prime_int(p)) continue;
    if (order_is(q, e, p, eprimes)) return p;
  }
  throw BoundsError("primitive prime divisor search overran its bound");
}

// ---------------------------------------------------------------------------
// expression language

namespace {

struct ExprParser {
  const std::string& s;
  size_t i = 0;
  const Int* q;  // null in symbolic mode
  const Int* p;

  ExprParser(const std::string& text, const Int* q_, const Int* p_) : s(text), q(q_), p(p_) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool starts_factor() {
    skip_ws();
    if (i >= s.size()) return false;
    char c = s[i];
    return c == '(' || c == 'q' || std::isdigit(static_cast<unsigned char>(c));
  }

  QPoly parse_expr() {
    QPoly v = parse_term();
    for (;;) {
      skip_ws();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        char op = s[i++];
        QPoly t = parse_term();
        size_t n = std::max(v.size(), t.size());
        v.resize(n, Rat(0));
        t.resize(n, Rat(0));
        for (size_t k = 0; k < n; ++k) {
          if (op == '+')
            v[k] += t[k];
          else
            v[k] -= t[k];
        }
      } else {
        return v;
      }
    }
  }

  QPoly parse_term() {
    QPoly v = parse_factor();
    for (;;) {
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        v = qpoly_mul(v, parse_factor());
      } else if (i < s.size() && s[i] == '/') {
        ++i;
        v = qpoly_div_exact(v, parse_factor());
      } else if (starts_factor()) {
        v = qpoly_mul(v, parse_factor());
      } else {
        return v;
      }
    }
  }

  QPoly parse_factor() {
    QPoly v = parse_atom();
    skip_ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip_ws();
      if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw BoundsError("exponent expected in: " + s);
      unsigned e = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        e = e * 10 + (s[i++] - '0');
      QPoly r{Rat(1)};
      for (unsigned k = 0; k < e; ++k) r = qpoly_mul(r, v);
      return r;
    }
    return v;
  }

  QPoly parse_atom() {
    skip_ws();
    if (i >= s.size()) throw BoundsError("unexpected end of expression: " + s);
    if (s[i] == 'q') {
      ++i;
      if (q) return {Rat(*q)};
      QPoly v(2, Rat(0));
      v[1] = 1;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      Int n = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        n = n * 10 + (s[i++] - '0');
      return {Rat(n)};
    }
    if (s[i] == '(') {
      size_t save = i;
      ++i;
      skip_ws();
      // gcd form "(n,p)"
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        size_t j = i;
        Int n = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          n = n * 10 + (s[j++] - '0');
        size_t k = j;
        while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
        if (k < s.size() && s[k] == ',') {
          size_t l = k + 1;
          while (l < s.size() && std::isspace(static_cast<unsigned char>(s[l]))) ++l;
          if (l < s.size() && s[l] == 'p') {
            size_t m = l + 1;
            while (m < s.size() && std::isspace(static_cast<unsigned char>(s[m]))) ++m;
            if (m < s.size() && s[m] == ')') {
              i = m + 1;
              if (p) return {Rat(gcd(n, *p))};
              return {Rat(1)};  // p-local factor, symbolically a unit
            }
          }
        }
      }
      i = save + 1;
      QPoly v = parse_expr();
      skip_ws();
      if (i >= s.size() || s[i] != ')') throw BoundsError("expected ')' in: " + s);
      ++i;
      return v;
    }
    throw BoundsError("unexpected character in expression: " + s);
  }
};

}  // namespace

Rat eval_ppart_expr(const std::string& expr, const Int& q, const Int& p) {
  ExprParser parser(expr, &q, &p);
  QPoly v = parser.parse_expr();
  parser.skip_ws();
  if (parser.i != expr.size()) throw BoundsError("trailing junk in expression: " + expr);
  while (!v.empty() && v.back() == 0) v.pop_back();
  if (v.size() > 1) throw BoundsError("numeric evaluation left a polynomial");
  return v.empty() ? Rat(0) : v[0];
}

QPoly eval_ppart_expr_poly(const std::string& expr) {
  ExprParser parser(expr, nullptr, nullptr);
  QPoly v = parser.parse_expr();
  parser.skip_ws();
  if (parser.i != expr.size()) throw BoundsError("trailing junk in expression: " + expr);
  return v;
}

// ---------------------------------------------------------------------------
// Sylow tables

std::vector<PPartTable> load_ppart_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BoundsError("cannot open table file: " + path);
  json doc = json::parse(in);
  std::vector<PPartTable> out;
  for (const auto& tbl : doc) {
    PPartTable t;
    t.family = tbl.at("family").get<std::string>();
    t.lie = lie_family_from_string(t.family);
    for (const auto& row : tbl.at("rows")) {
      PPartRow r;
      r.e = row.value("e", 0u);
      r.ord = row.at("ord").get<unsigned>();
      r.case_expr = row.at("case").get<std::string>();
      r.skip = row.value("skip", false);
      if (!r.skip) r.ppart_expr = row.at("ppart_expr").get<std::string>();
      r.subgroup = row.value("subgroup", std::string{});
      r.torus_only = row.value("torus_only", false);
      t.rows.push_back(std::move(r));
    }
    out.push_back(std::move(t));
  }
  return out;
}

PPartCheckResult ppart_claim_check(const PPartTable& table, const PPartRow& row, unsigned q) {
  PPartCheckResult res;
  res.p = 0;
  if (row.skip) {
    res.status = "skip";
    res.reason = "row marked x in the table";
    return res;
  }
  if (!family_supports_q(table.lie, q)) {
    res.status = "skip";
    res.reason = "family not defined at q=" + std::to_string(q);
    return res;
  }
  // The surrounding lemmas assume elements of prime order p >= 5, so the
  // row's prime is chosen with the same constraint.
  auto p = zsigmondy_ppd(Int(q), row.ord, 5);
  if (!p) {
    res.status = "skip";
    res.reason = "no primitive prime (p >= 5) with order " + std::to_string(row.ord) +
                 " at q=" + std::to_string(q);
    return res;
  }
  res.p = *p;
  Rat claimed = eval_ppart_expr(row.ppart_expr, Int(q), *p);
  if (boost::multiprecision::denominator(claimed) != 1) {
    res.status = "fail";
    res.reason = "claimed expression is not integral at q";
    return res;
  }
  res.claimed_ppart = p_part(boost::multiprecision::numerator(claimed), *p);
  res.actual_ppart = p_part(order_poly_eval(table.lie, 0, q), *p);
  if (res.claimed_ppart == res.actual_ppart) {
    res.status = "pass";
    if (row.torus_only) res.reason = "p-part matches; subgroup containment deferred to the text";
  } else {
    res.status = "fail";
    std::ostringstream msg;
    msg << "p-part mismatch at q=" << q << ", p=" << *p << ": claimed " << res.claimed_ppart
        << ", actual " << res.actual_ppart;
    res.reason = msg.str();
  }
  return res;
}

}  // namespace nsv::bounds
