#include "nonsolv/chartab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace nsv::chartab {

using json = nlohmann::json;

namespace {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

// Exact division of integer polynomials (low first), divisor monic.
std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
  std::vector<Int> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (size_t i = a.size(); i-- > 0 && i + 1 >= b.size();) {
    Int c = a[i];
    if (c == 0) continue;
    size_t shift = i + 1 - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  for (const Int& r : a)
    if (r != 0) throw ChartabError("inexact cyclotomic polynomial division");
  return q;
}

struct CycloCache {
  std::vector<Int> phi_poly;                 // Phi_n
  std::vector<std::vector<Rat>> zeta_pows;   // zeta^k reduced, k in [0, n)
};

const CycloCache& cyclo_cache(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, CycloCache> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  CycloCache cc;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, built bottom-up.
  std::map<unsigned, std::vector<Int>> phis;
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    std::vector<Int> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) num = poly_div_exact(std::move(num), phis[d]);
    phis[m] = std::move(num);
  }
  cc.phi_poly = phis[n];
  unsigned deg = static_cast<unsigned>(cc.phi_poly.size()) - 1;

  // zeta^k for all k < n, reduced mod Phi_n.
  cc.zeta_pows.resize(n);
  std::vector<Rat> cur(deg, Rat(0));
  cur[0] = 1;
  cc.zeta_pows[0] = cur;
  for (unsigned k = 1; k < n; ++k) {
    // multiply by zeta: shift, then reduce the overflow term.
    std::vector<Rat> next(deg, Rat(0));
    Rat top = cur[deg - 1];
    for (unsigned i = deg - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (unsigned i = 0; i < deg; ++i) next[i] -= top * Rat(cc.phi_poly[i]);
    cc.zeta_pows[k] = next;
    cur = std::move(next);
  }
  auto [pos, inserted] = cache.emplace(n, std::move(cc));
  (void)inserted;
  return pos->second;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(unsigned n) { return cyclo_cache(n).phi_poly; }

Cyclotomic::Cyclotomic(unsigned n) : n_(n), coeffs_(euler_phi(n), Rat(0)) {
  if (n == 0) throw ChartabError("cyclotomic order must be positive");
}

Cyclotomic Cyclotomic::from_rational(unsigned n, const Rat& v) {
  Cyclotomic c(n);
  c.coeffs_[0] = v;
  return c;
}

Cyclotomic Cyclotomic::zeta_pow(unsigned n, uint64_t k) {
  Cyclotomic c(n);
  c.coeffs_ = cyclo_cache(n).zeta_pows[k % n];
  return c;
}

Cyclotomic Cyclotomic::from_powers(unsigned n, const std::vector<Rat>& powers) {
  Cyclotomic c(n);
  const auto& cache = cyclo_cache(n);
  for (size_t k = 0; k < powers.size(); ++k) {
    if (powers[k] == 0) continue;
    const auto& z = cache.zeta_pows[k % n];
    for (size_t i = 0; i < c.coeffs_.size(); ++i) c.coeffs_[i] += powers[k] * z[i];
  }
  return c;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::to_rational() const {
  if (!is_rational()) throw ChartabError("cyclotomic value is not rational: " + str());
  return coeffs_.empty() ? Rat(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rat> powers(n_, Rat(0));
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    powers[(n_ - k % n_) % n_] += coeffs_[k];
  }
  return from_powers(n_, powers);
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw ChartabError("cyclotomic order mismatch");
  Cyclotomic c(a.n_);
  for (size_t i = 0; i < c.coeffs_.size(); ++i) c.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return c;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw ChartabError("cyclotomic order mismatch");
  Cyclotomic c(a.n_);
  for (size_t i = 0; i < c.coeffs_.size(); ++i) c.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
  return c;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw ChartabError("cyclotomic order mismatch");
  std::vector<Rat> conv(2 * a.coeffs_.size(), Rat(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Cyclotomic::from_powers(a.n_, conv);
}

Cyclotomic Cyclotomic::scaled(const Rat& c) const {
  Cyclotomic out(n_);
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * c;
  return out;
}

std::string Cyclotomic::str() const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << coeffs_[i];
    if (i >= 1) out << "*z^" << i;
  }
  if (first) out << "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// CharacterTable

unsigned CharacterTable::identity_class() const {
  int found = -1;
  for (unsigned c = 0; c < n_classes(); ++c)
    if (classes[c].element_order == 1) {
      if (found >= 0) throw ChartabError("ambiguous identity class");
      found = static_cast<int>(c);
    }
  if (found < 0) throw ChartabError("no identity class");
  return static_cast<unsigned>(found);
}

unsigned CharacterTable::inverse_class(unsigned c) const {
  int found = -1;
  for (unsigned k = 0; k < n_classes(); ++k) {
    bool match = true;
    for (const auto& chi : irreducibles)
      if (chi[k] != chi[c].conj()) {
        match = false;
        break;
      }
    if (match) {
      if (found >= 0) throw ChartabError("ambiguous inverse class");
      found = static_cast<int>(k);
    }
  }
  if (found < 0) throw ChartabError("no inverse class found");
  return static_cast<unsigned>(found);
}

void CharacterTable::verify() const {
  if (classes.empty()) throw ChartabError(name + ": empty class list");
  if (irreducibles.size() != classes.size())
    throw ChartabError(name + ": number of irreducibles differs from number of classes");
  Int total = 0;
  for (const auto& c : classes) total += c.size;
  if (total != group_order) throw ChartabError(name + ": class sizes do not sum to group order");
  for (const auto& row : irreducibles) {
    if (row.size() != classes.size()) throw ChartabError(name + ": ragged character row");
    for (const auto& v : row)
      if (v.n() != exponent) throw ChartabError(name + ": value in wrong cyclotomic field");
  }

  unsigned id = identity_class();
  if (classes[id].size != 1) throw ChartabError(name + ": identity class size is not 1");
  Int degree_sq_sum = 0;
  for (const auto& row : irreducibles) {
    Rat deg = row[id].to_rational();
    if (boost::multiprecision::denominator(deg) != 1 || deg <= 0)
      throw ChartabError(name + ": character degree is not a positive integer");
    Int d = boost::multiprecision::numerator(deg);
    degree_sq_sum += d * d;
  }
  if (degree_sq_sum != group_order)
    throw ChartabError(name + ": degrees squared do not sum to group order");

  // Exact row orthogonality.
  for (size_t r1 = 0; r1 < irreducibles.size(); ++r1) {
    std::vector<Cyclotomic> conj_r1;
    conj_r1.reserve(classes.size());
    for (unsigned c = 0; c < classes.size(); ++c) conj_r1.push_back(irreducibles[r1][c].conj());
    for (size_t r2 = r1; r2 < irreducibles.size(); ++r2) {
      Cyclotomic sum(exponent);
      for (unsigned c = 0; c < classes.size(); ++c)
        sum = sum + (irreducibles[r2][c] * conj_r1[c]).scaled(Rat(classes[c].size));
      Rat expect = r1 == r2 ? Rat(group_order) : Rat(0);
      if (!sum.is_rational() || sum.to_rational() != expect)
        throw ChartabError(name + ": row orthogonality fails for characters " +
                           std::to_string(r1) + "," + std::to_string(r2));
    }
  }
}

Rat CharacterTable::structure_constant_rat(unsigned a, unsigned b, unsigned c) const {
  if (a >= n_classes() || b >= n_classes() || c >= n_classes())
    throw ChartabError("class index out of range");
  unsigned id = identity_class();
  unsigned cinv = inverse_class(c);
  Cyclotomic sum(exponent);
  for (const auto& chi : irreducibles) {
    Rat deg = chi[id].to_rational();
    sum = sum + (chi[a] * chi[b] * chi[cinv]).scaled(Rat(1) / deg);
  }
  if (!sum.is_rational())
    throw ChartabError(name + ": structure constant sum is not rational");
  return Rat(classes[a].size) * Rat(classes[b].size) / Rat(group_order) * sum.to_rational();
}

Int CharacterTable::structure_constant(unsigned a, unsigned b, unsigned c) const {
  Rat v = structure_constant_rat(a, b, c);
  if (boost::multiprecision::denominator(v) != 1)
    throw ChartabError(name + ": non-integral structure constant (corrupt table?)");
  Int n = boost::multiprecision::numerator(v);
  if (n < 0) throw ChartabError(name + ": negative structure constant (corrupt table?)");
  return n;
}

std::optional<CoprimeTriple> CharacterTable::thompson_nonsolvable() const {
  struct Cand {
    Int weight;
    unsigned a, b, c;
  };
  std::vector<Cand> cands;
  unsigned n = n_classes();
  for (unsigned a = 0; a < n; ++a) {
    if (classes[a].element_order <= 1) continue;
    for (unsigned b = 0; b < n; ++b) {
      if (classes[b].element_order <= 1) continue;
      if (std::gcd(classes[a].element_order, classes[b].element_order) != 1) continue;
      for (unsigned c = 0; c < n; ++c) {
        if (classes[c].element_order <= 1) continue;
        if (std::gcd(classes[a].element_order, classes[c].element_order) != 1) continue;
        if (std::gcd(classes[b].element_order, classes[c].element_order) != 1) continue;
        cands.push_back({classes[a].size * classes[b].size * classes[c].size, a, b, c});
      }
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  });
  for (const auto& cand : cands) {
    // a*b*c = 1 with c in class C means ab lands in the inverse class of C.
    Int count = structure_constant(cand.a, cand.b, inverse_class(cand.c));
    if (count > 0) {
      CoprimeTriple t;
      t.a = cand.a;
      t.b = cand.b;
      t.c = cand.c;
      t.order_a = classes[cand.a].element_order;
      t.order_b = classes[cand.b].element_order;
      t.order_c = classes[cand.c].element_order;
      t.count = count;
      return t;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string rat_str(const Rat& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

Cyclotomic value_from_json(unsigned exponent, const json& v) {
  if (v.is_number_integer()) return Cyclotomic::from_rational(exponent, Rat(v.get<long long>()));
  if (v.is_string()) return Cyclotomic::from_rational(exponent, parse_rat(v.get<std::string>()));
  if (v.is_object()) {
    unsigned n = v.at("n").get<unsigned>();
    if (n != exponent) throw ChartabError("cyclotomic value in wrong field");
    std::vector<Rat> powers;
    for (const auto& c : v.at("coeffs")) powers.push_back(parse_rat(c.get<std::string>()));
    return Cyclotomic::from_powers(exponent, powers);
  }
  throw ChartabError("unrecognized cyclotomic value encoding");
}

json value_to_json(const Cyclotomic& v) {
  if (v.is_rational()) return rat_str(v.rational_part());
  json coeffs = json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(rat_str(c));
  return json{{"n", v.n()}, {"coeffs", coeffs}};
}

}  // namespace

CharacterTable CharacterTable::from_json_text(const std::string& text) {
  json doc = json::parse(text);
  CharacterTable t;
  t.name = doc.at("name").get<std::string>();
  t.group_order = Int(doc.at("order").get<std::string>());
  t.exponent = doc.at("exponent").get<unsigned>();
  for (const auto& c : doc.at("classes")) {
    ClassInfo ci;
    ci.name = c.at("name").get<std::string>();
    ci.size = Int(c.at("size").get<std::string>());
    ci.element_order = c.at("element_order").get<unsigned>();
    t.classes.push_back(std::move(ci));
  }
  for (const auto& row : doc.at("irreducibles")) {
    std::vector<Cyclotomic> r;
    for (const auto& v : row) r.push_back(value_from_json(t.exponent, v));
    t.irreducibles.push_back(std::move(r));
  }
  t.verify();
  return t;
}

CharacterTable CharacterTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ChartabError("cannot open table file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string CharacterTable::to_json_text() const {
  json doc;
  doc["name"] = name;
  doc["order"] = group_order.str();
  doc["exponent"] = exponent;
  json cls = json::array();
  for (const auto& c : classes)
    cls.push_back(json{{"name", c.name}, {"size", c.size.str()}, {"element_order", c.element_order}});
  doc["classes"] = cls;
  json irr = json::array();
  for (const auto& row : irreducibles) {
    json r = json::array();
    for (const auto& v : row) r.push_back(value_to_json(v));
    irr.push_back(r);
  }
  doc["irreducibles"] = irr;
  return doc.dump(1);
}

}  // namespace nsv::chartab
