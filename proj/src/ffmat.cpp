#include "nonsolv/ffmat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace nsv::ffmat {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Reduction of a GF(p) digit polynomial modulo a monic modulus; used only
// while building field tables.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m,
                               unsigned p) {
  while (a.size() >= m.size()) {
    unsigned lead = a.back();
    if (lead != 0) {
      size_t shift = a.size() - m.size();
      for (size_t i = 0; i < m.size(); ++i)
        a[shift + i] = (a[shift + i] + p * p - (lead * m[i]) % p) % p;
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

Gf::Gf(unsigned p, unsigned k, std::vector<unsigned> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw FFError("field characteristic must be prime");
  if (k_ == 0) throw FFError("extension degree must be positive");
  q_ = 1;
  for (unsigned i = 0; i < k_; ++i) {
    q_ *= p_;
    if (q_ > kMaxFieldSize) throw FFError("field size above cap");
  }
  if (modulus_.size() != k_ + 1 || modulus_.back() != 1)
    throw FFError("modulus must be monic of degree k");
  for (unsigned c : modulus_)
    if (c >= p_) throw FFError("modulus coefficient out of range");

  auto decode = [&](unsigned v) {
    std::vector<unsigned> digits(k_);
    for (unsigned i = 0; i < k_; ++i) {
      digits[i] = v % p_;
      v /= p_;
    }
    return digits;
  };
  auto encode = [&](const std::vector<unsigned>& digits) {
    unsigned v = 0;
    for (size_t i = digits.size(); i-- > 0;) v = v * p_ + digits[i];
    return v;
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = decode(a);
    std::vector<unsigned> na(k_);
    for (unsigned i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<uint8_t>(encode(na));
    for (unsigned b = 0; b < q_; ++b) {
      auto db = decode(b);
      std::vector<unsigned> s(k_);
      for (unsigned i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = static_cast<uint8_t>(encode(s));
      std::vector<unsigned> prod(2 * k_ - 1, 0);
      for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      auto r = poly_mod(std::move(prod), modulus_, p_);
      r.resize(k_, 0);
      mul_[a * q_ + b] = static_cast<uint8_t>(encode(r));
    }
  }
  // A reducible modulus produces zero divisors, caught here.
  for (unsigned a = 1; a < q_; ++a) {
    bool has_inv = false;
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<uint8_t>(b);
        has_inv = true;
        break;
      }
    if (!has_inv) throw FFError("modulus is reducible over GF(p)");
  }
  for (unsigned a = 0; a < q_; ++a) frob_[a] = pow(static_cast<uint8_t>(a), p_);
  primitive_ = q_ == 2 ? 1 : 0;
  for (unsigned a = 2; a < q_ && primitive_ == 0; ++a)
    if (element_order(static_cast<uint8_t>(a)) == q_ - 1) primitive_ = static_cast<uint8_t>(a);
  if (primitive_ == 0) throw FFError("no primitive element found");
}

uint8_t Gf::inv(uint8_t a) const {
  if (a == 0) throw FFError("division by zero field element");
  return inv_[a];
}

uint8_t Gf::pow(uint8_t a, uint64_t e) const {
  uint8_t r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

uint8_t Gf::twist(uint8_t a) const {
  if (!has_twist()) throw FFError("unitary twist needs a square field");
  uint8_t r = a;
  for (unsigned i = 0; i < k_ / 2; ++i) r = frobenius(r);
  return r;
}

unsigned Gf::element_order(uint8_t a) const {
  if (a == 0) throw FFError("zero has no multiplicative order");
  unsigned n = 1;
  uint8_t x = a;
  while (x != 1) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

std::shared_ptr<const Gf> Gf::standard(unsigned q) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const Gf>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Gf> f;
  switch (q) {
    case 2: f = std::make_shared<Gf>(2, 1, std::vector<unsigned>{0, 1}); break;
    case 3: f = std::make_shared<Gf>(3, 1, std::vector<unsigned>{0, 1}); break;
    case 4: f = std::make_shared<Gf>(2, 2, std::vector<unsigned>{1, 1, 1}); break;
    case 5: f = std::make_shared<Gf>(5, 1, std::vector<unsigned>{0, 1}); break;
    case 7: f = std::make_shared<Gf>(7, 1, std::vector<unsigned>{0, 1}); break;
    case 8: f = std::make_shared<Gf>(2, 3, std::vector<unsigned>{1, 1, 0, 1}); break;
    case 9: f = std::make_shared<Gf>(3, 2, std::vector<unsigned>{2, 2, 1}); break;
    case 11: f = std::make_shared<Gf>(11, 1, std::vector<unsigned>{0, 1}); break;
    case 13: f = std::make_shared<Gf>(13, 1, std::vector<unsigned>{0, 1}); break;
    case 16: f = std::make_shared<Gf>(2, 4, std::vector<unsigned>{1, 1, 0, 0, 1}); break;
    default: throw FFError("unsupported field size " + std::to_string(q));
  }
  cache[q] = f;
  return f;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(GfPtr field, std::vector<uint8_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return zero(field_);
  std::vector<uint8_t> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) {
    uint8_t c = 0;
    for (unsigned rep = 0; rep < i % field_->p(); ++rep) c = field_->add(c, coeffs_[i]);
    d[i - 1] = c;
  }
  return Poly(field_, std::move(d));
}

uint8_t Poly::eval(uint8_t x) const {
  uint8_t r = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), coeffs_[i]);
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& f = a.field_ ? a.field_ : b.field_;
  std::vector<uint8_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = f->add(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  const auto& f = a.field_ ? a.field_ : b.field_;
  std::vector<uint8_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = f->sub(a.coeff(i), b.coeff(i));
  return Poly(f, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  const auto& f = a.field_ ? a.field_ : b.field_;
  if (a.is_zero() || b.is_zero()) return Poly::zero(f);
  std::vector<uint8_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] = f->add(c[i + j], f->mul(a.coeffs_[i], b.coeffs_[j]));
  return Poly(f, std::move(c));
}

Poly Poly::scaled(uint8_t c) const {
  std::vector<uint8_t> out(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = field_->mul(coeffs_[i], c);
  return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw FFError("polynomial division by zero");
  const auto& f = b.field_;
  if (a.degree() < b.degree()) return {zero(f), a};
  std::vector<uint8_t> rem = a.coeffs_;
  std::vector<uint8_t> quot(a.degree() - b.degree() + 1, 0);
  uint8_t lead_inv = f->inv(b.leading());
  for (size_t i = rem.size(); i-- > 0;) {
    if (i + 1 < b.coeffs_.size()) break;
    uint8_t c = f->mul(rem[i], lead_inv);
    if (c != 0) {
      size_t shift = i + 1 - b.coeffs_.size();
      quot[shift] = c;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        rem[shift + j] = f->sub(rem[shift + j], f->mul(c, b.coeffs_[j]));
    }
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool Poly::divides(const Poly& other) const {
  if (is_zero()) return other.is_zero();
  return divmod(other, *this).second.is_zero();
}

bool Poly::is_squarefree() const {
  if (is_zero()) return false;
  Poly d = derivative();
  if (d.is_zero()) return degree() == 0;
  return gcd(*this, d).degree() == 0;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0 || coeffs_[i] != 1) out << unsigned(coeffs_[i]);
    if (i >= 1) out << "t";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// FFMatrix

FFMatrix::FFMatrix(GfPtr field, unsigned d) : field_(std::move(field)), d_(d), e_(d * d, 0) {}

FFMatrix FFMatrix::identity(GfPtr field, unsigned d) {
  FFMatrix m(std::move(field), d);
  for (unsigned i = 0; i < d; ++i) m.set(i, i, 1);
  return m;
}

FFMatrix FFMatrix::from_rows(GfPtr field, const std::vector<std::vector<unsigned>>& rows) {
  unsigned d = static_cast<unsigned>(rows.size());
  FFMatrix m(field, d);
  for (unsigned i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw FFError("matrix rows must be square");
    for (unsigned j = 0; j < d; ++j) {
      if (rows[i][j] >= field->q()) throw FFError("matrix entry out of field range");
      m.set(i, j, static_cast<uint8_t>(rows[i][j]));
    }
  }
  return m;
}

bool FFMatrix::is_identity() const {
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool FFMatrix::is_scalar() const {
  uint8_t c = at(0, 0);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j)
      if (at(i, j) != (i == j ? c : 0)) return false;
  return true;
}

FFMatrix operator*(const FFMatrix& a, const FFMatrix& b) {
  if (a.d_ != b.d_) throw FFError("dimension mismatch");
  const auto& f = *a.field_;
  FFMatrix c(a.field_, a.d_);
  for (unsigned i = 0; i < a.d_; ++i)
    for (unsigned k = 0; k < a.d_; ++k) {
      uint8_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (unsigned j = 0; j < a.d_; ++j)
        c.set(i, j, f.add(c.at(i, j), f.mul(aik, b.at(k, j))));
    }
  return c;
}

FFMatrix operator+(const FFMatrix& a, const FFMatrix& b) {
  FFMatrix c(a.field_, a.d_);
  for (unsigned i = 0; i < a.e_.size(); ++i) c.e_[i] = a.field_->add(a.e_[i], b.e_[i]);
  return c;
}

FFMatrix operator-(const FFMatrix& a, const FFMatrix& b) {
  FFMatrix c(a.field_, a.d_);
  for (unsigned i = 0; i < a.e_.size(); ++i) c.e_[i] = a.field_->sub(a.e_[i], b.e_[i]);
  return c;
}

FFMatrix FFMatrix::scaled(uint8_t c) const {
  FFMatrix m(field_, d_);
  for (unsigned i = 0; i < e_.size(); ++i) m.e_[i] = field_->mul(e_[i], c);
  return m;
}

FFMatrix FFMatrix::transpose() const {
  FFMatrix m(field_, d_);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) m.set(j, i, at(i, j));
  return m;
}

FFMatrix FFMatrix::conj_transpose() const {
  FFMatrix m(field_, d_);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) m.set(j, i, field_->twist(at(i, j)));
  return m;
}

FFMatrix FFMatrix::pow(uint64_t e) const {
  FFMatrix r = identity(field_, d_), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::optional<FFMatrix> FFMatrix::inverse() const {
  const auto& f = *field_;
  FFMatrix a = *this, inv = identity(field_, d_);
  for (unsigned col = 0; col < d_; ++col) {
    unsigned piv = col;
    while (piv < d_ && a.at(piv, col) == 0) ++piv;
    if (piv == d_) return std::nullopt;
    if (piv != col)
      for (unsigned j = 0; j < d_; ++j) {
        std::swap(a.e_[piv * d_ + j], a.e_[col * d_ + j]);
        std::swap(inv.e_[piv * d_ + j], inv.e_[col * d_ + j]);
      }
    uint8_t s = f.inv(a.at(col, col));
    for (unsigned j = 0; j < d_; ++j) {
      a.set(col, j, f.mul(a.at(col, j), s));
      inv.set(col, j, f.mul(inv.at(col, j), s));
    }
    for (unsigned i = 0; i < d_; ++i) {
      if (i == col) continue;
      uint8_t c = a.at(i, col);
      if (c == 0) continue;
      for (unsigned j = 0; j < d_; ++j) {
        a.set(i, j, f.sub(a.at(i, j), f.mul(c, a.at(col, j))));
        inv.set(i, j, f.sub(inv.at(i, j), f.mul(c, inv.at(col, j))));
      }
    }
  }
  return inv;
}

uint8_t FFMatrix::det() const {
  const auto& f = *field_;
  FFMatrix a = *this;
  uint8_t det = 1;
  for (unsigned col = 0; col < d_; ++col) {
    unsigned piv = col;
    while (piv < d_ && a.at(piv, col) == 0) ++piv;
    if (piv == d_) return 0;
    if (piv != col) {
      for (unsigned j = 0; j < d_; ++j) std::swap(a.e_[piv * d_ + j], a.e_[col * d_ + j]);
      det = f.neg(det);
    }
    det = f.mul(det, a.at(col, col));
    uint8_t s = f.inv(a.at(col, col));
    for (unsigned i = col + 1; i < d_; ++i) {
      uint8_t c = f.mul(a.at(i, col), s);
      if (c == 0) continue;
      for (unsigned j = col; j < d_; ++j) a.set(i, j, f.sub(a.at(i, j), f.mul(c, a.at(col, j))));
    }
  }
  return det;
}

unsigned FFMatrix::rank() const {
  const auto& f = *field_;
  FFMatrix a = *this;
  unsigned rank = 0;
  for (unsigned col = 0; col < d_ && rank < d_; ++col) {
    unsigned piv = rank;
    while (piv < d_ && a.at(piv, col) == 0) ++piv;
    if (piv == d_) continue;
    if (piv != rank)
      for (unsigned j = 0; j < d_; ++j) std::swap(a.e_[piv * d_ + j], a.e_[rank * d_ + j]);
    uint8_t s = f.inv(a.at(rank, col));
    for (unsigned i = rank + 1; i < d_; ++i) {
      uint8_t c = f.mul(a.at(i, col), s);
      if (c == 0) continue;
      for (unsigned j = col; j < d_; ++j)
        a.set(i, j, f.sub(a.at(i, j), f.mul(c, a.at(rank, j))));
    }
    ++rank;
  }
  return rank;
}

uint64_t FFMatrix::order(uint64_t cap) const {
  if (!inverse()) throw FFError("singular matrix has no order");
  FFMatrix x = *this;
  uint64_t n = 1;
  while (!x.is_identity()) {
    x = x * *this;
    if (++n > cap) throw FFError("matrix order exceeds cap");
  }
  return n;
}

uint64_t FFMatrix::projective_order(uint64_t cap) const {
  if (!inverse()) throw FFError("singular matrix has no order");
  FFMatrix x = *this;
  uint64_t n = 1;
  while (!x.is_scalar()) {
    x = x * *this;
    if (++n > cap) throw FFError("matrix order exceeds cap");
  }
  return n;
}

std::vector<Poly> invariant_factors(const FFMatrix& m) {
  const auto& field = m.field();
  unsigned d = m.dim();
  // X = tI - m as a matrix over GF(q)[t].
  std::vector<std::vector<Poly>> x(d, std::vector<Poly>(d));
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      std::vector<uint8_t> c{field->neg(m.at(i, j))};
      if (i == j) c.push_back(1);
      x[i][j] = Poly(field, std::move(c));
    }

  // Diagonalize by row/column reduction; the pivot is the lowest-degree
  // nonzero entry of the working submatrix, ties broken row-major.
  for (unsigned s = 0; s < d; ++s) {
    for (;;) {
      int best_i = -1, best_j = -1, best_deg = -1;
      for (unsigned i = s; i < d; ++i)
        for (unsigned j = s; j < d; ++j) {
          if (x[i][j].is_zero()) continue;
          if (best_deg < 0 || x[i][j].degree() < best_deg) {
            best_deg = x[i][j].degree();
            best_i = static_cast<int>(i);
            best_j = static_cast<int>(j);
          }
        }
      if (best_deg < 0) break;
      if (best_i != static_cast<int>(s)) std::swap(x[best_i], x[s]);
      if (best_j != static_cast<int>(s))
        for (unsigned i = 0; i < d; ++i) std::swap(x[i][best_j], x[i][s]);

      bool dirty = false;
      for (unsigned i = s + 1; i < d; ++i) {
        if (x[i][s].is_zero()) continue;
        auto [q, r] = Poly::divmod(x[i][s], x[s][s]);
        for (unsigned j = s; j < d; ++j) x[i][j] = x[i][j] - q * x[s][j];
        if (!r.is_zero()) dirty = true;
      }
      for (unsigned j = s + 1; j < d; ++j) {
        if (x[s][j].is_zero()) continue;
        auto [q, r] = Poly::divmod(x[s][j], x[s][s]);
        for (unsigned i = s; i < d; ++i) x[i][j] = x[i][j] - q * x[i][s];
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;
      bool cleared = true;
      for (unsigned i = s + 1; i < d && cleared; ++i) cleared = x[i][s].is_zero();
      for (unsigned j = s + 1; j < d && cleared; ++j) cleared = x[s][j].is_zero();
      if (!cleared) continue;
      // Divisibility chain: the pivot must divide every remaining entry.
      bool fixed = true;
      for (unsigned i = s + 1; i < d && fixed; ++i)
        for (unsigned j = s + 1; j < d && fixed; ++j)
          if (!x[s][s].divides(x[i][j])) {
            for (unsigned jj = s; jj < d; ++jj) x[s][jj] = x[s][jj] + x[i][jj];
            fixed = false;
          }
      if (fixed) break;
    }
    x[s][s] = x[s][s].monic();
  }

  std::vector<Poly> factors;
  for (unsigned s = 0; s < d; ++s)
    if (x[s][s].degree() >= 1) factors.push_back(x[s][s]);
  return factors;
}

Poly FFMatrix::char_poly() const {
  auto factors = invariant_factors(*this);
  Poly prod = Poly::constant(field_, 1);
  for (const auto& f : factors) prod = prod * f;
  return prod;
}

Poly FFMatrix::min_poly() const {
  auto factors = invariant_factors(*this);
  if (factors.empty()) return Poly::constant(field_, 1);
  return factors.back();
}

std::vector<unsigned> unipotent_shape(const FFMatrix& m) {
  unsigned d = m.dim();
  Poly target = Poly::constant(m.field(), 1);
  Poly t_minus_1(m.field(), {m.field()->neg(1), 1});
  for (unsigned i = 0; i < d; ++i) target = target * t_minus_1;
  if (m.char_poly() != target) throw FFError("matrix is not unipotent");
  FFMatrix n = m - FFMatrix::identity(m.field(), d);
  std::vector<unsigned> ranks{d};
  FFMatrix p = FFMatrix::identity(m.field(), d);
  for (unsigned j = 1; j <= d; ++j) {
    p = p * n;
    ranks.push_back(p.rank());
  }
  std::vector<unsigned> blocks;
  for (unsigned j = 1; j <= d; ++j) {
    unsigned at_least_j = ranks[j - 1] - ranks[j];
    unsigned at_least_j1 = j < d ? ranks[j] - ranks[j + 1] : 0;
    for (unsigned c = 0; c < at_least_j - at_least_j1; ++c) blocks.push_back(j);
  }
  std::sort(blocks.rbegin(), blocks.rend());
  return blocks;
}

bool is_transvection(const FFMatrix& m) {
  FFMatrix n = m - FFMatrix::identity(m.field(), m.dim());
  return n.rank() == 1 && (n * n).rank() == 0;
}

bool is_pseudoreflection(const FFMatrix& m) {
  FFMatrix n = m - FFMatrix::identity(m.field(), m.dim());
  return n.rank() == 1 && m.min_poly().is_squarefree();
}

bool is_reflection(const FFMatrix& m) {
  return is_pseudoreflection(m) && !m.is_identity() && (m * m).is_identity();
}

bool is_scalar_multiple_of_transvection(const FFMatrix& m) {
  for (unsigned c = 1; c < m.field()->q(); ++c)
    if (is_transvection(m.scaled(static_cast<uint8_t>(c)))) return true;
  return false;
}

bool is_scalar_multiple_of_pseudoreflection(const FFMatrix& m) {
  for (unsigned c = 1; c < m.field()->q(); ++c)
    if (is_pseudoreflection(m.scaled(static_cast<uint8_t>(c)))) return true;
  return false;
}

size_t FFMatrix::hash() const {
  size_t h = 1469598103934665603ULL ^ d_;
  for (uint8_t v : e_) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::vector<unsigned>> FFMatrix::rows() const {
  std::vector<std::vector<unsigned>> out(d_, std::vector<unsigned>(d_));
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) out[i][j] = at(i, j);
  return out;
}

std::string FFMatrix::str() const {
  std::ostringstream out;
  for (unsigned i = 0; i < d_; ++i) {
    out << (i == 0 ? "[" : " ");
    for (unsigned j = 0; j < d_; ++j) out << unsigned(at(i, j)) << (j + 1 < d_ ? " " : "");
    out << (i + 1 < d_ ? "\n" : "]");
  }
  return out.str();
}

}  // namespace nsv::ffmat
