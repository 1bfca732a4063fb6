#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonsolv/ints.hpp"

namespace nsv::ffmat {

class FFError : public std::runtime_error {
 public:
  explicit FFError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr unsigned kMaxFieldSize = 16;

// GF(p^k), q = p^k <= 16, with precomputed arithmetic tables. Elements are
// encoded as integers 0..q-1: the base-p digits are the coefficients of the
// residue polynomial (digit i multiplies t^i).
class Gf {
 public:
  // modulus: monic degree-k polynomial over GF(p), low coefficient first,
  // length k+1. For k = 1 pass {0, 1} (the polynomial t).
  Gf(unsigned p, unsigned k, std::vector<unsigned> modulus);

  // The field with the catalog's fixed modulus for q.
  static std::shared_ptr<const Gf> standard(unsigned q);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t inv(uint8_t a) const;
  uint8_t pow(uint8_t a, uint64_t e) const;
  // x -> x^p.
  uint8_t frobenius(uint8_t a) const { return frob_[a]; }
  // The unitary twist x -> x^{p^{k/2}} = x^{sqrt(q)}; requires k even.
  uint8_t twist(uint8_t a) const;
  bool has_twist() const { return k_ % 2 == 0; }

  // Smallest generator of the multiplicative group.
  uint8_t primitive_element() const { return primitive_; }
  unsigned element_order(uint8_t a) const;

  bool operator==(const Gf& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  unsigned p_, k_, q_;
  std::vector<unsigned> modulus_;
  std::vector<uint8_t> add_, mul_, neg_, inv_, frob_;
  uint8_t primitive_;
};

using GfPtr = std::shared_ptr<const Gf>;

// Dense polynomial over a small field, low coefficient first, normalized
// (no trailing zeros; the zero polynomial has an empty coefficient list).
class Poly {
 public:
  Poly() = default;
  Poly(GfPtr field, std::vector<uint8_t> coeffs);
  static Poly zero(GfPtr field) { return Poly(std::move(field), {}); }
  static Poly constant(GfPtr field, uint8_t c) { return Poly(std::move(field), {c}); }
  static Poly x(GfPtr field) { return Poly(std::move(field), {0, 1}); }

  const GfPtr& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  uint8_t leading() const { return coeffs_.back(); }
  const std::vector<uint8_t>& coeffs() const { return coeffs_; }
  uint8_t coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  Poly monic() const;
  Poly derivative() const;
  uint8_t eval(uint8_t x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(uint8_t c) const;
  // Division with remainder by a nonzero divisor.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);  // monic
  bool divides(const Poly& other) const;
  bool is_squarefree() const;

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return coeffs_ != o.coeffs_; }

  // "t^2+2t+2" style; used in reports and error messages.
  std::string str() const;

 private:
  GfPtr field_;
  std::vector<uint8_t> coeffs_;
};

// Square matrix over GF(q), row-major.
class FFMatrix {
 public:
  FFMatrix(GfPtr field, unsigned d);  // zero matrix
  static FFMatrix identity(GfPtr field, unsigned d);
  static FFMatrix from_rows(GfPtr field, const std::vector<std::vector<unsigned>>& rows);

  const GfPtr& field() const { return field_; }
  unsigned dim() const { return d_; }
  uint8_t at(unsigned i, unsigned j) const { return e_[i * d_ + j]; }
  void set(unsigned i, unsigned j, uint8_t v) { e_[i * d_ + j] = v; }

  bool is_identity() const;
  bool is_scalar() const;

  friend FFMatrix operator*(const FFMatrix& a, const FFMatrix& b);
  friend FFMatrix operator+(const FFMatrix& a, const FFMatrix& b);
  friend FFMatrix operator-(const FFMatrix& a, const FFMatrix& b);
  FFMatrix scaled(uint8_t c) const;
  FFMatrix transpose() const;
  // Entrywise x -> x^{sqrt(q)} followed by transpose (the unitary dagger).
  FFMatrix conj_transpose() const;
  FFMatrix pow(uint64_t e) const;
  std::optional<FFMatrix> inverse() const;
  uint8_t det() const;
  unsigned rank() const;

  // Least n >= 1 with m^n = I; throws on singular input or if the order
  // exceeds the cap.
  uint64_t order(uint64_t cap = 1000000) const;
  // Least n >= 1 with m^n scalar: the order of the image in the projective
  // group.
  uint64_t projective_order(uint64_t cap = 1000000) const;

  Poly char_poly() const;       // det(tI - m), monic
  Poly min_poly() const;        // largest invariant factor

  bool operator==(const FFMatrix& o) const { return d_ == o.d_ && e_ == o.e_; }
  bool operator!=(const FFMatrix& o) const { return !(*this == o); }
  size_t hash() const;

  std::vector<std::vector<unsigned>> rows() const;
  std::string str() const;

 private:
  GfPtr field_;
  unsigned d_;
  std::vector<uint8_t> e_;
};

struct FFMatrixHash {
  size_t operator()(const FFMatrix& m) const { return m.hash(); }
};

// The nonconstant diagonal entries of the Smith normal form of tI - m over
// GF(q)[t], monic, each dividing the next; their product is the
// characteristic polynomial.
std::vector<Poly> invariant_factors(const FFMatrix& m);

// Jordan block sizes (sorted descending) of a unipotent matrix, from the
// ranks of (m - I)^j. Throws if m is not unipotent.
std::vector<unsigned> unipotent_shape(const FFMatrix& m);

// rank(m - I) = 1 and (m - I)^2 = 0.
bool is_transvection(const FFMatrix& m);
// rank(m - I) = 1 and m semisimple (squarefree minimal polynomial).
bool is_pseudoreflection(const FFMatrix& m);
// A pseudoreflection of order 2 (determinant -1 in odd characteristic).
bool is_reflection(const FFMatrix& m);
// Some nonzero scalar multiple of m satisfies the predicate.
bool is_scalar_multiple_of_transvection(const FFMatrix& m);
bool is_scalar_multiple_of_pseudoreflection(const FFMatrix& m);

}  // namespace nsv::ffmat
