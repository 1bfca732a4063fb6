#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonsolv/ints.hpp"
#include "nonsolv/perm.hpp"

namespace nsv::chartab {

class ChartabError : public std::runtime_error {
 public:
  explicit ChartabError(const std::string& what) : std::runtime_error(what) {}
};

// Phi_n, monic with integer coefficients, low first.
const std::vector<Int>& cyclotomic_polynomial(unsigned n);

// An element of Q(zeta_n), reduced modulo Phi_n: coefficient vector of
// length deg Phi_n = phi(n) over the power basis 1, zeta, ..., zeta^{phi-1}.
// Equality is coefficient equality.
class Cyclotomic {
 public:
  explicit Cyclotomic(unsigned n);  // zero
  static Cyclotomic from_rational(unsigned n, const Rat& v);
  static Cyclotomic zeta_pow(unsigned n, uint64_t k);
  // Reduces an arbitrary power-basis vector (any length, exponents mod n).
  static Cyclotomic from_powers(unsigned n, const std::vector<Rat>& powers);

  unsigned n() const { return n_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const { return coeffs_.empty() ? Rat(0) : coeffs_[0]; }
  Rat to_rational() const;  // throws unless rational

  Cyclotomic conj() const;  // zeta -> zeta^{n-1}
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic scaled(const Rat& c) const;
  bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::string str() const;

 private:
  unsigned n_;
  std::vector<Rat> coeffs_;
};

struct ClassInfo {
  std::string name;
  Int size;
  unsigned element_order = 1;
};

struct CoprimeTriple {
  unsigned a = 0, b = 0, c = 0;           // class indices
  unsigned order_a = 0, order_b = 0, order_c = 0;
  Int count;                               // pairs realizing the triple
};

class CharacterTable {
 public:
  std::string name;
  Int group_order;
  unsigned exponent = 1;
  std::vector<ClassInfo> classes;
  std::vector<std::vector<Cyclotomic>> irreducibles;

  unsigned n_classes() const { return static_cast<unsigned>(classes.size()); }
  unsigned identity_class() const;
  // The unique class with chi(C') = conj(chi(C)) for every chi.
  unsigned inverse_class(unsigned c) const;

  // Class sums match the group order, exact row orthogonality, and integral
  // degrees with sum of squares |G|. Throws with a reason on failure.
  void verify() const;

  // Number of pairs (a,b) in A x B with ab equal to a fixed element of C.
  Rat structure_constant_rat(unsigned a, unsigned b, unsigned c) const;
  Int structure_constant(unsigned a, unsigned b, unsigned c) const;  // integral or throws

  // First (by increasing |A||B||C|, then class indices) triple of classes
  // with pairwise coprime element orders > 1 admitting abc = 1.
  std::optional<CoprimeTriple> thompson_nonsolvable() const;

  static CharacterTable load_file(const std::string& path);
  static CharacterTable from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// Exact character table of a small permutation group via class-matrix
// eigenvector splitting modulo a prime and lifting to cyclotomics.
CharacterTable compute_character_table(const perm::PermGroup& g, const std::string& name,
                                       uint64_t cap = 2000);

}  // namespace nsv::chartab
