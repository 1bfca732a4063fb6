#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nonsolv/ffmat.hpp"
#include "nonsolv/ints.hpp"
#include "nonsolv/perm.hpp"
#include "nonsolv/rng.hpp"

namespace nsv::catalog {

using ffmat::FFMatrix;
using ffmat::GfPtr;

enum class Family { SL, SU, Sp, GO, GU, GL, GSp, Omega, OmegaPlus, OmegaMinus, Sz };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

enum class FormKind { None, Bilinear, Sesquilinear, Quadratic };

// A classical group given by explicit generator matrices. The stored form
// (when present) is what the generators are validated against: bilinear
// Gram matrix for Sp/GO (odd q), a quadratic form in upper-triangular
// Gram convention for orthogonal groups in characteristic 2, and the
// identity Gram with the x -> x^q twist for unitary groups.
struct MatGroupSpec {
  std::string name;
  Family family;
  unsigned d = 0;
  unsigned q = 0;
  GfPtr field;
  std::vector<FFMatrix> generators;
  std::optional<FFMatrix> form;
  FormKind form_kind = FormKind::None;
  Int expected_order;

  // Scalars lambda*I satisfying the family's form and determinant
  // constraints; this is the kernel of the projective action.
  std::vector<uint8_t> scalar_subgroup() const;
  // Form preservation and determinant constraints for one matrix.
  void validate_generator(const FFMatrix& g) const;
  void validate() const;
};

// The permutation action on the full projective space of F^d: points are
// 1-dimensional subspaces keyed by the representative scaled to leading
// coordinate 1, ordered lexicographically as coordinate tuples.
class ProjectiveAction {
 public:
  ProjectiveAction(GfPtr field, unsigned d);

  unsigned degree() const { return static_cast<unsigned>(points_.size()); }
  const std::vector<std::vector<uint8_t>>& points() const { return points_; }

  // The permutation induced by an invertible matrix acting on row vectors,
  // so that image(a*b) = compose(image(a), image(b)).
  perm::Permutation image(const FFMatrix& m) const;

 private:
  unsigned index_of(std::vector<uint8_t> v) const;
  GfPtr field_;
  unsigned d_;
  std::vector<std::vector<uint8_t>> points_;
  std::map<std::vector<uint8_t>, unsigned> index_;
};

// A catalog group together with its projective permutation realization.
struct ProjectedGroup {
  std::shared_ptr<const MatGroupSpec> spec;
  std::shared_ptr<const ProjectiveAction> action;
  perm::PermGroupPtr image;  // the projectivized permutation group

  perm::Permutation to_perm(const FFMatrix& m) const { return action->image(m); }

  // Draws words in the generators; mixing, not uniform. Suitable for
  // property filters where any qualifying element will do.
  FFMatrix random_matrix(Rng& rng, unsigned word_length = 40) const;
};

class Catalog {
 public:
  // Loads records from a JSON file (array of group records).
  static std::shared_ptr<Catalog> load(const std::string& path);
  // Loads from the directory layout used by the data distribution.
  static std::shared_ptr<Catalog> load_dir(const std::string& data_dir);

  std::vector<std::string> names() const;
  bool has(const std::string& name) const;
  std::shared_ptr<const MatGroupSpec> get(const std::string& name) const;

  // Projectivizes (cached). Validates generators on first use.
  std::shared_ptr<const ProjectedGroup> projectivize(const std::string& name) const;

  // Resolves group names for scenario/search use: catalog names ("SL(3,3)"),
  // projective aliases ("PSL(3,3)" etc., meaning the projectivized image),
  // and the built-in permutation families "S<n>", "A<n>", "C<n>", "D<n>"
  // (dihedral of order 2n). Matrix-backed names resolve to the projective
  // image together with its matrix context.
  struct Resolved {
    perm::PermGroupPtr group;
    std::shared_ptr<const ProjectedGroup> projected;  // null for native perm groups
    std::string description;
  };
  Resolved resolve_group(const std::string& name) const;

 private:
  std::map<std::string, std::shared_ptr<const MatGroupSpec>> specs_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const ProjectedGroup>> projected_;
};

// Built-in permutation group families (0-based domains).
perm::PermGroupPtr symmetric_group(unsigned n);
perm::PermGroupPtr alternating_group(unsigned n);
perm::PermGroupPtr cyclic_group(unsigned n);
perm::PermGroupPtr dihedral_group(unsigned n);  // order 2n on n points
perm::PermGroupPtr direct_product(const perm::PermGroup& a, const perm::PermGroup& b);

}  // namespace nsv::catalog
