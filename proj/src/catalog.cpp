#include "nonsolv/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nsv::catalog {

using json = nlohmann::json;
using ffmat::FFError;
using ffmat::Gf;

Family family_from_string(const std::string& s) {
  if (s == "SL") return Family::SL;
  if (s == "SU") return Family::SU;
  if (s == "Sp") return Family::Sp;
  if (s == "GO") return Family::GO;
  if (s == "GU") return Family::GU;
  if (s == "GL") return Family::GL;
  if (s == "GSp") return Family::GSp;
  if (s == "Omega") return Family::Omega;
  if (s == "OmegaPlus") return Family::OmegaPlus;
  if (s == "OmegaMinus") return Family::OmegaMinus;
  if (s == "Sz") return Family::Sz;
  throw FFError("unknown family: " + s);
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::GO: return "GO";
    case Family::GU: return "GU";
    case Family::GL: return "GL";
    case Family::GSp: return "GSp";
    case Family::Omega: return "Omega";
    case Family::OmegaPlus: return "OmegaPlus";
    case Family::OmegaMinus: return "OmegaMinus";
    case Family::Sz: return "Sz";
  }
  return "?";
}

namespace {

bool det_must_be_one(Family f) {
  switch (f) {
    case Family::SL:
    case Family::SU:
    case Family::Sp:
    case Family::Sz:
    case Family::Omega:
    case Family::OmegaPlus:
    case Family::OmegaMinus:
      return true;
    default:
      return false;
  }
}

uint8_t bilinear(const Gf& f, const FFMatrix& b, const std::vector<uint8_t>& v,
                 const std::vector<uint8_t>& w) {
  uint8_t s = 0;
  for (unsigned i = 0; i < b.dim(); ++i) {
    if (v[i] == 0) continue;
    for (unsigned j = 0; j < b.dim(); ++j)
      s = f.add(s, f.mul(v[i], f.mul(b.at(i, j), w[j])));
  }
  return s;
}

}  // namespace

void MatGroupSpec::validate_generator(const FFMatrix& g) const {
  const Gf& f = *field;
  if (!g.inverse()) throw FFError(name + ": generator is singular");
  if (det_must_be_one(family) && g.det() != 1)
    throw FFError(name + ": generator determinant is not 1");

  switch (form_kind) {
    case FormKind::None:
      break;
    case FormKind::Bilinear: {
      FFMatrix lhs = g.transpose() * *form * g;
      if (family == Family::GSp) {
        // Similitude: g^T B g = lambda B for some nonzero lambda.
        uint8_t lambda = 0;
        for (unsigned i = 0; i < g.dim() && lambda == 0; ++i)
          for (unsigned j = 0; j < g.dim() && lambda == 0; ++j)
            if (form->at(i, j) != 0) lambda = f.mul(lhs.at(i, j), f.inv(form->at(i, j)));
        if (lambda == 0 || lhs != form->scaled(lambda))
          throw FFError(name + ": generator is not a symplectic similitude");
      } else if (lhs != *form) {
        throw FFError(name + ": generator does not preserve the bilinear form");
      }
      break;
    }
    case FormKind::Sesquilinear: {
      // g^T B g^sigma = B with sigma the entrywise x -> x^q0 twist.
      FFMatrix gs(field, g.dim());
      for (unsigned i = 0; i < g.dim(); ++i)
        for (unsigned j = 0; j < g.dim(); ++j) gs.set(i, j, f.twist(g.at(i, j)));
      if (g.transpose() * *form * gs != *form)
        throw FFError(name + ": generator does not preserve the hermitian form");
      break;
    }
    case FormKind::Quadratic: {
      // Q(v) = v^T U v with U upper triangular; preservation is checked on
      // the basis and on the polarization B = U + U^T.
      const FFMatrix& u = *form;
      unsigned d = g.dim();
      FFMatrix b = u + u.transpose();
      auto row = [&](unsigned i) {
        std::vector<uint8_t> v(d);
        for (unsigned j = 0; j < d; ++j) v[j] = g.at(i, j);
        return v;
      };
      auto quad = [&](const std::vector<uint8_t>& v) {
        uint8_t s = 0;
        for (unsigned i = 0; i < d; ++i) {
          if (v[i] == 0) continue;
          for (unsigned j = i; j < d; ++j)
            s = f.add(s, f.mul(v[i], f.mul(u.at(i, j), v[j])));
        }
        return s;
      };
      for (unsigned i = 0; i < d; ++i) {
        std::vector<uint8_t> ei(d, 0);
        ei[i] = 1;
        if (quad(row(i)) != quad(ei))
          throw FFError(name + ": generator does not preserve the quadratic form");
      }
      for (unsigned i = 0; i < d; ++i)
        for (unsigned j = i + 1; j < d; ++j) {
          std::vector<uint8_t> ei(d, 0), ej(d, 0);
          ei[i] = 1;
          ej[j] = 1;
          if (bilinear(f, b, row(i), row(j)) != bilinear(f, b, ei, ej))
            throw FFError(name + ": generator does not preserve the polar form");
        }
      break;
    }
  }
}

void MatGroupSpec::validate() const {
  if (generators.empty()) throw FFError(name + ": no generators");
  for (const auto& g : generators) {
    if (g.dim() != d) throw FFError(name + ": generator dimension mismatch");
    validate_generator(g);
  }
}

std::vector<uint8_t> MatGroupSpec::scalar_subgroup() const {
  std::vector<uint8_t> scalars;
  for (unsigned c = 1; c < field->q(); ++c) {
    FFMatrix s = FFMatrix::identity(field, d).scaled(static_cast<uint8_t>(c));
    try {
      validate_generator(s);
      scalars.push_back(static_cast<uint8_t>(c));
    } catch (const FFError&) {
    }
  }
  return scalars;
}

// ---------------------------------------------------------------------------
// ProjectiveAction

ProjectiveAction::ProjectiveAction(GfPtr field, unsigned d) : field_(std::move(field)), d_(d) {
  std::vector<uint8_t> v(d, 0);
  unsigned q = field_->q();
  uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) total *= q;
  if ((total - 1) / (q - 1) > perm::kDegreeCap)
    throw FFError("projective degree exceeds the degree cap");
  for (uint64_t code = 1; code < total; ++code) {
    uint64_t c = code;
    for (unsigned i = 0; i < d; ++i) {
      v[d - 1 - i] = static_cast<uint8_t>(c % q);
      c /= q;
    }
    unsigned lead = 0;
    while (lead < d && v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    index_[v] = static_cast<unsigned>(points_.size());
    points_.push_back(v);
  }
}

unsigned ProjectiveAction::index_of(std::vector<uint8_t> v) const {
  unsigned lead = 0;
  while (lead < d_ && v[lead] == 0) ++lead;
  if (lead == d_) throw FFError("zero vector has no projective point");
  uint8_t s = field_->inv(v[lead]);
  for (unsigned i = lead; i < d_; ++i) v[i] = field_->mul(v[i], s);
  auto it = index_.find(v);
  if (it == index_.end()) throw FFError("projective point lookup failed");
  return it->second;
}

perm::Permutation ProjectiveAction::image(const FFMatrix& m) const {
  const Gf& f = *field_;
  std::vector<perm::Point> images(points_.size());
  std::vector<uint8_t> w(d_);
  for (unsigned pi = 0; pi < points_.size(); ++pi) {
    const auto& v = points_[pi];
    // Row-vector action: w = v M, so products act left factor first.
    for (unsigned j = 0; j < d_; ++j) {
      uint8_t s = 0;
      for (unsigned i = 0; i < d_; ++i)
        if (v[i] != 0) s = f.add(s, f.mul(v[i], m.at(i, j)));
      w[j] = s;
    }
    images[pi] = static_cast<perm::Point>(index_of(w));
  }
  return perm::Permutation(std::move(images));
}

FFMatrix ProjectedGroup::random_matrix(Rng& rng, unsigned word_length) const {
  const auto& gens = spec->generators;
  FFMatrix m = FFMatrix::identity(spec->field, spec->d);
  for (unsigned i = 0; i < word_length; ++i) {
    uint64_t pick = rng.below(2 * gens.size());
    const FFMatrix& g = gens[pick / 2];
    m = (pick & 1) ? m * *g.inverse() : m * g;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::shared_ptr<const MatGroupSpec> parse_record(const json& rec) {
  auto spec = std::make_shared<MatGroupSpec>();
  spec->name = rec.at("name").get<std::string>();
  spec->family = family_from_string(rec.at("family").get<std::string>());
  spec->d = rec.at("d").get<unsigned>();
  spec->q = rec.at("q").get<unsigned>();

  unsigned p = 2;
  while (spec->q % p != 0) ++p;
  unsigned k = 0, qq = spec->q;
  while (qq > 1) {
    qq /= p;
    ++k;
  }
  std::vector<unsigned> modulus = rec.at("field_modulus").get<std::vector<unsigned>>();
  spec->field = std::make_shared<Gf>(p, k, modulus);

  for (const auto& flat : rec.at("generators")) {
    std::vector<unsigned> entries = flat.get<std::vector<unsigned>>();
    if (entries.size() != size_t(spec->d) * spec->d)
      throw FFError(spec->name + ": generator entry count mismatch");
    std::vector<std::vector<unsigned>> rows(spec->d, std::vector<unsigned>(spec->d));
    for (unsigned i = 0; i < spec->d; ++i)
      for (unsigned j = 0; j < spec->d; ++j) rows[i][j] = entries[i * spec->d + j];
    spec->generators.push_back(FFMatrix::from_rows(spec->field, rows));
  }

  if (rec.contains("form") && !rec.at("form").is_null()) {
    std::vector<unsigned> entries = rec.at("form").get<std::vector<unsigned>>();
    std::vector<std::vector<unsigned>> rows(spec->d, std::vector<unsigned>(spec->d));
    for (unsigned i = 0; i < spec->d; ++i)
      for (unsigned j = 0; j < spec->d; ++j) rows[i][j] = entries[i * spec->d + j];
    spec->form = FFMatrix::from_rows(spec->field, rows);
    std::string kind = rec.value("form_kind", "bilinear");
    if (kind == "bilinear") spec->form_kind = FormKind::Bilinear;
    else if (kind == "sesquilinear") spec->form_kind = FormKind::Sesquilinear;
    else if (kind == "quadratic") spec->form_kind = FormKind::Quadratic;
    else throw FFError(spec->name + ": unknown form kind " + kind);
  }

  spec->expected_order = Int(rec.at("expected_order").get<std::string>());
  spec->validate();
  return spec;
}

}  // namespace

std::shared_ptr<Catalog> Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FFError("cannot open catalog file: " + path);
  json doc = json::parse(in);
  auto cat = std::make_shared<Catalog>();
  for (const auto& rec : doc) {
    auto spec = parse_record(rec);
    cat->specs_[spec->name] = spec;
  }
  return cat;
}

std::shared_ptr<Catalog> Catalog::load_dir(const std::string& data_dir) {
  return load(data_dir + "/catalog/groups.json");
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

bool Catalog::has(const std::string& name) const { return specs_.count(name) > 0; }

std::shared_ptr<const MatGroupSpec> Catalog::get(const std::string& name) const {
  auto it = specs_.find(name);
  if (it == specs_.end()) throw FFError("unknown catalog group: " + name);
  return it->second;
}

std::shared_ptr<const ProjectedGroup> Catalog::projectivize(const std::string& name) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = projected_.find(name);
    if (it != projected_.end()) return it->second;
  }
  auto spec = get(name);
  auto action = std::make_shared<ProjectiveAction>(spec->field, spec->d);
  std::vector<perm::Permutation> pgens;
  for (const auto& g : spec->generators) {
    perm::Permutation img = action->image(g);
    if (img.is_identity() && !g.is_scalar())
      throw FFError(name + ": non-scalar generator acts trivially");
    pgens.push_back(std::move(img));
  }
  auto pg = std::make_shared<ProjectedGroup>();
  pg->spec = spec;
  pg->action = action;
  pg->image = perm::PermGroup::make(std::move(pgens));
  std::lock_guard<std::mutex> lk(mu_);
  projected_[name] = pg;
  return pg;
}

Catalog::Resolved Catalog::resolve_group(const std::string& name) const {
  auto parse_n = [&](size_t prefix) -> std::optional<unsigned> {
    if (name.size() <= prefix) return std::nullopt;
    unsigned n = 0;
    for (size_t i = prefix; i < name.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      n = n * 10 + (name[i] - '0');
    }
    return n;
  };
  if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'A' || name[0] == 'C' || name[0] == 'D')) {
    if (auto n = parse_n(1)) {
      switch (name[0]) {
        case 'S': return {symmetric_group(*n), nullptr, "symmetric group on " + std::to_string(*n)};
        case 'A': return {alternating_group(*n), nullptr, "alternating group on " + std::to_string(*n)};
        case 'C': return {cyclic_group(*n), nullptr, "cyclic group of order " + std::to_string(*n)};
        case 'D': return {dihedral_group(*n), nullptr, "dihedral group of order " + std::to_string(2 * *n)};
      }
    }
  }
  if (has(name)) {
    auto pg = projectivize(name);
    return {pg->image, pg, "projective action of " + name};
  }
  if (name.size() > 1 && name[0] == 'P' && has(name.substr(1))) {
    auto pg = projectivize(name.substr(1));
    return {pg->image, pg, "projective image of " + name.substr(1)};
  }
  throw FFError("cannot resolve group name: " + name);
}

// ---------------------------------------------------------------------------
// Built-in permutation families

perm::PermGroupPtr symmetric_group(unsigned n) {
  using perm::Permutation;
  if (n < 2) return perm::PermGroup::trivial(std::max(1u, n));
  std::vector<perm::Point> swap01(n), cyc(n);
  for (unsigned i = 0; i < n; ++i) {
    swap01[i] = static_cast<perm::Point>(i);
    cyc[i] = static_cast<perm::Point>((i + 1) % n);
  }
  std::swap(swap01[0], swap01[1]);
  return perm::PermGroup::make({Permutation(swap01), Permutation(cyc)});
}

perm::PermGroupPtr alternating_group(unsigned n) {
  using perm::Permutation;
  if (n < 3) return perm::PermGroup::trivial(std::max(1u, n));
  std::vector<perm::Point> three(n);
  for (unsigned i = 0; i < n; ++i) three[i] = static_cast<perm::Point>(i);
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  std::vector<perm::Point> rest(n);
  for (unsigned i = 0; i < n; ++i) rest[i] = static_cast<perm::Point>(i);
  if (n % 2 == 1) {
    for (unsigned i = 0; i < n; ++i) rest[i] = static_cast<perm::Point>((i + 1) % n);
  } else {
    // (1 2)(3 4 ... n): even, moves every point.
    rest[0] = 1;
    rest[1] = 0;
    for (unsigned i = 2; i < n; ++i) rest[i] = static_cast<perm::Point>(i + 1 == n ? 2 : i + 1);
  }
  return perm::PermGroup::make({Permutation(three), Permutation(rest)});
}

perm::PermGroupPtr cyclic_group(unsigned n) {
  std::vector<perm::Point> cyc(n);
  for (unsigned i = 0; i < n; ++i) cyc[i] = static_cast<perm::Point>((i + 1) % n);
  return perm::PermGroup::make({perm::Permutation(cyc)});
}

perm::PermGroupPtr dihedral_group(unsigned n) {
  std::vector<perm::Point> cyc(n), flip(n);
  for (unsigned i = 0; i < n; ++i) {
    cyc[i] = static_cast<perm::Point>((i + 1) % n);
    flip[i] = static_cast<perm::Point>((n - i) % n);
  }
  return perm::PermGroup::make({perm::Permutation(cyc), perm::Permutation(flip)});
}

perm::PermGroupPtr direct_product(const perm::PermGroup& a, const perm::PermGroup& b) {
  unsigned na = a.degree(), nb = b.degree();
  std::vector<perm::Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<perm::Point> im(na + nb);
    for (unsigned i = 0; i < na; ++i) im[i] = g[i];
    for (unsigned i = 0; i < nb; ++i) im[na + i] = static_cast<perm::Point>(na + i);
    gens.emplace_back(std::move(im));
  }
  for (const auto& g : b.generators()) {
    std::vector<perm::Point> im(na + nb);
    for (unsigned i = 0; i < na; ++i) im[i] = static_cast<perm::Point>(i);
    for (unsigned i = 0; i < nb; ++i) im[na + i] = static_cast<perm::Point>(na + g[i]);
    gens.emplace_back(std::move(im));
  }
  return perm::PermGroup::make(std::move(gens));
}

}  // namespace nsv::catalog
