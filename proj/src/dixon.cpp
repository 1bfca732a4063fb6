#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "nonsolv/chartab.hpp"

// Character tables of small groups, computed exactly: conjugacy classes and
// class-multiplication coefficients from the group itself, simultaneous
// eigenvectors of the class matrices over GF(ell) for a prime ell = 1 mod
// exponent, then lifting of the character values to Z[zeta_exponent] via
// the power maps. The result is verified with the exact orthogonality
// relations before it is returned.

namespace nsv::chartab {

namespace {

using perm::PermGroup;
using perm::Permutation;
using perm::PermHash;

uint64_t mod_pow(uint64_t base, uint64_t e, uint64_t m) {
  unsigned __int128 r = 1, b = base % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<uint64_t>(r);
}

uint64_t mod_inv(uint64_t a, uint64_t ell) { return mod_pow(a % ell, ell - 2, ell); }

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense linear algebra over GF(ell) at tiny sizes.
using Vec = std::vector<uint64_t>;
using Mat = std::vector<Vec>;

Vec mat_vec(const Mat& m, const Vec& v, uint64_t ell) {
  Vec out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    unsigned __int128 acc = 0;
    for (size_t j = 0; j < v.size(); ++j) acc += static_cast<unsigned __int128>(m[i][j]) * v[j];
    out[i] = static_cast<uint64_t>(acc % ell);
  }
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m, uint64_t ell) {
  std::vector<int> pivots;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    uint64_t s = mod_inv(m[r][c], ell);
    for (size_t j = c; j < cols; ++j)
      m[r][j] = static_cast<uint64_t>(static_cast<unsigned __int128>(m[r][j]) * s % ell);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      uint64_t f = m[i][c];
      for (size_t j = c; j < cols; ++j) {
        unsigned __int128 sub = static_cast<unsigned __int128>(f) * m[r][j] % ell;
        m[i][j] = (m[i][j] + ell - static_cast<uint64_t>(sub)) % ell;
      }
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

// Characteristic polynomial via Faddeev-LeVerrier; needs ell > dim.
Vec char_poly_mod(const Mat& a, uint64_t ell) {
  size_t n = a.size();
  Vec coeffs(n + 1, 0);
  coeffs[n] = 1;
  // elementary symmetric functions from power sums (Newton's identities)
  Vec traces(n + 1, 0);
  Mat pw(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) pw[i][i] = 1;
  for (size_t k = 1; k <= n; ++k) {
    // pw = pw * a
    Mat nx(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) {
        if (pw[i][l] == 0) continue;
        unsigned __int128 f = pw[i][l];
        for (size_t j = 0; j < n; ++j)
          nx[i][j] = static_cast<uint64_t>((nx[i][j] + f * a[l][j]) % ell);
      }
    pw = std::move(nx);
    uint64_t tr = 0;
    for (size_t i = 0; i < n; ++i) tr = (tr + pw[i][i]) % ell;
    traces[k] = tr;
  }
  // e_k from p_k: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
  Vec e(n + 1, 0);
  e[0] = 1;
  for (size_t k = 1; k <= n; ++k) {
    unsigned __int128 acc = 0;
    for (size_t i = 1; i <= k; ++i) {
      unsigned __int128 term = static_cast<unsigned __int128>(e[k - i]) * traces[i] % ell;
      if (i % 2 == 1)
        acc = (acc + term) % ell;
      else
        acc = (acc + ell - static_cast<uint64_t>(term)) % ell;
    }
    e[k] = static_cast<uint64_t>(acc % ell * mod_inv(static_cast<uint64_t>(k), ell) % ell);
  }
  // char poly = sum (-1)^k e_k x^{n-k}
  for (size_t k = 0; k <= n; ++k) {
    uint64_t v = e[k];
    if (k % 2 == 1) v = (ell - v) % ell;
    coeffs[n - k] = v;
  }
  return coeffs;  // low index = low power
}

uint64_t poly_eval_mod(const Vec& coeffs, uint64_t x, uint64_t ell) {
  unsigned __int128 r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = (r * x + coeffs[i]) % ell;
  return static_cast<uint64_t>(r);
}

}  // namespace

CharacterTable compute_character_table(const PermGroup& g, const std::string& name,
                                       uint64_t cap) {
  if (g.order() > Int(cap)) throw ChartabError("group too large for table computation");
  uint64_t order = g.order().convert_to<uint64_t>();

  // Elements in lexicographic order; classes in first-seen order, so the
  // identity class is class 0 and the layout is reproducible.
  std::vector<Permutation> elems = g.elements(cap);
  std::sort(elems.begin(), elems.end());
  std::unordered_map<Permutation, unsigned, PermHash> elem_index;
  for (unsigned i = 0; i < elems.size(); ++i) elem_index.emplace(elems[i], i);

  std::vector<int> class_of(elems.size(), -1);
  std::vector<unsigned> reps;  // element index of each class representative
  std::vector<uint64_t> class_size;
  std::vector<Permutation> sgens = g.strong_generators();
  for (unsigned i = 0; i < elems.size(); ++i) {
    if (class_of[i] >= 0) continue;
    unsigned cls = static_cast<unsigned>(reps.size());
    reps.push_back(i);
    std::vector<unsigned> frontier{i};
    class_of[i] = static_cast<int>(cls);
    uint64_t size = 1;
    while (!frontier.empty()) {
      std::vector<unsigned> next;
      for (unsigned ei : frontier)
        for (const auto& s : sgens) {
          unsigned ci = elem_index.at(perm::conjugate(elems[ei], s));
          if (class_of[ci] < 0) {
            class_of[ci] = static_cast<int>(cls);
            next.push_back(ci);
            ++size;
          }
        }
      frontier = std::move(next);
    }
    class_size.push_back(size);
  }
  unsigned nc = static_cast<unsigned>(reps.size());

  std::vector<unsigned> elem_order(nc);
  unsigned exponent = 1;
  for (unsigned c = 0; c < nc; ++c) {
    elem_order[c] = static_cast<unsigned>(elems[reps[c]].order().convert_to<uint64_t>());
    exponent = static_cast<unsigned>(std::lcm<uint64_t>(exponent, elem_order[c]));
  }

  // Inverse classes and power maps on representatives.
  std::vector<unsigned> inv_class(nc);
  std::vector<std::vector<unsigned>> power_class(nc);
  for (unsigned c = 0; c < nc; ++c) {
    const Permutation& rep = elems[reps[c]];
    inv_class[c] = static_cast<unsigned>(class_of[elem_index.at(rep.inverse())]);
    power_class[c].resize(elem_order[c]);
    Permutation p(g.degree());
    for (unsigned s = 0; s < elem_order[c]; ++s) {
      power_class[c][s] = static_cast<unsigned>(class_of[elem_index.at(p)]);
      p = perm::compose(p, rep);
    }
  }

  // Class multiplication coefficients a[j][k][i] = #{(x,y) in Cj x Ck : xy = z_i}.
  std::vector<Mat> amats(nc, Mat(nc, Vec(nc, 0)));
  for (unsigned i = 0; i < nc; ++i) {
    const Permutation& zi = elems[reps[i]];
    for (unsigned x = 0; x < elems.size(); ++x) {
      unsigned j = static_cast<unsigned>(class_of[x]);
      Permutation y = perm::compose(elems[x].inverse(), zi);
      unsigned k = static_cast<unsigned>(class_of[elem_index.at(y)]);
      amats[j][k][i] += 1;
    }
  }

  // Working prime: ell = 1 mod exponent, ell > 2 sqrt(|G|), ell > nc.
  uint64_t ell = exponent + 1;
  while (!(is_prime_u64(ell) && (ell - 1) % exponent == 0 && ell * ell > 4 * order && ell > nc))
    ell += exponent;

  // Simultaneous eigenvectors: split the span of all class vectors.
  std::vector<Mat> spaces;  // each: list of basis vectors (length nc)
  {
    Mat full(nc, Vec(nc, 0));
    for (unsigned i = 0; i < nc; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (unsigned j = 1; j < nc; ++j) {
    // Action of the class matrix A_j.
    Mat aj(nc, Vec(nc, 0));
    for (unsigned k = 0; k < nc; ++k)
      for (unsigned i = 0; i < nc; ++i) aj[k][i] = amats[j][k][i] % ell;
    std::vector<Mat> next_spaces;
    for (auto& space : spaces) {
      size_t dim = space.size();
      if (dim == 1) {
        next_spaces.push_back(std::move(space));
        continue;
      }
      // Restrict A_j to the span: images in the space's coordinates.
      // Solve via RREF on [basis^T | images^T].
      Mat basis_t(nc, Vec(dim, 0));
      for (size_t b = 0; b < dim; ++b)
        for (unsigned r = 0; r < nc; ++r) basis_t[r][b] = space[b][r];
      Mat images(dim, Vec(nc, 0));
      for (size_t b = 0; b < dim; ++b) images[b] = mat_vec(aj, space[b], ell);
      Mat aug(nc, Vec(dim + dim, 0));
      for (unsigned r = 0; r < nc; ++r) {
        for (size_t b = 0; b < dim; ++b) aug[r][b] = basis_t[r][b];
        for (size_t b = 0; b < dim; ++b) aug[r][dim + b] = images[b][r];
      }
      rref(aug, ell);
      // rows 0..dim-1 now express each image in basis coordinates
      Mat restricted(dim, Vec(dim, 0));
      for (size_t r = 0; r < dim; ++r)
        for (size_t b = 0; b < dim; ++b) restricted[r][b] = aug[r][dim + b];
      // eigenvalues: roots of the characteristic polynomial
      Vec cp = char_poly_mod(restricted, ell);
      for (uint64_t lam = 0; lam < ell; ++lam) {
        if (poly_eval_mod(cp, lam, ell) != 0) continue;
        // kernel of restricted - lam I (restricted acts on coordinates)
        Mat work(dim, Vec(dim, 0));
        for (size_t r = 0; r < dim; ++r)
          for (size_t c2 = 0; c2 < dim; ++c2)
            work[r][c2] = (restricted[r][c2] + (r == c2 ? ell - lam % ell : 0)) % ell;
        std::vector<int> pivots = rref(work, ell);
        std::vector<bool> is_pivot(dim, false);
        for (int p : pivots) is_pivot[p] = true;
        Mat eig;
        for (size_t free = 0; free < dim; ++free) {
          if (is_pivot[free]) continue;
          Vec coord(dim, 0);
          coord[free] = 1;
          for (size_t pr = 0; pr < pivots.size(); ++pr)
            coord[pivots[pr]] = (ell - work[pr][free]) % ell;
          // back to ambient coordinates
          Vec amb(nc, 0);
          for (size_t b = 0; b < dim; ++b) {
            if (coord[b] == 0) continue;
            for (unsigned r = 0; r < nc; ++r)
              amb[r] = static_cast<uint64_t>(
                  (amb[r] + static_cast<unsigned __int128>(coord[b]) * space[b][r]) % ell);
          }
          eig.push_back(std::move(amb));
        }
        if (!eig.empty()) next_spaces.push_back(std::move(eig));
      }
    }
    spaces = std::move(next_spaces);
    bool all_one = true;
    for (const auto& s : spaces) all_one = all_one && s.size() == 1;
    if (all_one) break;
  }
  if (spaces.size() != nc) throw ChartabError("class algebra failed to split completely");

  // Class-algebra character values omega and degrees.
  std::vector<Vec> omegas(nc, Vec(nc, 0));
  std::vector<uint64_t> degrees(nc, 0);
  for (unsigned s = 0; s < nc; ++s) {
    const Vec& v = spaces[s][0];
    unsigned pivot = 0;
    while (pivot < nc && v[pivot] == 0) ++pivot;
    uint64_t vinv = mod_inv(v[pivot], ell);
    for (unsigned j = 0; j < nc; ++j) {
      Mat aj(nc, Vec(nc, 0));
      for (unsigned k = 0; k < nc; ++k)
        for (unsigned i = 0; i < nc; ++i) aj[k][i] = amats[j][k][i] % ell;
      Vec img = mat_vec(aj, v, ell);
      omegas[s][j] =
          static_cast<uint64_t>(static_cast<unsigned __int128>(img[pivot]) * vinv % ell);
    }
    // 1/d^2 = (1/|G|) sum_k omega_k omega_{k*} / |C_k|
    unsigned __int128 acc = 0;
    for (unsigned k = 0; k < nc; ++k) {
      unsigned __int128 term = static_cast<unsigned __int128>(omegas[s][k]) *
                               omegas[s][inv_class[k]] % ell;
      term = term * mod_inv(class_size[k] % ell, ell) % ell;
      acc = (acc + term) % ell;
    }
    uint64_t dsq = static_cast<uint64_t>(static_cast<unsigned __int128>(order % ell) *
                                         mod_inv(static_cast<uint64_t>(acc), ell) % ell);
    uint64_t d = 0;
    for (uint64_t r = 1; 2 * r < ell; ++r)
      if (r * r % ell == dsq) {
        d = r;
        break;
      }
    if (d == 0) throw ChartabError("character degree is not a quadratic residue");
    degrees[s] = d;
  }

  // Lift each character value to Z[zeta_exponent] using the power maps.
  std::vector<uint64_t> proper_divs;
  for (uint64_t f = 2; f * f <= ell - 1; ++f)
    if ((ell - 1) % f == 0) {
      proper_divs.push_back((ell - 1) / f);
      if (f != (ell - 1) / f) proper_divs.push_back(f);
    }
  uint64_t gamma = 2;
  for (;; ++gamma) {
    bool prim = true;
    for (uint64_t d2 : proper_divs)
      if (mod_pow(gamma, d2, ell) == 1) {
        prim = false;
        break;
      }
    if (prim) break;
  }
  uint64_t z = mod_pow(gamma, (ell - 1) / exponent, ell);

  std::vector<std::vector<uint64_t>> chi_mod(nc, std::vector<uint64_t>(nc, 0));
  for (unsigned s = 0; s < nc; ++s)
    for (unsigned k = 0; k < nc; ++k)
      chi_mod[s][k] = static_cast<uint64_t>(static_cast<unsigned __int128>(degrees[s]) *
                                            omegas[s][k] % ell *
                                            mod_inv(class_size[k] % ell, ell) % ell);

  CharacterTable table;
  table.name = name;
  table.group_order = Int(order);
  table.exponent = exponent;
  for (unsigned c = 0; c < nc; ++c) {
    ClassInfo ci;
    ci.name = perm::format_cycles(elems[reps[c]]);
    ci.size = Int(class_size[c]);
    ci.element_order = elem_order[c];
    table.classes.push_back(std::move(ci));
  }

  for (unsigned s = 0; s < nc; ++s) {
    std::vector<Cyclotomic> row;
    for (unsigned k = 0; k < nc; ++k) {
      unsigned m = elem_order[k];
      uint64_t xi = mod_pow(z, exponent / m, ell);
      uint64_t minv = mod_inv(m, ell);
      std::vector<Rat> powers(exponent, Rat(0));
      for (unsigned t = 0; t < m; ++t) {
        // multiplicity of zeta_m^t among the eigenvalues
        unsigned __int128 acc = 0;
        for (unsigned sidx = 0; sidx < m; ++sidx) {
          uint64_t xis = mod_pow(xi, (static_cast<uint64_t>(sidx) * t) % m, ell);
          acc = (acc + static_cast<unsigned __int128>(chi_mod[s][power_class[k][sidx]]) *
                           mod_inv(xis, ell)) %
                ell;
        }
        uint64_t mult = static_cast<uint64_t>(acc * minv % ell);
        if (mult > 2 * order) throw ChartabError("implausible eigenvalue multiplicity");
        if (mult != 0) powers[(static_cast<uint64_t>(t) * (exponent / m)) % exponent] += Rat(mult);
      }
      row.push_back(Cyclotomic::from_powers(exponent, powers));
    }
    table.irreducibles.push_back(std::move(row));
  }

  // Canonical row order: by degree, then lexicographically by value strings.
  std::stable_sort(table.irreducibles.begin(), table.irreducibles.end(),
                   [&](const auto& r1, const auto& r2) {
                     Rat d1 = r1[0].rational_part(), d2 = r2[0].rational_part();
                     if (d1 != d2) return d1 < d2;
                     for (unsigned k = 0; k < nc; ++k) {
                       if (r1[k] == r2[k]) continue;
                       return r1[k].str() < r2[k].str();
                     }
                     return false;
                   });

  table.verify();
  return table;
}

}  // namespace nsv::chartab
