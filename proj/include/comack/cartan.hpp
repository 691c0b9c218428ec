#pragma once
// Cartan matrices: double-coset counts over subgroup classes for p-groups,
// intertwiner dimensions between the coset summands of a block, exact
// determinants, the cyclic determinant criterion, and comparison up to
// simultaneous row/column permutation.
#include "blocks.hpp"
#include "intmatrix.hpp"

namespace comack {

struct CartanMatrix {
  std::string group;            // group label, metadata only
  int block = -1;               // block index, -1 for the subgroup-class path
  std::vector<u32> row_labels;  // subgroup class reps or catalog entry ids
  std::vector<std::vector<i64>> mat;

  IntMatrix to_int_matrix() const { return IntMatrix::from_rows(mat); }
};

namespace detail {

inline void verify_cartan(const CartanMatrix& c) {
  check(c.mat.size() == c.row_labels.size(), "cartan: label count mismatch");
  for (const auto& row : c.mat) check(row.size() == c.mat.size(), "cartan: not square");
  for (std::size_t i = 0; i < c.mat.size(); ++i)
    for (std::size_t j = 0; j < c.mat.size(); ++j) {
      check(c.mat[i][j] >= 0, "cartan: negative entry");
      check(c.mat[i][j] == c.mat[j][i], "cartan: not symmetric");
    }
}

}  // namespace detail

// rows indexed by subgroup conjugacy classes sorted by (order, id);
// entry = number of double cosets between class representatives, checked
// against an alternative representative when the class has one
inline CartanMatrix cartan_pgroup(const Group& p, u32 prime) {
  require(p.is_p_group(prime), "cartan_pgroup: not a p-group for this prime");
  const std::vector<int>& reps = p.subgroup_class_reps();
  const std::size_t n = reps.size();
  CartanMatrix c{p.label(), -1, {}, std::vector<std::vector<i64>>(n, std::vector<i64>(n, 0))};
  for (int r : reps) c.row_labels.push_back(static_cast<u32>(r));
  const auto& cls = p.class_of_subgroup();
  for (std::size_t i = 0; i < n; ++i) {
    int alt = -1;
    for (u32 s = 0; s < p.subgroups().size(); ++s)
      if (cls[s] == cls[reps[i]] && static_cast<int>(s) != reps[i]) {
        alt = static_cast<int>(s);
        break;
      }
    for (std::size_t j = 0; j < n; ++j) {
      c.mat[i][j] = static_cast<i64>(p.double_cosets(reps[i], reps[j]).count());
      if (alt >= 0)
        check(p.double_cosets(alt, reps[j]).count() ==
                  static_cast<std::size_t>(c.mat[i][j]),
              "cartan: double-coset count not conjugation invariant");
    }
  }
  detail::verify_cartan(c);
  return c;
}

// rows = catalog entries assigned to the block; entries = exact intertwiner
// dimensions between the summand representatives
inline CartanMatrix cartan_block(const PPermCatalog& cat, int block) {
  require(block >= 0, "cartan_block: invalid block index");
  std::vector<u32> rows;
  for (u32 e = 0; e < cat.entries.size(); ++e)
    if (cat.entries[e].block == block) rows.push_back(e);
  require(!rows.empty(), "cartan_block: no catalog entries in this block");
  const std::size_t n = rows.size();
  CartanMatrix c{cat.G->label(), block, rows,
                 std::vector<std::vector<i64>>(n, std::vector<i64>(n, 0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.mat[i][j] = static_cast<i64>(
          hom_space(cat.entries[rows[i]].rep, cat.entries[rows[j]].rep).size());
  detail::verify_cartan(c);
  return c;
}

struct CyclicCriterion {
  bool cyclic = false;
  boost::multiprecision::cpp_int det;
};

// determinant of the subgroup-class matrix vanishes exactly off the cyclic
// case; the biconditional is asserted, not assumed
inline CyclicCriterion cyclic_criterion_report(const Group& p, u32 prime) {
  CartanMatrix c = cartan_pgroup(p, prime);
  CyclicCriterion r{p.is_cyclic(), int_det(c.to_int_matrix())};
  check(r.cyclic == (r.det != 0), "cyclic determinant criterion violated");
  return r;
}

// equality up to one permutation applied to rows and columns together;
// exhaustive scan, sized for the matrices this library produces
inline bool same_cartan_fingerprint(const CartanMatrix& a, const CartanMatrix& b) {
  const std::size_t n = a.mat.size();
  if (n != b.mat.size()) return false;
  require(n <= 8, "fingerprint scan limited to 8 rows");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (a.mat[perm[i]][perm[j]] != b.mat[i][j]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::string cartan_text(const CartanMatrix& c) {
  std::ostringstream os;
  boost::multiprecision::cpp_int d = int_det(c.to_int_matrix());
  if (d < 0) d = -d;
  os << "cartan group=" << c.group << " block=";
  if (c.block < 0)
    os << "-";
  else
    os << c.block;
  os << " rows=" << c.mat.size() << " det=" << d << "\n";
  for (std::size_t i = 0; i < c.mat.size(); ++i) {
    os << "row " << c.row_labels[i] << ":";
    for (i64 v : c.mat[i]) os << " " << v;
    os << "\n";
  }
  return os.str();
}

inline std::string cartan_csv(const CartanMatrix& c) {
  std::ostringstream os;
  os << "rows";
  for (u32 l : c.row_labels) os << "," << l;
  os << "\n";
  for (std::size_t i = 0; i < c.mat.size(); ++i) {
    os << c.row_labels[i];
    for (i64 v : c.mat[i]) os << "," << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace comack
