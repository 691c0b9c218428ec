#pragma once
// Dense exact matrices over a Field: reduced row echelon form, linear
// solving with deterministic witnesses (free variables pinned to zero),
// nullspace and image bases, rank, inverse, and minimal polynomials via
// accumulated Krylov subspaces.
#include <optional>
#include <vector>

#include "field.hpp"
#include "util.hpp"

namespace comack {

class FqMatrix {
 public:
  FqMatrix(Field f, u32 rows, u32 cols)
      : F(std::move(f)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  static FqMatrix identity(const Field& f, u32 n) {
    FqMatrix m(f, n, n);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static FqMatrix from_rows(const Field& f, const std::vector<std::vector<u32>>& rows) {
    u32 r = static_cast<u32>(rows.size());
    u32 c = r ? static_cast<u32>(rows[0].size()) : 0;
    FqMatrix m(f, r, c);
    for (u32 i = 0; i < r; ++i) {
      check(rows[i].size() == c, "from_rows: ragged rows");
      for (u32 j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  u32 rows() const { return rows_; }
  u32 cols() const { return cols_; }
  u32& at(u32 i, u32 j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  u32 at(u32 i, u32 j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<u32>& data() const { return a_; }

  bool operator==(const FqMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (u32 v : a_)
      if (v) return false;
    return true;
  }

  FqMatrix mul(const FqMatrix& o) const {
    check(cols_ == o.rows_, "matrix product shape mismatch");
    FqMatrix r(F, rows_, o.cols_);
    for (u32 i = 0; i < rows_; ++i)
      for (u32 k = 0; k < cols_; ++k) {
        u32 v = at(i, k);
        if (v == 0) continue;
        for (u32 j = 0; j < o.cols_; ++j) {
          u32 w = o.at(k, j);
          if (w) r.at(i, j) = F.add(r.at(i, j), F.mul(v, w));
        }
      }
    return r;
  }
  FqMatrix add(const FqMatrix& o) const {
    check(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    FqMatrix r(F, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.add(a_[i], o.a_[i]);
    return r;
  }
  FqMatrix sub(const FqMatrix& o) const {
    check(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
    FqMatrix r(F, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.sub(a_[i], o.a_[i]);
    return r;
  }
  FqMatrix scale(u32 s) const {
    FqMatrix r(F, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F.mul(a_[i], s);
    return r;
  }
  FqMatrix transpose() const {
    FqMatrix r(F, cols_, rows_);
    for (u32 i = 0; i < rows_; ++i)
      for (u32 j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  std::vector<u32> apply(const std::vector<u32>& v) const {
    check(v.size() == cols_, "matrix apply shape mismatch");
    std::vector<u32> r(rows_, 0);
    for (u32 i = 0; i < rows_; ++i) {
      u32 acc = 0;
      for (u32 j = 0; j < cols_; ++j)
        if (at(i, j) && v[j]) acc = F.add(acc, F.mul(at(i, j), v[j]));
      r[i] = acc;
    }
    return r;
  }
  std::vector<u32> col(u32 j) const {
    std::vector<u32> r(rows_);
    for (u32 i = 0; i < rows_; ++i) r[i] = at(i, j);
    return r;
  }
  std::vector<u32> row(u32 i) const {
    return std::vector<u32>(a_.begin() + static_cast<std::size_t>(i) * cols_,
                            a_.begin() + static_cast<std::size_t>(i + 1) * cols_);
  }
  void set_col(u32 j, const std::vector<u32>& v) {
    check(v.size() == rows_, "set_col shape mismatch");
    for (u32 i = 0; i < rows_; ++i) at(i, j) = v[i];
  }

  Field F;

 private:
  u32 rows_, cols_;
  std::vector<u32> a_;
};

struct Rref {
  FqMatrix mat;            // the reduced form
  std::vector<u32> pivots; // pivot column per pivot row, ascending
  u32 rank = 0;
};

inline Rref rref(FqMatrix m) {
  const Field& F = m.F;
  u32 r = 0;
  std::vector<u32> pivots;
  for (u32 c = 0; c < m.cols() && r < m.rows(); ++c) {
    u32 sel = r;
    while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (u32 j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    u32 li = F.inv(m.at(r, c));
    for (u32 j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), li);
    for (u32 i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      u32 f = m.at(i, c);
      if (f == 0) continue;
      for (u32 j = c; j < m.cols(); ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return Rref{std::move(m), std::move(pivots), r};
}

inline u32 rank(const FqMatrix& m) { return rref(m).rank; }

// solve A x = b; witness is the unique solution supported on the pivot
// columns of rref(A) (all free variables zero)
inline std::optional<std::vector<u32>> solve(const FqMatrix& a, const std::vector<u32>& b) {
  check(b.size() == a.rows(), "solve shape mismatch");
  const Field& F = a.F;
  FqMatrix aug(F, a.rows(), a.cols() + 1);
  for (u32 i = 0; i < a.rows(); ++i) {
    for (u32 j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Rref r = rref(std::move(aug));
  for (u32 i = 0; i < r.rank; ++i)
    if (r.pivots[i] == a.cols()) return std::nullopt;  // pivot in the rhs column
  std::vector<u32> x(a.cols(), 0);
  for (u32 i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.mat.at(i, a.cols());
  return x;
}

inline bool in_image(const FqMatrix& a, const std::vector<u32>& b) {
  return solve(a, b).has_value();
}

// columns form a basis of {x : A x = 0}, one per free column, in ascending
// free-column order, free coordinate pinned to 1
inline FqMatrix nullspace(const FqMatrix& a) {
  const Field& F = a.F;
  Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (u32 c : r.pivots) is_pivot[c] = true;
  std::vector<u32> free_cols;
  for (u32 c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FqMatrix basis(F, a.cols(), static_cast<u32>(free_cols.size()));
  for (u32 k = 0; k < free_cols.size(); ++k) {
    u32 fc = free_cols[k];
    basis.at(fc, k) = 1;
    for (u32 i = 0; i < r.rank; ++i) basis.at(r.pivots[i], k) = F.neg(r.mat.at(i, fc));
  }
  return basis;
}

inline std::optional<FqMatrix> inverse(const FqMatrix& a) {
  check(a.rows() == a.cols(), "inverse needs a square matrix");
  const Field& F = a.F;
  u32 n = a.rows();
  FqMatrix aug(F, n, 2 * n);
  for (u32 i = 0; i < n; ++i) {
    for (u32 j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Rref r = rref(std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  FqMatrix inv(F, n, n);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
  return inv;
}

// minimal polynomial: lcm of the Krylov annihilators of the standard basis
// vectors, skipping vectors already inside the accumulated (invariant)
// Krylov span.  Exact by the spanning-set characterization; no verification
// product is needed.
inline Poly min_poly(const FqMatrix& a) {
  check(a.rows() == a.cols(), "min_poly needs a square matrix");
  const Field& F = a.F;
  const u32 n = a.rows();
  if (n == 0) return poly::constant(1);

  // global reduced basis of the union of processed Krylov subspaces
  std::vector<std::vector<u32>> global;   // reduced rows
  std::vector<u32> global_piv;            // leading column of each row

  auto reduce_global = [&](std::vector<u32> v) {
    for (std::size_t k = 0; k < global.size(); ++k) {
      u32 c = v[global_piv[k]];
      if (c == 0) continue;
      for (u32 j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, global[k][j]));
    }
    return v;
  };
  auto insert_global = [&](std::vector<u32> v) {
    u32 lead = n;
    for (u32 j = 0; j < n; ++j)
      if (v[j]) { lead = j; break; }
    if (lead == n) return;
    u32 li = F.inv(v[lead]);
    for (u32 j = 0; j < n; ++j) v[j] = F.mul(v[j], li);
    global.push_back(std::move(v));
    global_piv.push_back(lead);
  };

  Poly m = poly::constant(1);
  for (u32 s = 0; s < n; ++s) {
    std::vector<u32> e(n, 0);
    e[s] = 1;
    std::vector<u32> reduced = reduce_global(e);
    if (std::all_of(reduced.begin(), reduced.end(), [](u32 v) { return v == 0; }))
      continue;  // annihilator divides the lcm so far

    // run-local Krylov reduction tracking coordinates in powers of A
    std::vector<std::vector<u32>> rows;    // reduced Krylov vectors
    std::vector<u32> piv;                  // their leading columns
    std::vector<std::vector<u32>> coords;  // expressions in u_0..u_k
    std::vector<u32> u = e;                // u_k = A^k e
    Poly rel;
    for (u32 k = 0;; ++k) {
      std::vector<u32> v = u;
      std::vector<u32> coord(k + 1, 0);
      coord[k] = 1;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        u32 c = v[piv[t]];
        if (c == 0) continue;
        for (u32 j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, rows[t][j]));
        for (std::size_t j = 0; j < coords[t].size(); ++j)
          coord[j] = F.sub(coord[j], F.mul(c, coords[t][j]));
      }
      u32 lead = n;
      for (u32 j = 0; j < n; ++j)
        if (v[j]) { lead = j; break; }
      if (lead == n) {
        // dependency: coord gives the monic annihilator of e
        rel.c = coord;
        rel = poly::monic(F, poly::trim(std::move(rel)));
        break;
      }
      u32 li = F.inv(v[lead]);
      for (u32 j = 0; j < n; ++j) v[j] = F.mul(v[j], li);
      for (u32& c : coord) c = F.mul(c, li);
      rows.push_back(std::move(v));
      piv.push_back(lead);
      coords.push_back(std::move(coord));
      insert_global(reduce_global(u));
      u = a.apply(u);
    }
    Poly g = poly::gcd(F, m, rel);
    m = poly::mul(F, poly::divexact(F, m, g), rel);  // lcm
  }
  return poly::monic(F, m);
}

// evaluate a polynomial at a square matrix (Horner)
inline FqMatrix eval_poly_at(const Poly& f, const FqMatrix& a) {
  check(a.rows() == a.cols(), "eval_poly_at needs a square matrix");
  const Field& F = a.F;
  u32 n = a.rows();
  FqMatrix r(F, n, n);
  for (std::size_t i = f.c.size(); i-- > 0;) {
    r = r.mul(a);
    for (u32 d = 0; d < n; ++d) r.at(d, d) = F.add(r.at(d, d), f.c[i]);
  }
  return r;
}

}  // namespace comack
