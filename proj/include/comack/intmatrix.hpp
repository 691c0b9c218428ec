#pragma once
// Exact integer matrices (arbitrary precision) with a fraction-free
// Bareiss determinant: every division in the elimination is exact, row
// swaps flip the sign, and a fully zero pivot column short-circuits to 0.
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "util.hpp"

namespace comack {

struct IntMatrix {
  u32 rows = 0, cols = 0;
  std::vector<boost::multiprecision::cpp_int> a;

  IntMatrix(u32 r, u32 c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  boost::multiprecision::cpp_int& at(u32 i, u32 j) {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  const boost::multiprecision::cpp_int& at(u32 i, u32 j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  static IntMatrix from_rows(const std::vector<std::vector<i64>>& rows) {
    u32 r = static_cast<u32>(rows.size());
    u32 c = r ? static_cast<u32>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (u32 i = 0; i < r; ++i) {
      check(rows[i].size() == c, "from_rows: ragged rows");
      for (u32 j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }
};

inline boost::multiprecision::cpp_int int_det(IntMatrix m) {
  using boost::multiprecision::cpp_int;
  check(m.rows == m.cols, "int_det needs a square matrix");
  const u32 n = m.rows;
  if (n == 0) return 1;
  int sign = 1;
  cpp_int prev = 1;
  for (u32 k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      u32 sel = k + 1;
      while (sel < n && m.at(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      for (u32 j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(sel, j));
      sign = -sign;
    }
    for (u32 i = k + 1; i < n; ++i)
      for (u32 j = k + 1; j < n; ++j) {
        cpp_int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        cpp_int q = v / prev;
        check(q * prev == v, "bareiss division not exact");
        m.at(i, j) = q;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

}  // namespace comack
