#pragma once

#include <gmpxx.h>

#include <vector>

#include "corat/error.hpp"

namespace corat {

// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IntMatrix diagonal(const std::vector<mpz_class>& d) {
    IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }
  bool operator==(const IntMatrix& o) const = default;
};

IntMatrix imat_mul(const IntMatrix& x, const IntMatrix& y);
mpz_class imat_det(const IntMatrix& m); // Bareiss fraction-free elimination

// Smith normal form with recorded transforms:
//   U * M * V = D,  Uinv * D * Vinv = M,  U,V unimodular,
//   D diagonal with nonnegative entries forming a divisibility chain.
// Pivot rule: smallest nonzero absolute value in the active submatrix,
// ties broken by lowest (row, col).
struct SmithForm {
  IntMatrix U, Uinv, D, V, Vinv;
};

SmithForm smith_normal_form(const IntMatrix& m);

} // namespace corat
