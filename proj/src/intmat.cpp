#include "corat/intmat.hpp"

#include "corat/ring.hpp"

namespace corat {

IntMatrix imat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw Error(ErrKind::TypeMismatch, "imat_mul shape");
  IntMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const mpz_class& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

mpz_class imat_det(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error(ErrKind::TypeMismatch, "det of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace {

struct Worker {
  IntMatrix A, U, Uinv, V, Vinv;

  explicit Worker(const IntMatrix& m)
      : A(m),
        U(IntMatrix::identity(m.rows)),
        Uinv(IntMatrix::identity(m.rows)),
        V(IntMatrix::identity(m.cols)),
        Vinv(IntMatrix::identity(m.cols)) {}

  // row_i -= q * row_k  (on A and U); Uinv gets the inverse column op
  void row_sub(int i, int k, const mpz_class& q) {
    if (q == 0) return;
    for (int j = 0; j < A.cols; ++j) A.at(i, j) -= q * A.at(k, j);
    for (int j = 0; j < U.cols; ++j) U.at(i, j) -= q * U.at(k, j);
    for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, k) += q * Uinv.at(r, i);
  }
  void col_sub(int j, int k, const mpz_class& q) {
    if (q == 0) return;
    for (int i = 0; i < A.rows; ++i) A.at(i, j) -= q * A.at(i, k);
    for (int i = 0; i < V.rows; ++i) V.at(i, j) -= q * V.at(i, k);
    for (int c = 0; c < Vinv.cols; ++c) Vinv.at(k, c) += q * Vinv.at(j, c);
  }
  void row_swap(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < A.cols; ++j) std::swap(A.at(i, j), A.at(k, j));
    for (int j = 0; j < U.cols; ++j) std::swap(U.at(i, j), U.at(k, j));
    for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, k));
  }
  void col_swap(int j, int k) {
    if (j == k) return;
    for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, j), A.at(i, k));
    for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, j), V.at(i, k));
    for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(j, c), Vinv.at(k, c));
  }
  void row_negate(int i) {
    for (int j = 0; j < A.cols; ++j) A.at(i, j) = -A.at(i, j);
    for (int j = 0; j < U.cols; ++j) U.at(i, j) = -U.at(i, j);
    for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
  }
  void row_add(int i, int k) { row_sub(i, k, mpz_class(-1)); }

  // smallest nonzero |entry| in the submatrix starting at (t,t); ties by (row, col)
  bool find_pivot(int t, int& pi, int& pj) const {
    bool found = false;
    mpz_class best;
    for (int i = t; i < A.rows; ++i)
      for (int j = t; j < A.cols; ++j) {
        const mpz_class& x = A.at(i, j);
        if (x == 0) continue;
        mpz_class ax = abs(x);
        if (!found || ax < best) { found = true; best = ax; pi = i; pj = j; }
      }
    return found;
  }

  void run() {
    int n = std::min(A.rows, A.cols);
    for (int t = 0; t < n; ++t) {
      int pi, pj;
      if (!find_pivot(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      // clear row and column t; re-pick the pivot when remainders appear
      for (;;) {
        bool dirty = false;
        for (int i = t + 1; i < A.rows; ++i) {
          if (A.at(i, t) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
          row_sub(i, t, q);
          if (A.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < A.cols; ++j) {
          if (A.at(t, j) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
          col_sub(j, t, q);
          if (A.at(t, j) != 0) dirty = true;
        }
        if (!dirty) break;
        if (!find_pivot(t, pi, pj)) break;
        row_swap(t, pi);
        col_swap(t, pj);
      }
      if (A.at(t, t) < 0) row_negate(t);
      // divisibility fix-up: fold any non-divisible remaining entry into row t
      for (;;) {
        int bi = -1;
        for (int i = t + 1; i < A.rows && bi < 0; ++i)
          for (int j = t + 1; j < A.cols; ++j)
            if (A.at(i, j) % A.at(t, t) != 0) { bi = i; break; }
        if (bi < 0) break;
        row_add(t, bi);
        for (;;) {
          bool dirty = false;
          for (int j = t + 1; j < A.cols; ++j) {
            if (A.at(t, j) == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
            col_sub(j, t, q);
            if (A.at(t, j) != 0) dirty = true;
          }
          for (int i = t + 1; i < A.rows; ++i) {
            if (A.at(i, t) == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
            row_sub(i, t, q);
            if (A.at(i, t) != 0) dirty = true;
          }
          if (!dirty) break;
          int pi2, pj2;
          if (!find_pivot(t, pi2, pj2)) break;
          row_swap(t, pi2);
          col_swap(t, pj2);
        }
        if (A.at(t, t) < 0) row_negate(t);
      }
    }
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Worker w(m);
  w.run();
  return SmithForm{w.U, w.Uinv, w.A, w.V, w.Vinv};
}

} // namespace corat
