#include "matrix.hpp"

#include <algorithm>

#include "errors.hpp"

namespace conley {

namespace {

struct SnfWork {
  Mat<Z>&D, &U, &V, &Uinv, &Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols; ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows; ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv(i, c), Vinv(j, c));
  }

  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Z& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < D.cols; ++c) D(i, c) += k * D(j, c);
    for (std::size_t c = 0; c < U.cols; ++c) U(i, c) += k * U(j, c);
    for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, j) -= k * Uinv(r, i);
  }

  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Z& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < D.rows; ++r) D(r, i) += k * D(r, j);
    for (std::size_t r = 0; r < V.rows; ++r) V(r, i) += k * V(r, j);
    for (std::size_t c = 0; c < Vinv.cols; ++c) Vinv(j, c) -= k * Vinv(i, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols; ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
    for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, i) = -Uinv(r, i);
  }
};

Z zabs(const Z& x) { return x < 0 ? Z(-x) : x; }

}  // namespace

Snf smith_normal_form(const Mat<Z>& A) {
  Snf s;
  s.D = A;
  s.U = Mat<Z>::identity(A.rows);
  s.Uinv = Mat<Z>::identity(A.rows);
  s.V = Mat<Z>::identity(A.cols);
  s.Vinv = Mat<Z>::identity(A.cols);
  SnfWork w{s.D, s.U, s.V, s.Uinv, s.Vinv};
  Mat<Z>& D = s.D;

  const std::size_t n = std::min(A.rows, A.cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    bool found = true;
    for (;;) {
      // Pivot: nonzero entry of minimal magnitude in the remaining block.
      // Re-selecting each pass keeps the coefficients from exploding.
      std::size_t pi = t, pj = t;
      found = false;
      for (std::size_t i = t; i < D.rows; ++i)
        for (std::size_t j = t; j < D.cols; ++j)
          if (D(i, j) != 0 && (!found || zabs(D(i, j)) < zabs(D(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        w.add_row(i, t, -Z(D(i, t) / D(t, t)));
        dirty = dirty || D(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        w.add_col(j, t, -Z(D(t, j) / D(t, t)));
        dirty = dirty || D(t, j) != 0;
      }
      // A nonzero remainder is smaller than the pivot; pick it up next pass.
      if (dirty) continue;

      // Fold in any block entry the pivot does not divide, so the final
      // diagonal carries the divisibility chain by construction.
      bool folded = false;
      for (std::size_t i = t + 1; i < D.rows && !folded; ++i)
        for (std::size_t j = t + 1; j < D.cols && !folded; ++j)
          if (D(i, j) % D(t, t) != 0) {
            w.add_row(t, i, 1);
            folded = true;
          }
      if (!folded) break;
    }
    if (!found) break;
    if (D(t, t) < 0) w.negate_row(t);
  }
  s.rank = t;
  return s;
}

std::optional<Mat<Z>> solve_integer(const Snf& s, const Mat<Z>& B) {
  Mat<Z> y = s.U * B;
  Mat<Z> x(s.D.cols, B.cols);
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t c = 0; c < y.cols; ++c) {
      if (i < s.rank) {
        const Z& d = s.D(i, i);
        if (y(i, c) % d != 0) return std::nullopt;
        x(i, c) = y(i, c) / d;
      } else if (y(i, c) != 0) {
        return std::nullopt;
      }
    }
  return s.V * x;
}

std::optional<Mat<Z>> solve_integer(const Mat<Z>& A, const Mat<Z>& B) {
  return solve_integer(smith_normal_form(A), B);
}

Mat<Q> to_rational(const Mat<Z>& A) {
  Mat<Q> r(A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i) r.a[i] = Q(A.a[i]);
  return r;
}

namespace {

// Row-reduce A in place; returns pivot columns.  When rhs != nullptr the
// same operations are applied to it.
std::vector<std::size_t> eliminate(Mat<Q>& A, Mat<Q>* rhs) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
    std::size_t piv = row;
    while (piv < A.rows && A(piv, col) == 0) ++piv;
    if (piv == A.rows) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(row, c), A(piv, c));
      if (rhs)
        for (std::size_t c = 0; c < rhs->cols; ++c)
          std::swap((*rhs)(row, c), (*rhs)(piv, c));
    }
    Q inv_p = Q(1) / A(row, col);
    for (std::size_t c = 0; c < A.cols; ++c) A(row, c) *= inv_p;
    if (rhs)
      for (std::size_t c = 0; c < rhs->cols; ++c) (*rhs)(row, c) *= inv_p;
    for (std::size_t r = 0; r < A.rows; ++r) {
      if (r == row || A(r, col) == 0) continue;
      Q f = A(r, col);
      for (std::size_t c = 0; c < A.cols; ++c) A(r, c) -= f * A(row, c);
      if (rhs)
        for (std::size_t c = 0; c < rhs->cols; ++c)
          (*rhs)(r, c) -= f * (*rhs)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank_rational(Mat<Q> A) { return eliminate(A, nullptr).size(); }

Q determinant(Mat<Q> A) {
  if (A.rows != A.cols)
    throw ConleyError(Errc::shape_mismatch, "determinant wants a square matrix");
  Q det = 1;
  for (std::size_t col = 0; col < A.cols; ++col) {
    std::size_t piv = col;
    while (piv < A.rows && A(piv, col) == 0) ++piv;
    if (piv == A.rows) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(col, c), A(piv, c));
      det = -det;
    }
    det *= A(col, col);
    Q inv_p = Q(1) / A(col, col);
    for (std::size_t r = col + 1; r < A.rows; ++r) {
      if (A(r, col) == 0) continue;
      Q f = A(r, col) * inv_p;
      for (std::size_t c = col; c < A.cols; ++c) A(r, c) -= f * A(col, c);
    }
  }
  return det;
}

std::optional<Mat<Q>> inverse(const Mat<Q>& A) {
  if (A.rows != A.cols)
    throw ConleyError(Errc::shape_mismatch, "inverse wants a square matrix");
  Mat<Q> work = A;
  Mat<Q> rhs = Mat<Q>::identity(A.rows);
  auto pivots = eliminate(work, &rhs);
  if (pivots.size() != A.rows) return std::nullopt;
  return rhs;
}

std::optional<Mat<Q>> solve_rational(Mat<Q> A, Mat<Q> B) {
  if (A.rows != B.rows)
    throw ConleyError(Errc::shape_mismatch, "row counts differ");
  auto pivots = eliminate(A, &B);
  // Consistency: zero rows of A must have zero rhs.
  for (std::size_t r = pivots.size(); r < A.rows; ++r)
    for (std::size_t c = 0; c < B.cols; ++c)
      if (B(r, c) != 0) return std::nullopt;
  Mat<Q> X(A.cols, B.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < B.cols; ++c) X(pivots[r], c) = B(r, c);
  return X;
}

std::vector<std::size_t> column_basis(Mat<Q> A) { return eliminate(A, nullptr); }

Z trace_z(const Mat<Z>& A) {
  Z t = 0;
  for (std::size_t i = 0; i < std::min(A.rows, A.cols); ++i) t += A(i, i);
  return t;
}

}  // namespace conley
