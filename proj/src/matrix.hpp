#ifndef CONLEY_MATRIX_HPP
#define CONLEY_MATRIX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <vector>

namespace conley {

using Z = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

template <typename T>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  bool is_zero() const {
    for (const T& x : a)
      if (x != 0) return false;
    return true;
  }
};

template <typename T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const T& v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

template <typename T>
Mat<T> operator+(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

template <typename T>
Mat<T> operator-(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

template <typename T>
Mat<T> transpose(const Mat<T>& x) {
  Mat<T> r(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <typename T>
Mat<T> pow(const Mat<T>& x, std::size_t n) {
  Mat<T> r = Mat<T>::identity(x.rows);
  Mat<T> base = x;
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

template <typename T>
Mat<T> submatrix_cols(const Mat<T>& x, const std::vector<std::size_t>& cols) {
  Mat<T> r(x.rows, cols.size());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = x(i, cols[j]);
  return r;
}

// Smith normal form: U * A * V = D with U, V unimodular; D diagonal with
// nonnegative entries d_1 | d_2 | ... ; inverses tracked alongside.
struct Snf {
  Mat<Z> D, U, V, Uinv, Vinv;
  std::size_t rank = 0;
};

Snf smith_normal_form(const Mat<Z>& A);

// Integer solutions of A * X = B (any one solution), via the Smith form.
std::optional<Mat<Z>> solve_integer(const Snf& snf, const Mat<Z>& B);
std::optional<Mat<Z>> solve_integer(const Mat<Z>& A, const Mat<Z>& B);

Mat<Q> to_rational(const Mat<Z>& A);

std::size_t rank_rational(Mat<Q> A);
Q determinant(Mat<Q> A);
std::optional<Mat<Q>> inverse(const Mat<Q>& A);

// Any one rational solution of A * X = B, or nullopt if inconsistent.
std::optional<Mat<Q>> solve_rational(Mat<Q> A, Mat<Q> B);

// Indices of a maximal linearly independent column subset.
std::vector<std::size_t> column_basis(Mat<Q> A);

Z trace_z(const Mat<Z>& A);

}  // namespace conley

#endif
