#include "algebra.hpp"

#include <algorithm>

#include "errors.hpp"

namespace conley {

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  Poly q;
  if (b.empty())
    throw ConleyError(Errc::invalid_argument, "polynomial division by zero");
  if (deg(a) >= deg(b)) q.resize(a.size() - b.size() + 1);
  while (deg(a) >= deg(b)) {
    Q c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    Poly t(shift);
    t.push_back(c);
    a = poly_sub(a, poly_mul(t, b));
  }
  trim(q);
  return {q, a};
}

Poly poly_monic(Poly p) {
  if (p.empty()) return p;
  Q lead = p.back();
  for (Q& c : p) c /= lead;
  return p;
}

using PolyMat = std::vector<std::vector<Poly>>;

// Diagonal of the Smith form over Q[x] (monic entries, divisibility chain).
std::vector<Poly> poly_smith_diagonal(PolyMat M) {
  const std::size_t n = M.size();
  const std::size_t m = n ? M[0].size() : 0;
  std::vector<Poly> diag;
  std::size_t t = 0;
  for (; t < std::min(n, m); ++t) {
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < m; ++j)
        if (!M[i][j].empty() && (!found || deg(M[i][j]) < deg(M[pi][pj]))) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(M[t], M[pi]);
    for (std::size_t i = 0; i < n; ++i) std::swap(M[i][t], M[i][pj]);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (M[i][t].empty()) continue;
        auto [q, r] = poly_divmod(M[i][t], M[t][t]);
        for (std::size_t j = t; j < m; ++j)
          M[i][j] = poly_sub(M[i][j], poly_mul(q, M[t][j]));
        if (!M[i][t].empty()) {
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (M[t][j].empty()) continue;
        auto [q, r] = poly_divmod(M[t][j], M[t][t]);
        for (std::size_t i = t; i < n; ++i)
          M[i][j] = poly_sub(M[i][j], poly_mul(q, M[i][t]));
        if (!M[t][j].empty()) {
          for (std::size_t i = 0; i < n; ++i) std::swap(M[i][t], M[i][j]);
          clean = false;
        }
      }
      if (clean) break;
    }
  }
  const std::size_t rank = t;

  // Divisibility chain.
  for (std::size_t i = 0; i + 1 < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      auto [q0, r0] = poly_divmod(M[j][j], M[i][i]);
      if (r0.empty()) continue;
      for (std::size_t r = 0; r < n; ++r)
        M[r][i] = poly_sub(M[r][i], poly_sub({}, M[r][j]));  // col i += col j
      for (;;) {
        auto [q, rem] = poly_divmod(M[j][i], M[i][i]);
        for (std::size_t c = 0; c < m; ++c)
          M[j][c] = poly_sub(M[j][c], poly_mul(q, M[i][c]));
        if (M[j][i].empty()) break;
        std::swap(M[i], M[j]);
      }
      auto [q2, r2] = poly_divmod(M[i][j], M[i][i]);
      for (std::size_t r = 0; r < n; ++r)
        M[r][j] = poly_sub(M[r][j], poly_mul(q2, M[r][i]));
      if (!M[i][j].empty())
        throw ConleyError(Errc::invalid_argument, "polynomial smith repair failed");
      j = i;
    }

  for (std::size_t i = 0; i < rank; ++i) diag.push_back(poly_monic(M[i][i]));
  return diag;
}

Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

template <typename T>
bool verify_witness_impl(const Mat<T>& A, const Mat<T>& B, const Mat<T>& R,
                         const Mat<T>& S, std::size_t lag) {
  if (A.rows != A.cols || B.rows != B.cols || R.rows != B.rows ||
      R.cols != A.rows || S.rows != A.rows || S.cols != B.rows)
    throw ConleyError(Errc::shape_mismatch, "witness shapes do not compose");
  return R * A == B * R && S * B == A * S && R * S == pow(B, lag) &&
         S * R == pow(A, lag);
}

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Mat<Q>& A) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols && row < A.rows; ++col) {
    std::size_t piv = row;
    while (piv < A.rows && A(piv, col) == 0) ++piv;
    if (piv == A.rows) continue;
    for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(row, c), A(piv, c));
    Q inv_p = Q(1) / A(row, col);
    for (std::size_t c = 0; c < A.cols; ++c) A(row, c) *= inv_p;
    for (std::size_t r = 0; r < A.rows; ++r) {
      if (r == row || A(r, col) == 0) continue;
      Q f = A(r, col);
      for (std::size_t c = 0; c < A.cols; ++c) A(r, c) -= f * A(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<Mat<Q>> nullspace(Mat<Q> A) {
  auto pivots = rref(A);
  std::vector<bool> is_pivot(A.cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Mat<Q>> basis;
  for (std::size_t free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    Mat<Q> v(A.cols, 1);
    v(free, 0) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r], 0) = -A(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Mat<Q>> krylov_basis(const Mat<Q>& A) {
  const std::size_t n = A.rows;
  auto attempt = [&](const Mat<Q>& v) -> std::optional<Mat<Q>> {
    Mat<Q> K(n, n);
    Mat<Q> cur = v;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) K(i, j) = cur(i, 0);
      cur = A * cur;
    }
    if (rank_rational(K) == n) return K;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < n; ++i) {
    Mat<Q> v(n, 1);
    v(i, 0) = 1;
    if (auto K = attempt(v)) return K;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Mat<Q> v(n, 1);
      v(i, 0) = 1;
      v(j, 0) = 1;
      if (auto K = attempt(v)) return K;
    }
  Mat<Q> ones(n, 1);
  for (std::size_t i = 0; i < n; ++i) ones(i, 0) = 1;
  return attempt(ones);
}

}  // namespace

Poly char_polynomial(const Mat<Q>& A) {
  if (A.rows != A.cols)
    throw ConleyError(Errc::shape_mismatch, "characteristic polynomial wants square");
  const std::size_t n = A.rows;
  Poly c(n + 1);
  c[n] = 1;
  Mat<Q> M = Mat<Q>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mat<Q> AM = A * M;
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    Q ck = -tr / Q(k);
    c[n - k] = ck;
    M = AM;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += ck;
  }
  return c;
}

LerayForm leray_reduction(const Mat<Q>& A) {
  if (A.rows != A.cols)
    throw ConleyError(Errc::shape_mismatch, "leray reduction wants square");
  LerayForm f;
  const std::size_t n = A.rows;
  Mat<Q> P = pow(A, n);
  auto cols = column_basis(P);
  f.reduced_dim = cols.size();
  f.basis = submatrix_cols(P, cols);
  auto act = solve_rational(f.basis, A * f.basis);
  if (!act)
    throw ConleyError(Errc::invalid_argument, "eventual image is not invariant");
  f.action = *act;
  if (f.reduced_dim > 0 && determinant(f.action) == 0)
    throw ConleyError(Errc::invalid_argument, "reduced action is singular");
  f.charpoly = char_polynomial(f.action);
  return f;
}

LerayForm leray_reduction(const Mat<Z>& A) { return leray_reduction(to_rational(A)); }

std::vector<Poly> invariant_factors(const Mat<Q>& A) {
  const std::size_t n = A.rows;
  PolyMat M(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly p;
      if (A(i, j) != 0) p = {-A(i, j)};
      if (i == j) {
        p.resize(2);
        p[1] = 1;
      }
      trim(p);
      M[i][j] = std::move(p);
    }
  auto diag = poly_smith_diagonal(std::move(M));
  std::vector<Poly> out;
  for (auto& p : diag)
    if (deg(p) >= 1) out.push_back(p);
  return out;
}

bool similar_rational(const Mat<Q>& A, const Mat<Q>& B) {
  if (A.rows != B.rows) return false;
  return invariant_factors(A) == invariant_factors(B);
}

bool shift_equivalent_rational(const Mat<Z>& A, const Mat<Z>& B) {
  return similar_rational(leray_reduction(A).action, leray_reduction(B).action);
}

bool verify_shift_witness(const Mat<Z>& A, const Mat<Z>& B, const ShiftWitness<Z>& w) {
  return verify_witness_impl(A, B, w.R, w.S, w.lag);
}

bool verify_shift_witness(const Mat<Q>& A, const Mat<Q>& B, const ShiftWitness<Q>& w) {
  return verify_witness_impl(A, B, w.R, w.S, w.lag);
}

ZReport z_distinguishers(const Mat<Z>& A, const Mat<Z>& B) {
  ZReport rep;
  const std::size_t k_max = std::max(A.rows, B.rows);
  Mat<Z> pa = Mat<Z>::identity(A.rows), pb = Mat<Z>::identity(B.rows);
  for (std::size_t k = 1; k <= k_max; ++k) {
    pa = pa * A;
    pb = pb * B;
    if (trace_z(pa) != trace_z(pb)) rep.trace_mismatch = true;
  }
  LerayForm la = leray_reduction(A), lb = leray_reduction(B);
  rep.charpoly_mismatch = la.charpoly != lb.charpoly;
  Q da = la.reduced_dim ? determinant(la.action) : Q(1);
  Q db = lb.reduced_dim ? determinant(lb.action) : Q(1);
  rep.det_mismatch = qabs(da) != qabs(db);
  return rep;
}

std::optional<Mat<Q>> similarity_transform(const Mat<Q>& A, const Mat<Q>& B) {
  if (A.rows != B.rows || A.rows != A.cols || B.rows != B.cols) return std::nullopt;
  if (!similar_rational(A, B)) return std::nullopt;
  const std::size_t n = A.rows;
  if (A == B) return Mat<Q>::identity(n);

  auto ka = krylov_basis(A);
  auto kb = krylov_basis(B);
  if (ka && kb) {
    // A = K_A C K_A^{-1} and B = K_B C K_B^{-1} for the same companion C.
    auto kai = inverse(*ka);
    if (kai) return (*kb) * (*kai);
  }

  // Fallback: invertible element of the Sylvester solution space PA = BP.
  Mat<Q> sys(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        sys(row, i * n + k) += A(k, j);
        sys(row, k * n + j) -= B(i, k);
      }
    }
  auto basis = nullspace(std::move(sys));
  auto as_matrix = [&](const Mat<Q>& v) {
    Mat<Q> P(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) P(i, j) = v(i * n + j, 0);
    return P;
  };
  for (const auto& v : basis) {
    Mat<Q> P = as_matrix(v);
    if (determinant(P) != 0) return P;
  }
  // Deterministic small combinations of the basis.
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<Q> acc(n * n, 1);
    for (const auto& v : basis) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      long coef = static_cast<long>((state >> 33) % 7) - 3;
      for (std::size_t i = 0; i < acc.rows; ++i) acc(i, 0) += Q(coef) * v(i, 0);
    }
    Mat<Q> P = as_matrix(acc);
    if (determinant(P) != 0) return P;
  }
  return std::nullopt;
}

std::optional<ShiftWitness<Q>> construct_shift_witness(const Mat<Q>& A, const Mat<Q>& B) {
  LerayForm la = leray_reduction(A), lb = leray_reduction(B);
  auto P = similarity_transform(la.action, lb.action);
  if (!P) return std::nullopt;
  auto Pinv = inverse(*P);
  auto wa = solve_rational(la.basis, pow(A, A.rows));
  auto wb = solve_rational(lb.basis, pow(B, B.rows));
  if (!Pinv || !wa || !wb) return std::nullopt;
  ShiftWitness<Q> w;
  w.R = lb.basis * (*P) * (*wa);
  w.S = la.basis * (*Pinv) * (*wb);
  w.lag = A.rows + B.rows;
  if (!verify_witness_impl(A, B, w.R, w.S, w.lag))
    throw ConleyError(Errc::invalid_witness, "constructed witness failed verification");
  return w;
}

bool szymczak_equivalent(const Mat<Q>& f, const Mat<Q>& f2,
                         const SzymczakMorphism& m1, const SzymczakMorphism& m2) {
  for (const SzymczakMorphism* m : {&m1, &m2}) {
    if (m->g.cols != f.rows || m->g.rows != f2.rows ||
        !(m->g * f == f2 * m->g))
      throw ConleyError(Errc::not_intertwining, "morphism does not intertwine f, f'");
  }
  for (std::size_t k = 0; k <= f.rows; ++k) {
    if (m1.g * pow(f, m2.n + k) == m2.g * pow(f, m1.n + k)) return true;
  }
  return false;
}

std::pair<SzymczakMorphism, SzymczakMorphism> szymczak_iso_from_witness(
    const Mat<Q>& A, const Mat<Q>& B, const ShiftWitness<Q>& w) {
  if (!verify_shift_witness(A, B, w))
    throw ConleyError(Errc::invalid_witness, "witness identities do not hold");
  return {SzymczakMorphism{w.R, w.lag}, SzymczakMorphism{w.S, 0}};
}

bool is_trivial_index(const std::vector<Mat<Z>>& index_matrices) {
  for (const Mat<Z>& m : index_matrices)
    if (leray_reduction(m).reduced_dim != 0) return false;
  return true;
}

}  // namespace conley
