#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "algebra.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace conley;
using namespace conley::testing;

namespace {

Mat<Q> qmat(std::initializer_list<std::initializer_list<long>> rows) {
  Mat<Q> m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Mat<Z> zmat(std::initializer_list<std::initializer_list<long>> rows) {
  Mat<Z> m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Mat<Z> random_square(std::mt19937_64& rng, std::size_t n, long span) {
  std::uniform_int_distribution<long> vd(-span, span);
  Mat<Z> m(n, n);
  for (Z& x : m.a) x = vd(rng);
  return m;
}

// A random unimodular matrix as a product of elementary shears.
Mat<Z> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  Mat<Z> u = Mat<Z>::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n ? n - 1 : 0);
  std::uniform_int_distribution<long> kd(-2, 2);
  for (int s = 0; s < 6; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Mat<Z> e = Mat<Z>::identity(n);
    e(i, j) = kd(rng);
    u = u * e;
  }
  return u;
}

Mat<Z> block_diag(const Mat<Z>& a, const Mat<Z>& b) {
  Mat<Z> m(a.rows + b.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m(a.rows + i, a.cols + j) = b(i, j);
  return m;
}

Mat<Z> nilpotent_block(std::size_t n) {
  Mat<Z> m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  return m;
}

}  // namespace

TEST_CASE("characteristic polynomial of small matrices") {
  Poly p = char_polynomial(qmat({{2, 0}, {1, 0}}));
  // x^2 - 2x
  REQUIRE(p.size() == 3);
  CHECK(p[0] == 0);
  CHECK(p[1] == -2);
  CHECK(p[2] == 1);
  Poly q = char_polynomial(Mat<Q>(0, 0));
  REQUIRE(q.size() == 1);
  CHECK(q[0] == 1);
}

TEST_CASE("leray reduction strips the nilpotent part") {
  LerayForm l = leray_reduction(zmat({{2, 0}, {1, 0}}));
  REQUIRE(l.reduced_dim == 1);
  CHECK(l.action(0, 0) == 2);

  LerayForm nil = leray_reduction(zmat({{0, 1}, {0, 0}}));
  CHECK(nil.reduced_dim == 0);

  LerayForm id = leray_reduction(Mat<Q>::identity(3));
  CHECK(id.reduced_dim == 3);
  CHECK(determinant(id.action) == 1);
}

TEST_CASE("leray form reproduces the action on its basis") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 40; ++t) {
    Mat<Z> A = random_square(rng, 1 + t % 4, 3);
    LerayForm l = leray_reduction(A);
    // A * basis = basis * action
    CHECK(to_rational(A) * l.basis == l.basis * l.action);
    CHECK(rank_rational(l.action) == l.reduced_dim);
  }
}

TEST_CASE("invariant factors of companion-style matrices") {
  auto f = invariant_factors(qmat({{2}}));
  REQUIRE(f.size() == 1);
  CHECK(f[0] == Poly{-2, 1});
  auto g = invariant_factors(Mat<Q>::identity(2));
  REQUIRE(g.size() == 2);
  CHECK(g[0] == Poly{-1, 1});
  CHECK(g[1] == Poly{-1, 1});
}

TEST_CASE("rational shift equivalence on fixed examples") {
  CHECK(shift_equivalent_rational(zmat({{2}}), zmat({{2, 0}, {1, 0}})));
  CHECK_FALSE(shift_equivalent_rational(zmat({{2}}), zmat({{3}})));
  CHECK(shift_equivalent_rational(zmat({{0, 1}, {0, 0}}), Mat<Z>(0, 0)));
  CHECK(shift_equivalent_rational(Mat<Z>(0, 0), Mat<Z>(0, 0)));
  CHECK_FALSE(shift_equivalent_rational(zmat({{1, 1}, {0, 1}}),
                                        Mat<Z>::identity(2)));
}

TEST_CASE("witness verification on fixed examples") {
  ShiftWitness<Z> w{zmat({{1}}), zmat({{2}}), 1};
  CHECK(verify_shift_witness(zmat({{2}}), zmat({{2}}), w));
  ShiftWitness<Z> bad{zmat({{0}}), zmat({{0}}), 1};
  CHECK_FALSE(verify_shift_witness(zmat({{2}}), zmat({{3}}), bad));
  // a nilpotent matrix is shift equivalent to the empty matrix with lag 2
  ShiftWitness<Z> nil{Mat<Z>(0, 2), Mat<Z>(2, 0), 2};
  CHECK(verify_shift_witness(zmat({{0, 1}, {0, 0}}), Mat<Z>(0, 0), nil));
  // identity witness, lag 0
  ShiftWitness<Z> idw{Mat<Z>::identity(2), Mat<Z>::identity(2), 0};
  CHECK(verify_shift_witness(zmat({{3, 1}, {0, 2}}), zmat({{3, 1}, {0, 2}}), idw));
}

TEST_CASE("witness verification rejects mismatched shapes") {
  ShiftWitness<Z> w{zmat({{1}}), zmat({{2}}), 1};
  CHECK_THROWS_AS(verify_shift_witness(zmat({{2, 0}, {1, 0}}), zmat({{2}}), w),
                  ConleyError);
}

TEST_CASE("integer-level distinguishers") {
  ZReport same = z_distinguishers(zmat({{2}}), zmat({{2, 0}, {1, 0}}));
  CHECK_FALSE(same.distinguished());
  ZReport tr = z_distinguishers(zmat({{2}}), zmat({{3}}));
  CHECK(tr.trace_mismatch);
  CHECK(tr.distinguished());
  ZReport det = z_distinguishers(zmat({{2}}), zmat({{-2}}));
  CHECK(det.distinguished());
}

TEST_CASE("similarity transform intertwines") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + t % 3;
    Mat<Z> A = random_square(rng, n, 3);
    Mat<Z> U = random_unimodular(rng, n);
    Mat<Q> qa = to_rational(A);
    Mat<Q> qb = to_rational(U) * qa * *inverse(to_rational(U));
    auto P = similarity_transform(qa, qb);
    REQUIRE(P.has_value());
    CHECK(*P * qa == qb * *P);
    CHECK(inverse(*P).has_value());
  }
  CHECK_FALSE(similarity_transform(qmat({{2}}), qmat({{3}})).has_value());
}

TEST_CASE("constructed witnesses verify") {
  std::mt19937_64 rng(13);
  int built = 0;
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + t % 3;
    Mat<Z> A = random_square(rng, n, 2);
    Mat<Z> U = random_unimodular(rng, n);
    Mat<Q> qa = to_rational(A);
    Mat<Q> qb = to_rational(U) * qa * *inverse(to_rational(U));
    auto w = construct_shift_witness(qa, qb);
    REQUIRE(w.has_value());
    CHECK(verify_shift_witness(qa, qb, *w));
    ++built;
  }
  CHECK(built == 40);
  // dissimilar Leray forms yield no witness
  CHECK_FALSE(construct_shift_witness(qmat({{2}}), qmat({{3}})).has_value());
}

TEST_CASE("witnesses bridge a nilpotent extension") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 1 + t % 2;
    Mat<Z> A = random_square(rng, n, 2);
    Mat<Z> B = block_diag(A, nilpotent_block(2));
    REQUIRE(shift_equivalent_rational(A, B));
    auto w = construct_shift_witness(to_rational(A), to_rational(B));
    REQUIRE(w.has_value());
    CHECK(verify_shift_witness(to_rational(A), to_rational(B), *w));
  }
}

TEST_CASE("shift equivalence is reflexive, symmetric, and conjugation invariant") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + t % 3;
    Mat<Z> A = random_square(rng, n, 3);
    Mat<Z> B = random_square(rng, n, 3);
    CHECK(shift_equivalent_rational(A, A));
    CHECK(shift_equivalent_rational(A, B) == shift_equivalent_rational(B, A));
    Mat<Z> U = random_unimodular(rng, n);
    Mat<Z> Uinv = *solve_integer(U, Mat<Z>::identity(n));
    CHECK(shift_equivalent_rational(A, U * A * Uinv));
  }
}

TEST_CASE("szymczak morphism equality on fixed examples") {
  Mat<Q> one = qmat({{1}});
  CHECK(szymczak_equivalent(one, one, {one, 0}, {one, 1}));
  Mat<Q> zero = qmat({{0}});
  CHECK(szymczak_equivalent(zero, zero, {zero, 0}, {qmat({{5}}), 1}));
  CHECK_FALSE(szymczak_equivalent(one, one, {one, 0}, {qmat({{2}}), 0}));
}

TEST_CASE("szymczak equality requires intertwining") {
  Mat<Q> f = qmat({{2}});
  Mat<Q> g = qmat({{3}});
  CHECK_THROWS_AS(szymczak_equivalent(f, g, {qmat({{1}}), 0}, {qmat({{1}}), 0}),
                  ConleyError);
}

TEST_CASE("verified witnesses induce szymczak isomorphisms") {
  Mat<Q> A = qmat({{2}});
  Mat<Q> B = qmat({{2}});
  ShiftWitness<Q> w{qmat({{1}}), qmat({{2}}), 1};
  REQUIRE(verify_shift_witness(A, B, w));
  auto [r, s] = szymczak_iso_from_witness(A, B, w);
  // s . r ~ identity on (A), r . s ~ identity on (B)
  SzymczakMorphism sr{s.g * r.g, r.n + s.n};
  SzymczakMorphism rs{r.g * s.g, r.n + s.n};
  CHECK(szymczak_equivalent(A, A, sr, {Mat<Q>::identity(1), 0}));
  CHECK(szymczak_equivalent(B, B, rs, {Mat<Q>::identity(1), 0}));
}

TEST_CASE("triviality of index matrix collections") {
  CHECK(is_trivial_index({zmat({{0, 1}, {0, 0}})}));
  CHECK(is_trivial_index({}));
  CHECK_FALSE(is_trivial_index({zmat({{1}})}));
  CHECK(is_trivial_index({Mat<Z>(0, 0), zmat({{0}})}));
}
