#ifndef CONLEY_ALGEBRA_HPP
#define CONLEY_ALGEBRA_HPP

#include <optional>

#include "matrix.hpp"

namespace conley {

// Polynomial over Q, ascending coefficients, no trailing zeros.
using Poly = std::vector<Q>;

Poly char_polynomial(const Mat<Q>& A);  // monic, degree = size

// Restriction of A to its eventual image: the invertible canonical
// representative of A's shift-equivalence class over the rationals.
struct LerayForm {
  std::size_t reduced_dim = 0;
  Mat<Q> action;  // invertible reduced_dim x reduced_dim
  Mat<Q> basis;   // n x reduced_dim, columns span image(A^n)
  Poly charpoly;  // of the action
};

LerayForm leray_reduction(const Mat<Q>& A);
LerayForm leray_reduction(const Mat<Z>& A);

// Invariant factors of xI - A: nonconstant monic, each dividing the next.
std::vector<Poly> invariant_factors(const Mat<Q>& A);

bool similar_rational(const Mat<Q>& A, const Mat<Q>& B);

// Shift equivalence over Q: the Leray forms are similar.
bool shift_equivalent_rational(const Mat<Z>& A, const Mat<Z>& B);

template <typename T>
struct ShiftWitness {
  Mat<T> R;  // domain of A -> domain of B
  Mat<T> S;  // domain of B -> domain of A
  std::size_t lag = 0;
};

// Exact check of RA = BR, SB = AS, RS = B^lag, SR = A^lag.
bool verify_shift_witness(const Mat<Z>& A, const Mat<Z>& B, const ShiftWitness<Z>& w);
bool verify_shift_witness(const Mat<Q>& A, const Mat<Q>& B, const ShiftWitness<Q>& w);

// Integer-level obstructions beyond the rational verdict.
struct ZReport {
  bool trace_mismatch = false;
  bool charpoly_mismatch = false;
  bool det_mismatch = false;

  bool distinguished() const {
    return trace_mismatch || charpoly_mismatch || det_mismatch;
  }
};

ZReport z_distinguishers(const Mat<Z>& A, const Mat<Z>& B);

// An invertible P with P * A = B * P, when A and B are similar.
std::optional<Mat<Q>> similarity_transform(const Mat<Q>& A, const Mat<Q>& B);

// A rational witness A ~ B through the two Leray forms; nullopt when the
// forms are not similar.
std::optional<ShiftWitness<Q>> construct_shift_witness(const Mat<Q>& A, const Mat<Q>& B);

// A morphism [g, n] from (X, f) to (X', f') in the category of objects with
// an endomorphism; g must satisfy g f = f' g.
struct SzymczakMorphism {
  Mat<Q> g;
  std::size_t n = 0;
};

// [g1, n1] = [g2, n2] iff g1 f^{n2+k} = g2 f^{n1+k} for some k <= size(f).
bool szymczak_equivalent(const Mat<Q>& f, const Mat<Q>& f2,
                         const SzymczakMorphism& m1, const SzymczakMorphism& m2);

// The isomorphism pair ([R, lag], [S, 0]) carried by a verified witness.
std::pair<SzymczakMorphism, SzymczakMorphism> szymczak_iso_from_witness(
    const Mat<Q>& A, const Mat<Q>& B, const ShiftWitness<Q>& w);

// Index triviality: every dimension reduces to the zero-dimensional map.
bool is_trivial_index(const std::vector<Mat<Z>>& index_matrices);

}  // namespace conley

#endif
