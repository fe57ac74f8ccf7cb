#ifndef CONLEY_HOMOLOGY_HPP
#define CONLEY_HOMOLOGY_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "filtration.hpp"
#include "matrix.hpp"

namespace conley {

// An elementary cube at grid resolution: per-axis lower vertex index plus a
// bitmask of nondegenerate (interval) axes.  Dimension = popcount(mask).
struct Cell {
  std::array<Id, kMaxDim> lo{};
  unsigned mask = 0;
};

std::int64_t cell_key(const Cell& c, const std::array<Id, kMaxDim>& nverts);
Cell cell_of_key(std::int64_t key, const std::array<Id, kMaxDim>& nverts);

// All faces of all boxes of a BoxSet, indexed per dimension.
struct CubicalComplex {
  int dim = 0;
  std::array<Id, kMaxDim> nverts{1, 1, 1};
  std::vector<std::vector<std::int64_t>> keys;  // per dimension, sorted
  std::vector<std::unordered_map<std::int64_t, int>> index;

  int find(int k, std::int64_t key) const {
    auto it = index[k].find(key);
    return it == index[k].end() ? -1 : it->second;
  }
};

CubicalComplex cubical_complex(const BoxGrid& grid, const BoxSet& N);

// Signed faces of a cell: pairs (face, coefficient), alternating-sign
// cubical boundary (upper minus lower on the first interval axis).
std::vector<std::pair<Cell, int>> cell_boundary(const Cell& c);

// bnd[k] maps C_k -> C_{k-1}; bnd[0] has zero rows.
std::vector<Mat<Z>> boundary_matrices(const CubicalComplex& C);

// Cells of N not in the subcomplex of L, with the projected boundary.
struct RelComplex {
  CubicalComplex cx;         // the relative cells themselves
  std::vector<Mat<Z>> bnd;   // projected boundary matrices
};

RelComplex relative_complex(const BoxGrid& grid, const BoxSet& N, const BoxSet& L);

struct HomologyGroups {
  std::vector<std::size_t> betti;        // per dimension 0..d
  std::vector<std::vector<Z>> torsion;   // coefficients > 1, divisibility chain
};

// Homology of one chain degree with tracked generators, for induced maps.
struct DimHomology {
  std::size_t n_cells = 0;
  std::size_t kernel_dim = 0;
  Mat<Z> kernel_basis;   // n_cells x kernel_dim
  Mat<Z> coords;         // kernel_dim x n_cells: cycle -> kernel coordinates
  Snf pres;              // Smith form of the presentation matrix
  std::size_t betti = 0;
  std::vector<Z> torsion;

  // Free-part coordinates of a cycle given as a column chain vector.
  Mat<Z> free_coords(const Mat<Z>& cycle) const;
  // Chain representative of the j-th free generator.
  Mat<Z> free_generator(std::size_t j) const;
};

std::vector<DimHomology> homology_of(const RelComplex& rc);

HomologyGroups relative_homology(const BoxMap& map, const BoxSet& N, const BoxSet& L);

struct IndexMap {
  HomologyGroups groups;
  std::vector<Mat<Z>> matrices;        // per dimension, betti x betti
  std::vector<Mat<Z>> chain_matrices;  // the underlying chain selector
};

IndexMap index_map(const BoxMap& map, const FiltrationPair& pair);

}  // namespace conley

#endif
