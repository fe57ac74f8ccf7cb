#ifndef CONLEY_DIGRAPH_HPP
#define CONLEY_DIGRAPH_HPP

#include <optional>
#include <vector>

#include "grid.hpp"

namespace conley {

using Adjacency = std::vector<std::vector<Id>>;

// Plain directed graph over vertex ids [0, out.size()).  The active vertex
// set may be a subset of the id range; ids outside `vertices` carry no
// edges.  `basepoint` is set for pointed digraphs (quotient dynamics).
struct Digraph {
  Adjacency out;
  BoxSet vertices;
  std::optional<Id> basepoint;

  std::size_t id_range() const { return out.size(); }
};

Adjacency transpose(const Adjacency& out, std::size_t n);

// Vertices of `within` reachable from `from` (inclusive) along edges whose
// endpoints both lie in `within`.
BoxSet reach_from(const Adjacency& out, const BoxSet& within, const BoxSet& from);
BoxSet coreach_of(const Adjacency& out, const BoxSet& within, const BoxSet& to);

// Largest S <= N such that every vertex of S has an in-edge and an out-edge
// inside S.  Worklist deletion; deterministic fixed point.
BoxSet bi_trim(const Adjacency& out, const BoxSet& N);

// Vertices of N admitting a walk of length m forward and a walk of length m
// backward inside N (m forward-trim passes intersected with m backward-trim
// passes).
BoxSet trim_m(const Adjacency& out, const BoxSet& N, std::size_t m);

// Strongly connected components of the restriction to `within`, in a
// deterministic order (by smallest member id).  `cyclic[i]` marks components
// carrying at least one edge (size > 1 or a self-loop).
struct SccResult {
  std::vector<std::vector<Id>> components;
  std::vector<bool> cyclic;
  std::vector<int> comp_of;  // indexed by id; -1 outside `within`
};
SccResult strongly_connected_components(const Adjacency& out, const BoxSet& within);

}  // namespace conley

#endif
