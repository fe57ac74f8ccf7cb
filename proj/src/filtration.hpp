#ifndef CONLEY_FILTRATION_HPP
#define CONLEY_FILTRATION_HPP

#include <optional>

#include "boxmap.hpp"

namespace conley {

// The three conditions of a valid pair: N\L isolates the same invariant set
// as N, L covers the exit set of N, and the image of L avoids N\L.
struct PairValidity {
  bool isolates = false;
  bool covers_exit = false;
  bool image_escapes = false;

  bool ok() const { return isolates && covers_exit && image_escapes; }
};

struct FiltrationPair {
  BoxSet N;
  BoxSet L;
  PairValidity valid;
};

// Quotient dynamics on (N\L) with L collapsed to an absorbing basepoint.
// Vertex ids are the original box ids; `star` is one past the id range.
struct PointedDigraph {
  Adjacency out;
  BoxSet vertices;
  Id star = 0;

  std::size_t id_range() const { return out.size(); }
};

// Boxes of N lying on some path from S back to S (inclusive of S).
BoxSet chain_neighborhood(const BoxMap& map, const BoxSet& N, const BoxSet& S);

// Chain neighborhood of inv(N) when it verifies as an isolating block;
// nullopt is the refine signal (increase depth and retry).
std::optional<BoxSet> isolating_block_in(const BoxMap& map, const BoxSet& N);

// Forward saturation of the exit set of N inside N.
BoxSet grow_exit_collar(const BoxMap& map, const BoxSet& N);

PairValidity validate_filtration_pair(const BoxMap& map, const BoxSet& N,
                                      const BoxSet& L);

FiltrationPair make_pair(const BoxMap& map, const BoxSet& N, const BoxSet& L);

PointedDigraph pointed_map(const BoxMap& map, const FiltrationPair& pair);

struct RobustnessRecord {
  PairValidity valid;
  bool inv_changed = false;
};

// Does the pair built for `map` survive the perturbed map?
RobustnessRecord robustness_check(const BoxMap& map2, const BoxMap& map,
                                  const FiltrationPair& pair);

}  // namespace conley

#endif
