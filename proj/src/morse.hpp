#ifndef CONLEY_MORSE_HPP
#define CONLEY_MORSE_HPP

#include <optional>
#include <string>

#include "filtration.hpp"

namespace conley {

inline constexpr std::size_t kDefaultIntervalBudget = 4096;

Digraph as_digraph(const PointedDigraph& pd);

// Finest Morse decomposition: the cyclic strongly connected components,
// ordered by reachability (p < q when some path flows from M_q to M_p).
struct MorsePoset {
  std::vector<BoxSet> classes;
  std::vector<std::vector<bool>> below;  // below[p][q] means p < q
  std::optional<std::size_t> basepoint_class;

  std::size_t size() const { return classes.size(); }
  bool less(std::size_t p, std::size_t q) const { return below[p][q]; }
};

// A set of poset elements, kept sorted.
using Interval = std::vector<std::size_t>;

std::vector<BoxSet> recurrent_classes(const Digraph& d);

MorsePoset morse_poset(const Digraph& d, const std::vector<BoxSet>& classes);

// Morse decomposition of the quotient dynamics with the basepoint class
// flagged as the implicit minimum.
MorsePoset associated_decomposition(const PointedDigraph& pd);

bool is_interval(const MorsePoset& poset, const Interval& I);
bool is_attracting_interval(const MorsePoset& poset, const Interval& I);

// All down-sets of the order; throws Budget beyond `budget` many.
std::vector<Interval> attracting_intervals(const MorsePoset& poset,
                                           std::size_t budget = kDefaultIntervalBudget);

// Union of the classes of I plus all connecting orbits between them.
BoxSet morse_set_of_interval(const Digraph& d, const MorsePoset& poset,
                             const Interval& I);

BoxSet connecting_orbits(const Digraph& d, const BoxSet& B, const BoxSet& C);

bool is_attracting_neighborhood(const Digraph& d, const BoxSet& U);

BoxSet attractor_from_neighborhood(const Digraph& d, const BoxSet& U);

BoxSet dual_repeller(const Digraph& d, const BoxSet& X, const BoxSet& U);

BoxSet preimage_attracting(const Digraph& d, const BoxSet& V);

// For each class p: the vertices from which M_p is reachable.  Vertex b has
// p in R(b) exactly when table[p] contains b.
std::vector<BoxSet> reachable_class_table(const Digraph& d, const MorsePoset& poset);

// U(I) = vertices whose reachable classes all lie in I (plus the basepoint
// class, which is implicit in every attracting interval).
BoxSet attracting_neighborhood_of_interval(const Digraph& d, const MorsePoset& poset,
                                           const Interval& I);

// Vertices whose reachable-class set has two or more maximal elements;
// exactly these can break the union identity in poset mode.
std::vector<Id> split_vertices(const Digraph& d, const MorsePoset& poset);

enum class FiltrationMode { chain, poset };

struct MorseFiltration {
  FiltrationMode mode = FiltrationMode::chain;
  std::vector<Interval> intervals;
  std::vector<BoxSet> sets;          // N(I), aligned with intervals
  std::vector<std::size_t> order;    // linear extension (chain mode)
  std::vector<Id> defects;           // union-identity witnesses (poset mode)
};

MorseFiltration morse_filtration(const Digraph& d, const MorsePoset& poset,
                                 FiltrationMode mode,
                                 std::size_t budget = kDefaultIntervalBudget);

struct MorseFiltrationReport {
  bool lattice_ok = true;       // N(I)∩N(J) = N(I∩J) and N(I)∪N(J) = N(I∪J)
  bool nested_pairs_ok = true;  // every J ⊆ I yields a pair isolating M(I∖J)
  std::vector<std::string> failures;

  bool ok() const { return lattice_ok && nested_pairs_ok; }
};

MorseFiltrationReport validate_morse_filtration(const Digraph& d,
                                                const MorsePoset& poset,
                                                const MorseFiltration& f);

}  // namespace conley

#endif
