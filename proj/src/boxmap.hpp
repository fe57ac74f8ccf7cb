#ifndef CONLEY_BOXMAP_HPP
#define CONLEY_BOXMAP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "digraph.hpp"
#include "grid.hpp"

namespace conley {

enum class Family {
  piecewise_linear,  // params: flat quadruples [a, b, f(a), f(b)] per branch
  quadratic,         // params: [a], f(x) = a x (1 - x)
  henon,             // params: [a, b], f(x,y) = (1 + y - a x^2, b x)
  linear,            // params: row-major A (d*d) then translation b (d)
};

// Parsed form of the System JSON.
struct SystemSpec {
  bool sampled = true;

  // sampled mode
  int dimension = 1;
  std::vector<Ival> bounds;
  Family family = Family::linear;
  std::vector<double> params;
  std::vector<double> offset;  // optional uniform translation of the image
  int depth = 0;
  double padding = 0.0;

  // digraph mode
  std::size_t vertex_count = 0;
  std::vector<std::pair<Id, Id>> edges;
  std::vector<Id> exit_ids;
  std::vector<Id> boundary_ids;
};

// Multivalued outer approximation F of f as a directed graph over boxes.
// In grid mode, f(b) is contained in the union of the closed boxes listed in
// out[b], plus the exterior iff b is in `exits`.
struct BoxMap {
  std::optional<BoxGrid> grid;
  Adjacency out;  // sorted, duplicate-free
  BoxSet exits;
  BoxSet boundary;  // outer-face boxes (grid mode) or declared (digraph mode)

  std::size_t node_count() const { return out.size(); }
  bool grid_mode() const { return grid.has_value(); }
  BoxSet all_boxes() const { return BoxSet::full(node_count()); }
};

inline constexpr std::size_t kDefaultBoxBudget = std::size_t{1} << 22;

BoxMap build_boxmap(const SystemSpec& system, int depth, double padding,
                    std::size_t box_budget = kDefaultBoxBudget);

// Restriction of the box map to N: only edges with both ends in N.
// `leaving` marks vertices whose original image has an edge or exit outside N.
struct SubDigraph {
  BoxSet vertices;
  Adjacency out;
  BoxSet leaving;

  Digraph as_digraph() const { return Digraph{out, vertices, std::nullopt}; }
};

SubDigraph restrict_map(const BoxMap& map, const BoxSet& N);

BoxSet inv_m(const BoxMap& map, const BoxSet& N, std::size_t m);
BoxSet inv(const BoxMap& map, const BoxSet& N);

// Combinatorial surrogate for Int N: in grid mode, boxes of N whose
// 3^d - 1 vertex-adjacent neighbors all lie in N and which avoid the outer
// face of the bounds; in digraph mode, N minus declared boundary vertices.
BoxSet interior(const BoxMap& map, const BoxSet& N);

bool is_isolating_neighborhood(const BoxMap& map, const BoxSet& N);
bool is_isolating_block(const BoxMap& map, const BoxSet& N);

// N^- : boxes of N whose image is not contained in interior(N).
BoxSet exit_set(const BoxMap& map, const BoxSet& N);

// All cyclic SCCs of restrict(map, N) reachable from b (including b's own).
// Returned as the class list (each class a BoxSet).
std::vector<BoxSet> reachable_limit_classes(const BoxMap& map, const BoxSet& N, Id b);

// Image of a single box as a set of ids (edges only, within the grid region).
const std::vector<Id>& image_of(const BoxMap& map, Id b);

// Image of a set: union of images of members, intersected with `within`.
BoxSet image_set(const BoxMap& map, const BoxSet& S, const BoxSet& within);

bool analytic_fixed_points(const SystemSpec& system, std::vector<std::vector<double>>& out);

}  // namespace conley

#endif
