#include "filtration.hpp"

#include "errors.hpp"

namespace conley {

BoxSet chain_neighborhood(const BoxMap& map, const BoxSet& N, const BoxSet& S) {
  if (!S.subset_of(N))
    throw ConleyError(Errc::invalid_argument, "S must be contained in N");
  SubDigraph r = restrict_map(map, N);
  BoxSet fwd = reach_from(r.out, N, S);
  BoxSet bwd = coreach_of(r.out, N, S);
  return S | (fwd & bwd);
}

std::optional<BoxSet> isolating_block_in(const BoxMap& map, const BoxSet& N) {
  if (!is_isolating_neighborhood(map, N))
    throw ConleyError(Errc::invalid_argument, "N is not an isolating neighborhood");
  BoxSet B = chain_neighborhood(map, N, inv(map, N));
  if (is_isolating_block(map, B)) return B;
  return std::nullopt;
}

BoxSet grow_exit_collar(const BoxMap& map, const BoxSet& N) {
  BoxSet L = exit_set(map, N);
  for (;;) {
    BoxSet grown = L | image_set(map, L, N);
    if (grown == L) break;
    L = std::move(grown);
  }
  if ((L & inv(map, N)).size() != 0)
    throw ConleyError(Errc::degenerate_pair,
                      "collar reached the invariant set; refine the grid");
  return L;
}

PairValidity validate_filtration_pair(const BoxMap& map, const BoxSet& N,
                                      const BoxSet& L) {
  if (!L.subset_of(N))
    throw ConleyError(Errc::invalid_argument, "L must be contained in N");
  PairValidity v;
  BoxSet core = N - L;
  v.isolates = is_isolating_neighborhood(map, core) && inv(map, core) == inv(map, N);
  v.covers_exit = exit_set(map, N).subset_of(L);
  v.image_escapes = (image_set(map, L, core)).size() == 0;
  return v;
}

FiltrationPair make_pair(const BoxMap& map, const BoxSet& N, const BoxSet& L) {
  return FiltrationPair{N, L, validate_filtration_pair(map, N, L)};
}

PointedDigraph pointed_map(const BoxMap& map, const FiltrationPair& pair) {
  if (!pair.valid.ok())
    throw ConleyError(Errc::invalid_pair, "pair does not satisfy all conditions");
  const std::size_t n = map.node_count();
  const Id star = static_cast<Id>(n);
  PointedDigraph pd;
  pd.star = star;
  pd.out.assign(n + 1, {});
  pd.vertices = BoxSet(n + 1);
  BoxSet core = pair.N - pair.L;
  core.for_each([&](Id b) {
    pd.vertices.insert(b);
    bool to_star = map.exits.contains(b);
    for (Id v : map.out[b]) {
      if (core.contains(v))
        pd.out[b].push_back(v);
      else
        to_star = true;
    }
    if (to_star) pd.out[b].push_back(star);
  });
  pd.vertices.insert(star);
  pd.out[star].push_back(star);
  return pd;
}

RobustnessRecord robustness_check(const BoxMap& map2, const BoxMap& map,
                                  const FiltrationPair& pair) {
  if (map2.node_count() != map.node_count() ||
      map2.grid_mode() != map.grid_mode() ||
      (map2.grid_mode() && !(*map2.grid == *map.grid)))
    throw ConleyError(Errc::grid_mismatch, "maps live on different grids");
  RobustnessRecord rec;
  rec.valid = validate_filtration_pair(map2, pair.N, pair.L);
  BoxSet core = pair.N - pair.L;
  rec.inv_changed = !(inv(map2, core) == inv(map, core));
  return rec;
}

}  // namespace conley
