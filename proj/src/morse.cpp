#include "morse.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace conley {

namespace {

std::string interval_name(const Interval& I) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < I.size(); ++i) os << (i ? "," : "") << I[i];
  os << '}';
  return os.str();
}

Interval with_basepoint(const MorsePoset& poset, Interval I) {
  if (poset.basepoint_class &&
      !std::binary_search(I.begin(), I.end(), *poset.basepoint_class)) {
    I.push_back(*poset.basepoint_class);
    std::sort(I.begin(), I.end());
  }
  return I;
}

// Digraph dynamics wrapped as a geometry-free box map.
BoxMap wrap(const Digraph& d) {
  BoxMap bm;
  bm.out = d.out;
  bm.exits = BoxSet(d.vertices.universe());
  bm.boundary = BoxSet(d.vertices.universe());
  return bm;
}

}  // namespace

Digraph as_digraph(const PointedDigraph& pd) {
  return Digraph{pd.out, pd.vertices, pd.star};
}

std::vector<BoxSet> recurrent_classes(const Digraph& d) {
  BoxSet invset = bi_trim(d.out, d.vertices);
  SccResult scc = strongly_connected_components(d.out, invset);
  std::vector<BoxSet> classes;
  for (std::size_t i = 0; i < scc.components.size(); ++i)
    if (scc.cyclic[i])
      classes.push_back(BoxSet::from_ids(d.vertices.universe(), scc.components[i]));
  return classes;
}

MorsePoset morse_poset(const Digraph& d, const std::vector<BoxSet>& classes) {
  MorsePoset poset;
  poset.classes = classes;
  const std::size_t n = classes.size();
  poset.below.assign(n, std::vector<bool>(n, false));
  for (std::size_t q = 0; q < n; ++q) {
    BoxSet reach = reach_from(d.out, d.vertices, classes[q]);
    for (std::size_t p = 0; p < n; ++p)
      if (p != q && !(reach & classes[p]).empty()) poset.below[p][q] = true;
  }
  if (d.basepoint)
    for (std::size_t p = 0; p < n; ++p)
      if (classes[p].contains(*d.basepoint)) poset.basepoint_class = p;
  return poset;
}

MorsePoset associated_decomposition(const PointedDigraph& pd) {
  Digraph d = as_digraph(pd);
  return morse_poset(d, recurrent_classes(d));
}

bool is_interval(const MorsePoset& poset, const Interval& I) {
  auto in = [&](std::size_t x) { return std::binary_search(I.begin(), I.end(), x); };
  for (std::size_t r = 0; r < poset.size(); ++r) {
    if (in(r)) continue;
    for (std::size_t p : I)
      for (std::size_t q : I)
        if (poset.less(p, r) && poset.less(r, q)) return false;
  }
  return true;
}

bool is_attracting_interval(const MorsePoset& poset, const Interval& I) {
  auto in = [&](std::size_t x) { return std::binary_search(I.begin(), I.end(), x); };
  for (std::size_t q : I)
    for (std::size_t p = 0; p < poset.size(); ++p)
      if (poset.less(p, q) && !in(p)) return false;
  return true;
}

std::vector<Interval> attracting_intervals(const MorsePoset& poset, std::size_t budget) {
  const std::size_t n = poset.size();
  if (n > 63) throw ConleyError(Errc::budget, "too many classes to enumerate");
  std::vector<std::uint64_t> lower(n, 0);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p)
      if (poset.less(p, q)) lower[q] |= std::uint64_t{1} << p;

  std::set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint64_t mask = queue[head];
    for (std::size_t p = 0; p < n; ++p) {
      if (mask & (std::uint64_t{1} << p)) continue;
      if ((lower[p] & ~mask) != 0) continue;
      std::uint64_t next = mask | (std::uint64_t{1} << p);
      if (seen.insert(next).second) {
        if (seen.size() > budget)
          throw ConleyError(Errc::budget, "attracting interval count exceeds budget");
        queue.push_back(next);
      }
    }
  }
  std::vector<Interval> out;
  for (std::uint64_t mask : seen) {
    Interval I;
    for (std::size_t p = 0; p < n; ++p)
      if (mask & (std::uint64_t{1} << p)) I.push_back(p);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

BoxSet morse_set_of_interval(const Digraph& d, const MorsePoset& poset,
                             const Interval& I) {
  if (!is_interval(poset, I))
    throw ConleyError(Errc::not_an_interval, "set is not order-convex");
  BoxSet U(d.vertices.universe());
  for (std::size_t p : I) U = U | poset.classes[p];
  if (U.empty()) return U;
  BoxSet fwd = reach_from(d.out, d.vertices, U);
  BoxSet bwd = coreach_of(d.out, d.vertices, U);
  return U | (fwd & bwd);
}

BoxSet connecting_orbits(const Digraph& d, const BoxSet& B, const BoxSet& C) {
  if (!(B & C).empty())
    throw ConleyError(Errc::invalid_argument, "B and C must be disjoint");
  BoxSet fwd = reach_from(d.out, d.vertices, B);
  BoxSet bwd = coreach_of(d.out, d.vertices, C);
  return (fwd & bwd) - (B | C);
}

bool is_attracting_neighborhood(const Digraph& d, const BoxSet& U) {
  if (!U.subset_of(d.vertices)) return false;
  bool ok = true;
  U.for_each([&](Id u) {
    if (static_cast<std::size_t>(u) >= d.out.size()) return;
    for (Id v : d.out[u])
      if (d.vertices.contains(v) && !U.contains(v)) ok = false;
  });
  return ok;
}

BoxSet attractor_from_neighborhood(const Digraph& d, const BoxSet& U) {
  if (!is_attracting_neighborhood(d, U))
    throw ConleyError(Errc::not_attracting, "U is not forward closed");
  BoxSet cur = U;
  for (;;) {
    BoxSet next(U.universe());
    cur.for_each([&](Id u) {
      for (Id v : d.out[u])
        if (cur.contains(v)) next.insert(v);
    });
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

BoxSet dual_repeller(const Digraph& d, const BoxSet& X, const BoxSet& U) {
  return bi_trim(d.out, X - U);
}

BoxSet preimage_attracting(const Digraph& d, const BoxSet& V) {
  if (!is_attracting_neighborhood(d, V))
    throw ConleyError(Errc::not_attracting, "V is not forward closed");
  BoxSet out(d.vertices.universe());
  d.vertices.for_each([&](Id u) {
    if (static_cast<std::size_t>(u) < d.out.size())
      for (Id v : d.out[u])
        if (d.vertices.contains(v) && !V.contains(v)) return;
    out.insert(u);
  });
  return out;
}

std::vector<BoxSet> reachable_class_table(const Digraph& d, const MorsePoset& poset) {
  std::vector<BoxSet> table;
  table.reserve(poset.size());
  for (const BoxSet& cls : poset.classes)
    table.push_back(coreach_of(d.out, d.vertices, cls));
  return table;
}

BoxSet attracting_neighborhood_of_interval(const Digraph& d, const MorsePoset& poset,
                                           const Interval& I) {
  if (!is_attracting_interval(poset, I))
    throw ConleyError(Errc::not_attracting_interval, "interval is not down-closed");
  Interval eff = with_basepoint(poset, I);
  auto table = reachable_class_table(d, poset);
  BoxSet U = d.vertices;
  for (std::size_t p = 0; p < poset.size(); ++p)
    if (!std::binary_search(eff.begin(), eff.end(), p)) U = U - table[p];
  return U;
}

std::vector<Id> split_vertices(const Digraph& d, const MorsePoset& poset) {
  auto table = reachable_class_table(d, poset);
  std::vector<Id> out;
  d.vertices.for_each([&](Id b) {
    std::vector<std::size_t> R;
    for (std::size_t p = 0; p < poset.size(); ++p)
      if (table[p].contains(b)) R.push_back(p);
    std::size_t maximal = 0;
    for (std::size_t p : R) {
      bool top = true;
      for (std::size_t q : R)
        if (poset.less(p, q)) top = false;
      if (top) ++maximal;
    }
    if (maximal >= 2) out.push_back(b);
  });
  return out;
}

MorseFiltration morse_filtration(const Digraph& d, const MorsePoset& poset,
                                 FiltrationMode mode, std::size_t budget) {
  MorseFiltration f;
  f.mode = mode;
  const std::size_t n = poset.size();

  if (mode == FiltrationMode::chain) {
    std::vector<bool> placed(n, false);
    while (f.order.size() < n) {
      std::size_t pick = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (placed[q]) continue;
        bool minimal = true;
        for (std::size_t p = 0; p < n; ++p)
          if (!placed[p] && poset.less(p, q)) minimal = false;
        if (!minimal) continue;
        if (pick == n || (poset.basepoint_class && q == *poset.basepoint_class))
          pick = q;
        if (poset.basepoint_class && pick == *poset.basepoint_class) break;
      }
      placed[pick] = true;
      f.order.push_back(pick);
    }
    for (std::size_t k = 0; k <= n; ++k) {
      Interval I(f.order.begin(), f.order.begin() + k);
      std::sort(I.begin(), I.end());
      f.sets.push_back(attracting_neighborhood_of_interval(d, poset, I));
      f.intervals.push_back(std::move(I));
    }
    return f;
  }

  f.intervals = attracting_intervals(poset, budget);
  std::map<Interval, std::size_t> where;
  for (std::size_t i = 0; i < f.intervals.size(); ++i) {
    f.sets.push_back(attracting_neighborhood_of_interval(d, poset, f.intervals[i]));
    where[f.intervals[i]] = i;
  }
  std::set<Id> defects;
  for (std::size_t i = 0; i < f.intervals.size(); ++i)
    for (std::size_t j = i + 1; j < f.intervals.size(); ++j) {
      Interval un;
      std::set_union(f.intervals[i].begin(), f.intervals[i].end(),
                     f.intervals[j].begin(), f.intervals[j].end(),
                     std::back_inserter(un));
      BoxSet expected = f.sets[where.at(un)];
      BoxSet got = f.sets[i] | f.sets[j];
      (expected - got).for_each([&](Id b) { defects.insert(b); });
    }
  f.defects.assign(defects.begin(), defects.end());
  return f;
}

MorseFiltrationReport validate_morse_filtration(const Digraph& d,
                                                const MorsePoset& poset,
                                                const MorseFiltration& f) {
  MorseFiltrationReport rep;
  BoxMap bm = wrap(d);
  std::map<Interval, std::size_t> where;
  for (std::size_t i = 0; i < f.intervals.size(); ++i) where[f.intervals[i]] = i;

  for (std::size_t i = 0; i < f.intervals.size(); ++i)
    for (std::size_t j = i; j < f.intervals.size(); ++j) {
      Interval un, in;
      std::set_union(f.intervals[i].begin(), f.intervals[i].end(),
                     f.intervals[j].begin(), f.intervals[j].end(),
                     std::back_inserter(un));
      std::set_intersection(f.intervals[i].begin(), f.intervals[i].end(),
                            f.intervals[j].begin(), f.intervals[j].end(),
                            std::back_inserter(in));
      auto iu = where.find(un), ii = where.find(in);
      if (iu != where.end() && !((f.sets[i] | f.sets[j]) == f.sets[iu->second])) {
        rep.lattice_ok = false;
        rep.failures.push_back("union identity fails at " +
                               interval_name(f.intervals[i]) + " and " +
                               interval_name(f.intervals[j]));
      }
      if (ii != where.end() && !((f.sets[i] & f.sets[j]) == f.sets[ii->second])) {
        rep.lattice_ok = false;
        rep.failures.push_back("intersection identity fails at " +
                               interval_name(f.intervals[i]) + " and " +
                               interval_name(f.intervals[j]));
      }
    }

  for (std::size_t i = 0; i < f.intervals.size(); ++i)
    for (std::size_t j = 0; j < f.intervals.size(); ++j) {
      if (i == j) continue;
      const Interval &I = f.intervals[i], &J = f.intervals[j];
      if (!std::includes(I.begin(), I.end(), J.begin(), J.end())) continue;
      const BoxSet &NI = f.sets[i], &NJ = f.sets[j];
      if (!NJ.subset_of(NI)) {
        rep.nested_pairs_ok = false;
        rep.failures.push_back("nesting fails at " + interval_name(I) + " over " +
                               interval_name(J));
        continue;
      }
      BoxSet core = NI - NJ;
      PairValidity v = validate_filtration_pair(bm, NI, NJ);
      Interval ieff = with_basepoint(poset, I), jeff = with_basepoint(poset, J);
      Interval diff;
      std::set_difference(ieff.begin(), ieff.end(), jeff.begin(), jeff.end(),
                          std::back_inserter(diff));
      bool isolation = is_isolating_neighborhood(bm, core) &&
                       bi_trim(d.out, core) == morse_set_of_interval(d, poset, diff);
      if (!(v.covers_exit && v.image_escapes && isolation)) {
        rep.nested_pairs_ok = false;
        rep.failures.push_back("pair axioms fail at " + interval_name(I) + " over " +
                               interval_name(J));
      }
    }
  return rep;
}

}  // namespace conley
