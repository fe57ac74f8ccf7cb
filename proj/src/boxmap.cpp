#include "boxmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace conley {

namespace {

struct Hull {
  std::array<Ival, kMaxDim> iv;
};

Ival mul_scalar(double a, Ival x) {
  return a >= 0 ? Ival{a * x.lo, a * x.hi} : Ival{a * x.hi, a * x.lo};
}

Ival add(Ival a, Ival b) { return {a.lo + b.lo, a.hi + b.hi}; }

Ival square(Ival x) {
  double lo = (x.lo <= 0.0 && 0.0 <= x.hi) ? 0.0
                                           : std::min(x.lo * x.lo, x.hi * x.hi);
  return {lo, std::max(x.lo * x.lo, x.hi * x.hi)};
}

// Image hulls of one box; a box may produce several hulls (one per branch of
// a piecewise map).  `undefined` is set when part of the box lies outside the
// map's domain; such points are treated as escaping.
void image_hulls(const SystemSpec& sys, const std::array<Ival, kMaxDim>& box,
                 std::vector<Hull>& hulls, bool& undefined) {
  hulls.clear();
  undefined = false;
  switch (sys.family) {
    case Family::piecewise_linear: {
      if (sys.dimension != 1 || sys.params.size() < 4 || sys.params.size() % 4 != 0)
        throw ConleyError(Errc::invalid_argument,
                          "piecewise_linear wants 1D and branch quadruples");
      const Ival x = box[0];
      std::vector<Ival> domains;
      for (std::size_t i = 0; i < sys.params.size(); i += 4) {
        double a = sys.params[i], b = sys.params[i + 1];
        double fa = sys.params[i + 2], fb = sys.params[i + 3];
        if (!(a < b))
          throw ConleyError(Errc::invalid_argument, "branch with empty domain");
        domains.push_back({a, b});
        double l = std::max(x.lo, a), h = std::min(x.hi, b);
        if (l > h) continue;
        double slope = (fb - fa) / (b - a);
        double gl = fa + slope * (l - a), gh = fa + slope * (h - a);
        Hull hu;
        hu.iv[0] = {std::min(gl, gh), std::max(gl, gh)};
        hulls.push_back(hu);
      }
      // Domain coverage check for the box.
      std::sort(domains.begin(), domains.end(),
                [](Ival a, Ival b) { return a.lo < b.lo; });
      double covered_to = x.lo;
      for (const Ival& d : domains) {
        if (d.lo > covered_to) break;
        covered_to = std::max(covered_to, d.hi);
      }
      if (covered_to < x.hi) undefined = true;
      break;
    }
    case Family::quadratic: {
      if (sys.dimension != 1 || sys.params.size() != 1)
        throw ConleyError(Errc::invalid_argument, "quadratic wants 1D, params [a]");
      double a = sys.params[0];
      const Ival x = box[0];
      double v0 = x.lo * (1.0 - x.lo), v1 = x.hi * (1.0 - x.hi);
      double lo = std::min(v0, v1), hi = std::max(v0, v1);
      if (x.lo <= 0.5 && 0.5 <= x.hi) hi = std::max(hi, 0.25);
      Hull hu;
      hu.iv[0] = mul_scalar(a, {lo, hi});
      hulls.push_back(hu);
      break;
    }
    case Family::henon: {
      if (sys.dimension != 2 || sys.params.size() != 2)
        throw ConleyError(Errc::invalid_argument, "henon wants 2D, params [a,b]");
      double a = sys.params[0], b = sys.params[1];
      Hull hu;
      hu.iv[0] = add({1.0, 1.0}, add(box[1], mul_scalar(-a, square(box[0]))));
      hu.iv[1] = mul_scalar(b, box[0]);
      hulls.push_back(hu);
      break;
    }
    case Family::linear: {
      const int d = sys.dimension;
      if (sys.params.size() != static_cast<std::size_t>(d * d + d))
        throw ConleyError(Errc::invalid_argument, "linear wants d*d + d params");
      Hull hu;
      for (int i = 0; i < d; ++i) {
        Ival acc = {sys.params[d * d + i], sys.params[d * d + i]};
        for (int j = 0; j < d; ++j)
          acc = add(acc, mul_scalar(sys.params[i * d + j], box[j]));
        hu.iv[i] = acc;
      }
      hulls.push_back(hu);
      break;
    }
  }
  for (auto& hu : hulls)
    for (int a2 = 0; a2 < sys.dimension; ++a2)
      if (static_cast<std::size_t>(a2) < sys.offset.size()) {
        hu.iv[a2].lo += sys.offset[a2];
        hu.iv[a2].hi += sys.offset[a2];
      }
}

// Smallest box index touching coordinate lo (closed boxes: touching counts).
Id lowest_touching(double base, double w, Id n, double lo) {
  Id j = static_cast<Id>(std::floor((lo - base) / w)) - 2;
  j = std::clamp<Id>(j, 0, n - 1);
  while (j < n - 1 && !(base + static_cast<double>(j + 1) * w >= lo)) ++j;
  while (j > 0 && base + static_cast<double>(j) * w >= lo) --j;
  return j;
}

Id highest_touching(double base, double w, Id n, double hi) {
  Id j = static_cast<Id>(std::ceil((hi - base) / w)) + 2;
  j = std::clamp<Id>(j, 0, n - 1);
  while (j > 0 && !(base + static_cast<double>(j) * w <= hi)) --j;
  while (j < n - 1 && base + static_cast<double>(j + 1) * w <= hi) ++j;
  return j;
}

}  // namespace

BoxMap build_boxmap(const SystemSpec& sys, int depth, double padding,
                    std::size_t box_budget) {
  if (padding < 0)
    throw ConleyError(Errc::invalid_argument, "padding must be nonnegative");

  BoxMap map;
  if (!sys.sampled) {
    map.out.assign(sys.vertex_count, {});
    for (auto [u, v] : sys.edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= sys.vertex_count ||
          static_cast<std::size_t>(v) >= sys.vertex_count)
        throw ConleyError(Errc::invalid_argument, "edge endpoint out of range");
      map.out[u].push_back(v);
    }
    for (auto& row : map.out) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    map.exits = BoxSet::from_ids(sys.vertex_count, sys.exit_ids);
    map.boundary = BoxSet::from_ids(sys.vertex_count, sys.boundary_ids);
    return map;
  }

  const int d = sys.dimension;
  std::vector<Id> subs(d);
  double total = 1.0;
  for (int a = 0; a < d; ++a) {
    subs[a] = Id{1} << depth;
    total *= static_cast<double>(subs[a]);
  }
  if (total > static_cast<double>(box_budget))
    throw ConleyError(Errc::box_budget, "depth exceeds the box budget");

  BoxGrid grid(d, sys.bounds, subs);
  const Id n = grid.box_count();
  map.out.assign(n, {});
  map.exits = BoxSet(n);
  map.boundary = BoxSet(n);

  std::vector<Hull> hulls;
  for (Id b = 0; b < n; ++b) {
    if (grid.on_outer_face(b)) map.boundary.insert(b);
    std::array<Ival, kMaxDim> box{};
    for (int a = 0; a < d; ++a) box[a] = grid.box_interval(b, a);
    bool undefined = false;
    image_hulls(sys, box, hulls, undefined);
    if (undefined) map.exits.insert(b);
    std::vector<Id>& row = map.out[b];
    for (const Hull& hu : hulls) {
      bool leaves = false, disjoint = false;
      std::array<Id, kMaxDim> jmin{}, jmax{};
      for (int a = 0; a < d; ++a) {
        Ival h = hu.iv[a];
        if (!std::isfinite(h.lo) || !std::isfinite(h.hi))
          throw ConleyError(Errc::nonfinite_hull, "image hull is not finite");
        h.lo -= padding;
        h.hi += padding;
        const Ival bd = sys.bounds[a];
        if (h.lo < bd.lo || h.hi > bd.hi) leaves = true;
        double clo = std::max(h.lo, bd.lo), chi = std::min(h.hi, bd.hi);
        if (clo > chi) {
          disjoint = true;
          break;
        }
        double w = grid.box_width(a);
        jmin[a] = lowest_touching(bd.lo, w, subs[a], clo);
        jmax[a] = highest_touching(bd.lo, w, subs[a], chi);
      }
      if (leaves) map.exits.insert(b);
      if (disjoint) continue;
      std::array<Id, kMaxDim> c = jmin;
      for (;;) {
        row.push_back(grid.id_of(c));
        int a = d - 1;
        while (a >= 0) {
          if (++c[a] <= jmax[a]) break;
          c[a] = jmin[a];
          --a;
        }
        if (a < 0) break;
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  map.grid = std::move(grid);
  return map;
}

SubDigraph restrict_map(const BoxMap& map, const BoxSet& N) {
  SubDigraph r;
  r.vertices = N;
  r.out.assign(map.node_count(), {});
  r.leaving = BoxSet(map.node_count());
  N.for_each([&](Id u) {
    bool leaves = map.exits.contains(u);
    for (Id v : map.out[u]) {
      if (N.contains(v))
        r.out[u].push_back(v);
      else
        leaves = true;
    }
    if (leaves) r.leaving.insert(u);
  });
  return r;
}

BoxSet inv_m(const BoxMap& map, const BoxSet& N, std::size_t m) {
  return trim_m(map.out, N, m);
}

BoxSet inv(const BoxMap& map, const BoxSet& N) { return bi_trim(map.out, N); }

BoxSet interior(const BoxMap& map, const BoxSet& N) {
  if (!map.grid_mode()) return N - map.boundary;
  const BoxGrid& g = *map.grid;
  const int d = g.dimension();
  BoxSet result(map.node_count());
  N.for_each([&](Id b) {
    if (g.on_outer_face(b)) return;
    auto c = g.coords(b);
    std::array<Id, kMaxDim> off{};
    for (int a = 0; a < d; ++a) off[a] = -1;
    for (;;) {
      bool all_zero = true;
      std::array<Id, kMaxDim> nb = c;
      for (int a = 0; a < d; ++a) {
        if (off[a] != 0) all_zero = false;
        nb[a] += off[a];
      }
      if (!all_zero && !N.contains(g.id_of(nb))) return;
      int a = d - 1;
      while (a >= 0) {
        if (++off[a] <= 1) break;
        off[a] = -1;
        --a;
      }
      if (a < 0) break;
    }
    result.insert(b);
  });
  return result;
}

bool is_isolating_neighborhood(const BoxMap& map, const BoxSet& N) {
  return inv(map, N).subset_of(interior(map, N));
}

bool is_isolating_block(const BoxMap& map, const BoxSet& N) {
  BoxSet in_from_n(map.node_count()), out_to_n(map.node_count());
  N.for_each([&](Id u) {
    for (Id v : map.out[u])
      if (N.contains(v)) {
        in_from_n.insert(v);
        out_to_n.insert(u);
      }
  });
  BoxSet core = (in_from_n & out_to_n) & N;
  return core.subset_of(interior(map, N));
}

BoxSet exit_set(const BoxMap& map, const BoxSet& N) {
  BoxSet result(map.node_count());
  BoxSet inter = interior(map, N);
  N.for_each([&](Id b) {
    if (map.exits.contains(b)) {
      result.insert(b);
      return;
    }
    for (Id v : map.out[b])
      if (!inter.contains(v)) {
        result.insert(b);
        return;
      }
  });
  return result;
}

std::vector<BoxSet> reachable_limit_classes(const BoxMap& map, const BoxSet& N, Id b) {
  if (!N.contains(b))
    throw ConleyError(Errc::invalid_argument, "base vertex must lie in N");
  SubDigraph r = restrict_map(map, N);
  SccResult scc = strongly_connected_components(r.out, N);
  BoxSet from(map.node_count());
  from.insert(b);
  BoxSet reached = reach_from(r.out, N, from);
  std::vector<BoxSet> classes;
  for (std::size_t i = 0; i < scc.components.size(); ++i) {
    if (!scc.cyclic[i]) continue;
    if (reached.contains(scc.components[i].front()))
      classes.push_back(BoxSet::from_ids(map.node_count(), scc.components[i]));
  }
  return classes;
}

const std::vector<Id>& image_of(const BoxMap& map, Id b) {
  if (b < 0 || static_cast<std::size_t>(b) >= map.node_count())
    throw ConleyError(Errc::invalid_argument, "box id out of range");
  return map.out[b];
}

BoxSet image_set(const BoxMap& map, const BoxSet& S, const BoxSet& within) {
  BoxSet img(map.node_count());
  S.for_each([&](Id u) {
    for (Id v : map.out[u])
      if (within.contains(v)) img.insert(v);
  });
  return img;
}

bool analytic_fixed_points(const SystemSpec& sys, std::vector<std::vector<double>>& out) {
  out.clear();
  if (!sys.sampled) return false;
  // Only exact where a closed form exists; the translation offset is
  // supported for linear maps only.
  auto off = [&](int a) {
    return static_cast<std::size_t>(a) < sys.offset.size() ? sys.offset[a] : 0.0;
  };
  switch (sys.family) {
    case Family::quadratic: {
      if (off(0) != 0.0) return false;
      double a = sys.params[0];
      out.push_back({0.0});
      if (a != 0.0) out.push_back({1.0 - 1.0 / a});
      return true;
    }
    case Family::piecewise_linear: {
      if (off(0) != 0.0) return false;
      for (std::size_t i = 0; i < sys.params.size(); i += 4) {
        double a = sys.params[i], b = sys.params[i + 1];
        double fa = sys.params[i + 2], fb = sys.params[i + 3];
        double slope = (fb - fa) / (b - a);
        if (slope == 1.0) continue;
        double x = (fa - slope * a) / (1.0 - slope);
        if (x >= a && x <= b) out.push_back({x});
      }
      return true;
    }
    case Family::henon: {
      double a = sys.params[0], b = sys.params[1];
      if (a == 0.0 || off(0) != 0.0 || off(1) != 0.0) return false;
      double disc = (1.0 - b) * (1.0 - b) + 4.0 * a;
      if (disc < 0) return true;
      for (double s : {1.0, -1.0}) {
        double x = (-(1.0 - b) + s * std::sqrt(disc)) / (2.0 * a);
        out.push_back({x, b * x});
      }
      return true;
    }
    case Family::linear: {
      const int d = sys.dimension;
      // Solve (I - A) x = b by Gaussian elimination, d <= 3.
      double M[kMaxDim][kMaxDim + 1] = {};
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
          M[i][j] = (i == j ? 1.0 : 0.0) - sys.params[i * d + j];
        M[i][d] = sys.params[d * d + i] + off(i);
      }
      for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r2 = col + 1; r2 < d; ++r2)
          if (std::abs(M[r2][col]) > std::abs(M[piv][col])) piv = r2;
        if (std::abs(M[piv][col]) < 1e-12) return false;
        std::swap(M[piv], M[col]);
        for (int r2 = 0; r2 < d; ++r2) {
          if (r2 == col) continue;
          double f = M[r2][col] / M[col][col];
          for (int c2 = col; c2 <= d; ++c2) M[r2][c2] -= f * M[col][c2];
        }
      }
      std::vector<double> x(d);
      for (int i = 0; i < d; ++i) x[i] = M[i][d] / M[i][i];
      out.push_back(x);
      return true;
    }
  }
  return false;
}

}  // namespace conley
