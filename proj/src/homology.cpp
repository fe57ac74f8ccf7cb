#include "homology.hpp"

#include <algorithm>
#include <bit>

#include "errors.hpp"

namespace conley {

std::int64_t cell_key(const Cell& c, const std::array<Id, kMaxDim>& nverts) {
  std::int64_t k = 0;
  for (int a = 0; a < kMaxDim; ++a) k = k * nverts[a] + c.lo[a];
  return k * 8 + static_cast<std::int64_t>(c.mask);
}

Cell cell_of_key(std::int64_t key, const std::array<Id, kMaxDim>& nverts) {
  Cell c;
  c.mask = static_cast<unsigned>(key % 8);
  key /= 8;
  for (int a = kMaxDim - 1; a >= 0; --a) {
    c.lo[a] = key % nverts[a];
    key /= nverts[a];
  }
  return c;
}

CubicalComplex cubical_complex(const BoxGrid& grid, const BoxSet& N) {
  CubicalComplex C;
  C.dim = grid.dimension();
  for (int a = 0; a < C.dim; ++a) C.nverts[a] = grid.subdivisions()[a] + 1;
  C.keys.resize(C.dim + 1);
  C.index.resize(C.dim + 1);

  N.for_each([&](Id b) {
    auto bc = grid.coords(b);
    // Per axis: 0 = lower vertex, 1 = upper vertex, 2 = interval.
    std::array<int, kMaxDim> ch{};
    for (;;) {
      Cell c;
      int k = 0;
      for (int a = 0; a < C.dim; ++a) {
        if (ch[a] == 2) {
          c.lo[a] = bc[a];
          c.mask |= 1u << a;
          ++k;
        } else {
          c.lo[a] = bc[a] + ch[a];
        }
      }
      C.index[k].emplace(cell_key(c, C.nverts), 0);
      int a = C.dim - 1;
      while (a >= 0) {
        if (++ch[a] <= 2) break;
        ch[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
  });

  for (int k = 0; k <= C.dim; ++k) {
    C.keys[k].reserve(C.index[k].size());
    for (auto& [key, _] : C.index[k]) C.keys[k].push_back(key);
    std::sort(C.keys[k].begin(), C.keys[k].end());
    for (std::size_t i = 0; i < C.keys[k].size(); ++i)
      C.index[k][C.keys[k][i]] = static_cast<int>(i);
  }
  return C;
}

std::vector<std::pair<Cell, int>> cell_boundary(const Cell& c) {
  std::vector<std::pair<Cell, int>> faces;
  int sign = 1;
  for (int a = 0; a < kMaxDim; ++a) {
    if (!(c.mask & (1u << a))) continue;
    Cell lower = c, upper = c;
    lower.mask &= ~(1u << a);
    upper.mask &= ~(1u << a);
    upper.lo[a] += 1;
    faces.emplace_back(upper, sign);
    faces.emplace_back(lower, -sign);
    sign = -sign;
  }
  return faces;
}

std::vector<Mat<Z>> boundary_matrices(const CubicalComplex& C) {
  std::vector<Mat<Z>> bnd(C.dim + 1);
  bnd[0] = Mat<Z>(0, C.keys[0].size());
  for (int k = 1; k <= C.dim; ++k) {
    bnd[k] = Mat<Z>(C.keys[k - 1].size(), C.keys[k].size());
    for (std::size_t j = 0; j < C.keys[k].size(); ++j) {
      Cell c = cell_of_key(C.keys[k][j], C.nverts);
      for (auto& [face, coef] : cell_boundary(c)) {
        int i = C.find(k - 1, cell_key(face, C.nverts));
        if (i >= 0) bnd[k](i, j) += coef;
      }
    }
  }
  return bnd;
}

RelComplex relative_complex(const BoxGrid& grid, const BoxSet& N, const BoxSet& L) {
  CubicalComplex full = cubical_complex(grid, N);
  CubicalComplex sub = cubical_complex(grid, L);

  RelComplex rc;
  rc.cx.dim = full.dim;
  rc.cx.nverts = full.nverts;
  rc.cx.keys.resize(full.dim + 1);
  rc.cx.index.resize(full.dim + 1);
  for (int k = 0; k <= full.dim; ++k) {
    for (std::int64_t key : full.keys[k])
      if (sub.find(k, key) < 0) rc.cx.keys[k].push_back(key);
    for (std::size_t i = 0; i < rc.cx.keys[k].size(); ++i)
      rc.cx.index[k][rc.cx.keys[k][i]] = static_cast<int>(i);
  }
  rc.bnd = boundary_matrices(rc.cx);
  return rc;
}

Mat<Z> DimHomology::free_coords(const Mat<Z>& cycle) const {
  Mat<Z> u = pres.U * (coords * cycle);
  Mat<Z> out(betti, cycle.cols);
  for (std::size_t i = 0; i < betti; ++i)
    for (std::size_t c = 0; c < cycle.cols; ++c) out(i, c) = u(pres.rank + i, c);
  return out;
}

Mat<Z> DimHomology::free_generator(std::size_t j) const {
  Mat<Z> w(kernel_dim, 1);
  for (std::size_t i = 0; i < kernel_dim; ++i) w(i, 0) = pres.Uinv(i, pres.rank + j);
  return kernel_basis * w;
}

std::vector<DimHomology> homology_of(const RelComplex& rc) {
  const int dim = rc.cx.dim;
  std::vector<DimHomology> hs(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    DimHomology& h = hs[k];
    h.n_cells = rc.cx.keys[k].size();
    Snf sk = smith_normal_form(rc.bnd[k]);
    h.kernel_dim = h.n_cells - sk.rank;
    h.kernel_basis = Mat<Z>(h.n_cells, h.kernel_dim);
    h.coords = Mat<Z>(h.kernel_dim, h.n_cells);
    for (std::size_t i = 0; i < h.n_cells; ++i)
      for (std::size_t j = 0; j < h.kernel_dim; ++j) {
        h.kernel_basis(i, j) = sk.V(i, sk.rank + j);
        h.coords(j, i) = sk.Vinv(sk.rank + j, i);
      }
    Mat<Z> next = k < dim ? rc.bnd[k + 1] : Mat<Z>(h.n_cells, 0);
    h.pres = smith_normal_form(h.coords * next);
    h.betti = h.kernel_dim - h.pres.rank;
    for (std::size_t i = 0; i < h.pres.rank; ++i)
      if (h.pres.D(i, i) > 1) h.torsion.push_back(h.pres.D(i, i));
  }
  return hs;
}

static HomologyGroups pack_groups(const std::vector<DimHomology>& hs) {
  HomologyGroups g;
  for (const DimHomology& h : hs) {
    g.betti.push_back(h.betti);
    g.torsion.push_back(h.torsion);
  }
  return g;
}

HomologyGroups relative_homology(const BoxMap& map, const BoxSet& N, const BoxSet& L) {
  if (!map.grid_mode())
    throw ConleyError(Errc::digraph_only, "homology needs grid geometry");
  if (!L.subset_of(N))
    throw ConleyError(Errc::invalid_argument, "L must be contained in N");
  return pack_groups(homology_of(relative_complex(*map.grid, N, L)));
}

namespace {

struct Rect {
  std::array<Id, kMaxDim> lo{}, hi{};  // inclusive box-index ranges

  bool empty(int dim) const {
    for (int a = 0; a < dim; ++a)
      if (lo[a] > hi[a]) return true;
    return false;
  }
  void meet(const Rect& o, int dim) {
    for (int a = 0; a < dim; ++a) {
      lo[a] = std::max(lo[a], o.lo[a]);
      hi[a] = std::min(hi[a], o.hi[a]);
    }
  }
};

// Rectangular hull of the image of box b; exact when the image is a block.
Rect image_rect(const BoxMap& map, const BoxGrid& g, const BoxSet& N, Id b) {
  const auto& img = map.out[b];
  if (img.empty())
    throw ConleyError(Errc::carrier_not_acyclic, "box with empty image in the pair core");
  Rect r;
  const int d = g.dimension();
  for (int a = 0; a < d; ++a) {
    r.lo[a] = g.subdivisions()[a];
    r.hi[a] = -1;
  }
  for (Id v : img) {
    if (!N.contains(v))
      throw ConleyError(Errc::carrier_not_acyclic, "image of a core box leaves N");
    auto c = g.coords(v);
    for (int a = 0; a < d; ++a) {
      r.lo[a] = std::min(r.lo[a], c[a]);
      r.hi[a] = std::max(r.hi[a], c[a]);
    }
  }
  std::size_t vol = 1;
  for (int a = 0; a < d; ++a) vol *= static_cast<std::size_t>(r.hi[a] - r.lo[a] + 1);
  if (vol != img.size())
    throw ConleyError(Errc::nonrectangular_image,
                      "box image is not a rectangular block; refine the grid");
  return r;
}

}  // namespace

IndexMap index_map(const BoxMap& map, const FiltrationPair& pair) {
  if (!map.grid_mode())
    throw ConleyError(Errc::digraph_only, "index map needs grid geometry");
  if (!pair.valid.ok())
    throw ConleyError(Errc::invalid_pair, "pair does not satisfy all conditions");
  const BoxGrid& g = *map.grid;
  const int dim = g.dimension();
  BoxSet core = pair.N - pair.L;

  std::unordered_map<Id, Rect> rects;
  core.for_each([&](Id b) { rects.emplace(b, image_rect(map, g, pair.N, b)); });

  RelComplex rc = relative_complex(g, pair.N, pair.L);
  std::vector<DimHomology> hs = homology_of(rc);

  // Carrier of a cell: intersection of the image blocks of the core boxes
  // containing it.  Monotone under taking faces.
  auto carrier_of = [&](const Cell& c) {
    Rect acc;
    bool first = true;
    std::array<Id, kMaxDim> blo{}, bhi{};
    for (int a = 0; a < dim; ++a) {
      if (c.mask & (1u << a)) {
        blo[a] = bhi[a] = c.lo[a];
      } else {
        blo[a] = std::max<Id>(c.lo[a] - 1, 0);
        bhi[a] = std::min<Id>(c.lo[a], g.subdivisions()[a] - 1);
      }
    }
    std::array<Id, kMaxDim> bc = blo;
    for (;;) {
      Id b = g.id_of(bc);
      if (core.contains(b)) {
        auto it = rects.find(b);
        if (first) {
          acc = it->second;
          first = false;
        } else {
          acc.meet(it->second, dim);
        }
      }
      int a = dim - 1;
      while (a >= 0) {
        if (++bc[a] <= bhi[a]) break;
        bc[a] = blo[a];
        --a;
      }
      if (a < 0) break;
    }
    if (first || acc.empty(dim))
      throw ConleyError(Errc::carrier_not_acyclic, "empty carrier for a relative cell");
    return acc;
  };

  std::vector<Mat<Z>> phi(dim + 1);

  // Dimension 0: clamp the vertex into the carrier block's vertex range.
  {
    const auto& keys = rc.cx.keys[0];
    phi[0] = Mat<Z>(keys.size(), keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
      Cell v = cell_of_key(keys[j], rc.cx.nverts);
      Rect r = carrier_of(v);
      Cell t;
      for (int a = 0; a < dim; ++a) t.lo[a] = std::clamp(v.lo[a], r.lo[a], r.hi[a] + 1);
      int i = rc.cx.find(0, cell_key(t, rc.cx.nverts));
      if (i >= 0) phi[0](i, j) = 1;
    }
  }

  for (int k = 1; k <= dim; ++k) {
    const auto& keys = rc.cx.keys[k];
    phi[k] = Mat<Z>(keys.size(), keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
      Cell q = cell_of_key(keys[j], rc.cx.nverts);
      Rect r = carrier_of(q);

      // Target boundary chain from the already-selected faces.
      std::vector<Z> target(rc.cx.keys[k - 1].size());
      for (auto& [face, coef] : cell_boundary(q)) {
        int fi = rc.cx.find(k - 1, cell_key(face, rc.cx.nverts));
        if (fi < 0) continue;
        for (std::size_t i = 0; i < target.size(); ++i)
          target[i] += Z(coef) * phi[k - 1](i, fi);
      }

      // Relative cells of the carrier block, dimensions k and k-1.
      auto in_rect = [&](const Cell& c) {
        for (int a = 0; a < dim; ++a) {
          Id clo = c.lo[a], chi = c.lo[a] + ((c.mask >> a) & 1u);
          if (clo < r.lo[a] || chi > r.hi[a] + 1) return false;
        }
        return true;
      };
      std::vector<int> cols, rows;
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (in_rect(cell_of_key(keys[i], rc.cx.nverts))) cols.push_back((int)i);
      std::vector<int> row_pos(target.size(), -1);
      for (std::size_t i = 0; i < rc.cx.keys[k - 1].size(); ++i)
        if (in_rect(cell_of_key(rc.cx.keys[k - 1][i], rc.cx.nverts))) {
          row_pos[i] = static_cast<int>(rows.size());
          rows.push_back((int)i);
        }
      for (std::size_t i = 0; i < target.size(); ++i)
        if (target[i] != 0 && row_pos[i] < 0)
          throw ConleyError(Errc::carrier_not_acyclic,
                            "face image escapes the carrier block");

      Mat<Z> A(rows.size(), cols.size());
      for (std::size_t cj = 0; cj < cols.size(); ++cj)
        for (std::size_t ri = 0; ri < rows.size(); ++ri)
          A(ri, cj) = rc.bnd[k](rows[ri], cols[cj]);
      Mat<Z> bvec(rows.size(), 1);
      for (std::size_t ri = 0; ri < rows.size(); ++ri) bvec(ri, 0) = target[rows[ri]];

      auto x = solve_integer(A, bvec);
      if (!x)
        throw ConleyError(Errc::carrier_not_acyclic,
                          "no chain in the carrier matches the boundary");
      for (std::size_t cj = 0; cj < cols.size(); ++cj) phi[k](cols[cj], j) = (*x)(cj, 0);
    }
  }

  // Chain-map identity, checked exactly.
  for (int k = 1; k <= dim; ++k)
    if (!(rc.bnd[k] * phi[k] == phi[k - 1] * rc.bnd[k]))
      throw ConleyError(Errc::carrier_not_acyclic, "selector is not a chain map");

  IndexMap im;
  im.groups = pack_groups(hs);
  im.chain_matrices = phi;
  for (int k = 0; k <= dim; ++k) {
    const DimHomology& h = hs[k];
    Mat<Z> M(h.betti, h.betti);
    for (std::size_t j = 0; j < h.betti; ++j) {
      Mat<Z> img = phi[k] * h.free_generator(j);
      Mat<Z> col = h.free_coords(img);
      for (std::size_t i = 0; i < h.betti; ++i) M(i, j) = col(i, 0);
    }
    im.matrices.push_back(std::move(M));
  }
  return im;
}

}  // namespace conley
