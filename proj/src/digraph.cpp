#include "digraph.hpp"

#include <algorithm>
#include <deque>

namespace conley {

Adjacency transpose(const Adjacency& out, std::size_t n) {
  Adjacency in(n);
  for (std::size_t u = 0; u < out.size(); ++u)
    for (Id v : out[u])
      if (static_cast<std::size_t>(v) < n) in[v].push_back(static_cast<Id>(u));
  for (auto& row : in) std::sort(row.begin(), row.end());
  return in;
}

static BoxSet bfs(const Adjacency& adj, const BoxSet& within, const BoxSet& from) {
  BoxSet seen(within.universe());
  std::deque<Id> q;
  from.for_each([&](Id v) {
    if (within.contains(v)) {
      seen.insert(v);
      q.push_back(v);
    }
  });
  while (!q.empty()) {
    Id u = q.front();
    q.pop_front();
    if (static_cast<std::size_t>(u) >= adj.size()) continue;
    for (Id v : adj[u]) {
      if (within.contains(v) && !seen.contains(v)) {
        seen.insert(v);
        q.push_back(v);
      }
    }
  }
  return seen;
}

BoxSet reach_from(const Adjacency& out, const BoxSet& within, const BoxSet& from) {
  return bfs(out, within, from);
}

BoxSet coreach_of(const Adjacency& out, const BoxSet& within, const BoxSet& to) {
  return bfs(transpose(out, within.universe()), within, to);
}

BoxSet bi_trim(const Adjacency& out, const BoxSet& N) {
  const std::size_t n = N.universe();
  Adjacency in = transpose(out, n);
  std::vector<Id> outdeg(n, 0), indeg(n, 0);
  BoxSet cur = N;
  N.for_each([&](Id u) {
    if (static_cast<std::size_t>(u) < out.size())
      for (Id v : out[u])
        if (N.contains(v)) {
          ++outdeg[u];
          ++indeg[v];
        }
  });
  std::deque<Id> dead;
  N.for_each([&](Id u) {
    if (outdeg[u] == 0 || indeg[u] == 0) dead.push_back(u);
  });
  while (!dead.empty()) {
    Id u = dead.front();
    dead.pop_front();
    if (!cur.contains(u)) continue;
    cur.erase(u);
    if (static_cast<std::size_t>(u) < out.size())
      for (Id v : out[u])
        if (cur.contains(v) && --indeg[v] == 0) dead.push_back(v);
    for (Id v : in[u])
      if (cur.contains(v) && --outdeg[v] == 0) dead.push_back(v);
  }
  return cur;
}

static BoxSet trim_passes(const Adjacency& adj, const BoxSet& N, std::size_t m) {
  BoxSet cur = N;
  for (std::size_t pass = 0; pass < m; ++pass) {
    BoxSet next(N.universe());
    bool changed = false;
    N.for_each([&](Id u) {
      if (!N.contains(u)) return;
      bool keep = false;
      if (static_cast<std::size_t>(u) < adj.size())
        for (Id v : adj[u])
          if (cur.contains(v)) {
            keep = true;
            break;
          }
      if (keep)
        next.insert(u);
      else if (cur.contains(u))
        changed = true;
    });
    // Note: next is computed against N membership for u but cur for targets,
    // which is exactly "walk of length pass+1 inside N".
    cur = next;
    if (!changed && pass > 0) break;
  }
  return cur;
}

BoxSet trim_m(const Adjacency& out, const BoxSet& N, std::size_t m) {
  if (m == 0) return N;
  BoxSet fwd = trim_passes(out, N, m);
  BoxSet bwd = trim_passes(transpose(out, N.universe()), N, m);
  return fwd & bwd;
}

SccResult strongly_connected_components(const Adjacency& out, const BoxSet& within) {
  const std::size_t n = within.universe();
  SccResult res;
  res.comp_of.assign(n, -1);

  std::vector<Id> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Id> stack;
  Id next_index = 0;

  struct Frame {
    Id v;
    std::size_t edge;
  };
  std::vector<Frame> call;

  std::vector<std::vector<Id>> comps;

  within.for_each([&](Id root) {
    if (index[root] != -1) return;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      Id v = f.v;
      bool descended = false;
      const auto& succ =
          static_cast<std::size_t>(v) < out.size() ? out[v] : std::vector<Id>{};
      while (f.edge < succ.size()) {
        Id w = succ[f.edge++];
        if (!within.contains(w)) continue;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
          descended = true;
          break;
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::vector<Id> comp;
        Id w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) {
        Id parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  });

  // Deterministic order: by smallest member.
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  res.components = std::move(comps);
  res.cyclic.resize(res.components.size());
  for (std::size_t i = 0; i < res.components.size(); ++i) {
    const auto& comp = res.components[i];
    for (Id v : comp) res.comp_of[v] = static_cast<int>(i);
    bool cyc = comp.size() > 1;
    if (!cyc && static_cast<std::size_t>(comp[0]) < out.size()) {
      for (Id w : out[comp[0]])
        if (w == comp[0]) {
          cyc = true;
          break;
        }
    }
    res.cyclic[i] = cyc;
  }
  return res;
}

}  // namespace conley
