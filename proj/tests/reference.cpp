#include "reference.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tpb::reference {

std::optional<Resolution> exhaustive_resolve(const DemandGraph& d) {
  const BaseSpec base = d.base();
  const int v = base.vertex_count();
  const auto adjacent = [&](int x, int y) { return (x < base.a) != (y < base.a); };
  std::set<std::pair<int, int>> used;
  std::vector<char> on_path(static_cast<std::size_t>(v), 0);
  std::vector<std::vector<int>> chosen(d.edge_count());
  const auto edges = d.edges();

  std::function<bool(std::size_t)> route;
  std::function<bool(std::size_t, std::vector<int>&)> walk = [&](std::size_t k,
                                                                  std::vector<int>& path) {
    const int here = path.back();
    const int target = base.flat(edges[k].v);
    if (here == target) {
      chosen[k] = path;
      return route(k + 1);
    }
    for (int w = 0; w < v; ++w) {
      if (!adjacent(here, w) || on_path[static_cast<std::size_t>(w)]) continue;
      const auto e = std::minmax(here, w);
      if (used.count(e)) continue;
      used.insert(e);
      on_path[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      const bool ok = walk(k, path);
      path.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
      used.erase(e);
      if (ok) return true;
    }
    return false;
  };
  route = [&](std::size_t k) {
    if (k == edges.size()) return true;
    std::vector<int> path{base.flat(edges[k].u)};
    std::vector<char> saved(static_cast<std::size_t>(v), 0);
    std::swap(saved, on_path);
    on_path[static_cast<std::size_t>(path[0])] = 1;
    const bool ok = walk(k, path);
    std::swap(saved, on_path);
    return ok;
  };
  if (!route(0)) return std::nullopt;
  Resolution r;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Path p;
    for (int f : chosen[k]) p.vertices.push_back(base.vertex(f));
    r.routes[edges[k].id] = p;
  }
  return r;
}

int chromatic_index(const DemandGraph& h) {
  const auto edges = h.edges();
  const std::size_t m = edges.size();
  if (m == 0) return 0;
  std::vector<int> color(m, -1);
  for (int k = 1;; ++k) {
    std::function<bool(std::size_t)> assign = [&](std::size_t i) {
      if (i == m) return true;
      for (int c = 0; c < k; ++c) {
        bool clash = false;
        for (std::size_t j = 0; j < i && !clash; ++j)
          clash = color[j] == c && (edges[j].touches(edges[i].u) || edges[j].touches(edges[i].v));
        if (clash) continue;
        color[i] = c;
        if (assign(i + 1)) return true;
      }
      color[i] = -1;
      return false;
    };
    if (assign(0)) return k;
  }
}

std::int64_t count_orbits(int n, int max_edges, int max_degree) {
  const auto sz = static_cast<std::size_t>(n);
  std::vector<int> m(sz * sz, 0);
  std::set<std::vector<int>> classes;
  std::vector<int> rows(sz), cols(sz);
  std::function<void(std::size_t, int)> fill = [&](std::size_t cell, int left) {
    if (cell == m.size()) {
      for (std::size_t i = 0; i < sz; ++i) {
        int r = 0, c = 0;
        for (std::size_t j = 0; j < sz; ++j) {
          r += m[i * sz + j];
          c += m[j * sz + i];
        }
        if (r > max_degree || c > max_degree) return;
      }
      std::vector<int> best;
      std::iota(rows.begin(), rows.end(), 0);
      do {
        std::iota(cols.begin(), cols.end(), 0);
        do {
          std::vector<int> p(m.size());
          for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j)
              p[i * sz + j] = m[static_cast<std::size_t>(rows[i]) * sz +
                                static_cast<std::size_t>(cols[j])];
          if (best.empty() || p < best) best = p;
        } while (std::next_permutation(cols.begin(), cols.end()));
      } while (std::next_permutation(rows.begin(), rows.end()));
      classes.insert(best);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      m[cell] = k;
      fill(cell + 1, left - k);
    }
    m[cell] = 0;
  };
  fill(0, max_edges);
  return static_cast<std::int64_t>(classes.size());
}

bool placement_is_simple(const DemandGraph& d, std::span<const EdgeId> f, VertexId u1,
                         VertexId u2, VertexId v1, VertexId v2) {
  std::map<std::pair<VertexId, VertexId>, int> mult;
  for (const DemandEdge& e : d.edges()) ++mult[e.key()];
  const std::array<std::pair<VertexId, VertexId>, 4> slots{
      std::pair{u1, v1}, std::pair{u1, v2}, std::pair{u2, v2}, std::pair{u2, v1}};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [p, q] = d.edge(f[k]).key();
    const auto [x, y] = slots[k];
    --mult[{p, q}];
    ++mult[{x, y}];
    ++mult[{p, y}];
    ++mult[{x, q}];
  }
  for (const auto& [pair, c] : mult) {
    const auto at = [&](VertexId w) { return pair.first == w || pair.second == w; };
    if (c > 1 && (at(u1) || at(u2) || at(v1) || at(v2))) return false;
  }
  return true;
}

std::vector<std::vector<EdgeId>> all_covers(const DemandGraph& d, std::span<const VertexId> x,
                                            std::span<const VertexId> y, VertexId u1, VertexId u2,
                                            VertexId v1, VertexId v2) {
  std::vector<std::vector<EdgeId>> out;
  const auto edges = d.edges();
  const std::size_t m = edges.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) {
          std::vector<EdgeId> f{edges[i].id, edges[j].id, edges[k].id, edges[l].id};
          std::map<VertexId, int> cover;
          for (EdgeId id : f) {
            ++cover[d.edge(id).u];
            ++cover[d.edge(id).v];
          }
          bool ok = true;
          for (const auto& [w, c] : cover) ok = ok && c <= 2;
          for (VertexId w : y) ok = ok && cover[w] >= 1;
          for (VertexId w : x) ok = ok && cover[w] == 2;
          if (!ok) continue;
          std::sort(f.begin(), f.end());
          bool placed = false;
          do placed = placement_is_simple(d, f, u1, u2, v1, v2);
          while (!placed && std::next_permutation(f.begin(), f.end()));
          if (placed) out.push_back(f);
        }
  return out;
}

}  // namespace tpb::reference
