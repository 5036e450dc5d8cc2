#include "tpb/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "tpb/errors.hpp"

namespace tpb {

namespace {

constexpr int kNone = -1;

// Proper partial edge coloring with per-vertex color slots.
class ColorTable {
 public:
  ColorTable(const DemandGraph& h, int palette)
      : base_(h.base()),
        edges_(h.edges().begin(), h.edges().end()),
        palette_(palette),
        slot_(static_cast<std::size_t>(base_.vertex_count()) * static_cast<std::size_t>(palette),
              kNone),
        color_(edges_.size(), kNone) {}

  int palette() const { return palette_; }
  std::size_t edge_count() const { return edges_.size(); }
  const DemandEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  int flat_u(int e) const { return base_.flat(edge(e).u); }
  int flat_v(int e) const { return base_.flat(edge(e).v); }
  int other(int e, int v) const { return flat_u(e) == v ? flat_v(e) : flat_u(e); }
  int color(int e) const { return color_[static_cast<std::size_t>(e)]; }

  int at(int v, int c) const { return slot_[index(v, c)]; }
  bool free(int v, int c) const { return at(v, c) == kNone; }
  int first_free(int v) const {
    for (int c = 0; c < palette_; ++c)
      if (free(v, c)) return c;
    return kNone;
  }

  void set(int e, int c) {
    if (!free(flat_u(e), c) || !free(flat_v(e), c))
      throw StructuralError("edge coloring: color " + std::to_string(c) + " not free for edge " +
                            std::to_string(edge(e).id));
    slot_[index(flat_u(e), c)] = e;
    slot_[index(flat_v(e), c)] = e;
    color_[static_cast<std::size_t>(e)] = c;
  }
  void clear(int e) {
    const int c = color(e);
    if (c == kNone) return;
    slot_[index(flat_u(e), c)] = kNone;
    slot_[index(flat_v(e), c)] = kNone;
    color_[static_cast<std::size_t>(e)] = kNone;
  }

  // Maximal path from `start` alternating colors `first`, `second`, ...
  std::vector<int> chain(int start, int first, int second) const {
    std::vector<int> path;
    int v = start;
    int c = first;
    while (true) {
      const int e = at(v, c);
      if (e == kNone) break;
      path.push_back(e);
      v = other(e, v);
      c = c == first ? second : first;
    }
    return path;
  }

  void swap_chain(const std::vector<int>& path, int c1, int c2) {
    for (int e : path) clear_keep(e);
    for (int e : path) {
      const int c = color_[static_cast<std::size_t>(e)] == c1 ? c2 : c1;
      color_[static_cast<std::size_t>(e)] = kNone;
      set(e, c);
    }
  }

  EdgeColoring result() const {
    EdgeColoring out;
    out.palette_size = palette_;
    for (std::size_t e = 0; e < edges_.size(); ++e) out.colors[edges_[e].id] = color_[e];
    return out;
  }

 private:
  std::size_t index(int v, int c) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(palette_) +
           static_cast<std::size_t>(c);
  }
  // Frees the slots but remembers the color, for swap_chain.
  void clear_keep(int e) {
    const int c = color(e);
    slot_[index(flat_u(e), c)] = kNone;
    slot_[index(flat_v(e), c)] = kNone;
  }

  BaseSpec base_;
  std::vector<DemandEdge> edges_;
  int palette_;
  std::vector<int> slot_;
  std::vector<int> color_;
};

}  // namespace

MatchingDecomposition konig_decompose(const DemandGraph& h) {
  if (!h.is_bipartite()) throw PreconditionError("konig_decompose needs a bipartite multigraph");
  const int delta = h.max_degree();
  ColorTable table(h, delta);
  for (int e = 0; e < static_cast<int>(table.edge_count()); ++e) {
    const int u = table.flat_u(e);
    const int v = table.flat_v(e);
    const int alpha = table.first_free(u);
    const int beta = table.first_free(v);
    if (table.free(v, alpha)) {
      table.set(e, alpha);
      continue;
    }
    // alpha is taken at v: flip the alpha/beta path leaving v. It cannot
    // reach u, which misses alpha and sits on the other side.
    table.swap_chain(table.chain(v, alpha, beta), alpha, beta);
    table.set(e, alpha);
  }

  MatchingDecomposition out;
  out.matchings.resize(static_cast<std::size_t>(delta));
  for (int e = 0; e < static_cast<int>(table.edge_count()); ++e)
    out.matchings[static_cast<std::size_t>(table.color(e))].push_back(table.edge(e).id);
  return out;
}

namespace {

// Colors edge `e0` given a proper coloring of the others, using a multi-fan
// at one endpoint. With palette >= Delta + mu a maximal multi-fan always
// exposes a missing color shared by the center and a fan vertex, or by two
// fan vertices; the second situation is reduced to the first by one Kempe
// chain swap.
void color_with_fan(ColorTable& t, int e0) {
  const int x = t.flat_u(e0);
  const int palette = t.palette();

  std::vector<int> fan_edge{e0};
  std::vector<int> fan_vertex{t.flat_v(e0)};
  std::vector<int> parent{-1};

  auto missing = [&](int v) {
    std::vector<int> m;
    for (int c = 0; c < palette; ++c)
      if (t.free(v, c)) m.push_back(c);
    return m;
  };
  // Recolors fan edges back along the parent chain from index i, starting
  // with color c; ends by coloring e0.
  auto shift = [&](int i, int c) {
    while (true) {
      const int e = fan_edge[static_cast<std::size_t>(i)];
      const int old = t.color(e);
      t.clear(e);
      t.set(e, c);
      if (old == kNone) return;
      c = old;
      i = parent[static_cast<std::size_t>(i)];
    }
  };

  for (std::size_t p = 0; p < fan_vertex.size(); ++p) {
    const int yp = fan_vertex[p];
    for (int c : missing(yp))
      if (t.free(x, c)) {
        shift(static_cast<int>(p), c);
        return;
      }
    for (std::size_t j = 0; j < p; ++j) {
      const int yj = fan_vertex[j];
      int alpha = kNone;
      for (int c = 0; c < palette && alpha == kNone; ++c)
        if (t.free(yp, c) && t.free(yj, c)) alpha = c;
      if (alpha == kNone) continue;
      const int beta = t.first_free(x);

      // Chains start with beta: alpha is missing at their start.
      std::size_t s = p;
      std::vector<int> chain = t.chain(yp, beta, alpha);
      int end = yp;
      for (int e : chain) end = t.other(e, end);
      if (end == x) {
        s = j;
        chain = t.chain(yj, beta, alpha);
        end = yj;
        for (int e : chain) end = t.other(e, end);
      }
      t.swap_chain(chain, alpha, beta);
      std::size_t target = s;
      for (std::size_t m = 0; m < s; ++m)
        if (fan_vertex[m] == end) target = m;
      if (!t.free(x, beta) || !t.free(fan_vertex[target], beta))
        throw StructuralError("multi-fan: Kempe swap did not free the center color");
      shift(static_cast<int>(target), beta);
      return;
    }
    // Extend the fan by every edge at x whose color is missing at a fan vertex.
    for (std::size_t j = 0; j <= p; ++j) {
      for (int c : missing(fan_vertex[j])) {
        const int f = t.at(x, c);
        if (f == kNone) continue;
        const int w = t.other(f, x);
        if (std::find(fan_vertex.begin(), fan_vertex.end(), w) != fan_vertex.end()) continue;
        fan_edge.push_back(f);
        fan_vertex.push_back(w);
        parent.push_back(static_cast<int>(j));
      }
    }
  }
  throw StructuralError("multi-fan is maximal and elementary: palette below Delta + mu");
}

}  // namespace

EdgeColoring vizing_color(const DemandGraph& h) {
  const int palette = h.max_degree() + h.max_multiplicity();
  ColorTable table(h, palette);
  for (int e = 0; e < static_cast<int>(table.edge_count()); ++e) {
    const int u = table.flat_u(e);
    const int v = table.flat_v(e);
    bool done = false;
    for (int c = 0; c < palette && !done; ++c)
      if (table.free(u, c) && table.free(v, c)) {
        table.set(e, c);
        done = true;
      }
    if (!done) color_with_fan(table, e);
  }
  return table.result();
}

std::optional<EdgeColoring> greedy_list_color(const DemandGraph& h, const ListAssignment& lists,
                                              ListColoringOptions options) {
  const auto edges = h.edges();
  const BaseSpec& base = h.base();
  const auto deg = h.degrees();
  int palette = 0;
  for (const DemandEdge& e : edges) {
    auto it = lists.lists.find(e.id);
    if (it == lists.lists.end())
      throw PreconditionError("no list for edge " + std::to_string(e.id));
    for (int c : it->second) {
      if (c < 0) throw DomainError("list colors must be non-negative");
      palette = std::max(palette, c + 1);
    }
  }

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  auto adjacency = [&](std::size_t i) {
    return deg[static_cast<std::size_t>(base.flat(edges[i].u))] +
           deg[static_cast<std::size_t>(base.flat(edges[i].v))];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return adjacency(x) > adjacency(y); });

  std::vector<std::vector<int>> candidates(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::set<int> sorted(lists.lists.at(edges[order[i]].id).begin(),
                         lists.lists.at(edges[order[i]].id).end());
    candidates[i].assign(sorted.begin(), sorted.end());
  }

  std::vector<char> used(static_cast<std::size_t>(base.vertex_count()) *
                             static_cast<std::size_t>(palette),
                         0);
  auto slot = [&](VertexId v, int c) -> char& {
    return used[static_cast<std::size_t>(base.flat(v)) * static_cast<std::size_t>(palette) +
                static_cast<std::size_t>(c)];
  };

  std::vector<std::size_t> choice(edges.size(), 0);
  std::vector<int> assigned(edges.size(), kNone);
  std::int64_t backtracks = 0;
  std::size_t level = 0;
  while (level < edges.size()) {
    const DemandEdge& e = edges[order[level]];
    if (assigned[level] != kNone) {
      slot(e.u, assigned[level]) = 0;
      slot(e.v, assigned[level]) = 0;
      assigned[level] = kNone;
    }
    bool placed = false;
    auto& options_here = candidates[level];
    for (std::size_t& k = choice[level]; k < options_here.size(); ++k) {
      const int c = options_here[k];
      if (slot(e.u, c) || slot(e.v, c)) continue;
      slot(e.u, c) = 1;
      slot(e.v, c) = 1;
      assigned[level] = c;
      ++k;
      placed = true;
      break;
    }
    if (placed) {
      ++level;
      continue;
    }
    choice[level] = 0;
    if (level == 0 || ++backtracks > options.max_backtracks) return std::nullopt;
    --level;
  }

  EdgeColoring out;
  out.palette_size = palette;
  for (std::size_t i = 0; i < edges.size(); ++i) out.colors[edges[order[i]].id] = assigned[i];
  return out;
}

bool is_proper(const DemandGraph& h, const EdgeColoring& c) {
  std::set<std::pair<VertexId, int>> seen;
  for (const DemandEdge& e : h.edges()) {
    auto it = c.colors.find(e.id);
    if (it == c.colors.end() || it->second < 0) return false;
    if (c.palette_size > 0 && it->second >= c.palette_size) return false;
    if (!seen.insert({e.u, it->second}).second) return false;
    if (!seen.insert({e.v, it->second}).second) return false;
  }
  return true;
}

bool is_matching_decomposition(const DemandGraph& h, const MatchingDecomposition& m) {
  std::set<EdgeId> all;
  for (const auto& matching : m.matchings) {
    std::set<VertexId> touched;
    for (EdgeId id : matching) {
      if (!h.has_edge(id) || !all.insert(id).second) return false;
      const DemandEdge& e = h.edge(id);
      if (!touched.insert(e.u).second || !touched.insert(e.v).second) return false;
    }
  }
  return all.size() == h.edge_count();
}

SemiregularTargets choose_semiregular_targets(const DemandGraph& d) {
  if (!d.is_bipartite()) throw PreconditionError("semiregular targets need a bipartite graph");
  const std::int64_t a = d.base().a;
  const std::int64_t b = d.base().b;
  const int delta_b = d.max_degree(Side::B);
  for (std::int64_t t = d.max_degree(Side::A);; ++t)
    if ((a * t) % b == 0 && a * t / b >= delta_b)
      return {static_cast<int>(t), static_cast<int>(a * t / b)};
}

DemandGraph regularize(const DemandGraph& d, SemiregularTargets targets) {
  std::vector<int> as(static_cast<std::size_t>(d.base().a));
  std::vector<int> bs(static_cast<std::size_t>(d.base().b));
  std::iota(as.begin(), as.end(), 0);
  std::iota(bs.begin(), bs.end(), 0);
  return regularize(d, targets, as, bs);
}

DemandGraph regularize(const DemandGraph& d, SemiregularTargets targets,
                       std::span<const int> a_indices, std::span<const int> b_indices) {
  const std::int64_t need_a =
      static_cast<std::int64_t>(a_indices.size()) * targets.a_degree;
  const std::int64_t need_b =
      static_cast<std::int64_t>(b_indices.size()) * targets.b_degree;
  if (need_a != need_b)
    throw PreconditionError("semiregular targets unbalanced: " + std::to_string(need_a) +
                            " A-stubs vs " + std::to_string(need_b) + " B-stubs");

  std::vector<int> deficit_a, deficit_b;
  for (int i : a_indices) {
    const int deficit = targets.a_degree - d.degree(a_vertex(i));
    if (deficit < 0)
      throw PreconditionError("vertex " + to_string(a_vertex(i)) + " exceeds target degree");
    deficit_a.push_back(deficit);
  }
  for (int j : b_indices) {
    const int deficit = targets.b_degree - d.degree(b_vertex(j));
    if (deficit < 0)
      throw PreconditionError("vertex " + to_string(b_vertex(j)) + " exceeds target degree");
    deficit_b.push_back(deficit);
  }
  // Edges inside the subsets count toward both sums, so the remaining
  // deficits stay balanced; edges leaving the subsets would break that.
  if (std::accumulate(deficit_a.begin(), deficit_a.end(), 0LL) !=
      std::accumulate(deficit_b.begin(), deficit_b.end(), 0LL))
    throw PreconditionError("existing edges leave the vertex subsets");

  DemandGraph out = d;
  while (true) {
    const auto ia = std::max_element(deficit_a.begin(), deficit_a.end());
    const auto ib = std::max_element(deficit_b.begin(), deficit_b.end());
    if (ia == deficit_a.end() || *ia == 0) break;
    out.add_edge(a_vertex(a_indices[static_cast<std::size_t>(ia - deficit_a.begin())]),
                 b_vertex(b_indices[static_cast<std::size_t>(ib - deficit_b.begin())]), true);
    --*ia;
    --*ib;
  }
  return out;
}

}  // namespace tpb
