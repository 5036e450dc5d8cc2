#include "tpb/demand_graph.hpp"

#include <algorithm>
#include <set>

#include "tpb/errors.hpp"

namespace tpb {

std::string to_string(VertexId v) {
  return (v.side == Side::A ? "a" : "b") + std::to_string(v.index + 1);
}

std::pair<VertexId, VertexId> DemandEdge::key() const noexcept {
  if (crosses()) return u.side == Side::A ? std::pair{u, v} : std::pair{v, u};
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

DemandGraph::DemandGraph(BaseSpec base) : base_(base) {
  if (base.a < 1 || base.b < 1) throw DomainError("class sizes must be positive");
}

DemandGraph::DemandGraph(BaseSpec base, std::vector<DemandEdge> edges, EdgeId next_fresh_id)
    : DemandGraph(base) {
  std::sort(edges.begin(), edges.end(),
            [](const DemandEdge& x, const DemandEdge& y) { return x.id < y.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const DemandEdge& e = edges[i];
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v) throw DomainError("loop at " + to_string(e.u));
    if (i > 0 && edges[i - 1].id == e.id)
      throw DomainError("duplicate edge id " + std::to_string(e.id));
  }
  edges_ = std::move(edges);
  next_fresh_id_ = std::max<EdgeId>(next_fresh_id, edges_.empty() ? 1 : edges_.back().id + 1);
}

DemandGraph DemandGraph::from_pairs(BaseSpec base, std::span<const std::pair<int, int>> pairs) {
  DemandGraph d(base);
  for (const auto& [i, j] : pairs) d.add_edge(a_vertex(i), b_vertex(j));
  return d;
}

void DemandGraph::reserve_ids_below(EdgeId id) { next_fresh_id_ = std::max(next_fresh_id_, id); }

void DemandGraph::check_vertex(VertexId v) const {
  if (!base_.contains(v))
    throw DomainError("vertex " + to_string(v) + " outside K_{" + std::to_string(base_.a) + "," +
                      std::to_string(base_.b) + "}");
}

std::size_t DemandGraph::position(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const DemandEdge& e, EdgeId x) { return e.id < x; });
  if (it == edges_.end() || it->id != id)
    throw NotFoundError("no edge with id " + std::to_string(id));
  return static_cast<std::size_t>(it - edges_.begin());
}

bool DemandGraph::has_edge(EdgeId id) const noexcept {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const DemandEdge& e, EdgeId x) { return e.id < x; });
  return it != edges_.end() && it->id == id;
}

const DemandEdge& DemandGraph::edge(EdgeId id) const { return edges_[position(id)]; }

EdgeId DemandGraph::add_edge(VertexId u, VertexId v, bool padding) {
  const EdgeId id = next_fresh_id_;
  add_edge_with_label(u, v, id, padding);
  return id;
}

void DemandGraph::add_edge_with_label(VertexId u, VertexId v, EdgeId label, bool padding) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DomainError("loop at " + to_string(u));
  edges_.push_back({next_fresh_id_++, label, u, v, padding});
}

void DemandGraph::remove_edge(EdgeId id) {
  edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(position(id)));
}

std::optional<std::pair<EdgeId, EdgeId>> DemandGraph::lift_in_place(EdgeId id, VertexId z) {
  const DemandEdge e = edge(id);
  check_vertex(z);
  if (e.touches(z)) return std::nullopt;
  remove_edge(id);
  const EdgeId first = next_fresh_id_;
  add_edge_with_label(e.u, z, e.label, e.padding);
  add_edge_with_label(z, e.v, e.label, e.padding);
  return std::pair{first, first + 1};
}

std::array<EdgeId, 3> DemandGraph::edge_lift_in_place(EdgeId id, VertexId x, VertexId y) {
  const DemandEdge e = edge(id);
  check_vertex(x);
  check_vertex(y);
  if (!e.crosses()) throw PreconditionError("edge-lift needs a crossing edge");
  const auto [u, v] = e.key();
  if (x.side != Side::A || y.side != Side::B)
    throw PreconditionError("edge-lift target must be an A-vertex and a B-vertex");
  if (x == u || y == v)
    throw PreconditionError("edge-lift needs four distinct vertices");
  remove_edge(id);
  const EdgeId first = next_fresh_id_;
  add_edge_with_label(x, y, e.label, e.padding);
  add_edge_with_label(u, y, e.label, e.padding);
  add_edge_with_label(x, v, e.label, e.padding);
  return {first, first + 1, first + 2};
}

int DemandGraph::degree(VertexId v) const {
  check_vertex(v);
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [&](const DemandEdge& e) { return e.touches(v); }));
}

int DemandGraph::multiplicity(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [&](const DemandEdge& e) {
    return (e.u == u && e.v == v) || (e.u == v && e.v == u);
  }));
}

std::vector<VertexId> DemandGraph::neighbors(VertexId v) const {
  check_vertex(v);
  std::set<VertexId> out;
  for (const DemandEdge& e : edges_)
    if (e.touches(v)) out.insert(e.other(v));
  return {out.begin(), out.end()};
}

std::vector<int> DemandGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(base_.vertex_count()), 0);
  for (const DemandEdge& e : edges_) {
    ++deg[static_cast<std::size_t>(base_.flat(e.u))];
    ++deg[static_cast<std::size_t>(base_.flat(e.v))];
  }
  return deg;
}

int DemandGraph::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

int DemandGraph::max_degree(Side side) const {
  const auto deg = degrees();
  const int lo = side == Side::A ? 0 : base_.a;
  const int hi = side == Side::A ? base_.a : base_.vertex_count();
  int best = 0;
  for (int i = lo; i < hi; ++i) best = std::max(best, deg[static_cast<std::size_t>(i)]);
  return best;
}

int DemandGraph::max_multiplicity() const {
  std::map<std::pair<VertexId, VertexId>, int> count;
  int best = 0;
  for (const DemandEdge& e : edges_) best = std::max(best, ++count[e.key()]);
  return best;
}

bool DemandGraph::is_bipartite() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const DemandEdge& e) { return e.crosses(); });
}

bool DemandGraph::is_simple_bipartite() const { return is_bipartite() && max_multiplicity() <= 1; }

DemandGraph lift(const DemandGraph& d, EdgeId id, VertexId z) {
  DemandGraph out = d;
  out.lift_in_place(id, z);
  return out;
}

DemandGraph edge_lift(const DemandGraph& d, EdgeId id, VertexId x, VertexId y) {
  DemandGraph out = d;
  out.edge_lift_in_place(id, x, y);
  return out;
}

DemandGraph induced(const DemandGraph& d, std::span<const VertexId> keep) {
  std::vector<char> in(static_cast<std::size_t>(d.base().vertex_count()), 0);
  for (VertexId v : keep) {
    if (!d.base().contains(v)) throw DomainError("vertex " + to_string(v) + " out of range");
    in[static_cast<std::size_t>(d.base().flat(v))] = 1;
  }
  std::vector<DemandEdge> kept;
  for (const DemandEdge& e : d.edges())
    if (in[static_cast<std::size_t>(d.base().flat(e.u))] &&
        in[static_cast<std::size_t>(d.base().flat(e.v))])
      kept.push_back(e);
  return DemandGraph(d.base(), std::move(kept), d.next_fresh_id());
}

DemandGraph swap_sides(const DemandGraph& d) {
  std::vector<DemandEdge> edges(d.edges().begin(), d.edges().end());
  for (DemandEdge& e : edges) {
    e.u.side = opposite(e.u.side);
    e.v.side = opposite(e.v.side);
  }
  return DemandGraph({d.base().b, d.base().a}, std::move(edges), d.next_fresh_id());
}

DemandGraph without_padding(const DemandGraph& d) {
  std::vector<DemandEdge> kept;
  for (const DemandEdge& e : d.edges())
    if (!e.padding) kept.push_back(e);
  return DemandGraph(d.base(), std::move(kept), d.next_fresh_id());
}

namespace {

// Euler trail from s to t through every edge of one label class.
std::vector<VertexId> order_walk(const std::vector<const DemandEdge*>& cls, VertexId s,
                                 VertexId t, EdgeId label) {
  std::map<VertexId, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    incident[cls[i]->u].push_back(i);
    incident[cls[i]->v].push_back(i);
  }
  auto fail = [&](const std::string& why) {
    return StructuralError("label " + std::to_string(label) + " is not a walk from " +
                           to_string(s) + " to " + to_string(t) + ": " + why);
  };
  for (const auto& [v, inc] : incident) {
    const bool terminal = v == s || v == t;
    if ((inc.size() % 2 == 1) != terminal) throw fail("odd degree at " + to_string(v));
  }
  if (!incident.count(s) || !incident.count(t)) throw fail("terminal not reached");

  // Hierholzer.
  std::vector<char> used(cls.size(), 0);
  std::map<VertexId, std::size_t> cursor;
  std::vector<VertexId> stack{s};
  std::vector<VertexId> walk;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    auto& inc = incident[v];
    std::size_t& c = cursor[v];
    while (c < inc.size() && used[inc[c]]) ++c;
    if (c == inc.size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      used[inc[c]] = 1;
      stack.push_back(cls[inc[c]]->other(v));
    }
  }
  if (walk.size() != cls.size() + 1) throw fail("label class is disconnected");
  std::reverse(walk.begin(), walk.end());
  if (walk.front() != s || walk.back() != t) throw fail("walk ends at the wrong vertex");
  return walk;
}

// Drops closed sub-walks: on revisiting a vertex, cut back to its first visit.
Path shortcut(const std::vector<VertexId>& walk) {
  Path p;
  std::map<VertexId, std::size_t> at;
  for (VertexId v : walk) {
    if (auto it = at.find(v); it != at.end()) {
      for (std::size_t i = it->second + 1; i < p.vertices.size(); ++i) at.erase(p.vertices[i]);
      p.vertices.resize(it->second + 1);
    } else {
      at[v] = p.vertices.size();
      p.vertices.push_back(v);
    }
  }
  return p;
}

}  // namespace

Resolution extract_resolution(const DemandGraph& lifted, const DemandGraph& original) {
  if (!lifted.is_simple_bipartite())
    throw StructuralError("lifted graph is not a simple subgraph of the base");

  std::map<EdgeId, std::vector<const DemandEdge*>> classes;
  for (const DemandEdge& e : lifted.edges())
    if (!e.padding) classes[e.label].push_back(&e);

  Resolution r;
  for (const DemandEdge& e : original.edges()) {
    if (e.padding) continue;
    auto it = classes.find(e.id);
    if (it == classes.end())
      throw StructuralError("label " + std::to_string(e.id) + " vanished during lifting");
    r.routes[e.id] = shortcut(order_walk(it->second, e.u, e.v, e.id));
    classes.erase(it);
  }
  if (!classes.empty())
    throw StructuralError("label " + std::to_string(classes.begin()->first) +
                          " has no original demand edge");
  return r;
}

Resolution restrict_to(const Resolution& r, const DemandGraph& d) {
  Resolution out;
  for (const DemandEdge& e : d.edges()) {
    auto it = r.routes.find(e.id);
    if (it != r.routes.end()) out.routes.insert(*it);
  }
  return out;
}

Verdict verify_resolution(const DemandGraph& d, const Resolution& r) {
  Verdict verdict;
  auto& out = verdict.violations;
  const BaseSpec& base = d.base();

  for (const DemandEdge& e : d.edges())
    if (!r.routes.count(e.id)) out.push_back("missing route for edge " + std::to_string(e.id));

  std::map<std::pair<VertexId, VertexId>, EdgeId> owner;
  for (const auto& [id, path] : r.routes) {
    const std::string tag = "route " + std::to_string(id) + ": ";
    if (!d.has_edge(id)) {
      out.push_back(tag + "unknown edge id");
      continue;
    }
    const auto& vs = path.vertices;
    if (vs.size() < 2) {
      out.push_back(tag + "path has no edges");
      continue;
    }
    if (!std::all_of(vs.begin(), vs.end(), [&](VertexId v) { return base.contains(v); })) {
      out.push_back(tag + "vertex out of range");
      continue;
    }
    const DemandEdge& e = d.edge(id);
    const bool ends_ok = (vs.front() == e.u && vs.back() == e.v) ||
                         (vs.front() == e.v && vs.back() == e.u);
    if (!ends_ok)
      out.push_back(tag + "endpoints " + to_string(vs.front()) + "," + to_string(vs.back()) +
                    " do not match demand " + to_string(e.u) + "," + to_string(e.v));
    std::set<VertexId> seen(vs.begin(), vs.end());
    if (seen.size() != vs.size()) out.push_back(tag + "repeated vertex");
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (vs[i].side == vs[i + 1].side) {
        out.push_back(tag + "step " + to_string(vs[i]) + "-" + to_string(vs[i + 1]) +
                      " is not a base edge");
        continue;
      }
      const auto key = vs[i].side == Side::A ? std::pair{vs[i], vs[i + 1]}
                                             : std::pair{vs[i + 1], vs[i]};
      auto [it, fresh] = owner.emplace(key, id);
      if (!fresh)
        out.push_back("duplicate base edge " + to_string(key.first) + "-" +
                      to_string(key.second) + " used by routes " + std::to_string(it->second) +
                      " and " + std::to_string(id));
    }
  }
  return verdict;
}

}  // namespace tpb
