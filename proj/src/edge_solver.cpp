#include "tpb/edge_solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "tpb/errors.hpp"

namespace tpb {

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::k1_1: return "1.1";
    case CaseTag::k1_2: return "1.2";
    case CaseTag::k1_3: return "1.3";
    case CaseTag::k1_4: return "1.4";
    case CaseTag::k1_5: return "1.5";
    case CaseTag::k2_1: return "2.1";
    case CaseTag::k2_2_1: return "2.2.1";
    case CaseTag::k2_2_2: return "2.2.2";
    case CaseTag::k2_2_3: return "2.2.3";
    case CaseTag::k3_1: return "3.1";
    case CaseTag::k3_2_1: return "3.2.1";
    case CaseTag::k3_2_2: return "3.2.2";
    case CaseTag::k4: return "4";
    case CaseTag::kBase: return "base";
    case CaseTag::kSimple: return "simple";
  }
  return "?";
}

std::string to_string(const CaseStep& step) {
  std::ostringstream out;
  out << "n=" << step.n << " case=" << to_string(step.tag);
  if (step.swapped) out << " swapped";
  if (step.padding_added > 0) out << " padding=" << step.padding_added;
  if (step.cover_search_exhaustive) out << " cover=exhaustive";
  if (!step.removed.empty()) {
    out << " Z={";
    for (std::size_t i = 0; i < step.removed.size(); ++i)
      out << (i ? "," : "") << to_string(step.removed[i]);
    out << "}";
  }
  for (const LiftRecord& l : step.lifts)
    out << " lift(e" << l.edge << "->" << to_string(l.x) << to_string(l.y) << ")";
  return out.str();
}

namespace {

std::vector<VertexId> vertices_with_degree(const DemandGraph& g, Side side, int d) {
  const auto deg = g.degrees();
  std::vector<VertexId> out;
  for (int i = 0; i < g.base().class_size(side); ++i) {
    const VertexId v{side, i};
    if (deg[static_cast<std::size_t>(g.base().flat(v))] == d) out.push_back(v);
  }
  return out;
}

template <class Pred>
std::vector<EdgeId> lowest_edges(const DemandGraph& g, Pred pred, std::size_t k) {
  std::vector<EdgeId> out;
  for (const DemandEdge& e : g.edges()) {
    if (out.size() == k) break;
    if (pred(e)) out.push_back(e.id);
  }
  return out;
}

EdgeId edge_between(const DemandGraph& g, VertexId u, VertexId v) {
  const auto ids = lowest_edges(g, [&](const DemandEdge& e) { return e.touches(u) && e.touches(v); }, 1);
  if (ids.empty())
    throw StructuralError("expected an edge " + to_string(u) + to_string(v));
  return ids.front();
}

bool contains(std::span<const VertexId> set, VertexId v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

// ---------------------------------------------------------------- Case 1

bool cover_ok(const DemandGraph& g, std::span<const EdgeId> f, std::span<const VertexId> x,
              std::span<const VertexId> y) {
  std::map<VertexId, int> cover;
  for (EdgeId id : f) {
    const DemandEdge& e = g.edge(id);
    ++cover[e.u];
    ++cover[e.v];
  }
  for (const auto& [v, c] : cover)
    if (c > 2) return false;
  for (VertexId v : y)
    if (cover[v] < 1) return false;
  for (VertexId v : x)
    if (cover[v] != 2) return false;
  return true;
}

// Slots in placement order: u1v1, u1v2, u2v2, u2v1. Two lifts sharing a slot
// vertex must bring different partners to it.
bool placement_ok(const DemandGraph& g, const std::array<EdgeId, 4>& f) {
  static constexpr int kSlotA[4] = {0, 0, 1, 1};
  static constexpr int kSlotB[4] = {0, 1, 1, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const auto [pi, qi] = g.edge(f[static_cast<std::size_t>(i)]).key();
      const auto [pj, qj] = g.edge(f[static_cast<std::size_t>(j)]).key();
      if (kSlotA[i] == kSlotA[j] && qi == qj) return false;
      if (kSlotB[i] == kSlotB[j] && pi == pj) return false;
    }
  return true;
}

std::optional<std::array<EdgeId, 4>> placement_order(const DemandGraph& g,
                                                     std::span<const EdgeId> f) {
  std::array<EdgeId, 4> order{};
  std::copy(f.begin(), f.end(), order.begin());
  std::sort(order.begin(), order.end());
  do {
    if (placement_ok(g, order)) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

bool usable_cover(const DemandGraph& g, std::span<const EdgeId> f, std::span<const VertexId> x,
                  std::span<const VertexId> y) {
  return f.size() == 4 && std::set<EdgeId>(f.begin(), f.end()).size() == 4 &&
         cover_ok(g, f, x, y) && placement_order(g, f).has_value();
}

std::vector<EdgeId> concat(std::vector<EdgeId> a, const std::vector<EdgeId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Two copies of the heaviest pair at `y` plus two edges avoiding both ends.
std::vector<EdgeId> heavy_pair_cover(const DemandGraph& g, VertexId y) {
  VertexId partner;
  int best = 0;
  for (VertexId w : g.neighbors(y)) {
    const int m = g.multiplicity(y, w);
    if (m > best) {
      best = m;
      partner = w;
    }
  }
  if (best < 2) return {};
  return concat(
      lowest_edges(g, [&](const DemandEdge& e) { return e.touches(y) && e.touches(partner); }, 2),
      lowest_edges(g, [&](const DemandEdge& e) { return !e.touches(y) && !e.touches(partner); },
                   2));
}

std::vector<EdgeId> structured_cover(const DemandGraph& g, std::span<const VertexId> y) {
  std::vector<VertexId> ya, yb;
  for (VertexId v : y) (v.side == Side::A ? ya : yb).push_back(v);
  auto between = [&](VertexId p, VertexId q, std::size_t k) {
    return lowest_edges(g, [&](const DemandEdge& e) { return e.touches(p) && e.touches(q); }, k);
  };
  auto to_outside = [&](VertexId p, std::size_t k) {
    return lowest_edges(
        g, [&](const DemandEdge& e) { return e.touches(p) && !contains(y, e.other(p)); }, k);
  };

  switch (y.size()) {
    case 4: {
      if (ya.size() != 2) return {};
      const VertexId a1 = ya[0], a2 = ya[1], b1 = yb[0], b2 = yb[1];
      if (g.multiplicity(a1, b1) && g.multiplicity(a1, b2) && g.multiplicity(a2, b1) &&
          g.multiplicity(a2, b2))
        return concat(concat(between(a1, b1, 1), between(a1, b2, 1)),
                      concat(between(a2, b1, 1), between(a2, b2, 1)));
      if (g.multiplicity(a1, b1) >= 2 && g.multiplicity(a2, b2) >= 2)
        return concat(between(a1, b1, 2), between(a2, b2, 2));
      if (g.multiplicity(a1, b2) >= 2 && g.multiplicity(a2, b1) >= 2)
        return concat(between(a1, b2, 2), between(a2, b1, 2));
      return {};
    }
    case 3: {
      const bool single_a = ya.size() == 1;
      if (!single_a && yb.size() != 1) return {};
      const VertexId single = single_a ? ya[0] : yb[0];
      auto& pair = single_a ? yb : ya;
      if (g.multiplicity(single, pair[1]) > g.multiplicity(single, pair[0]))
        std::swap(pair[0], pair[1]);
      return concat(between(single, pair[0], 2), to_outside(pair[1], 2));
    }
    case 2: {
      if (ya.size() == 1) {
        const VertexId a = ya[0], b = yb[0];
        const auto from_a = to_outside(a, 2);
        const auto from_b = to_outside(b, 2);
        if (from_a.size() == 2 && from_b.size() == 2) return concat(from_a, from_b);
        return concat(between(a, b, 2),
                      lowest_edges(
                          g, [&](const DemandEdge& e) { return !e.touches(a) && !e.touches(b); },
                          2));
      }
      // Both in one class: each has degree n-1 and they carry every edge.
      auto at = [&](VertexId p) {
        return lowest_edges(g, [&](const DemandEdge& e) { return e.touches(p); }, 2);
      };
      return concat(at(y[0]), at(y[1]));
    }
    case 1:
      return heavy_pair_cover(g, y[0]);
    case 0: {
      for (const DemandEdge& e : g.edges())
        if (g.multiplicity(e.u, e.v) >= 2) return heavy_pair_cover(g, e.u);
      return {};
    }
    default:
      return {};
  }
}

std::optional<std::vector<EdgeId>> exhaustive_cover(const DemandGraph& g,
                                                    std::span<const VertexId> x,
                                                    std::span<const VertexId> y) {
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> by_pair;
  for (const DemandEdge& e : g.edges()) by_pair[e.key()].push_back(e.id);
  std::vector<const std::vector<EdgeId>*> pairs;
  for (const auto& [k, ids] : by_pair) pairs.push_back(&ids);

  std::vector<std::size_t> pick;
  std::optional<std::vector<EdgeId>> found;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (found) return;
    if (pick.size() == 4) {
      std::map<std::size_t, std::size_t> used;
      std::vector<EdgeId> f;
      for (std::size_t p : pick) {
        const std::size_t k = used[p]++;
        if (k >= pairs[p]->size()) return;
        f.push_back((*pairs[p])[k]);
      }
      if (usable_cover(g, f, x, y)) found = f;
      return;
    }
    for (std::size_t p = from; p < pairs.size() && !found; ++p) {
      pick.push_back(p);
      choose(p);
      pick.pop_back();
    }
  };
  choose(0);
  return found;
}

std::pair<DemandGraph, std::array<EdgeId, 4>> place_ordered(const DemandGraph& d,
                                                            std::span<const EdgeId> f,
                                                            VertexId u1, VertexId u2,
                                                            VertexId v1, VertexId v2) {
  if (f.size() != 4) throw PreconditionError("F must have four edges");
  if (u1.side != Side::A || u2.side != Side::A || v1.side != Side::B || v2.side != Side::B ||
      u1 == u2 || v1 == v2)
    throw PreconditionError("placement needs two A-vertices and two B-vertices");
  const std::array<VertexId, 4> z{u1, u2, v1, v2};
  const std::array<std::pair<VertexId, VertexId>, 4> slots{
      std::pair{u1, v1}, std::pair{u1, v2}, std::pair{u2, v2}, std::pair{u2, v1}};

  std::array<EdgeId, 4> order{};
  std::copy(f.begin(), f.end(), order.begin());
  std::sort(order.begin(), order.end());
  do {
    DemandGraph out = d;
    for (std::size_t k = 0; k < 4; ++k)
      out.edge_lift_in_place(order[k], slots[k].first, slots[k].second);
    std::map<std::pair<VertexId, VertexId>, int> seen;
    bool ok = true;
    for (const DemandEdge& e : out.edges())
      if (std::any_of(z.begin(), z.end(), [&](VertexId v) { return e.touches(v); }))
        ok = ok && ++seen[e.key()] == 1;
    if (ok) return {std::move(out), order};
  } while (std::next_permutation(order.begin(), order.end()));
  throw StructuralError("no placement of F avoids repeated edges at Z");
}

// ---------------------------------------------------------------- steps

struct Step {
  CaseTag tag = CaseTag::kSimple;
  DemandGraph d_prime;
  std::vector<VertexId> z;
  std::vector<LiftRecord> lifts;
  bool exhaustive = false;

  void lift(EdgeId e, VertexId x, VertexId y) {
    d_prime.edge_lift_in_place(e, x, y);
    lifts.push_back({e, x, y});
  }
};

Step case_1(const DemandGraph& g, int n) {
  const auto iso_a = vertices_with_degree(g, Side::A, 0);
  const auto iso_b = vertices_with_degree(g, Side::B, 0);
  std::vector<VertexId> x, y;
  const auto deg = g.degrees();
  for (int f = 0; f < g.base().vertex_count(); ++f) {
    const int d = deg[static_cast<std::size_t>(f)];
    if (d == n) x.push_back(g.base().vertex(f));
    if (d >= n - 1) y.push_back(g.base().vertex(f));
  }
  static constexpr CaseTag kByY[5] = {CaseTag::k1_5, CaseTag::k1_4, CaseTag::k1_3, CaseTag::k1_2,
                                      CaseTag::k1_1};
  if (y.size() > 4) throw StructuralError("case 1: more than four vertices of degree >= n-1");

  Step s;
  s.tag = kByY[y.size()];
  const CoverResult cover = find_cover_F(g, x, y);
  s.exhaustive = cover.exhaustive;
  auto [out, order] = place_ordered(g, cover.edges, iso_a[0], iso_a[1], iso_b[0], iso_b[1]);
  s.d_prime = std::move(out);
  const std::array<std::pair<VertexId, VertexId>, 4> slots{
      std::pair{iso_a[0], iso_b[0]}, std::pair{iso_a[0], iso_b[1]},
      std::pair{iso_a[1], iso_b[1]}, std::pair{iso_a[1], iso_b[0]}};
  for (std::size_t k = 0; k < 4; ++k) s.lifts.push_back({order[k], slots[k].first, slots[k].second});
  s.z = {iso_a[0], iso_a[1], iso_b[0], iso_b[1]};
  return s;
}

// A holds a vertex of degree 1.
Step case_2_1(const DemandGraph& g) {
  Step s;
  s.tag = CaseTag::k2_1;
  s.d_prime = g;
  const VertexId x = vertices_with_degree(g, Side::A, 1).front();
  const VertexId x_nb = g.neighbors(x).front();
  const auto iso_b = vertices_with_degree(g, Side::B, 0);
  if (!iso_b.empty()) {
    const VertexId y = iso_b.front();
    const auto e =
        lowest_edges(g, [&](const DemandEdge& e) { return !e.touches(x) && !e.touches(x_nb); }, 1);
    if (e.empty()) throw StructuralError("case 2.1: no edge avoids x and its neighbor");
    s.lift(e.front(), x, y);
    s.z = {x, y};
    return s;
  }
  for (VertexId y : vertices_with_degree(g, Side::B, 1))
    if (y != x_nb) {
      s.z = {x, y};
      return s;
    }
  throw StructuralError("case 2.1: every degree-1 vertex of B is joined to x");
}

Step case_2_2_1(const DemandGraph& g) {
  Step s;
  s.tag = CaseTag::k2_2_1;
  s.d_prime = g;
  for (int f = 0; f < g.base().vertex_count(); ++f) {
    const VertexId w = g.base().vertex(f);
    if (g.degree(w) == 2 && g.neighbors(w).size() == 2) {
      const auto iso = vertices_with_degree(g, opposite(w.side), 0);
      if (iso.empty()) throw StructuralError("case 2.2.1: no isolated vertex opposite w");
      s.z = {w, iso.front()};
      return s;
    }
  }
  throw StructuralError("case 2.2.1: guard failed");
}

// A holds at least two isolated vertices; every non-isolated vertex of B
// carries one doubled edge.
Step case_2_2_2(const DemandGraph& g) {
  Step s;
  s.tag = CaseTag::k2_2_2;
  s.d_prime = g;
  const auto iso_a = vertices_with_degree(g, Side::A, 0);
  const VertexId a = iso_a[0], b = iso_a[1];
  std::vector<VertexId> by_degree;
  for (int i = 0; i < g.base().a; ++i) by_degree.push_back(a_vertex(i));
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](VertexId p, VertexId q) { return g.degree(p) > g.degree(q); });
  const VertexId u = by_degree[0], v = by_degree[1];
  const VertexId z = g.neighbors(u).front();
  const VertexId w = g.neighbors(v).front();
  s.lift(edge_between(g, u, z), a, w);
  s.lift(edge_between(s.d_prime, v, w), b, z);
  s.z = {a, b, z, w};
  return s;
}

// One isolated vertex per class; the rest are n-1 doubled pairs a_i b_i.
// Lifting one copy of a_i b_i to a_{i+1} b_{i+2} (and of a_{n-1} b_{n-1} to
// a_n b_1) resolves the whole instance.
Step case_2_2_3(const DemandGraph& g, int n) {
  Step s;
  s.tag = CaseTag::k2_2_3;
  s.d_prime = g;
  std::vector<VertexId> as, bs;
  for (int i = 0; i < n; ++i) {
    const VertexId v = a_vertex(i);
    if (g.degree(v) == 0) continue;
    const auto nb = g.neighbors(v);
    if (nb.size() != 1 || g.multiplicity(v, nb[0]) != 2)
      throw StructuralError("case 2.2.3: vertex " + to_string(v) + " is not in a doubled pair");
    as.push_back(v);
    bs.push_back(nb[0]);
  }
  const auto iso_a = vertices_with_degree(g, Side::A, 0);
  const auto iso_b = vertices_with_degree(g, Side::B, 0);
  if (as.size() != static_cast<std::size_t>(n - 1) || iso_a.size() != 1 || iso_b.size() != 1)
    throw StructuralError("case 2.2.3: guard failed");
  as.push_back(iso_a[0]);
  bs.push_back(iso_b[0]);
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  for (int i = 0; i + 2 < n; ++i)
    s.lift(edge_between(s.d_prime, as[idx(i)], bs[idx(i)]), as[idx(i + 1)], bs[idx(i + 2)]);
  s.lift(edge_between(s.d_prime, as[idx(n - 2)], bs[idx(n - 2)]), as[idx(n - 1)], bs[0]);
  for (int i = 0; i < n; ++i) s.z.push_back(a_vertex(i));
  for (int i = 0; i < n; ++i) s.z.push_back(b_vertex(i));
  return s;
}

// z in A has degree n.
Step case_3(const DemandGraph& g, int n) {
  Step s;
  s.d_prime = g;
  const VertexId z = vertices_with_degree(g, Side::A, n).front();
  const auto iso_a = vertices_with_degree(g, Side::A, 0);
  if (iso_a.empty()) throw StructuralError("case 3: A has no isolated vertex");
  const VertexId v = iso_a[0];

  const auto deg1_b = vertices_with_degree(g, Side::B, 1);
  if (!deg1_b.empty()) {
    s.tag = CaseTag::k3_1;
    const VertexId u = deg1_b.front();
    const bool joined = g.multiplicity(z, u) > 0;
    const auto e = lowest_edges(
        g,
        [&](const DemandEdge& e) { return joined ? !e.touches(z) && !e.touches(u) : e.touches(z); },
        1);
    if (e.empty()) throw StructuralError("case 3.1: no edge to lift");
    s.lift(e.front(), v, u);
    s.z = {u, v};
    return s;
  }

  const auto iso_b = vertices_with_degree(g, Side::B, 0);
  if (iso_b.size() == 1) {
    s.tag = CaseTag::k3_2_1;
    for (int j = 0; j < n; ++j) {
      const VertexId x = b_vertex(j);
      if (g.degree(x) != 2 || g.neighbors(x).size() != 2) continue;
      if (g.multiplicity(z, x) == 0) {
        const auto e = lowest_edges(g, [&](const DemandEdge& e) { return e.touches(z); }, 1);
        s.lift(e.front(), v, x);
      }
      s.z = {x, v};
      return s;
    }
    // Every edge is doubled.
    const VertexId v2 = iso_a.size() > 1 ? iso_a[1] : v;
    if (v2 == v) throw StructuralError("case 3.2.1: A has a single isolated vertex");
    const VertexId a = g.neighbors(z).front();
    std::optional<VertexId> b;
    for (int j = 0; j < n && !b; ++j)
      if (g.degree(b_vertex(j)) == 2 && g.multiplicity(z, b_vertex(j)) == 0) b = b_vertex(j);
    if (!b) throw StructuralError("case 3.2.1: every degree-2 vertex of B is joined to z");
    const VertexId z2 = g.neighbors(*b).front();
    s.lift(edge_between(g, z, a), v, *b);
    s.lift(edge_between(s.d_prime, z2, *b), v2, a);
    s.z = {v, v2, a, *b};
    return s;
  }

  s.tag = CaseTag::k3_2_2;
  const VertexId u = iso_b[0];
  for (VertexId x : g.neighbors(z))
    for (VertexId y : vertices_with_degree(g, Side::A, 1))
      if (g.multiplicity(y, x) == 0) {
        s.lift(edge_between(g, z, x), y, u);
        s.z = {u, y};
        return s;
      }
  throw StructuralError("case 3.2.2: no neighbor of z has a degree-1 non-neighbor");
}

// z1 in A and z2 in B have degree n; B has exactly one isolated vertex.
Step case_4(const DemandGraph& g, int n) {
  Step s;
  s.tag = CaseTag::k4;
  s.d_prime = g;
  const VertexId z1 = vertices_with_degree(g, Side::A, n).front();
  const VertexId z2 = vertices_with_degree(g, Side::B, n).front();
  const VertexId v1 = vertices_with_degree(g, Side::A, 0).front();
  const VertexId v2 = vertices_with_degree(g, Side::B, 0).front();
  const EdgeId e = edge_between(g, z1, z2);
  for (VertexId x : vertices_with_degree(g, Side::B, 1))
    if (g.multiplicity(z1, x) == 0) {
      s.lift(e, v1, x);
      s.z = {x, v1};
      return s;
    }
  s.lift(e, v1, v2);
  s.z = {z1, v2};
  return s;
}

VertexId flip(VertexId v) { return {opposite(v.side), v.index}; }

Step unswap(Step s) {
  s.d_prime = swap_sides(s.d_prime);
  for (VertexId& v : s.z) v = flip(v);
  for (LiftRecord& l : s.lifts) l = {l.edge, flip(l.y), flip(l.x)};
  return s;
}

// Requires exactly 2n - 2 edges, max degree <= n, n >= 6, not simple.
Step dispatch(const DemandGraph& g, int n, bool& swapped) {
  swapped = false;
  auto oriented = [&](bool swap, auto handler) {
    swapped = swap;
    return swap ? unswap(handler(swap_sides(g))) : handler(g);
  };
  const auto count = [&](Side side, int d) { return vertices_with_degree(g, side, d).size(); };
  const std::size_t iso_a = count(Side::A, 0), iso_b = count(Side::B, 0);
  const std::size_t x_a = count(Side::A, n), x_b = count(Side::B, n);

  if (iso_a >= 2 && iso_b >= 2) return case_1(g, n);
  if (x_a + x_b == 0) {
    if (count(Side::A, 1) > 0) return case_2_1(g);
    if (count(Side::B, 1) > 0) return oriented(true, [](const DemandGraph& h) { return case_2_1(h); });
    for (int f = 0; f < g.base().vertex_count(); ++f) {
      const VertexId w = g.base().vertex(f);
      if (g.degree(w) == 2 && g.neighbors(w).size() == 2) return case_2_2_1(g);
    }
    if (iso_a >= 2) return case_2_2_2(g);
    if (iso_b >= 2)
      return oriented(true, [](const DemandGraph& h) { return case_2_2_2(h); });
    return case_2_2_3(g, n);
  }
  if (x_a + x_b == 1)
    return oriented(x_b == 1, [n](const DemandGraph& h) { return case_3(h, n); });
  if (x_a == 1 && x_b == 1)
    return oriented(iso_b >= 2, [n](const DemandGraph& h) { return case_4(h, n); });
  throw StructuralError("dispatch: more than one degree-n vertex in a class");
}

class Solver {
 public:
  explicit Solver(const EdgeSolveOptions& options) : options_(options) {}

  CaseTrace take_trace() { return std::move(trace_); }

  // Returns a simple lifted version of g (same base and id space).
  DemandGraph solve(DemandGraph g, const std::vector<VertexId>& origin) {
    const int n = g.base().a;
    CaseStep step;
    step.n = n;
    if (g.is_simple_bipartite()) {
      step.tag = CaseTag::kSimple;
      trace_.steps.push_back(step);
      return g;
    }
    if (n <= 5) {
      step.tag = CaseTag::kBase;
      trace_.steps.push_back(step);
      return solve_base(g);
    }

    const std::size_t before = g.edge_count();
    g = pad_to_full(g, n);
    step.padding_added = static_cast<int>(g.edge_count() - before);
    if (g.is_simple_bipartite()) {
      step.tag = CaseTag::kSimple;
      trace_.steps.push_back(step);
      return g;
    }

    Step s = dispatch(g, n, step.swapped);
    step.tag = s.tag;
    step.cover_search_exhaustive = s.exhaustive;
    const auto name = [&](VertexId v) { return origin[static_cast<std::size_t>(g.base().flat(v))]; };
    for (VertexId v : s.z) step.removed.push_back(name(v));
    for (const LiftRecord& l : s.lifts) step.lifts.push_back({l.edge, name(l.x), name(l.y)});
    trace_.steps.push_back(step);

    const ConditionReport report = check_conditions(s.d_prime, s.z, n);
    if (!report.ok()) {
      std::string msg = "case " + std::string(to_string(s.tag)) + " at n=" + std::to_string(n) + ":";
      for (const auto& f : report.failures) msg += " " + f + ";";
      throw StructuralError(msg);
    }

    std::vector<char> in_z(static_cast<std::size_t>(g.base().vertex_count()), 0);
    for (VertexId v : s.z) in_z[static_cast<std::size_t>(g.base().flat(v))] = 1;
    std::vector<int> new_index(in_z.size(), -1);
    std::vector<VertexId> sub_origin;
    int m = 0;
    for (Side side : {Side::A, Side::B}) {
      int k = 0;
      for (int i = 0; i < n; ++i) {
        const int f = g.base().flat({side, i});
        if (in_z[static_cast<std::size_t>(f)]) continue;
        new_index[static_cast<std::size_t>(f)] = k++;
        sub_origin.push_back(origin[static_cast<std::size_t>(f)]);
      }
      m = k;
    }
    if (m == 0) return s.d_prime;

    std::vector<DemandEdge> kept, inner;
    const auto remap = [&](VertexId v) {
      return VertexId{v.side, new_index[static_cast<std::size_t>(g.base().flat(v))]};
    };
    for (const DemandEdge& e : s.d_prime.edges()) {
      if (in_z[static_cast<std::size_t>(g.base().flat(e.u))] ||
          in_z[static_cast<std::size_t>(g.base().flat(e.v))]) {
        kept.push_back(e);
      } else {
        DemandEdge r = e;
        r.u = remap(e.u);
        r.v = remap(e.v);
        inner.push_back(r);
      }
    }
    DemandGraph sub({m, m}, std::move(inner), s.d_prime.next_fresh_id());
    const DemandGraph solved = solve(std::move(sub), sub_origin);

    std::vector<VertexId> back(static_cast<std::size_t>(2 * m));
    for (std::size_t f = 0; f < new_index.size(); ++f)
      if (new_index[f] >= 0) {
        const VertexId v = g.base().vertex(static_cast<int>(f));
        back[static_cast<std::size_t>(solved.base().flat({v.side, new_index[f]}))] = v;
      }
    for (DemandEdge e : solved.edges()) {
      e.u = back[static_cast<std::size_t>(solved.base().flat(e.u))];
      e.v = back[static_cast<std::size_t>(solved.base().flat(e.v))];
      kept.push_back(e);
    }
    return DemandGraph(g.base(), std::move(kept), solved.next_fresh_id());
  }

 private:
  DemandGraph solve_base(const DemandGraph& g) {
    const OracleVerdict verdict = decide(g, options_.base_budget);
    if (verdict.status == OracleStatus::kUnknown)
      throw BudgetError("base case at n=" + std::to_string(g.base().a) +
                        " exhausted its search budget");
    if (verdict.status == OracleStatus::kUnresolvable)
      throw StructuralError("base case at n=" + std::to_string(g.base().a) +
                            " is unresolvable although within hypotheses");
    DemandGraph out = g;
    for (const auto& [id, path] : verdict.resolution->routes) {
      EdgeId current = id;
      for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i)
        current = out.lift_in_place(current, path.vertices[i])->second;
    }
    return out;
  }

  EdgeSolveOptions options_;
  CaseTrace trace_;
};

}  // namespace

ConditionReport check_conditions(const DemandGraph& d_prime, std::span<const VertexId> z, int n) {
  ConditionReport report;
  const BaseSpec& base = d_prime.base();
  std::vector<char> in_z(static_cast<std::size_t>(base.vertex_count()), 0);
  int za = 0, zb = 0;
  for (VertexId v : z) {
    if (!base.contains(v)) throw DomainError("Z vertex " + to_string(v) + " out of range");
    char& mark = in_z[static_cast<std::size_t>(base.flat(v))];
    if (!mark) (v.side == Side::A ? za : zb) += 1;
    mark = 1;
  }
  const auto at_z = [&](const DemandEdge& e) {
    return in_z[static_cast<std::size_t>(base.flat(e.u))] ||
           in_z[static_cast<std::size_t>(base.flat(e.v))];
  };

  if (za != zb)
    report.failures.push_back("(1) Z has " + std::to_string(za) + " A-vertices and " +
                              std::to_string(zb) + " B-vertices");

  const int rest_n = n - za;
  std::int64_t rest_edges = 0;
  std::vector<int> rest_deg(in_z.size(), 0);
  std::map<std::pair<VertexId, VertexId>, int> at_z_pairs;
  for (const DemandEdge& e : d_prime.edges()) {
    if (at_z(e)) {
      if (!e.crosses()) report.failures.push_back("(4) edge " + std::to_string(e.id) + " at Z does not cross");
      if (++at_z_pairs[e.key()] == 2)
        report.failures.push_back("(4) repeated edge " + to_string(e.key().first) +
                                  to_string(e.key().second) + " at Z");
    } else {
      ++rest_edges;
      ++rest_deg[static_cast<std::size_t>(base.flat(e.u))];
      ++rest_deg[static_cast<std::size_t>(base.flat(e.v))];
    }
  }
  if (rest_n > 0 && rest_edges > 2LL * rest_n - 2)
    report.failures.push_back("(2) " + std::to_string(rest_edges) + " edges off Z exceed " +
                              std::to_string(2 * rest_n - 2));
  const int rest_max = rest_deg.empty() ? 0 : *std::max_element(rest_deg.begin(), rest_deg.end());
  if (rest_max > rest_n)
    report.failures.push_back("(3) degree " + std::to_string(rest_max) + " off Z exceeds " +
                              std::to_string(rest_n));
  return report;
}

DemandGraph pad_to_full(const DemandGraph& d, int n) {
  if (d.base().a != n || d.base().b != n) throw PreconditionError("pad_to_full needs K_{n,n}");
  if (d.edge_count() > static_cast<std::size_t>(2 * n - 2) || d.max_degree() > n)
    throw PreconditionError("pad_to_full needs at most 2n-2 edges and max degree <= n");
  DemandGraph out = d;
  std::vector<int> deg = out.degrees();
  while (out.edge_count() < static_cast<std::size_t>(2 * n - 2)) {
    int i = 0, j = 0;
    while (deg[static_cast<std::size_t>(i)] >= n) ++i;
    while (deg[static_cast<std::size_t>(n + j)] >= n) ++j;
    out.add_edge(a_vertex(i), b_vertex(j), true);
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(n + j)];
  }
  return out;
}

CoverResult find_cover_F(const DemandGraph& d, std::span<const VertexId> x,
                         std::span<const VertexId> y) {
  CoverResult result;
  const auto structured = structured_cover(d, y);
  if (usable_cover(d, structured, x, y)) {
    std::copy(structured.begin(), structured.end(), result.edges.begin());
    return result;
  }
  const auto found = exhaustive_cover(d, x, y);
  if (!found) throw StructuralError("no four-edge cover F exists");
  std::copy(found->begin(), found->end(), result.edges.begin());
  result.exhaustive = true;
  return result;
}

DemandGraph place_F(const DemandGraph& d, std::span<const EdgeId> f, VertexId u1, VertexId u2,
                    VertexId v1, VertexId v2) {
  return place_ordered(d, f, u1, u2, v1, v2).first;
}

EdgeSolveResult solve_edge_version(const DemandGraph& d, const EdgeSolveOptions& options) {
  const int n = d.base().a;
  if (d.base().b != n) throw PreconditionError("edge version needs K_{n,n}");
  if (n < 4) throw PreconditionError("edge version needs n >= 4");
  if (!d.is_bipartite()) throw PreconditionError("demand edges must join A to B");
  if (d.edge_count() > static_cast<std::size_t>(2 * n - 2))
    throw PreconditionError("edge version needs at most 2n-2 = " + std::to_string(2 * n - 2) +
                            " edges, got " + std::to_string(d.edge_count()));
  if (d.max_degree() > n)
    throw PreconditionError("edge version needs max degree <= n = " + std::to_string(n));

  std::vector<VertexId> origin;
  for (int f = 0; f < d.base().vertex_count(); ++f) origin.push_back(d.base().vertex(f));
  Solver solver(options);
  const DemandGraph lifted = solver.solve(d, origin);
  EdgeSolveResult out;
  out.resolution = extract_resolution(lifted, d);
  out.trace = solver.take_trace();
  const Verdict verdict = verify_resolution(d, out.resolution);
  if (!verdict.valid())
    throw StructuralError("edge solver produced an invalid resolution: " + verdict.violations[0]);
  return out;
}

}  // namespace tpb
