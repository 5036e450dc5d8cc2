#include "tpb/structured.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tpb/errors.hpp"

namespace tpb {

BlockPartition consecutive_blocks(int s1, int s2, int s3) {
  BlockPartition p;
  const std::array<int, 3> sizes{s1, s2, s3};
  int next = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (sizes[i] < 0) throw DomainError("block sizes must be non-negative");
    for (int k = 0; k < sizes[i]; ++k, ++next) {
      p.u_blocks[i].push_back(next);
      p.v_blocks[i].push_back(next);
    }
  }
  return p;
}

namespace {

// Block number of each index on one side; -1 if uncovered.
std::vector<int> block_map(const std::array<std::vector<int>, 3>& blocks, int n, char side) {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < 3; ++i)
    for (int x : blocks[static_cast<std::size_t>(i)]) {
      if (x < 0 || x >= n)
        throw PreconditionError(std::string("block index ") + side + std::to_string(x + 1) +
                                " out of range");
      int& o = owner[static_cast<std::size_t>(x)];
      if (o != -1)
        throw PreconditionError(std::string("vertex ") + side + std::to_string(x + 1) +
                                " lies in two blocks");
      o = i;
    }
  for (int x = 0; x < n; ++x)
    if (owner[static_cast<std::size_t>(x)] == -1)
      throw PreconditionError(std::string("vertex ") + side + std::to_string(x + 1) +
                              " lies in no block");
  return owner;
}

DemandGraph subgraph_of(const DemandGraph& g, const std::vector<EdgeId>& ids) {
  std::vector<DemandEdge> edges;
  for (EdgeId id : ids) edges.push_back(g.edge(id));
  std::sort(edges.begin(), edges.end(),
            [](const DemandEdge& x, const DemandEdge& y) { return x.id < y.id; });
  return DemandGraph(g.base(), std::move(edges), g.next_fresh_id());
}

Resolution flip_sides(const Resolution& r) {
  Resolution out;
  for (const auto& [id, path] : r.routes) {
    Path p;
    for (VertexId v : path.vertices) p.vertices.push_back({opposite(v.side), v.index});
    out.routes[id] = std::move(p);
  }
  return out;
}

void require_valid(const DemandGraph& d, const Resolution& r, const char* who) {
  const Verdict v = verify_resolution(d, r);
  if (!v.valid())
    throw StructuralError(std::string(who) + " produced an invalid resolution: " + v.violations[0]);
}

}  // namespace

Resolution solve_blocked(const DemandGraph& d, const BlockPartition& p) {
  const int n = d.base().a;
  if (d.base().b != n) throw PreconditionError("blocked solver needs K_{n,n}");
  if (n < 3) throw PreconditionError("blocked solver needs n >= 3");
  if (!d.is_bipartite()) throw PreconditionError("demand edges must join A to B");
  const int m = n / 3;
  const auto owner_a = block_map(p.u_blocks, n, 'a');
  const auto owner_b = block_map(p.v_blocks, n, 'b');
  for (std::size_t i = 0; i < 3; ++i) {
    if (p.u_blocks[i].size() != p.v_blocks[i].size())
      throw PreconditionError("blocks U" + std::to_string(i + 1) + " and V" +
                              std::to_string(i + 1) + " differ in size");
    if (p.u_blocks[i].size() < static_cast<std::size_t>(m))
      throw PreconditionError("block " + std::to_string(i + 1) + " is smaller than floor(n/3) = " +
                              std::to_string(m));
  }
  if (d.max_degree() > m)
    throw PreconditionError("max degree " + std::to_string(d.max_degree()) +
                            " exceeds floor(n/3) = " + std::to_string(m));
  for (const DemandEdge& e : d.edges()) {
    const auto [x, y] = e.key();
    const int bi = owner_a[static_cast<std::size_t>(x.index)];
    const int bj = owner_b[static_cast<std::size_t>(y.index)];
    if (bi != bj)
      throw PreconditionError("edge " + std::to_string(e.id) + " joins U" + std::to_string(bi + 1) +
                              " to V" + std::to_string(bj + 1));
  }

  DemandGraph lifted = d;
  for (std::size_t i = 0; i < 3; ++i)
    lifted = regularize(lifted, {m, m}, p.u_blocks[i], p.v_blocks[i]);

  // Matching j of block i goes to the j-th vertex of U_i.
  const MatchingDecomposition ms = konig_decompose(lifted);
  std::array<std::vector<EdgeId>, 3> inner;
  for (std::size_t j = 0; j < ms.matchings.size(); ++j)
    for (EdgeId id : ms.matchings[j]) {
      const VertexId x = lifted.edge(id).key().first;
      const auto block = static_cast<std::size_t>(owner_a[static_cast<std::size_t>(x.index)]);
      const VertexId w = a_vertex(p.u_blocks[block][j]);
      if (const auto ids = lifted.lift_in_place(id, w)) inner[block].push_back(ids->first);
    }

  // Color classes of D'[U_i] go to V_{i+1} then V_{i+2}.
  for (std::size_t i = 0; i < 3; ++i) {
    if (inner[i].empty()) continue;
    std::vector<int> palette = p.v_blocks[(i + 1) % 3];
    const auto& more = p.v_blocks[(i + 2) % 3];
    palette.insert(palette.end(), more.begin(), more.end());
    const DemandGraph h = subgraph_of(lifted, inner[i]);
    std::optional<EdgeColoring> coloring;
    if (h.max_degree() + h.max_multiplicity() <= static_cast<int>(palette.size())) {
      coloring = vizing_color(h);
    } else {
      ListAssignment lists;
      std::vector<int> all(palette.size());
      std::iota(all.begin(), all.end(), 0);
      for (const DemandEdge& e : h.edges()) lists.lists[e.id] = all;
      coloring = greedy_list_color(h, lists);
    }
    if (!coloring)
      throw StructuralError("block " + std::to_string(i + 1) + ": no coloring with " +
                            std::to_string(palette.size()) + " colors found");
    for (const auto& [id, c] : coloring->colors)
      lifted.lift_in_place(id, b_vertex(palette[static_cast<std::size_t>(c)]));
  }

  Resolution r = extract_resolution(lifted, d);
  require_valid(d, r, "blocked solver");
  return r;
}

MatchingDecomposition repartition_matchings(const DemandGraph& h, const MatchingDecomposition& ms,
                                            int delta_a) {
  if (delta_a < 1) throw PreconditionError("group size must be positive");
  if (ms.matchings.empty()) return {};
  const std::size_t b = ms.matchings.front().size();
  std::size_t total = 0;
  for (const auto& m : ms.matchings) {
    if (m.size() != b) throw PreconditionError("matchings must all have the same size");
    total += m.size();
  }
  const auto k = static_cast<std::size_t>(delta_a);
  if (total % k != 0)
    throw PreconditionError("edge count " + std::to_string(total) + " is not a multiple of " +
                            std::to_string(delta_a));
  if (b % k != 0 && 2 * k > b + 1)
    throw PreconditionError("group size " + std::to_string(delta_a) +
                            " too large to complete a tail of a matching of size " +
                            std::to_string(b));

  MatchingDecomposition out;
  std::vector<EdgeId> carry;
  for (const auto& matching : ms.matchings) {
    std::vector<EdgeId> rest = matching;
    if (!carry.empty()) {
      std::set<VertexId> used;
      for (EdgeId id : carry) {
        used.insert(h.edge(id).u);
        used.insert(h.edge(id).v);
      }
      std::vector<EdgeId> skipped;
      for (EdgeId id : rest) {
        const DemandEdge& e = h.edge(id);
        if (carry.size() < k && !used.count(e.u) && !used.count(e.v))
          carry.push_back(id);
        else
          skipped.push_back(id);
      }
      if (carry.size() < k) throw StructuralError("could not complete a carried group");
      out.matchings.push_back(std::move(carry));
      carry.clear();
      rest = std::move(skipped);
    }
    std::size_t pos = 0;
    for (; pos + k <= rest.size(); pos += k)
      out.matchings.emplace_back(rest.begin() + static_cast<std::ptrdiff_t>(pos),
                                 rest.begin() + static_cast<std::ptrdiff_t>(pos + k));
    carry.assign(rest.begin() + static_cast<std::ptrdiff_t>(pos), rest.end());
  }
  if (!carry.empty()) throw StructuralError("edges left over after regrouping");
  return out;
}

QuarterResult solve_quarter(const DemandGraph& d, ListColoringOptions options) {
  if (!d.is_bipartite()) throw PreconditionError("demand edges must join A to B");
  QuarterResult out;
  QuarterStats& stats = out.stats;
  stats.swapped = d.base().a < d.base().b;
  const DemandGraph g = stats.swapped ? swap_sides(d) : d;
  const int a = g.base().a;
  const int b = g.base().b;
  if (g.edge_count() == 0) {
    out.resolution = Resolution{};
    stats.within_guarantee = true;
    return out;
  }

  stats.targets = choose_semiregular_targets(g);
  const int t = stats.targets.a_degree;
  stats.within_guarantee = t <= (b + 1) / 6;
  if (b % t != 0 && 2 * t > b + 1) {
    out.failure = "A-degree " + std::to_string(t) + " is too large to regroup matchings of size " +
                  std::to_string(b);
    return out;
  }
  DemandGraph lifted = regularize(g, stats.targets);
  stats.padding_added = static_cast<int>(lifted.edge_count() - g.edge_count());

  const MatchingDecomposition groups =
      repartition_matchings(lifted, konig_decompose(lifted), t);
  if (groups.matchings.size() != static_cast<std::size_t>(a))
    throw StructuralError("expected " + std::to_string(a) + " groups, got " +
                          std::to_string(groups.matchings.size()));
  for (int i = 0; i < a; ++i)
    for (EdgeId id : groups.matchings[static_cast<std::size_t>(i)])
      lifted.lift_in_place(id, a_vertex(i));

  std::vector<EdgeId> aa_ids;
  std::vector<std::set<int>> b_nbrs(static_cast<std::size_t>(a));
  std::vector<int> ab_count(static_cast<std::size_t>(a), 0);
  for (const DemandEdge& e : lifted.edges()) {
    if (e.crosses()) {
      const auto [x, y] = e.key();
      if (!b_nbrs[static_cast<std::size_t>(x.index)].insert(y.index).second)
        throw StructuralError("repeated edge " + to_string(x) + to_string(y) + " after lifting");
      ++ab_count[static_cast<std::size_t>(x.index)];
    } else if (e.u.side == Side::A) {
      aa_ids.push_back(e.id);
    } else {
      throw StructuralError("edge inside B after lifting");
    }
  }
  for (int i = 0; i < a; ++i)
    if (ab_count[static_cast<std::size_t>(i)] != t)
      throw StructuralError(to_string(a_vertex(i)) + " has " +
                            std::to_string(ab_count[static_cast<std::size_t>(i)]) +
                            " edges to B, expected " + std::to_string(t));
  const DemandGraph aa = subgraph_of(lifted, aa_ids);
  stats.aa_max_multiplicity = aa.max_multiplicity();
  stats.aa_max_degree = aa.max_degree();
  if (stats.aa_max_multiplicity > 2)
    throw StructuralError("multiplicity inside A is " + std::to_string(stats.aa_max_multiplicity));
  if (stats.aa_max_degree > 2 * t)
    throw StructuralError("degree inside A is " + std::to_string(stats.aa_max_degree));

  ListAssignment lists;
  stats.min_list_size = b;
  for (const DemandEdge& e : aa.edges()) {
    std::vector<int>& list = lists.lists[e.id];
    const auto& nu = b_nbrs[static_cast<std::size_t>(e.u.index)];
    const auto& nv = b_nbrs[static_cast<std::size_t>(e.v.index)];
    for (int c = 0; c < b; ++c)
      if (!nu.count(c) && !nv.count(c)) list.push_back(c);
    stats.min_list_size = std::min(stats.min_list_size, static_cast<int>(list.size()));
  }
  if (stats.min_list_size < b - 2 * t)
    throw StructuralError("list of size " + std::to_string(stats.min_list_size) +
                          " below b - 2t = " + std::to_string(b - 2 * t));

  const auto coloring = greedy_list_color(aa, lists, options);
  if (!coloring) {
    out.failure = "list coloring gave up after " + std::to_string(options.max_backtracks) +
                  " backtracks";
    return out;
  }
  for (const auto& [id, c] : coloring->colors) lifted.lift_in_place(id, b_vertex(c));

  Resolution r = extract_resolution(lifted, g);
  if (stats.swapped) r = flip_sides(r);
  require_valid(d, r, "quarter solver");
  out.resolution = std::move(r);
  return out;
}

}  // namespace tpb
