#pragma once

// Bipartite demand multigraphs over K_{a,b}, the lifting calculus that
// transforms them, and recovery/verification of edge-disjoint path systems.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tpb {

enum class Side : std::uint8_t { A, B };

constexpr Side opposite(Side s) noexcept { return s == Side::A ? Side::B : Side::A; }

struct VertexId {
  Side side = Side::A;
  int index = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline VertexId a_vertex(int index) { return {Side::A, index}; }
inline VertexId b_vertex(int index) { return {Side::B, index}; }

// "a1", "b3": one-based, matching the text formats.
std::string to_string(VertexId v);

struct BaseSpec {
  int a = 1;
  int b = 1;

  int class_size(Side s) const noexcept { return s == Side::A ? a : b; }
  int vertex_count() const noexcept { return a + b; }
  bool contains(VertexId v) const noexcept {
    return v.index >= 0 && v.index < class_size(v.side);
  }
  // A-vertices occupy [0, a), B-vertices [a, a+b).
  int flat(VertexId v) const noexcept { return v.side == Side::A ? v.index : a + v.index; }
  VertexId vertex(int flat_index) const noexcept {
    return flat_index < a ? a_vertex(flat_index) : b_vertex(flat_index - a);
  }

  friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

using EdgeId = std::int64_t;

struct DemandEdge {
  EdgeId id = 0;
  EdgeId label = 0;  // lineage: the id of the original demand edge
  VertexId u;
  VertexId v;
  bool padding = false;  // introduced by a solver, never a real demand

  bool crosses() const noexcept { return u.side != v.side; }
  bool touches(VertexId x) const noexcept { return u == x || v == x; }
  VertexId other(VertexId x) const noexcept { return u == x ? v : u; }
  // Endpoints ordered (A-side first for crossing edges, else by value).
  std::pair<VertexId, VertexId> key() const noexcept;
};

// Loopless multigraph on the vertices of K_{a,b}. Edges are kept sorted by
// id; fresh ids are always larger than every id already present.
class DemandGraph {
 public:
  DemandGraph() = default;
  explicit DemandGraph(BaseSpec base);
  DemandGraph(BaseSpec base, std::vector<DemandEdge> edges, EdgeId next_fresh_id);

  // Crossing edges (A index, B index), zero-based, ids 1..m in input order.
  static DemandGraph from_pairs(BaseSpec base, std::span<const std::pair<int, int>> pairs);

  const BaseSpec& base() const noexcept { return base_; }
  std::span<const DemandEdge> edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  EdgeId next_fresh_id() const noexcept { return next_fresh_id_; }
  void reserve_ids_below(EdgeId id);

  bool has_edge(EdgeId id) const noexcept;
  const DemandEdge& edge(EdgeId id) const;

  EdgeId add_edge(VertexId u, VertexId v, bool padding = false);
  void add_edge_with_label(VertexId u, VertexId v, EdgeId label, bool padding);
  void remove_edge(EdgeId id);

  // In-place lifting. Returns the ids of {u,z} and {z,v} (u, v the stored
  // endpoints), or nullopt when z is an endpoint and nothing happens.
  std::optional<std::pair<EdgeId, EdgeId>> lift_in_place(EdgeId id, VertexId z);
  // Replaces {u,v} by {x,y}, {u,y}, {x,v}; returns their ids in that order.
  std::array<EdgeId, 3> edge_lift_in_place(EdgeId id, VertexId x, VertexId y);

  int degree(VertexId v) const;
  int multiplicity(VertexId u, VertexId v) const;
  std::vector<VertexId> neighbors(VertexId v) const;  // sorted, distinct
  int max_degree() const;
  int max_degree(Side side) const;
  int max_multiplicity() const;
  std::vector<int> degrees() const;  // indexed by flat vertex
  // Every edge crosses and no pair repeats: the graph is a subgraph of K_{a,b}.
  bool is_simple_bipartite() const;
  bool is_bipartite() const;

 private:
  void check_vertex(VertexId v) const;
  std::size_t position(EdgeId id) const;

  BaseSpec base_;
  std::vector<DemandEdge> edges_;
  EdgeId next_fresh_id_ = 1;
};

DemandGraph lift(const DemandGraph& d, EdgeId id, VertexId z);
DemandGraph edge_lift(const DemandGraph& d, EdgeId id, VertexId x, VertexId y);
// Keeps edges with both endpoints in `keep`; ids, labels and base unchanged.
DemandGraph induced(const DemandGraph& d, std::span<const VertexId> keep);
// Mirror image with the roles of A and B exchanged.
DemandGraph swap_sides(const DemandGraph& d);
// Drops every padding-flagged edge.
DemandGraph without_padding(const DemandGraph& d);

struct Path {
  std::vector<VertexId> vertices;

  std::size_t length() const noexcept {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
  friend bool operator==(const Path&, const Path&) = default;
};

struct Resolution {
  std::map<EdgeId, Path> routes;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

// Orders every non-padding label class of `lifted` into a walk between the
// terminals of the matching edge of `original` and shortcuts it to a path.
Resolution extract_resolution(const DemandGraph& lifted, const DemandGraph& original);

// Restricts routes to the edges present in `d` (drops padding demands).
Resolution restrict_to(const Resolution& r, const DemandGraph& d);

struct Verdict {
  std::vector<std::string> violations;

  bool valid() const noexcept { return violations.empty(); }
};

Verdict verify_resolution(const DemandGraph& d, const Resolution& r);

}  // namespace tpb
