#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tpb/demand_graph.hpp"

namespace tpb {

// Matchings in color order; together they partition the edge ids.
struct MatchingDecomposition {
  std::vector<std::vector<EdgeId>> matchings;
};

struct EdgeColoring {
  std::map<EdgeId, int> colors;
  int palette_size = 0;
};

struct ListAssignment {
  std::map<EdgeId, std::vector<int>> lists;
};

// Splits a bipartite multigraph into exactly max_degree() matchings using
// alternating-path recoloring.
MatchingDecomposition konig_decompose(const DemandGraph& h);

// Proper coloring of any loopless multigraph with at most
// max_degree() + max_multiplicity() colors (multi-fan recoloring).
EdgeColoring vizing_color(const DemandGraph& h);

struct ListColoringOptions {
  std::int64_t max_backtracks = 1000;
};

// Colors edges in decreasing order of adjacency, each from its own list,
// retreating from at most `max_backtracks` dead ends. Always succeeds when every
// list is longer than the number of edges adjacent to its edge.
std::optional<EdgeColoring> greedy_list_color(const DemandGraph& h, const ListAssignment& lists,
                                              ListColoringOptions options = {});

// Edges sharing an endpoint never share a color; every edge is colored.
bool is_proper(const DemandGraph& h, const EdgeColoring& c);
bool is_matching_decomposition(const DemandGraph& h, const MatchingDecomposition& m);

struct SemiregularTargets {
  int a_degree = 0;
  int b_degree = 0;
  friend bool operator==(const SemiregularTargets&, const SemiregularTargets&) = default;
};

// Smallest A-degree t >= Delta_A with b | a*t and a*t/b >= Delta_B.
SemiregularTargets choose_semiregular_targets(const DemandGraph& d);

// Adds padding edges (fresh ids, padding flag set) until every A-vertex has
// degree targets.a_degree and every B-vertex targets.b_degree. Each step
// joins the most deficient A-vertex to the most deficient B-vertex.
DemandGraph regularize(const DemandGraph& d, SemiregularTargets targets);

// Same, restricted to the given vertex subsets; other vertices are untouched.
DemandGraph regularize(const DemandGraph& d, SemiregularTargets targets,
                       std::span<const int> a_indices, std::span<const int> b_indices);

}  // namespace tpb
