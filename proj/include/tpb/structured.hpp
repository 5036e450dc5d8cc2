#pragma once

// Matching-and-coloring solvers for two structured families: block-diagonal
// instances of maximum degree floor(n/3), and instances whose A-degrees are
// small relative to b.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tpb/coloring.hpp"
#include "tpb/demand_graph.hpp"

namespace tpb {

// Zero-based indices. u_blocks[i] pairs with v_blocks[i].
struct BlockPartition {
  std::array<std::vector<int>, 3> u_blocks;
  std::array<std::vector<int>, 3> v_blocks;
};

// Splits 0..n-1 into three consecutive blocks of the given sizes on both sides.
BlockPartition consecutive_blocks(int s1, int s2, int s3);

// Requires a = b = n >= 3, valid blocks of size >= floor(n/3), max degree
// <= floor(n/3) and no edge between U_i and V_j for i != j. Throws
// PreconditionError naming the failed hypothesis.
Resolution solve_blocked(const DemandGraph& d, const BlockPartition& p);

// Regroups the edges of `ms` (Delta_B matchings of size b) into matchings of
// size delta_a. A short tail of one matching is completed from the next one
// with edges disjoint from it. Requires (number of edges) divisible by
// delta_a, and delta_a | b or 2 * delta_a <= b + 1.
MatchingDecomposition repartition_matchings(const DemandGraph& h, const MatchingDecomposition& ms,
                                            int delta_a);

// Facts measured on the lifted graph. The solver throws StructuralError if
// any of them fails, so a returned record always has them satisfied.
struct QuarterStats {
  bool swapped = false;
  SemiregularTargets targets;
  int padding_added = 0;
  int aa_max_multiplicity = 0;
  int aa_max_degree = 0;
  int min_list_size = 0;
  bool within_guarantee = false;  // a_degree <= floor((b + 1) / 6)
};

struct QuarterResult {
  std::optional<Resolution> resolution;  // empty on failure
  std::string failure;
  QuarterStats stats;
};

// Attempts any bipartite instance; the list-coloring stage can fail above the
// guaranteed range. Throws PreconditionError on a non-bipartite instance.
QuarterResult solve_quarter(const DemandGraph& d, ListColoringOptions options = {});

}  // namespace tpb
