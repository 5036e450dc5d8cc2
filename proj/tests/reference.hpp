#pragma once

// Slow, independent reference implementations used only to check the library.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tpb/demand_graph.hpp"

namespace tpb::reference {

// Tries every system of simple paths, one demand after another, with no
// pruning besides edge-disjointness.
std::optional<Resolution> exhaustive_resolve(const DemandGraph& d);

// Smallest k admitting a proper edge coloring with k colors.
int chromatic_index(const DemandGraph& h);

// Number of n x n multiplicity matrices with at most max_edges edges and
// max degree <= max_degree, up to independent row and column permutations.
std::int64_t count_orbits(int n, int max_edges, int max_degree);

// Every 4-edge set covering each vertex at most twice, Y at least once and X
// exactly twice, which edge-lifts to u1v1,u1v2,u2v2,u2v1 in some order with
// no repeated edge at those four vertices.
std::vector<std::vector<EdgeId>> all_covers(const DemandGraph& d, std::span<const VertexId> x,
                                            std::span<const VertexId> y, VertexId u1, VertexId u2,
                                            VertexId v1, VertexId v2);

// True if lifting f in the given order leaves no repeated edge at the four
// placement vertices.
bool placement_is_simple(const DemandGraph& d, std::span<const EdgeId> f, VertexId u1,
                         VertexId u2, VertexId v1, VertexId v2);

}  // namespace tpb::reference
