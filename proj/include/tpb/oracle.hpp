#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "tpb/demand_graph.hpp"

namespace tpb {

struct SearchBudget {
  std::int64_t max_nodes = 10'000'000;
  std::int64_t max_millis = 10'000;
};

enum class OracleStatus { kResolvable, kUnresolvable, kUnknown };

const char* to_string(OracleStatus s);

struct OracleVerdict {
  OracleStatus status = OracleStatus::kUnknown;
  std::optional<Resolution> resolution;  // set iff resolvable
  std::int64_t nodes_explored = 0;
};

// Exact decision by depth-first routing of one demand at a time over simple
// paths of the residual base graph, shortest paths first. Prunes on
// per-vertex throughput and on the total-length counting bound.
OracleVerdict decide(const DemandGraph& d, SearchBudget budget = {});

struct EnumerationOptions {
  int n = 1;
  int max_edges = 0;
  int max_degree = 0;
  // One representative per orbit under independent permutations of A and B.
  bool canonical = false;
};

// Visits every demand multigraph on K_{n,n} within the caps in a fixed
// order; `visit` returns false to stop early. Returns the number visited.
std::int64_t enumerate_demands(const EnumerationOptions& options,
                               const std::function<bool(const DemandGraph&)>& visit);

}  // namespace tpb
