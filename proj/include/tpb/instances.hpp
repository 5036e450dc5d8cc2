#pragma once

// Instance generators and the text formats for instances and resolutions.

#include <cstdint>
#include <string>
#include <string_view>

#include "tpb/demand_graph.hpp"
#include "tpb/oracle.hpp"
#include "tpb/structured.hpp"

namespace tpb {

// n pairs (a_i, b_i), each joined by ceil(n/3) + 1 parallel edges.
DemandGraph gen_sharp_conjecture(int n);

// n copies of a1b1, n-1 copies of a2b2, everything else isolated.
DemandGraph gen_sharp_edge(int n);

// Doubled pairs a_i b_i for i < n, a_n and b_n isolated.
DemandGraph gen_chain(int n);

// Random multigraph on K_{n,n} with at most max_edges edges, max degree at
// most max_degree and at most 2n - 2 edges.
DemandGraph gen_random_edge_version(int n, int max_edges, int max_degree, std::uint64_t seed);

// Random block-diagonal multigraph of max degree <= floor(n/3) for the
// partition consecutive_blocks(sizes).
DemandGraph gen_random_blocked(int n, const std::array<int, 3>& sizes, std::uint64_t seed);

// Random bipartite multigraph on K_{a,b} in which every A-vertex has degree
// delta_a and every B-vertex degree a * delta_a / b (which must be integral).
DemandGraph gen_random_semiregular(int a, int b, int delta_a, std::uint64_t seed);

// Instance text. Parse errors are ParseError carrying the line number.
DemandGraph parse_instance(std::string_view text);
std::string serialize_instance(const DemandGraph& d);
// Equivalent to serialize_instance(parse_instance(text)).
std::string canonicalize_instance(std::string_view text);

// Resolution text.
struct ResolutionFile {
  OracleStatus status = OracleStatus::kUnknown;  // SOLVED, UNSOLVED, UNKNOWN
  Resolution resolution;
};
ResolutionFile parse_resolution(std::string_view text);
std::string serialize_resolution(const ResolutionFile& f);

}  // namespace tpb
