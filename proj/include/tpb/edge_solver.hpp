#pragma once

// Inductive solver for demand graphs on K_{n,n} with at most 2n-2 edges and
// maximum degree at most n. Each step lifts a few edges so that a balanced
// vertex set Z can be peeled off with only simple edges at Z, then recurses
// on the rest.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tpb/demand_graph.hpp"
#include "tpb/oracle.hpp"

namespace tpb {

enum class CaseTag {
  k1_1,
  k1_2,
  k1_3,
  k1_4,
  k1_5,
  k2_1,
  k2_2_1,
  k2_2_2,
  k2_2_3,
  k3_1,
  k3_2_1,
  k3_2_2,
  k4,
  kBase,    // n <= 5, routed by the oracle
  kSimple,  // already a subgraph of the base
};

const char* to_string(CaseTag tag);

struct LiftRecord {
  EdgeId edge = 0;
  VertexId x;
  VertexId y;
};

// Vertices are reported under their names in the caller's instance.
struct CaseStep {
  int n = 0;
  CaseTag tag = CaseTag::kSimple;
  bool swapped = false;  // classes exchanged to match the textual orientation
  int padding_added = 0;
  bool cover_search_exhaustive = false;  // Case 1 only
  std::vector<VertexId> removed;
  std::vector<LiftRecord> lifts;
};

struct CaseTrace {
  std::vector<CaseStep> steps;
};

std::string to_string(const CaseStep& step);

struct EdgeSolveOptions {
  SearchBudget base_budget;  // per oracle call at n <= 5
};

struct EdgeSolveResult {
  Resolution resolution;
  CaseTrace trace;
};

// Throws PreconditionError outside the hypotheses, BudgetError when a base
// case exhausts its budget, StructuralError if an internal check fails.
EdgeSolveResult solve_edge_version(const DemandGraph& d, const EdgeSolveOptions& options = {});

struct ConditionReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

// The four requirements on (D', Z) that make the rest an instance of the
// same problem on K_{n-|Z|/2, n-|Z|/2} and keep Z's edges simple:
//   (1) |Z cap A| = |Z cap B|;
//   (2) edges of D' off Z number at most 2(n - |Z|/2) - 2, which for
//       |E(D')| = 2n - 2 says that at least |Z| edges meet Z;
//   (3) max degree of D' off Z is at most n - |Z|/2;
//   (4) every edge at Z crosses and none is repeated.
ConditionReport check_conditions(const DemandGraph& d_prime, std::span<const VertexId> z, int n);

// Adds padding edges between lowest-index vertices of degree < n in opposite
// classes until there are exactly 2n - 2 edges.
DemandGraph pad_to_full(const DemandGraph& d, int n);

struct CoverResult {
  std::array<EdgeId, 4> edges{};
  bool exhaustive = false;  // structured construction did not apply
};

// Four edges covering every vertex at most twice, each vertex of Y at least
// once and each vertex of X exactly twice, that can be placed around the
// four isolated vertices. Requires two isolated vertices in each class.
CoverResult find_cover_F(const DemandGraph& d, std::span<const VertexId> x,
                         std::span<const VertexId> y);

// Edge-lifts f[0..3] to u1v1, u1v2, u2v2, u2v1 under the first reordering
// of f that leaves no repeated edge at {u1, u2, v1, v2}.
DemandGraph place_F(const DemandGraph& d, std::span<const EdgeId> f, VertexId u1, VertexId u2,
                    VertexId v1, VertexId v2);

}  // namespace tpb
