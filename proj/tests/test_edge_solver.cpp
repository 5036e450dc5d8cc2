#include <doctest.h>

#include <map>
#include <random>

#include "reference.hpp"
#include "tpb/edge_solver.hpp"
#include "tpb/errors.hpp"
#include "tpb/instances.hpp"

using namespace tpb;

namespace {

DemandGraph pairs(int n, std::vector<std::pair<int, int>> p) {
  return DemandGraph::from_pairs({n, n}, p);
}

void check_solves(const DemandGraph& d) {
  const auto r = solve_edge_version(d);
  CHECK(verify_resolution(d, r.resolution).valid());
}

bool visits(const CaseTrace& t, CaseTag tag) {
  for (const auto& s : t.steps)
    if (s.tag == tag) return true;
  return false;
}

}  // namespace

TEST_SUITE("edge-solver") {
  TEST_CASE("hypotheses are enforced") {
    CHECK_THROWS_AS(solve_edge_version(gen_sharp_edge(4)), PreconditionError);
    CHECK_THROWS_AS(solve_edge_version(pairs(3, {{0, 0}})), PreconditionError);
    CHECK_THROWS_AS(solve_edge_version(DemandGraph::from_pairs({4, 5}, std::vector<std::pair<int, int>>{})),
                    PreconditionError);
    DemandGraph d({4, 4});
    d.add_edge(a_vertex(0), a_vertex(1));
    CHECK_THROWS_AS(solve_edge_version(d), PreconditionError);
  }

  TEST_CASE("empty and simple instances") {
    check_solves(pairs(4, {}));
    const auto r = solve_edge_version(pairs(6, {{0, 1}, {2, 3}}));
    REQUIRE(r.trace.steps.size() == 1);
    CHECK(r.trace.steps[0].tag == CaseTag::kSimple);
  }

  TEST_CASE("chain instances take the chain case") {
    for (int n = 6; n <= 12; ++n) {
      const auto d = gen_chain(n);
      const auto r = solve_edge_version(d);
      CHECK(verify_resolution(d, r.resolution).valid());
      CHECK(r.trace.steps.front().tag == CaseTag::k2_2_3);
    }
  }

  TEST_CASE("doubled pairs with two isolated vertices on one side") {
    // a1b1 x2, a1b2 x2, a3b3 x2, a4b4 x2, a5b5 x2: A has a2 and a6 isolated,
    // every B vertex but b6 carries a doubled edge.
    const auto d = pairs(6, {{0, 0}, {0, 0}, {0, 1}, {0, 1}, {2, 2}, {2, 2},
                             {3, 3}, {3, 3}, {4, 4}, {4, 4}});
    const auto r = solve_edge_version(d);
    CHECK(verify_resolution(d, r.resolution).valid());
    CHECK(visits(r.trace, CaseTag::k2_2_2));
    // Mirrored.
    const auto s = swap_sides(d);
    const auto rs = solve_edge_version(s);
    CHECK(verify_resolution(s, rs.resolution).valid());
    CHECK(rs.trace.steps.front().swapped);
  }

  TEST_CASE("degree-n vertices") {
    // a1 has degree n (Case 3 family), then both sides (Case 4 family).
    std::vector<std::pair<int, int>> star;
    for (int k = 0; k < 6; ++k) star.emplace_back(0, k % 3);
    star.emplace_back(1, 3);
    const auto d = pairs(6, star);
    check_solves(d);
    std::vector<std::pair<int, int>> cross;
    for (int k = 0; k < 6; ++k) cross.emplace_back(0, 0);
    for (int k = 0; k < 4; ++k) cross.emplace_back(1 + k % 2, 1 + k % 2);
    check_solves(pairs(6, cross));
  }

  TEST_CASE("trace names vertices of the input instance") {
    const auto d = gen_chain(7);
    const auto r = solve_edge_version(d);
    for (const auto& step : r.trace.steps)
      for (const VertexId v : step.removed) CHECK(d.base().contains(v));
    CHECK(to_string(r.trace.steps.front()).find("case=2.2.3") != std::string::npos);
  }

  TEST_CASE("random instances at several sizes") {
    std::map<CaseTag, int> seen;
    for (int n = 6; n <= 11; ++n)
      for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto d = gen_random_edge_version(n, 2 * n - 2, n, seed);
        const auto r = solve_edge_version(d);
        REQUIRE(verify_resolution(d, r.resolution).valid());
        for (const auto& s : r.trace.steps) ++seen[s.tag];
      }
    for (CaseTag tag : {CaseTag::k1_3, CaseTag::k1_4, CaseTag::k1_5, CaseTag::k2_1, CaseTag::k3_1,
                        CaseTag::k4, CaseTag::kBase})
      CHECK(seen[tag] > 0);
  }

  TEST_CASE("padding fills to 2n-2 edges") {
    const auto d = pairs(5, {{0, 0}, {0, 0}});
    const auto p = pad_to_full(d, 5);
    CHECK(p.edge_count() == 8);
    CHECK(p.max_degree() <= 5);
    CHECK(without_padding(p).edge_count() == 2);
    CHECK_THROWS_AS(pad_to_full(gen_sharp_edge(4), 4), PreconditionError);
  }

  TEST_CASE("condition checker flags each failure") {
    const auto d = pairs(6, {{0, 0}, {0, 0}, {1, 1}});
    const std::vector<VertexId> unbalanced{a_vertex(0)};
    CHECK_FALSE(check_conditions(d, unbalanced, 6).ok());
    const std::vector<VertexId> repeated{a_vertex(0), b_vertex(5)};
    const auto rep = check_conditions(d, repeated, 6);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.failures[0].find("(4)") != std::string::npos);
    const std::vector<VertexId> fine{a_vertex(5), b_vertex(5)};
    CHECK(check_conditions(d, fine, 6).ok());
    std::vector<std::pair<int, int>> heavy(6, {0, 0});
    const std::vector<VertexId> far{a_vertex(5), b_vertex(5)};
    const auto deg = check_conditions(pairs(6, heavy), far, 6);
    CHECK_FALSE(deg.ok());
  }

  TEST_CASE("cover search finds a cover whenever one exists") {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 150 && seed < 5000; ++seed) {
      const int n = 6 + static_cast<int>(seed % 3);
      const auto d = pad_to_full(gen_random_edge_version(n, 2 * n - 2, n, seed), n);
      std::vector<VertexId> iso_a, iso_b, x, y;
      for (int i = 0; i < n; ++i) {
        if (d.degree(a_vertex(i)) == 0) iso_a.push_back(a_vertex(i));
        if (d.degree(b_vertex(i)) == 0) iso_b.push_back(b_vertex(i));
      }
      if (iso_a.size() < 2 || iso_b.size() < 2 || d.is_simple_bipartite()) continue;
      for (int f = 0; f < 2 * n; ++f) {
        const VertexId v = d.base().vertex(f);
        if (d.degree(v) == n) x.push_back(v);
        if (d.degree(v) >= n - 1) y.push_back(v);
      }
      const auto all = reference::all_covers(d, x, y, iso_a[0], iso_a[1], iso_b[0], iso_b[1]);
      REQUIRE_FALSE(all.empty());
      const auto cover = find_cover_F(d, x, y);
      const std::vector<EdgeId> f(cover.edges.begin(), cover.edges.end());
      const auto placed = place_F(d, f, iso_a[0], iso_a[1], iso_b[0], iso_b[1]);
      CHECK(placed.edge_count() == d.edge_count() + 8);
      const std::vector<VertexId> z{iso_a[0], iso_a[1], iso_b[0], iso_b[1]};
      CHECK(check_conditions(placed, z, n).ok());
      ++checked;
    }
    CHECK(checked >= 100);
  }
}
