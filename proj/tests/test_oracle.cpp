#include <doctest.h>

#include <random>

#include "random_graphs.hpp"
#include "reference.hpp"
#include "tpb/errors.hpp"
#include "tpb/instances.hpp"
#include "tpb/oracle.hpp"

using namespace tpb;

TEST_SUITE("oracle") {
  TEST_CASE("simple instances resolve with direct routes") {
    const auto d = gen_chain(4);
    const auto v = decide(d);
    REQUIRE(v.status == OracleStatus::kResolvable);
    CHECK(verify_resolution(d, *v.resolution).valid());
  }

  TEST_CASE("sharp constructions are unresolvable") {
    CHECK(decide(gen_sharp_edge(4)).status == OracleStatus::kUnresolvable);
    CHECK(decide(gen_sharp_conjecture(3)).status == OracleStatus::kUnresolvable);
    CHECK(decide(gen_sharp_conjecture(1)).status == OracleStatus::kUnresolvable);
  }

  TEST_CASE("budget exhaustion reports unknown") {
    const auto v = decide(gen_sharp_edge(5), {1, 10'000});
    CHECK(v.status == OracleStatus::kUnknown);
    CHECK_THROWS_AS(decide(gen_chain(4), {0, 1}), DomainError);
  }

  TEST_CASE("agrees with exhaustive search on small instances") {
    std::mt19937_64 rng(21);
    int resolvable = 0, unresolvable = 0;
    for (int t = 0; t < 300; ++t) {
      const int n = 2 + t % 2;
      const auto d = testing::random_bipartite(rng, n, n, 3);
      const auto v = decide(d);
      const auto ref = reference::exhaustive_resolve(d);
      REQUIRE(v.status != OracleStatus::kUnknown);
      CHECK((v.status == OracleStatus::kResolvable) == ref.has_value());
      if (ref) {
        CHECK(verify_resolution(d, *ref).valid());
        CHECK(verify_resolution(d, *v.resolution).valid());
        ++resolvable;
      } else {
        ++unresolvable;
      }
    }
    CHECK(resolvable > 0);
    CHECK(unresolvable > 0);
  }

  TEST_CASE("same-side demands route over even paths") {
    DemandGraph tight({2, 2});
    tight.add_edge(a_vertex(0), a_vertex(1));
    tight.add_edge(b_vertex(0), b_vertex(1));
    CHECK(decide(tight).status == OracleStatus::kUnresolvable);
    DemandGraph d({3, 3});
    d.add_edge(a_vertex(0), a_vertex(1));
    d.add_edge(b_vertex(0), b_vertex(1));
    const auto v = decide(d);
    REQUIRE(v.status == OracleStatus::kResolvable);
    CHECK(verify_resolution(d, *v.resolution).valid());
  }

  TEST_CASE("canonical enumeration counts orbits") {
    for (int n : {2, 3})
      for (int m : {2, 3, 4}) {
        const EnumerationOptions canon{n, m, m, true};
        CHECK(enumerate_demands(canon, [](const DemandGraph&) { return true; }) ==
              reference::count_orbits(n, m, m));
      }
  }

  TEST_CASE("full enumeration visits every matrix and stops on request") {
    // 2x2 matrices with entries summing to <= 1: the empty one and four singles.
    CHECK(enumerate_demands({2, 1, 1, false}, [](const DemandGraph&) { return true; }) == 5);
    int seen = 0;
    enumerate_demands({3, 3, 3, false}, [&](const DemandGraph&) { return ++seen < 4; });
    CHECK(seen == 4);
  }
}
