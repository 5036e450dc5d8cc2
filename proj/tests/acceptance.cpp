// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "random_graphs.hpp"
#include "reference.hpp"
#include "tpb/coloring.hpp"
#include "tpb/edge_solver.hpp"
#include "tpb/errors.hpp"
#include "tpb/instances.hpp"
#include "tpb/oracle.hpp"
#include "tpb/structured.hpp"

using namespace tpb;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool edge_solves(const DemandGraph& d, Outcome& o, const std::string& label) {
  try {
    const auto r = solve_edge_version(d);
    const bool ok = verify_resolution(d, r.resolution).valid();
    o.require(ok, label + " produced an invalid resolution");
    return ok;
  } catch (const std::exception& e) {
    o.require(false, label + ": " + e.what());
    return false;
  }
}

const SearchBudget kSharpBudget{10'000'000, 600'000};

// Shared between criteria 5 and 6.
int g_quarter_runs = 0;
int g_quarter_fact_failures = 0;
int g_edge_runs = 0;

void criterion_1(Outcome& o) {
  std::int64_t n4 = 0;
  enumerate_demands({4, 6, 4, true}, [&](const DemandGraph& d) {
    ++n4;
    ++g_edge_runs;
    edge_solves(d, o, "n=4 instance " + std::to_string(n4));
    return true;
  });
  int ok5 = 0, ok6 = 0;
  for (int n : {5, 6})
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const auto d = gen_random_edge_version(n, 2 * n - 2, n, seed);
      ++g_edge_runs;
      if (edge_solves(d, o, "n=" + std::to_string(n) + " seed " + std::to_string(seed)))
        ++(n == 5 ? ok5 : ok6);
    }
  o.detail << "n=4 canonical " << n4 << " instances, n=5 " << ok5 << "/500, n=6 " << ok6
           << "/500 solved and verified";
}

void criterion_2(Outcome& o) {
  for (int n : {4, 5}) {
    const auto v = decide(gen_sharp_edge(n), kSharpBudget);
    o.require(v.status == OracleStatus::kUnresolvable,
              "sharp-edge(" + std::to_string(n) + ") gave " + to_string(v.status));
    o.detail << "sharp-edge(" << n << ") " << to_string(v.status) << " after " << v.nodes_explored
             << " nodes; ";
  }
}

void criterion_3(Outcome& o) {
  const auto v = decide(gen_sharp_conjecture(3), kSharpBudget);
  o.require(v.status == OracleStatus::kUnresolvable, "sharp-conj(3) not unresolvable");
  int arithmetic = 0;
  for (long n = 1; n <= 100; ++n)
    if (n + 3 * n * ((n + 2) / 3) > n * n) ++arithmetic;
  o.require(arithmetic == 100, "counting bound fails for some n <= 100");
  o.detail << "sharp-conj(3) " << to_string(v.status) << "; counting bound holds for "
           << arithmetic << "/100 values of n";
}

void criterion_4(Outcome& o) {
  for (int n : {3, 6, 9, 12}) {
    const int m = n / 3;
    int ok = 0, oracle_ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto d = gen_random_blocked(n, {m, m, m}, seed);
      try {
        const auto r = solve_blocked(d, consecutive_blocks(m, m, m));
        const bool valid = verify_resolution(d, r).valid();
        o.require(valid, "blocked n=" + std::to_string(n) + " invalid resolution");
        ok += valid;
      } catch (const std::exception& e) {
        o.require(false, "blocked n=" + std::to_string(n) + ": " + e.what());
      }
      if (n == 6) {
        const auto v = decide(d);
        const bool agree = v.status == OracleStatus::kResolvable &&
                           verify_resolution(d, *v.resolution).valid();
        o.require(agree, "oracle did not confirm n=6 seed " + std::to_string(seed));
        oracle_ok += agree;
      }
    }
    o.detail << "n=" << n << " " << ok << "/50";
    if (n == 6) o.detail << " (oracle " << oracle_ok << "/50)";
    o.detail << "; ";
  }
}

// Runs solve_quarter and re-checks its intermediate facts from the stats.
bool quarter_run(const DemandGraph& d, Outcome* o, const std::string& label) {
  ++g_quarter_runs;
  try {
    const auto r = solve_quarter(d);
    const int b = std::min(d.base().a, d.base().b);
    const int t = r.stats.targets.a_degree;
    const bool facts = r.stats.aa_max_multiplicity <= 2 && r.stats.aa_max_degree <= 2 * t &&
                       r.stats.min_list_size >= b - 2 * t;
    if (!facts) ++g_quarter_fact_failures;
    const bool ok = r.resolution && verify_resolution(d, *r.resolution).valid();
    if (o) o->require(ok, label + (r.failure.empty() ? "" : ": " + r.failure));
    return ok;
  } catch (const StructuralError& e) {
    ++g_quarter_fact_failures;
    if (o) o->require(false, label + ": " + e.what());
    return false;
  }
}

void criterion_5(Outcome& o) {
  for (auto [a, b] : {std::pair{12, 12}, std::pair{24, 12}, std::pair{24, 24}, std::pair{60, 60}}) {
    const int t = (b + 1) / 6;
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      ok += quarter_run(gen_random_semiregular(a, b, t, seed), &o,
                        std::to_string(a) + "x" + std::to_string(b) + " seed " +
                            std::to_string(seed));
    o.detail << a << "x" << b << " degree " << t << ": " << ok << "/20; ";
  }
  o.detail << "best effort (no threshold):";
  for (auto [a, b] : {std::pair{24, 24}, std::pair{60, 60}}) {
    for (int t = (b + 1) / 6 + 1; t <= b / 4; ++t) {
      if ((a * t) % b) continue;
      int ok = 0;
      for (std::uint64_t seed = 0; seed < 20; ++seed)
        ok += quarter_run(gen_random_semiregular(a, b, t, seed), nullptr, "");
      o.detail << " " << a << "x" << b << "/" << t << " " << ok << "/20";
    }
  }
}

void criterion_6(Outcome& o) {
  // Each solve_edge_version step runs check_conditions and throws on failure;
  // each solve_quarter run throws if a lifted-graph fact fails. Re-run the
  // edge solver on a fresh sample and count steps to show the checks ran.
  std::int64_t steps = 0;
  for (int n = 6; n <= 12; ++n)
    for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
      const auto d = gen_random_edge_version(n, 2 * n - 2, n, seed);
      try {
        const auto r = solve_edge_version(d);
        for (const auto& s : r.trace.steps)
          if (s.tag != CaseTag::kBase && s.tag != CaseTag::kSimple) ++steps;
      } catch (const std::exception& e) {
        o.require(false, std::string("edge solver: ") + e.what());
      }
    }
  o.require(g_quarter_fact_failures == 0,
            std::to_string(g_quarter_fact_failures) + " quarter runs broke a lifted-graph fact");
  o.require(g_quarter_runs > 0 && steps > 0, "no runs exercised the checks");
  o.detail << g_quarter_runs << " quarter runs with all lifted-graph facts holding; " << steps
           << " checked recursion steps on 700 extra instances plus " << g_edge_runs
           << " runs from criterion 1";
}

void criterion_7(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> side(1, 10), verts(2, 8);
  int konig_ok = 0, vizing_ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto h = testing::random_bipartite(rng, side(rng), side(rng), 4);
    const auto m = konig_decompose(h);
    const bool ok = static_cast<int>(m.matchings.size()) == h.max_degree() &&
                    is_matching_decomposition(h, m);
    o.require(ok, "konig failed on sample " + std::to_string(t));
    konig_ok += ok;
  }
  for (int t = 0; t < 1000; ++t) {
    const auto h = testing::random_multigraph(rng, verts(rng), 3);
    const auto c = vizing_color(h);
    int used = 0;
    for (const auto& [id, k] : c.colors) used = std::max(used, k + 1);
    const bool ok = is_proper(h, c) && used <= h.max_degree() + h.max_multiplicity();
    o.require(ok, "vizing failed on sample " + std::to_string(t));
    vizing_ok += ok;
  }
  DemandGraph tri({2, 1});
  for (int k = 0; k < 2; ++k) {
    tri.add_edge(a_vertex(0), a_vertex(1));
    tri.add_edge(a_vertex(1), b_vertex(0));
    tri.add_edge(a_vertex(0), b_vertex(0));
  }
  const int brute = reference::chromatic_index(tri);
  o.require(brute == 6, "doubled triangle brute force gave " + std::to_string(brute));
  o.detail << "konig " << konig_ok << "/1000, vizing " << vizing_ok
           << "/1000, doubled triangle needs " << brute << " colors";
}

void criterion_8(Outcome& o) {
  std::int64_t total = 0, agree = 0;
  enumerate_demands({4, 6, 4, true}, [&](const DemandGraph& d) {
    ++total;
    const auto v = decide(d);
    bool solver_ok = false;
    try {
      solver_ok = verify_resolution(d, solve_edge_version(d).resolution).valid();
    } catch (const std::exception&) {
    }
    const bool oracle_ok =
        v.status == OracleStatus::kResolvable && verify_resolution(d, *v.resolution).valid();
    const bool same = oracle_ok == solver_ok && solver_ok;
    o.require(same, "disagreement on instance " + std::to_string(total));
    agree += same;
    return true;
  });
  o.detail << agree << "/" << total << " instances: oracle resolvable, solver succeeds, both verify";
}

void criterion_9(Outcome& o) {
  int inst_ok = 0, res_ok = 0, res_total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    DemandGraph d;
    switch (seed % 4) {
      case 0: d = gen_random_edge_version(4 + static_cast<int>(seed % 9), 30, 12, seed); break;
      case 1: d = gen_random_blocked(9, {3, 3, 3}, seed); break;
      case 2: d = gen_random_semiregular(12, 8, 2, seed); break;
      default: d = gen_random_edge_version(5, 3, 2, seed); break;
    }
    const std::string once = serialize_instance(d);
    const std::string twice = serialize_instance(parse_instance(once));
    const bool same = once == twice;
    o.require(same, "instance round trip differs for seed " + std::to_string(seed));
    inst_ok += same;
    if (seed % 4 == 0) {
      const auto parsed = parse_instance(once);
      const ResolutionFile f{OracleStatus::kResolvable, solve_edge_version(parsed).resolution};
      const std::string r1 = serialize_resolution(f);
      const auto back = parse_resolution(r1);
      const bool rsame = serialize_resolution(back) == r1 && back.resolution == f.resolution;
      o.require(rsame, "resolution round trip differs for seed " + std::to_string(seed));
      ++res_total;
      res_ok += rsame;
    }
  }
  o.detail << "instances " << inst_ok << "/1000 byte-identical; resolutions " << res_ok << "/"
           << res_total;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"edge-version solver, total correctness at small n", criterion_1},
      {"sharpness of the edge bound (oracle)", criterion_2},
      {"sharpness of the degree conjecture (oracle and counting)", criterion_3},
      {"blocked solver pipeline", criterion_4},
      {"degree-bounded solver, constructive regime", criterion_5},
      {"intermediate facts asserted in-run", criterion_6},
      {"coloring toolkit", criterion_7},
      {"oracle and edge solver agree at n=4", criterion_8},
      {"text formats round-trip", criterion_9},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("uncaught: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s [%s] (%.1fs)\n", index, o.pass ? "PASS" : "FAIL", name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
