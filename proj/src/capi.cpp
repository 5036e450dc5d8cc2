#include "tpb/tpb.h"

#include <chrono>
#include <array>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "tpb/edge_solver.hpp"
#include "tpb/errors.hpp"
#include "tpb/instances.hpp"
#include "tpb/oracle.hpp"
#include "tpb/structured.hpp"

struct tpb_instance {
  tpb::DemandGraph graph;
};

struct tpb_result {
  tpb_outcome outcome = TPB_OUTCOME_UNKNOWN;
  std::string algorithm;
  std::string resolution_text;
  std::string report;
  std::int64_t nodes = 0;
  double elapsed_ms = 0;
};

struct tpb_verdict {
  tpb::Verdict verdict;
};

namespace {

thread_local std::string g_last_error;

tpb_status fail(tpb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

tpb_status status_of(tpb::ErrorCode code) {
  switch (code) {
    case tpb::ErrorCode::kNotFound: return TPB_ERR_NOT_FOUND;
    case tpb::ErrorCode::kDomain: return TPB_ERR_DOMAIN;
    case tpb::ErrorCode::kPrecondition: return TPB_ERR_PRECONDITION;
    case tpb::ErrorCode::kStructural: return TPB_ERR_STRUCTURAL;
    case tpb::ErrorCode::kParse: return TPB_ERR_PARSE;
    case tpb::ErrorCode::kBudget: return TPB_ERR_BUDGET;
  }
  return TPB_ERR_INTERNAL;
}

template <class F>
tpb_status guarded(F f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const tpb::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TPB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TPB_ERR_INTERNAL, e.what());
  }
}

std::array<int, 3> even_blocks(int n) {
  std::array<int, 3> s{};
  for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] = n / 3 + (i < n % 3 ? 1 : 0);
  return s;
}

// Outcome of one solver attempt inside tpb_solve.
struct Attempt {
  tpb_outcome outcome = TPB_OUTCOME_UNKNOWN;
  std::optional<tpb::Resolution> resolution;
  std::string detail;  // reason, trace or statistics, one item per line
  std::int64_t nodes = 0;
};

tpb::SearchBudget budget_of(const tpb_solve_options& o) {
  return {o.max_nodes, o.timeout_ms};
}

std::string edge_hypotheses_failure(const tpb::DemandGraph& d) {
  const int n = d.base().a;
  if (d.base().b != n) return "needs a = b";
  if (n < 4) return "needs n >= 4";
  if (d.edge_count() > static_cast<std::size_t>(2 * n - 2))
    return "needs at most 2n-2 = " + std::to_string(2 * n - 2) + " edges";
  if (d.max_degree() > n) return "needs max degree <= n";
  return {};
}

Attempt run_edge(const tpb::DemandGraph& d, const tpb_solve_options& o) {
  Attempt a;
  tpb::EdgeSolveOptions options;
  options.base_budget = budget_of(o);
  try {
    const auto r = tpb::solve_edge_version(d, options);
    a.outcome = TPB_OUTCOME_SOLVED;
    a.resolution = r.resolution;
    for (const auto& step : r.trace.steps) a.detail += "step " + tpb::to_string(step) + "\n";
  } catch (const tpb::PreconditionError& e) {
    a.outcome = TPB_OUTCOME_INVALID_INPUT;
    a.detail = std::string("rejected: ") + e.what() + "\n";
  } catch (const tpb::BudgetError& e) {
    a.outcome = TPB_OUTCOME_UNKNOWN;
    a.detail = std::string("budget: ") + e.what() + "\n";
  }
  return a;
}

Attempt run_blocked(const tpb::DemandGraph& d, const tpb_solve_options& o) {
  Attempt a;
  const std::array<int, 3> sizes = o.has_blocks
                                       ? std::array<int, 3>{o.blocks[0], o.blocks[1], o.blocks[2]}
                                       : even_blocks(d.base().a);
  try {
    if (sizes[0] + sizes[1] + sizes[2] != d.base().a || d.base().a != d.base().b)
      throw tpb::PreconditionError("block sizes must sum to n on K_{n,n}");
    a.resolution = tpb::solve_blocked(d, tpb::consecutive_blocks(sizes[0], sizes[1], sizes[2]));
    a.outcome = TPB_OUTCOME_SOLVED;
    a.detail = "blocks " + std::to_string(sizes[0]) + "," + std::to_string(sizes[1]) + "," +
               std::to_string(sizes[2]) + "\n";
  } catch (const tpb::PreconditionError& e) {
    a.outcome = TPB_OUTCOME_INVALID_INPUT;
    a.detail = std::string("rejected: ") + e.what() + "\n";
  }
  return a;
}

Attempt run_quarter(const tpb::DemandGraph& d) {
  Attempt a;
  try {
    const auto r = tpb::solve_quarter(d);
    const auto& s = r.stats;
    std::ostringstream out;
    out << "targets " << s.targets.a_degree << "," << s.targets.b_degree
        << (s.swapped ? " swapped" : "") << " padding=" << s.padding_added
        << " inner_mult=" << s.aa_max_multiplicity << " inner_degree=" << s.aa_max_degree
        << " min_list=" << s.min_list_size
        << " guaranteed=" << (s.within_guarantee ? "yes" : "no") << "\n";
    if (!r.failure.empty()) out << "failed: " << r.failure << "\n";
    a.detail = out.str();
    a.outcome = r.resolution ? TPB_OUTCOME_SOLVED : TPB_OUTCOME_UNSOLVED;
    a.resolution = r.resolution;
  } catch (const tpb::PreconditionError& e) {
    a.outcome = TPB_OUTCOME_INVALID_INPUT;
    a.detail = std::string("rejected: ") + e.what() + "\n";
  }
  return a;
}

Attempt run_oracle(const tpb::DemandGraph& d, const tpb_solve_options& o) {
  Attempt a;
  const auto v = tpb::decide(d, budget_of(o));
  a.nodes = v.nodes_explored;
  a.detail = std::string("verdict ") + tpb::to_string(v.status) + "\n";
  switch (v.status) {
    case tpb::OracleStatus::kResolvable:
      a.outcome = TPB_OUTCOME_SOLVED;
      a.resolution = v.resolution;
      break;
    case tpb::OracleStatus::kUnresolvable: a.outcome = TPB_OUTCOME_UNSOLVED; break;
    case tpb::OracleStatus::kUnknown: a.outcome = TPB_OUTCOME_UNKNOWN; break;
  }
  return a;
}

const char* algo_name(tpb_algo algo) {
  switch (algo) {
    case TPB_ALGO_AUTO: return "auto";
    case TPB_ALGO_EDGE: return "edge";
    case TPB_ALGO_BLOCKED: return "blocked";
    case TPB_ALGO_QUARTER: return "quarter";
    case TPB_ALGO_ORACLE: return "oracle";
  }
  return "?";
}

}  // namespace

extern "C" {

const char* tpb_last_error(void) { return g_last_error.c_str(); }

void tpb_string_free(char* s) { delete[] s; }

void tpb_gen_params_init(tpb_gen_params* p) {
  if (!p) return;
  *p = tpb_gen_params{};
  p->max_edges = -1;
  p->max_degree = -1;
}

tpb_status tpb_instance_parse(const char* text, tpb_instance** out) {
  if (!text || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new tpb_instance{tpb::parse_instance(text)};
    return TPB_OK;
  });
}

tpb_status tpb_instance_generate(const tpb_gen_params* p, tpb_instance** out) {
  if (!p || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    tpb::DemandGraph g;
    switch (p->family) {
      case TPB_FAMILY_SHARP_CONJ: g = tpb::gen_sharp_conjecture(p->n); break;
      case TPB_FAMILY_SHARP_EDGE: g = tpb::gen_sharp_edge(p->n); break;
      case TPB_FAMILY_CHAIN: g = tpb::gen_chain(p->n); break;
      case TPB_FAMILY_RANDOM_EDGE:
        g = tpb::gen_random_edge_version(p->n, p->max_edges < 0 ? 2 * p->n - 2 : p->max_edges,
                                         p->max_degree < 0 ? p->n : p->max_degree, p->seed);
        break;
      case TPB_FAMILY_RANDOM_BLOCKED: {
        std::array<int, 3> sizes{p->blocks[0], p->blocks[1], p->blocks[2]};
        if (sizes == std::array<int, 3>{}) sizes = even_blocks(p->n);
        g = tpb::gen_random_blocked(p->n, sizes, p->seed);
        break;
      }
      case TPB_FAMILY_RANDOM_SEMIREGULAR:
        g = tpb::gen_random_semiregular(p->a, p->b, p->delta_a, p->seed);
        break;
      default: return fail(TPB_ERR_ARGUMENT, "unknown family");
    }
    *out = new tpb_instance{std::move(g)};
    return TPB_OK;
  });
}

tpb_status tpb_instance_serialize(const tpb_instance* inst, char** out) {
  if (!inst || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string text = tpb::serialize_instance(inst->graph);
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
    return TPB_OK;
  });
}

void tpb_instance_free(tpb_instance* inst) { delete inst; }

tpb_status tpb_instance_summary(const tpb_instance* inst, tpb_summary* out) {
  if (!inst || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  const auto& g = inst->graph;
  out->a = g.base().a;
  out->b = g.base().b;
  out->edges = static_cast<int64_t>(g.edge_count());
  out->max_degree = g.max_degree();
  out->max_multiplicity = g.max_multiplicity();
  return TPB_OK;
}

void tpb_solve_options_init(tpb_solve_options* o) {
  if (!o) return;
  *o = tpb_solve_options{};
  o->algo = TPB_ALGO_AUTO;
  o->timeout_ms = 10'000;
  o->max_nodes = 10'000'000;
}

tpb_status tpb_solve(const tpb_instance* inst, const tpb_solve_options* o, tpb_result** out) {
  if (!inst || !o || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  if (o->algo < TPB_ALGO_AUTO || o->algo > TPB_ALGO_ORACLE)
    return fail(TPB_ERR_ARGUMENT, "unknown algorithm");
  if (o->timeout_ms < 1 || o->max_nodes < 1)
    return fail(TPB_ERR_ARGUMENT, "timeout and node limit must be positive");
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    const tpb::DemandGraph& d = inst->graph;
    auto result = std::make_unique<tpb_result>();
    std::ostringstream report;
    report << "instance a=" << d.base().a << " b=" << d.base().b << " edges=" << d.edge_count()
           << " max_degree=" << d.max_degree() << "\n";
    report << "seed " << o->seed << "\n";

    Attempt final;
    tpb_algo used = o->algo;
    auto record = [&](tpb_algo algo, Attempt a) {
      report << "try " << algo_name(algo) << ": " << tpb_outcome_name(a.outcome) << "\n";
      std::istringstream lines(a.detail);
      for (std::string line; std::getline(lines, line);) report << "  " << line << "\n";
      if (a.nodes) report << "  nodes " << a.nodes << "\n";
      result->nodes += a.nodes;
      used = algo;
      final = std::move(a);
    };

    if (!d.is_bipartite()) {
      final.outcome = TPB_OUTCOME_INVALID_INPUT;
      report << "rejected: demand edges must join A to B\n";
    } else if (o->algo == TPB_ALGO_AUTO) {
      bool done = false;
      if (edge_hypotheses_failure(d).empty()) {
        record(TPB_ALGO_EDGE, run_edge(d, *o));
        done = final.outcome == TPB_OUTCOME_SOLVED;
      } else {
        report << "skip edge: " << edge_hypotheses_failure(d) << "\n";
      }
      if (!done && o->has_blocks) {
        record(TPB_ALGO_BLOCKED, run_blocked(d, *o));
        done = final.outcome == TPB_OUTCOME_SOLVED;
      }
      if (!done) {
        record(TPB_ALGO_QUARTER, run_quarter(d));
        done = final.outcome == TPB_OUTCOME_SOLVED;
      }
      if (!done) record(TPB_ALGO_ORACLE, run_oracle(d, *o));
    } else {
      switch (o->algo) {
        case TPB_ALGO_EDGE: record(o->algo, run_edge(d, *o)); break;
        case TPB_ALGO_BLOCKED: record(o->algo, run_blocked(d, *o)); break;
        case TPB_ALGO_QUARTER: record(o->algo, run_quarter(d)); break;
        default: record(o->algo, run_oracle(d, *o)); break;
      }
    }

    if (final.outcome == TPB_OUTCOME_SOLVED) {
      const tpb::Verdict v = tpb::verify_resolution(d, *final.resolution);
      if (!v.valid())
        throw tpb::StructuralError(std::string(algo_name(used)) +
                                   " returned an invalid resolution: " + v.violations[0]);
    }
    tpb::ResolutionFile file;
    file.status = final.outcome == TPB_OUTCOME_SOLVED     ? tpb::OracleStatus::kResolvable
                  : final.outcome == TPB_OUTCOME_UNSOLVED ? tpb::OracleStatus::kUnresolvable
                                                          : tpb::OracleStatus::kUnknown;
    if (final.resolution) file.resolution = *final.resolution;
    result->resolution_text = tpb::serialize_resolution(file);
    result->outcome = final.outcome;
    result->algorithm = algo_name(used);
    report << "algorithm " << result->algorithm << "\n";
    report << "outcome " << tpb_outcome_name(result->outcome) << "\n";
    result->report = report.str();
    result->elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    *out = result.release();
    return TPB_OK;
  });
}

tpb_outcome tpb_result_outcome(const tpb_result* r) {
  return r ? r->outcome : TPB_OUTCOME_UNKNOWN;
}

const char* tpb_outcome_name(tpb_outcome o) {
  switch (o) {
    case TPB_OUTCOME_SOLVED: return "solved";
    case TPB_OUTCOME_UNSOLVED: return "unsolved";
    case TPB_OUTCOME_UNKNOWN: return "unknown";
    case TPB_OUTCOME_INVALID_INPUT: return "invalid-input";
  }
  return "?";
}

const char* tpb_result_algorithm(const tpb_result* r) { return r ? r->algorithm.c_str() : ""; }
const char* tpb_result_resolution_text(const tpb_result* r) {
  return r ? r->resolution_text.c_str() : "";
}
const char* tpb_result_report(const tpb_result* r) { return r ? r->report.c_str() : ""; }
int64_t tpb_result_nodes(const tpb_result* r) { return r ? r->nodes : 0; }
double tpb_result_elapsed_ms(const tpb_result* r) { return r ? r->elapsed_ms : 0; }
void tpb_result_free(tpb_result* r) { delete r; }

tpb_status tpb_verify(const tpb_instance* inst, const char* resolution_text, tpb_verdict** out) {
  if (!inst || !resolution_text || !out) return fail(TPB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const tpb::ResolutionFile file = tpb::parse_resolution(resolution_text);
    auto v = std::make_unique<tpb_verdict>();
    if (file.status != tpb::OracleStatus::kResolvable)
      v->verdict.violations.push_back("resolution file does not claim SOLVED");
    else
      v->verdict = tpb::verify_resolution(inst->graph, file.resolution);
    *out = v.release();
    return TPB_OK;
  });
}

int tpb_verdict_valid(const tpb_verdict* v) { return v && v->verdict.valid() ? 1 : 0; }
size_t tpb_verdict_violation_count(const tpb_verdict* v) {
  return v ? v->verdict.violations.size() : 0;
}
const char* tpb_verdict_violation(const tpb_verdict* v, size_t i) {
  if (!v || i >= v->verdict.violations.size()) return "";
  return v->verdict.violations[i].c_str();
}
void tpb_verdict_free(tpb_verdict* v) { delete v; }

}  // extern "C"
