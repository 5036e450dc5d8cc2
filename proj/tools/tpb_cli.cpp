// Command-line front end. Uses only the C interface.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "tpb/tpb.h"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Loads and parses an instance; prints the error and returns null on failure.
tpb_instance* load_instance(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return nullptr;
  }
  tpb_instance* inst = nullptr;
  if (tpb_instance_parse(text.c_str(), &inst) != TPB_OK) {
    std::cerr << path << ": " << tpb_last_error() << "\n";
    return nullptr;
  }
  return inst;
}

struct SolveArgs {
  std::string in, out, algo = "auto";
  std::uint64_t seed = 0;
  std::int64_t timeout_ms = 10'000;
  std::int64_t max_nodes = 10'000'000;
  std::vector<int> blocks;
};

int cmd_solve(const SolveArgs& args) {
  static const std::map<std::string, tpb_algo> kAlgos{{"auto", TPB_ALGO_AUTO},
                                                      {"edge", TPB_ALGO_EDGE},
                                                      {"blocked", TPB_ALGO_BLOCKED},
                                                      {"quarter", TPB_ALGO_QUARTER},
                                                      {"oracle", TPB_ALGO_ORACLE}};
  tpb_solve_options options;
  tpb_solve_options_init(&options);
  options.algo = kAlgos.at(args.algo);
  options.seed = args.seed;
  options.timeout_ms = args.timeout_ms;
  options.max_nodes = args.max_nodes;
  if (!args.blocks.empty()) {
    if (args.blocks.size() != 3) {
      std::cerr << "error: --blocks takes three sizes i,j,k\n";
      return kExitUsage;
    }
    options.has_blocks = 1;
    for (int i = 0; i < 3; ++i) options.blocks[i] = args.blocks[static_cast<std::size_t>(i)];
  }

  tpb_instance* inst = load_instance(args.in);
  if (!inst) return kExitUsage;
  tpb_result* result = nullptr;
  const tpb_status status = tpb_solve(inst, &options, &result);
  tpb_instance_free(inst);
  if (status != TPB_OK) {
    std::cerr << "error: " << tpb_last_error() << "\n";
    return status == TPB_ERR_ARGUMENT ? kExitUsage : kExitFailed;
  }

  std::cout << tpb_result_report(result);
  std::cerr << "elapsed_ms " << tpb_result_elapsed_ms(result) << "\n";
  int code = kExitFailed;
  switch (tpb_result_outcome(result)) {
    case TPB_OUTCOME_SOLVED: code = kExitSolved; break;
    case TPB_OUTCOME_UNSOLVED: code = kExitFailed; break;
    case TPB_OUTCOME_UNKNOWN: code = kExitUnknown; break;
    case TPB_OUTCOME_INVALID_INPUT: code = kExitUsage; break;
  }
  if (!args.out.empty() && !write_file(args.out, tpb_result_resolution_text(result))) {
    std::cerr << "error: cannot write " << args.out << "\n";
    code = kExitFailed;
  }
  tpb_result_free(result);
  return code;
}

int cmd_verify(const std::string& in, const std::string& resolution_path) {
  tpb_instance* inst = load_instance(in);
  if (!inst) return kExitUsage;
  std::string text;
  if (!read_file(resolution_path, text)) {
    std::cerr << "error: cannot read " << resolution_path << "\n";
    tpb_instance_free(inst);
    return kExitUsage;
  }
  tpb_verdict* verdict = nullptr;
  const tpb_status status = tpb_verify(inst, text.c_str(), &verdict);
  tpb_instance_free(inst);
  if (status != TPB_OK) {
    std::cerr << resolution_path << ": " << tpb_last_error() << "\n";
    return kExitUsage;
  }
  const bool valid = tpb_verdict_valid(verdict) != 0;
  for (std::size_t i = 0; i < tpb_verdict_violation_count(verdict); ++i)
    std::cout << tpb_verdict_violation(verdict, i) << "\n";
  std::cout << (valid ? "valid" : "invalid") << "\n";
  tpb_verdict_free(verdict);
  return valid ? kExitSolved : kExitFailed;
}

struct GenArgs {
  std::string family, out;
  int n = 0, a = 0, b = 0, delta_a = 0, max_edges = -1, max_degree = -1;
  std::vector<int> blocks;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenArgs& args) {
  static const std::map<std::string, tpb_family> kFamilies{
      {"sharp-conj", TPB_FAMILY_SHARP_CONJ},
      {"sharp-edge", TPB_FAMILY_SHARP_EDGE},
      {"chain", TPB_FAMILY_CHAIN},
      {"random-edge", TPB_FAMILY_RANDOM_EDGE},
      {"random-blocked", TPB_FAMILY_RANDOM_BLOCKED},
      {"random-semiregular", TPB_FAMILY_RANDOM_SEMIREGULAR}};
  tpb_gen_params p;
  tpb_gen_params_init(&p);
  p.family = kFamilies.at(args.family);
  p.n = args.n;
  p.a = args.a;
  p.b = args.b;
  p.delta_a = args.delta_a;
  p.max_edges = args.max_edges;
  p.max_degree = args.max_degree;
  p.seed = args.seed;
  if (!args.blocks.empty()) {
    if (args.blocks.size() != 3) {
      std::cerr << "error: --blocks takes three sizes i,j,k\n";
      return kExitUsage;
    }
    for (int i = 0; i < 3; ++i) p.blocks[i] = args.blocks[static_cast<std::size_t>(i)];
  }
  tpb_instance* inst = nullptr;
  if (tpb_instance_generate(&p, &inst) != TPB_OK) {
    std::cerr << "error: " << tpb_last_error() << "\n";
    return kExitUsage;
  }
  char* text = nullptr;
  const tpb_status status = tpb_instance_serialize(inst, &text);
  tpb_instance_free(inst);
  if (status != TPB_OK) {
    std::cerr << "error: " << tpb_last_error() << "\n";
    return kExitFailed;
  }
  int code = kExitSolved;
  if (args.out.empty()) {
    std::cout << text;
  } else if (!write_file(args.out, text)) {
    std::cerr << "error: cannot write " << args.out << "\n";
    code = kExitFailed;
  }
  tpb_string_free(text);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terminal-pairability solvers for complete bipartite graphs"};
  app.require_subcommand(1);
  int code = kExitSolved;

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance and print a run report");
  s->add_option("--in", solve.in, "Instance file")->required();
  s->add_option("--out", solve.out, "Resolution file to write");
  s->add_option("--algo", solve.algo, "auto, edge, blocked, quarter or oracle")
      ->check(CLI::IsMember({"auto", "edge", "blocked", "quarter", "oracle"}));
  s->add_option("--seed", solve.seed, "Seed recorded in the report");
  s->add_option("--timeout-ms", solve.timeout_ms, "Search time limit")->check(CLI::PositiveNumber);
  s->add_option("--max-nodes", solve.max_nodes, "Search node limit")->check(CLI::PositiveNumber);
  s->add_option("--blocks", solve.blocks, "Consecutive block sizes i,j,k")->delimiter(',');
  s->callback([&] { code = cmd_solve(solve); });

  std::string verify_in, verify_resolution;
  auto* v = app.add_subcommand("verify", "Check a resolution file against an instance");
  v->add_option("--in", verify_in, "Instance file")->required();
  v->add_option("--resolution", verify_resolution, "Resolution file")->required();
  v->callback([&] { code = cmd_verify(verify_in, verify_resolution); });

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a canonical instance file");
  g->add_option("--family", gen.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"sharp-conj", "sharp-edge", "chain", "random-edge", "random-blocked",
                             "random-semiregular"}));
  g->add_option("--n", gen.n, "Class size for square families");
  g->add_option("--a", gen.a, "A class size (random-semiregular)");
  g->add_option("--b", gen.b, "B class size (random-semiregular)");
  g->add_option("--delta-a", gen.delta_a, "A-degree (random-semiregular)");
  g->add_option("--max-edges", gen.max_edges, "Edge cap (random-edge)");
  g->add_option("--max-degree", gen.max_degree, "Degree cap (random-edge)");
  g->add_option("--blocks", gen.blocks, "Block sizes i,j,k (random-blocked)")->delimiter(',');
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output file (default: standard output)");
  g->callback([&] { code = cmd_gen(gen); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : kExitUsage;
  }
  return code;
}
