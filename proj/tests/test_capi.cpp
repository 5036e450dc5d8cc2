// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "tpb/tpb.h"

TEST_CASE("generate, serialize, parse") {
  tpb_gen_params p;
  tpb_gen_params_init(&p);
  p.family = TPB_FAMILY_SHARP_EDGE;
  p.n = 4;
  tpb_instance* inst = nullptr;
  REQUIRE(tpb_instance_generate(&p, &inst) == TPB_OK);
  char* text = nullptr;
  REQUIRE(tpb_instance_serialize(inst, &text) == TPB_OK);
  CHECK(std::string(text) == "p tpb 4 4 7\ne 1 1 4\ne 2 2 3\n");
  tpb_instance* again = nullptr;
  REQUIRE(tpb_instance_parse(text, &again) == TPB_OK);
  tpb_summary s;
  REQUIRE(tpb_instance_summary(again, &s) == TPB_OK);
  CHECK(s.edges == 7);
  CHECK(s.max_degree == 4);
  CHECK(s.max_multiplicity == 4);
  tpb_string_free(text);
  tpb_instance_free(inst);
  tpb_instance_free(again);
}

TEST_CASE("errors are reported with codes and messages") {
  tpb_instance* inst = nullptr;
  CHECK(tpb_instance_parse("p tpb 2 2 3\ne 1 1 2\n", &inst) == TPB_ERR_PARSE);
  CHECK(std::string(tpb_last_error()).find("line 1") != std::string::npos);
  CHECK(inst == nullptr);
  CHECK(tpb_instance_parse(nullptr, &inst) == TPB_ERR_ARGUMENT);
  tpb_gen_params p;
  tpb_gen_params_init(&p);
  p.family = TPB_FAMILY_CHAIN;
  p.n = 2;
  CHECK(tpb_instance_generate(&p, &inst) == TPB_ERR_DOMAIN);
}

TEST_CASE("solve and verify") {
  tpb_gen_params p;
  tpb_gen_params_init(&p);
  p.family = TPB_FAMILY_CHAIN;
  p.n = 6;
  tpb_instance* inst = nullptr;
  REQUIRE(tpb_instance_generate(&p, &inst) == TPB_OK);
  tpb_solve_options o;
  tpb_solve_options_init(&o);
  tpb_result* r = nullptr;
  REQUIRE(tpb_solve(inst, &o, &r) == TPB_OK);
  CHECK(tpb_result_outcome(r) == TPB_OUTCOME_SOLVED);
  CHECK(std::string(tpb_result_algorithm(r)) == "edge");
  CHECK(std::string(tpb_result_report(r)).find("case=2.2.3") != std::string::npos);
  tpb_verdict* v = nullptr;
  REQUIRE(tpb_verify(inst, tpb_result_resolution_text(r), &v) == TPB_OK);
  CHECK(tpb_verdict_valid(v) == 1);
  tpb_verdict_free(v);

  REQUIRE(tpb_verify(inst, "s SOLVED\nr 1 1 a1 b1\nr 2 1 a1 b1\n", &v) == TPB_OK);
  CHECK(tpb_verdict_valid(v) == 0);
  CHECK(tpb_verdict_violation_count(v) > 1);
  tpb_verdict_free(v);
  tpb_result_free(r);
  tpb_instance_free(inst);
}

TEST_CASE("outcomes for unsolvable and out-of-range inputs") {
  tpb_gen_params p;
  tpb_gen_params_init(&p);
  p.family = TPB_FAMILY_SHARP_EDGE;
  p.n = 4;
  tpb_instance* inst = nullptr;
  REQUIRE(tpb_instance_generate(&p, &inst) == TPB_OK);
  tpb_solve_options o;
  tpb_solve_options_init(&o);
  tpb_result* r = nullptr;
  o.algo = TPB_ALGO_ORACLE;
  REQUIRE(tpb_solve(inst, &o, &r) == TPB_OK);
  CHECK(tpb_result_outcome(r) == TPB_OUTCOME_UNSOLVED);
  CHECK(std::string(tpb_result_resolution_text(r)) == "s UNSOLVED\n");
  tpb_result_free(r);
  o.algo = TPB_ALGO_EDGE;
  REQUIRE(tpb_solve(inst, &o, &r) == TPB_OK);
  CHECK(tpb_result_outcome(r) == TPB_OUTCOME_INVALID_INPUT);
  tpb_result_free(r);
  o.algo = TPB_ALGO_ORACLE;
  o.max_nodes = 1;
  p.n = 5;
  tpb_instance* big = nullptr;
  REQUIRE(tpb_instance_generate(&p, &big) == TPB_OK);
  REQUIRE(tpb_solve(big, &o, &r) == TPB_OK);
  CHECK(tpb_result_outcome(r) == TPB_OUTCOME_UNKNOWN);
  tpb_result_free(r);
  o.max_nodes = 0;
  CHECK(tpb_solve(big, &o, &r) == TPB_ERR_ARGUMENT);
  tpb_instance_free(big);
  tpb_instance_free(inst);
}
