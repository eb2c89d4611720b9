/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include <omqe/omqe.h>

#include <cstring>

#include "deriver_cq.hpp"
#include "normalize.hpp"
#include "proof_io.hpp"
#include "support.hpp"

using namespace omqe;

namespace {

std::size_t count(const std::string &hay, const std::string &needle) {
  std::size_t n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
    ++n;
  return n;
}

std::string take(char *s) {
  std::string out = s ? s : "";
  omqe_string_free(s);
  return out;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("proof JSON round trip") {
  KnowledgeBase kb = testing::example1();
  ProofGraph p = testing::running_proof();
  auto j = proof_to_json(p, Deriver::Skolem, *kb.query);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["deriver"] == "sk");
  ProofDocument doc = proof_from_json(nlohmann::json::parse(j.dump()));
  CHECK(doc.deriver == Deriver::Skolem);
  REQUIRE(doc.proof.vertices.size() == p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    CHECK(doc.proof.vertices[i] == p.vertices[i]);
  CHECK(proof_to_json(doc.proof, doc.deriver, doc.goal).dump() == j.dump());
}

TEST_CASE("malformed proof JSON") {
  CHECK_THROWS_AS(proof_from_json(nlohmann::json::object()), InputError);
  auto j = proof_to_json(testing::running_proof(), Deriver::Skolem, *testing::example1().query);
  j["edges"][0]["schema"] = "XX";
  CHECK_THROWS_AS(proof_from_json(j), InputError);
}

TEST_CASE("DOT rendering") {
  std::string dot = proof_to_dot(testing::running_proof());
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count(dot, "fillcolor=lightblue") == 1);
  CHECK(count(dot, "fillcolor=lightgray") == 4);

  KnowledgeBase kb = testing::example1();
  std::string cqdot = proof_to_dot(transform_sk_to_cq(testing::running_proof(), kb, *kb.query));
  CHECK(cqdot.find("MPe") != std::string::npos);
  CHECK(cqdot.find("Te") != std::string::npos);
}

TEST_CASE("normalization") {
  KnowledgeBase kb = normalize_kb("rule: A(x) -> B(x), C(x)\n"
                                  "rule: r(x,y), s(y,z), D(z) -> E(x)\n"
                                  "rule: A(x) -> exists y. r(x,y), B(y), C(y)\n"
                                  "fact: A(a)\n");
  CHECK(kb.fragment == Fragment::EL);
  for (const Rule &r : kb.tbox)
    CHECK(r.head.size() <= 2);
  ChaseState st = chase(kb, 2);
  CHECK(st.atoms.contains(parse_ground_atom("B(a)")));
  CHECK(st.atoms.contains(parse_ground_atom("C(a)")));
  CHECK_THROWS_AS(normalize_kb("rule: r(x,y), r(y,z), r(z,x) -> A(x)\n"), InputError);
}

TEST_CASE("C API: status codes and errors") {
  omqe_kb *kb = nullptr;
  CHECK(omqe_kb_parse(nullptr, &kb) == OMQE_ERR_ARGUMENT);
  CHECK(omqe_kb_parse("rule A(x)", &kb) == OMQE_ERR_PARSE);
  CHECK(std::strlen(omqe_last_error()) > 0);
  CHECK(omqe_kb_parse("rule: A(x) -> B(x), C(x)\n", &kb) != OMQE_OK);
  REQUIRE(omqe_kb_parse(testing::read_text(testing::data_path("example1.kb")).c_str(), &kb) == OMQE_OK);
  CHECK(std::strlen(omqe_last_error()) == 0);

  char *out = nullptr;
  omqe_explain_options opt;
  omqe_explain_options_init(&opt);
  opt.bound = 1;
  CHECK(omqe_explain(kb, nullptr, &opt, &out) == OMQE_ERR_ARGUMENT);
  opt.bound = 0;
  opt.deriver = OMQE_DERIVER_CQ;
  opt.measure = OMQE_MEASURE_DOMAIN;
  CHECK(omqe_explain(kb, nullptr, &opt, &out) == OMQE_ERR_INPUT);
  CHECK(omqe_export_dot("", &out) == OMQE_ERR_INPUT);
  CHECK(omqe_generate("nope", "1", &out, nullptr) == OMQE_ERR_INPUT);
  CHECK(omqe_answer(kb, "exists x. Q(x", -1, &out) == OMQE_ERR_PARSE);
  omqe_kb_free(kb);
}

TEST_CASE("C API: outputs are deterministic") {
  omqe_kb *kb = nullptr;
  REQUIRE(omqe_kb_parse(testing::read_text(testing::data_path("example1.kb")).c_str(), &kb) == OMQE_OK);
  omqe_explain_options opt;
  omqe_explain_options_init(&opt);
  opt.measure = OMQE_MEASURE_TREE;
  char *a = nullptr, *b = nullptr;
  REQUIRE(omqe_explain(kb, nullptr, &opt, &a) == OMQE_OK);
  REQUIRE(omqe_explain(kb, nullptr, &opt, &b) == OMQE_OK);
  std::string sa = take(a), sb = take(b);
  CHECK(sa == sb);
  auto j = nlohmann::json::parse(sa);
  CHECK(j["schema_version"] == 1);
  CHECK(j["value"] == 23);

  std::string proof = j["proof"].dump();
  char *conv = nullptr, *val = nullptr;
  REQUIRE(omqe_convert(kb, proof.c_str(), "cq", 0, &conv) == OMQE_OK);
  std::string cq = take(conv);
  REQUIRE(omqe_validate(kb, cq.c_str(), 0, &val) == OMQE_OK);
  CHECK(nlohmann::json::parse(take(val))["valid"] == true);

  char *info = nullptr;
  REQUIRE(omqe_kb_info(kb, &info) == OMQE_OK);
  auto ij = nlohmann::json::parse(take(info));
  CHECK(ij["fragment"] == "HornALCHOI");
  CHECK(ij["rules"] == 4);
  omqe_kb_free(kb);
}

TEST_CASE("C API: poly routing falls back with a warning") {
  omqe_kb *kb = nullptr;
  REQUIRE(omqe_kb_parse("rule: A(x) -> B(x)\nfact: A(a)\nfact: r(a,b)\nfact: r(b,c)\nfact: r(c,a)\n", &kb) == OMQE_OK);
  omqe_explain_options opt;
  omqe_explain_options_init(&opt);
  opt.measure = OMQE_MEASURE_TREE;
  opt.algo = OMQE_ALGO_POLY;
  char *out = nullptr;
  REQUIRE(omqe_explain(kb, "exists x, y, z. r(x,y), r(y,z), r(z,x)", &opt, &out) == OMQE_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j["status"] == "found");
  CHECK(j["algorithm"] == "bounded-search");
  REQUIRE(j["warnings"].size() == 1);
  CHECK(j["warnings"][0].get<std::string>().find("falling back") != std::string::npos);
  REQUIRE(omqe_explain(kb, "exists x. r(a,x), B(a)", &opt, &out) == OMQE_OK);
  CHECK(nlohmann::json::parse(take(out))["algorithm"] == "tree-query");
  omqe_kb_free(kb);
}

TEST_CASE("C API: bench CSV") {
  char *csv = nullptr;
  REQUIRE(omqe_bench("el-abox", 1, 2, "size,tree", 2, 100000, 10000, &csv) == OMQE_OK);
  std::string s = take(csv);
  CHECK(s.rfind("family,parameter,measure,optimum,search_nodes,wall_ms\n", 0) == 0);
  CHECK(s.find("el-abox,1,size,9,") != std::string::npos);
  CHECK(s.find("el-abox,2,tree,28,") != std::string::npos);
  CHECK(omqe_bench("el-abox", 1, 1, "volume", 1, 1, 1, &csv) == OMQE_ERR_INPUT);
}

} // TEST_SUITE
