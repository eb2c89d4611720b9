/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "proof.hpp"
#include "support.hpp"
#include "validate.hpp"

using namespace omqe;

namespace {

// Recursion of the tree-size definition, written out independently.
std::uint64_t tree_by_recursion(const ProofGraph &p, int v) {
  int e = p.incoming()[static_cast<std::size_t>(v)];
  if (e < 0)
    return 1;
  std::uint64_t s = 1;
  for (int u : p.edges[static_cast<std::size_t>(e)].premises)
    s += tree_by_recursion(p, u);
  return s;
}

ProofGraph diamond() {
  ProofGraph p;
  int f = p.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  int l = p.add_vertex(Label::of_atom(parse_ground_atom("B(a)")));
  int r = p.add_vertex(Label::of_atom(parse_ground_atom("C(a)")));
  int top = p.add_vertex(Label::of_atom(parse_ground_atom("D(a)")));
  p.add_edge({f}, l, Schema::MP);
  p.add_edge({f}, r, Schema::MP);
  p.add_edge({l, r}, top, Schema::MP);
  return p;
}

} // namespace

TEST_SUITE("proof_model") {

TEST_CASE("running proof validates and has the expected measures") {
  KnowledgeBase kb = testing::example1();
  ProofGraph p = testing::running_proof();
  Validation v = validate_proof(p, kb, *kb.query, Deriver::Skolem);
  CHECK_MESSAGE(v.ok, (v.diagnostics.empty() ? "" : v.diagnostics.front()));
  CHECK(proof_size(p) == p.vertices.size());
  CHECK(proof_size(p) == 12);
  CHECK(proof_tree_size(p) == tree_by_recursion(p, p.sink()));
  CHECK(proof_tree_size(p) == 23);
  CHECK(proof_tree_size(p) > proof_size(p));
  CHECK(proof_domain_size(p) == 3);
  std::vector<Schema> seq = schema_sequence(p);
  CHECK(seq == std::vector<Schema>{Schema::MP, Schema::MP, Schema::MP, Schema::MP, Schema::C, Schema::G});
}

TEST_CASE("deleting an inference leaves a leaf outside the KB") {
  KnowledgeBase kb = testing::example1();
  ProofGraph p = testing::running_proof();
  p.edges.erase(p.edges.begin() + 1);  // the edge into B(f_1(a))
  Validation v = validate_proof(p, kb, *kb.query, Deriver::Skolem);
  CHECK_FALSE(v.ok);
  REQUIRE_FALSE(v.diagnostics.empty());
  CHECK(v.diagnostics.front().find("leaf not in K") != std::string::npos);
}

TEST_CASE("a 2-cycle violates acyclicity") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> B(x)\nrule: B(x) -> A(x)\nfact: A(a)\n");
  ProofGraph p;
  int a = p.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  int b = p.add_vertex(Label::of_atom(parse_ground_atom("B(a)")));
  p.add_edge({a}, b, Schema::MP);
  p.add_edge({b}, a, Schema::MP);
  Validation v = validate_proof(p, kb, parse_cq("B(a)"), Deriver::Skolem);
  CHECK_FALSE(v.ok);
  CHECK(v.diagnostics.front().find("acyclicity") != std::string::npos);
  CHECK_FALSE(p.acyclic());
}

TEST_CASE("single-leaf proof") {
  ProofGraph p;
  p.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  CHECK(proof_size(p) == 1);
  CHECK(proof_tree_size(p) == 1);
  CHECK(validate_proof(p, parse_kb("fact: A(a)\n"), parse_cq("A(a)"), Deriver::Skolem).ok);
}

TEST_CASE("unraveling") {
  ProofGraph p = testing::running_proof();
  ProofGraph t = tree_unravel(p);
  CHECK(proof_size(t) == proof_tree_size(p));
  CHECK(homomorphism(t, p).has_value());

  ProofGraph d = diamond();
  ProofGraph dt = tree_unravel(d);
  CHECK(proof_size(dt) == proof_size(d) + 1);
  CHECK(proof_tree_size(d) == 5);

  // A tree unravels to an isomorphic copy.
  ProofGraph again = tree_unravel(dt);
  CHECK(proof_size(again) == proof_size(dt));
  CHECK(homomorphism(again, dt, {true, true}).has_value());
  CHECK(homomorphism(dt, again, {true, true}).has_value());
}

TEST_CASE("subproofs") {
  ProofGraph p = testing::running_proof();
  CHECK(is_subproof(p, p));
  ProofGraph d_part = subproof_at(p, 9);  // D(a)
  CHECK(d_part.vertices[d_part.sink()] == p.vertices[9]);
  CHECK(is_subproof(d_part, p));
  // A "leaf" that is an internal vertex of h.
  ProofGraph lone;
  lone.add_vertex(p.vertices[9]);
  CHECK_FALSE(is_subproof(lone, p));
}

TEST_CASE("homomorphisms") {
  ProofGraph p = testing::running_proof();
  auto id = homomorphism(p, p);
  REQUIRE(id.has_value());
  ProofGraph x, y;
  x.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  y.add_vertex(Label::of_atom(parse_ground_atom("B(a)")));
  CHECK_FALSE(homomorphism(x, y).has_value());
}

TEST_CASE("structural violations") {
  CHECK(structural_violation(ProofGraph{}) == "empty proof");
  ProofGraph two;
  two.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  two.add_vertex(Label::of_atom(parse_ground_atom("B(a)")));
  CHECK(structural_violation(two).find("exactly one sink") != std::string::npos);
  ProofGraph d = diamond();
  d.add_edge({0}, 3, Schema::MP);
  CHECK(structural_violation(d).find("more than one incoming") != std::string::npos);
}

} // TEST_SUITE
