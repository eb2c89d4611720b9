/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "deriver_cq.hpp"
#include "support.hpp"
#include "validate.hpp"

using namespace omqe;

namespace {

BooleanCQ cq(const char *s) { return parse_cq(s); }

Atom role(const char *r, const char *x, const char *y) { return role_atom(intern(r), make_var(x), make_var(y)); }
Atom conc(const char *c, const char *x) { return concept_atom(intern(c), make_var(x)); }

Subst bind(std::initializer_list<std::pair<const char *, const char *>> xs) {
  Subst s;
  for (auto [v, t] : xs)
    s.set(make_var(v), make_const(t));
  return s;
}

} // namespace

TEST_SUITE("deriver_cq") {

TEST_CASE("CQs compare up to variable renaming and duplicates") {
  CHECK(cq_isomorphic(cq("exists x. A(x)"), cq("exists z. A(z)")));
  CHECK(cq_isomorphic(cq("exists x. A(x), A(x)"), cq("exists z. A(z)")));
  CHECK_FALSE(cq_isomorphic(cq("exists x, y. r(x,y)"), cq("exists x. r(x,x)")));
  CHECK_FALSE(cq_isomorphic(cq("A(a)"), cq("exists x. A(x)")));
}

TEST_CASE("MPe from a ground fact") {
  Rule rule = testing::example1().tbox[0];  // A(x) -> exists y. r(x,y), B(y)
  BooleanCQ out = mpe_apply(cq("A(a)"), rule, bind({{"x", "a"}}), {parse_ground_atom("A(a)")}, {0, 1});
  CHECK(cq_isomorphic(out, cq("exists y. r(a,y), B(y)")));
  BooleanCQ same = mpe_apply(cq("A(a)"), rule, bind({{"x", "a"}}), {}, {});
  CHECK(cq_isomorphic(same, cq("A(a)")));
}

TEST_CASE("MPe with a tautology keeps the original") {
  Rule t = te_rule({role("r", "x", "y"), conc("D", "x")}, {make_var("x")});
  CHECK(is_tautology(t));
  Subst pi;
  pi.set(make_var("x"), make_const("a"));
  pi.set(make_var("y"), make_var("y"));
  BooleanCQ out = mpe_apply(cq("exists y. r(a,y), D(a)"), t, pi, {parse_ground_atom("D(a)")}, {0, 1});
  CHECK(cq_isomorphic(out, cq("exists y, xp. r(a,y), r(xp,y), D(xp)")));
}

TEST_CASE("tautology construction") {
  Rule dup = te_rule({role("P", "x", "z")}, {make_var("z")});
  CHECK(dup.existentials.size() == 1);
  CHECK(is_tautology(dup));
  Rule none = te_rule({role("P", "x", "z")}, {});
  CHECK(none.existentials.empty());
  CHECK(is_tautology(none));
  Rule all = te_rule({role("P", "x", "z")}, {make_var("x"), make_var("z")});
  CHECK_FALSE(is_tautology(te_rule(parse_conjunction("P(a,b)"), {})));
  CHECK(all.existentials.size() == 2);
  CHECK_FALSE(is_tautology(testing::example1().tbox[0]));
}

TEST_CASE("Ce, Ge and Ee") {
  BooleanCQ c = ce_apply(cq("exists x. A(x)"), cq("exists x. B(x)"));
  CHECK(c.vars.size() == 2);
  CHECK(cq_isomorphic(c, cq("exists x, u. A(x), B(u)")));
  CHECK(cq_isomorphic(ge_apply(cq("A(a), r(a,b)"), {}), cq("A(a), r(a,b)")));
  CHECK(cq_isomorphic(ge_apply(cq("A(a), r(a,b)"), {make_const("b")}), cq("exists v. A(a), r(a,v)")));
  BooleanCQ eq{{equality_atom(make_var("x"), make_const("a")), conc("A", "x")}, {make_var("x")}};
  BooleanCQ e = ee_apply(eq, 0);
  CHECK(cq_isomorphic(e, cq("A(a)")));
}

TEST_CASE("edge checks") {
  std::vector<Rule> tbox = testing::example1().tbox;
  auto q = [](const char *s) { return Label::of_query(parse_cq(s)); };
  CHECK(check_cq_edge(Schema::MPe, {q("A(a)"), Label::of_rule(tbox[0])}, q("exists y. r(a,y), B(y)"), tbox));
  CHECK_FALSE(check_cq_edge(Schema::MPe, {q("A(a)"), Label::of_rule(tbox[1])}, q("exists y. r(a,y), B(y)"), tbox));
  CHECK(check_cq_edge(Schema::Ce, {q("exists x. A(x)"), q("exists x. B(x)")}, q("exists x, y. A(x), B(y)"), tbox));
  CHECK(check_cq_edge(Schema::Ge, {q("A(a), r(a,b)")}, q("exists v. A(a), r(a,v)"), tbox));
  CHECK_FALSE(check_cq_edge(Schema::Ge, {q("r(a,b), r(c,b)")}, q("exists v. r(v,b)"), tbox));
  Rule foreign = parse_rule("A(x) -> exists y. s(x,y)");
  CHECK_FALSE(check_cq_edge(Schema::MPe, {q("A(a)"), Label::of_rule(foreign)}, q("exists y. s(a,y)"), tbox));
}

TEST_CASE("CQ search on the running example") {
  KnowledgeBase kb = testing::example1();
  SearchBudget b;
  b.measure = Measure::TreeSize;
  SearchResult r = bounded_search_cq(kb, *kb.query, b);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.optimal);
  CHECK(r.value == 11);
  Validation v = validate_proof(*r.proof, kb, *kb.query, Deriver::CQ);
  CHECK_MESSAGE(v.ok, (v.diagnostics.empty() ? "" : v.diagnostics.front()));
  b.measure = Measure::DomainSize;
  CHECK_THROWS_AS(bounded_search_cq(kb, *kb.query, b), InputError);
}

TEST_CASE("sk to cq and back on the running proof") {
  KnowledgeBase kb = testing::example1();
  const BooleanCQ &q = *kb.query;
  ProofGraph cqp = transform_sk_to_cq(testing::running_proof(), kb, q);
  Validation v = validate_proof(cqp, kb, q, Deriver::CQ);
  CHECK_MESSAGE(v.ok, (v.diagnostics.empty() ? "" : v.diagnostics.front()));
  CHECK(cqp.vertices[static_cast<std::size_t>(cqp.sink())] == Label::of_query(q));
  // Tree proof: every vertex has at most one consumer.
  std::vector<int> uses(cqp.vertices.size(), 0);
  for (const Edge &e : cqp.edges)
    for (int u : e.premises)
      ++uses[static_cast<std::size_t>(u)];
  for (int u : uses)
    CHECK(u <= 1);

  ProofGraph back = transform_cq_to_sk(cqp, kb, q);
  Validation vb = validate_proof(back, kb, q, Deriver::Skolem);
  CHECK_MESSAGE(vb.ok, (vb.diagnostics.empty() ? "" : vb.diagnostics.front()));
  CHECK(back.vertices[static_cast<std::size_t>(back.sink())] == Label::of_query(q));
}

TEST_CASE("single-fact proofs transform to single-fact proofs") {
  KnowledgeBase kb = parse_kb("fact: A(a)\n");
  BooleanCQ q = parse_cq("A(a)");
  ProofGraph p;
  p.add_vertex(Label::of_atom(parse_ground_atom("A(a)")));
  ProofGraph c = transform_sk_to_cq(p, kb, q);
  CHECK(proof_size(c) == 1);
  CHECK(validate_proof(c, kb, q, Deriver::CQ).ok);
  ProofGraph back = transform_cq_to_sk(c, kb, q);
  CHECK(proof_size(back) == 1);
}

TEST_CASE("fact-only proof collects the facts before the goal") {
  KnowledgeBase kb = parse_kb("fact: A(a)\nfact: r(a,b)\n");
  BooleanCQ q = parse_cq("exists y. A(a), r(a,y)");
  SearchBudget b;
  b.measure = Measure::TreeSize;
  SearchResult sk = bounded_search(kb, q, b);
  REQUIRE(sk.proof);
  ProofGraph c = transform_sk_to_cq(*sk.proof, kb, q);
  CHECK(validate_proof(c, kb, q, Deriver::CQ).ok);
  int ce = 0;
  for (const Edge &e : c.edges)
    ce += e.schema == Schema::Ce;
  CHECK(ce == 1);
}

TEST_CASE("transformations reject invalid input") {
  KnowledgeBase kb = testing::example1();
  ProofGraph cyclic;
  int a = cyclic.add_vertex(Label::of_query(parse_cq("A(a)")));
  int b = cyclic.add_vertex(Label::of_query(parse_cq("B(a)")));
  cyclic.add_edge({a}, b, Schema::Ge);
  cyclic.add_edge({b}, a, Schema::Ge);
  CHECK_THROWS_AS(transform_cq_to_sk(cyclic, kb, parse_cq("B(a)")), InputError);
}

} // TEST_SUITE
