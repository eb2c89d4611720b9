/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "chase.hpp"
#include "generators.hpp"
#include "parser.hpp"
#include "support.hpp"

using namespace omqe;

TEST_SUITE("skolem_chase") {

TEST_CASE("Skolemization replaces existentials by functions of the frontier") {
  KnowledgeBase kb = testing::example1();
  std::vector<Rule> sk = skolemize(kb.tbox);
  REQUIRE(sk.size() == 4);
  CHECK(rule_str(sk[0]) == "A(x) -> r(x,f_1(x)), B(f_1(x))");
  CHECK(rule_str(sk[1]) == "B(x) -> s(x,f_2(x)), A(f_2(x))");
  CHECK(rule_str(sk[2]) == rule_str(kb.tbox[2]));
}

TEST_CASE("rules without existentials are unchanged") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> B(x)\nfact: A(a)\n");
  CHECK(skolemize(kb.tbox).front().body == kb.tbox.front().body);
  CHECK(skolemize(kb.tbox).front().head == kb.tbox.front().head);
}

TEST_CASE("running example chase at depth 2 contains the model fragment") {
  ChaseState st = chase(testing::example1(), 2);
  for (const char *a : {"A(a)", "r(a,f_1(a))", "B(f_1(a))", "s(f_1(a),f_2(f_1(a)))", "A(f_2(f_1(a)))", "E(f_1(a))",
                        "D(a)"})
    CHECK_MESSAGE(st.atoms.contains(parse_ground_atom(a)), a);
  CHECK_FALSE(st.saturated_at_bound);
}

TEST_CASE("empty TBox saturates immediately") {
  KnowledgeBase kb = parse_kb("fact: A(a)\n");
  for (int d : {0, 1, 5}) {
    ChaseState st = chase(kb, d);
    CHECK(st.atoms.size() == 1);
    CHECK(st.saturated_at_bound);
  }
}

TEST_CASE("existential restriction propagates back along a role chain") {
  const int n = 5;
  std::string text = "rule: r(x,y), A(y) -> A(x)\nfact: A(c" + std::to_string(n) + ")\n";
  for (int i = 0; i < n; ++i)
    text += "fact: r(c" + std::to_string(i) + ",c" + std::to_string(i + 1) + ")\n";
  ChaseState st = chase(parse_kb(text), n);
  for (int i = 0; i <= n; ++i)
    CHECK(st.atoms.contains(parse_ground_atom("A(c" + std::to_string(i) + ")")));
}

TEST_CASE("query matching") {
  KnowledgeBase kb = testing::example1();
  auto m = match_query(*kb.query, chase(kb, 2), 10);
  REQUIRE(m.size() >= 1);
  CHECK(term_str(m[0].apply(make_var("xp"))) == "a");
  CHECK(term_str(m[0].apply(make_var("y"))) == "f_1(a)");

  ChaseState b = chase(parse_kb("fact: B(a)\n"), 0);
  CHECK(match_query(parse_cq("exists x. A(x)"), b, 10).empty());

  auto coll = match_query(parse_cq("exists x, y, z. r(x,y), r(z,y)"), chase(parse_kb("fact: r(a,b)\n"), 0), 10);
  REQUIRE(coll.size() == 1);
  CHECK(term_str(coll[0].apply(make_var("x"))) == "a");
  CHECK(term_str(coll[0].apply(make_var("z"))) == "a");
  CHECK(term_str(coll[0].apply(make_var("y"))) == "b");
}

TEST_CASE("entailment verdicts") {
  Entailment e = entails(testing::example1(), *testing::example1().query);
  CHECK(e.verdict == Verdict::Yes);
  CHECK(e.depth == 2);
  CHECK(entails(parse_kb("fact: A(a)\n"), parse_cq("B(a)")).verdict == Verdict::No);
  CHECK(entails(testing::example1(), parse_cq("C(a)"), 3).verdict == Verdict::Unknown);
  GeneratedInstance g = gen_el_tree(3);
  CHECK(entails(g.kb, g.query()).verdict == Verdict::Yes);
}

TEST_CASE("equalities merge Skolem terms into constants") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> exists y. r(x,y), B(y)\nrule: B(x) -> x = b\nfact: A(a)\n");
  ChaseState st = chase(kb, 3);
  CHECK(st.atoms.contains(parse_ground_atom("r(a,b)")));
  CHECK(st.atoms.contains(parse_ground_atom("B(b)")));
  CHECK(st.saturated_at_bound);
}

} // TEST_SUITE
