/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "parser.hpp"
#include "query.hpp"
#include "support.hpp"

using namespace omqe;

TEST_SUITE("kb_model") {

TEST_CASE("running example parses as HornALCHOI with four rules and one fact") {
  KnowledgeBase kb = testing::example1();
  CHECK(kb.fragment == Fragment::HornALCHOI);
  CHECK(kb.tbox.size() == 4);
  CHECK(kb.abox.size() == 1);
  REQUIRE(kb.query.has_value());
  CHECK(kb.query->atoms.size() == 3);
}

TEST_CASE("empty TBox lands in the least fragment") {
  KnowledgeBase kb = parse_kb("fact: A(a)\n");
  CHECK(kb.tbox.empty());
  CHECK(kb.fragment == Fragment::DLLiteR);
}

TEST_CASE("conjunctive head without existential is rejected") {
  CHECK_THROWS_WITH_AS(parse_kb("rule: A(x) -> B(x), C(x)\n"), doctest::Contains("not in normal form"),
                       std::runtime_error);
}

TEST_CASE("fragment detection reports the least fragment") {
  auto frag = [](const std::string &rule) { return parse_kb("rule: " + rule + "\nfact: A(a)\n").fragment; };
  CHECK(frag("A(x) -> B(x)") == Fragment::DLLiteR);
  CHECK(frag("r(x,y), A(y) -> B(x)") == Fragment::EL);
  CHECK(frag("A(x), r(x,y) -> B(y)") == Fragment::HornALC);
  CHECK(frag("A(x) -> x = a") == Fragment::HornALCHOI);
  CHECK(frag("r(x,y) -> B(x)") == Fragment::DLLiteR);
}

TEST_CASE("reserved and malformed input") {
  CHECK_THROWS_AS(parse_kb("fact: Bottom(a)\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_kb("rule A(x) -> B(x)\n"), ParseError);
  CHECK_THROWS_AS(parse_kb("fragment: EL\nrule: A(x) -> exists y. r(y,x)\n"), std::runtime_error);
}

TEST_CASE("Gaifman graph of the running query is a path on three nodes") {
  BooleanCQ q = *testing::example1().query;
  GaifmanGraph g = gaifman_graph(q);
  CHECK(g.nodes.size() == 3);
  CHECK(g.edges.size() == 2);
  std::size_t y = g.index_of(make_var("y"));
  for (auto [u, v] : g.edges)
    CHECK((u == y || v == y));
  CHECK(is_tree_shaped(q));
}

TEST_CASE("tree shape") {
  BooleanCQ single = parse_cq("exists x. A(x)");
  CHECK(gaifman_graph(single).nodes.size() == 1);
  CHECK(gaifman_graph(single).edges.empty());
  CHECK(is_tree_shaped(single));
  BooleanCQ tri = parse_cq("exists x, y, z. r(x,y), r(y,z), r(z,x)");
  CHECK(gaifman_graph(tri).edges.size() == 3);
  CHECK_FALSE(is_tree_shaped(tri));
  CHECK_FALSE(is_tree_shaped(parse_cq("exists x, y. A(x), B(y)")));
}

TEST_CASE("serialization round-trips") {
  KnowledgeBase kb = testing::example1();
  KnowledgeBase again = parse_kb(serialize_kb(kb));
  CHECK(serialize_kb(again) == serialize_kb(kb));
  CHECK(again.tbox == kb.tbox);
}

} // TEST_SUITE
