/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "deriver_cq.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "query.hpp"
#include "search.hpp"

using namespace omqe;

namespace {

std::uint64_t optimum(const GeneratedInstance &g, Measure m) {
  SearchBudget b;
  b.measure = m;
  SearchResult r = bounded_search(g.kb, g.query(), b);
  REQUIRE(r.status == SearchStatus::Found);
  REQUIRE(r.optimal);
  return r.value;
}

// Rules whose head is a role atom (the R-family inclusions).
std::size_t role_rules(const KnowledgeBase &kb) {
  std::size_t n = 0;
  for (const Rule &r : kb.tbox)
    n += r.head.front().kind == AtomKind::Role;
  return n;
}

} // namespace

TEST_SUITE("generators") {

TEST_CASE("every generated instance is entailed") {
  for (std::string fam : {"dllite-chain", "dllite-path", "el-tree", "el-abox", "hornalc-counter"})
    for (int n = 1; n <= 3; ++n) {
      if (fam == "hornalc-counter" && n > 2)
        continue;
      GeneratedInstance g = generate(fam, std::to_string(n));
      CHECK_MESSAGE(entails(g.kb, g.query()).verdict == Verdict::Yes, fam << " " << n);
    }
  for (std::uint32_t seed = 1; seed <= 30; ++seed) {
    GeneratedInstance g = gen_dllite_tree(seed);
    CHECK(g.kb.fragment == Fragment::DLLiteR);
    CHECK(is_tree_shaped(g.query()));
    CHECK(entails(g.kb, g.query()).verdict == Verdict::Yes);
  }
}

TEST_CASE("dllite-chain construction and optima") {
  CHECK(role_rules(gen_dllite_chain(1).kb) == 2);
  CHECK(role_rules(gen_dllite_chain(0).kb) == 1);
  CHECK(gen_dllite_chain(0).kb.fragment == Fragment::DLLiteR);
  for (int n = 0; n <= 5; ++n) {
    GeneratedInstance g = gen_dllite_chain(n);
    std::uint64_t expect = 4 * static_cast<std::uint64_t>(n) + 8;
    CHECK(testing::oracle_tree_size(g.kb, g.query()) == expect);
    CHECK(optimum(g, Measure::TreeSize) == expect);
    CHECK(optimum(g, Measure::Size) == expect);
  }
}

TEST_CASE("dllite-path tree size is quadratic") {
  for (int n = 1; n <= 5; ++n) {
    GeneratedInstance g = gen_dllite_path(n);
    std::uint64_t u = static_cast<std::uint64_t>(n), expect = 2 * u * u + u + 2;
    CHECK(testing::oracle_tree_size(g.kb, g.query()) == expect);
    CHECK(optimum(g, Measure::TreeSize) == expect);
  }
}

TEST_CASE("el-tree values") {
  std::uint64_t tree[] = {7, 32, 94}, size[] = {7, 20, 41};
  for (int n = 1; n <= 3; ++n) {
    GeneratedInstance g = gen_el_tree(n);
    CHECK(testing::oracle_tree_size(g.kb, g.query()) == tree[n - 1]);
    CHECK(optimum(g, Measure::TreeSize) == tree[n - 1]);
    CHECK(optimum(g, Measure::Size) == size[n - 1]);
  }
  CHECK(10 * optimum(gen_el_tree(3), Measure::TreeSize) >= 18 * optimum(gen_el_tree(2), Measure::TreeSize));
}

TEST_CASE("el-abox: linear size, exponential tree size") {
  CHECK(gen_el_abox(1).kb.abox.size() == 3);
  for (int n = 1; n <= 4; ++n) {
    GeneratedInstance g = gen_el_abox(n);
    CHECK(optimum(g, Measure::Size) == 5 * static_cast<std::uint64_t>(n) + 4);
    std::uint64_t tree = 9 * (std::uint64_t{1} << n) - 8;
    CHECK(testing::oracle_tree_size(g.kb, g.query()) == tree);
    CHECK(optimum(g, Measure::TreeSize) == tree);
    CHECK(g.bounds.at("size") == 5 * static_cast<std::uint64_t>(n) + 4);
  }
}

TEST_CASE("hornalc-counter n=1") {
  GeneratedInstance g = gen_hornalc_counter(1);
  CHECK(g.kb.fragment == Fragment::HornALC);
  CHECK(optimum(g, Measure::Size) == 20);
  CHECK(optimum(g, Measure::TreeSize) == 48);
  CHECK(testing::oracle_tree_size(g.kb, g.query()) == 48);
  CHECK(optimum(g, Measure::DomainSize) == 3);
}

TEST_CASE("SAT instance shapes and bounds") {
  GeneratedInstance g = gen_sat(parse_clauses("1 -1"));
  std::size_t t = 0, c = 0;
  for (const Atom &a : g.kb.abox)
    (sym_name(a.pred) == "T" ? t : c) += 1;
  CHECK(t == 2);
  CHECK(c == 2);
  CHECK(g.bounds.at("size") == 4);
  CHECK(g.bounds.at("domain") == 2);
  CHECK(gen_sat_cq(parse_clauses("1 -1")).bounds.at("tree") == 5);
  CHECK_THROWS_AS(parse_clauses(""), InputError);
  CHECK_THROWS_AS(parse_clauses("1 x"), InputError);
  CHECK_THROWS_AS(parse_clauses("1, , 2"), InputError);
}

TEST_CASE("brute-force SAT") {
  CHECK(brute_force_sat(parse_clauses("1 2, -1")));
  CHECK_FALSE(brute_force_sat(parse_clauses("1, -1")));
  CHECK_FALSE(brute_force_sat(parse_clauses("1 2, -1 2, 1 -2, -1 -2")));
}

TEST_CASE("SAT over the CQ deriver at the tree bound") {
  for (const char *f : {"1 2, -1", "1, -2, 2 3", "1, -1", "-1 -2, 1, 2"}) {
    Clauses cl = parse_clauses(f);
    GeneratedInstance g = gen_sat_cq(cl);
    SearchBudget b;
    b.measure = Measure::TreeSize;
    b.bound = g.bounds.at("tree");
    SearchResult r = bounded_search_cq(g.kb, g.query(), b);
    CHECK_MESSAGE((r.status == SearchStatus::Found) == brute_force_sat(cl), f);
  }
}

TEST_CASE("dispatch and sidecar") {
  CHECK_THROWS_AS(generate("nope", "1"), InputError);
  CHECK_THROWS_AS(generate("el-tree", "0"), InputError);
  auto j = instance_sidecar(gen_el_abox(2));
  CHECK(j["schema_version"] == 1);
  CHECK(j["bounds"]["size"] == 14);
  CHECK(j["formulas"]["tree"] == "9*2^n-8");
  CHECK(generator_families().size() == 8);
}

TEST_CASE("generation is deterministic") {
  CHECK(serialize_kb(gen_dllite_tree(17).kb) == serialize_kb(gen_dllite_tree(17).kb));
  CHECK(serialize_kb(gen_el_tree(3).kb) == serialize_kb(gen_el_tree(3).kb));
}

} // TEST_SUITE
