/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include "oracle.hpp"
#include "search.hpp"
#include "support.hpp"
#include "validate.hpp"

using namespace omqe;

namespace {

SearchResult optimize(const KnowledgeBase &kb, const BooleanCQ &q, Measure m) {
  SearchBudget b;
  b.measure = m;
  return bounded_search(kb, q, b);
}

KnowledgeBase concept_chain(int n) {
  std::string text = "fact: P0(c)\n";
  for (int i = 0; i < n; ++i)
    text += "rule: P" + std::to_string(i) + "(x) -> P" + std::to_string(i + 1) + "(x)\n";
  return parse_kb(text);
}

} // namespace

TEST_SUITE("proof_search") {

TEST_CASE("running example optima") {
  KnowledgeBase kb = testing::example1();
  const BooleanCQ &q = *kb.query;
  SearchResult size = optimize(kb, q, Measure::Size);
  SearchResult tree = optimize(kb, q, Measure::TreeSize);
  SearchResult dom = optimize(kb, q, Measure::DomainSize);
  REQUIRE(size.status == SearchStatus::Found);
  REQUIRE(tree.status == SearchStatus::Found);
  REQUIRE(dom.status == SearchStatus::Found);
  CHECK(size.value == proof_size(testing::running_proof()));
  CHECK(tree.value == testing::oracle_tree_size(kb, q));
  CHECK(tree.value == 23);
  CHECK(dom.value == 3);
  for (const SearchResult *r : {&size, &tree, &dom}) {
    CHECK(r->optimal);
    CHECK(validate_proof(*r->proof, kb, q, Deriver::Skolem).ok);
  }
}

TEST_CASE("concept chain: size 2n+1") {
  for (int n = 0; n <= 4; ++n) {
    KnowledgeBase kb = concept_chain(n);
    BooleanCQ q = parse_cq("P" + std::to_string(n) + "(c)");
    CHECK(optimize(kb, q, Measure::Size).value == static_cast<std::uint64_t>(2 * n + 1));
    CHECK(optimize(kb, q, Measure::TreeSize).value == testing::oracle_tree_size(kb, q));
  }
}

TEST_CASE("shorter of two derivations wins") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> B(x)\nrule: B(x) -> C(x)\nrule: A(x) -> C(x)\nfact: A(a)\n");
  CHECK(optimize(kb, parse_cq("C(a)"), Measure::Size).value == 3);
}

TEST_CASE("bounds decide") {
  KnowledgeBase kb = testing::example1();
  SearchBudget b;
  b.measure = Measure::Size;
  b.bound = 11;
  CHECK(bounded_search(kb, *kb.query, b).status == SearchStatus::None);
  b.bound = 12;
  CHECK(bounded_search(kb, *kb.query, b).status == SearchStatus::Found);
  b.stop_at_first = true;
  b.bound = 40;
  SearchResult any = bounded_search(kb, *kb.query, b);
  CHECK(any.status == SearchStatus::Found);
  CHECK(any.value <= 40);
}

TEST_CASE("node budget exhausts") {
  GeneratedInstance g = gen_hornalc_counter(2);
  SearchBudget b;
  b.measure = Measure::DomainSize;
  b.max_nodes = 50;
  SearchResult r = bounded_search(g.kb, g.query(), b);
  CHECK(r.status != SearchStatus::None);
  CHECK_FALSE(r.optimal);
}

TEST_CASE("tree DP agrees with the fixpoint oracle on generated instances") {
  for (const GeneratedInstance &g : testing::oracle_instances()) {
    DerivationView view = goal_view(g.kb, g.query());
    auto dp = min_tree_size_proof(view, g.query());
    REQUIRE(dp.has_value());
    CHECK_MESSAGE(proof_tree_size(dp->proof) == testing::oracle_tree_size(g.kb, g.query()),
                  g.family << " " << g.parameter);
  }
}

TEST_CASE("tree-shaped DL-Lite queries: polynomial algorithm equals exact search") {
  for (int n = 1; n <= 5; ++n) {
    GeneratedInstance g = gen_dllite_path(n);
    AlgoResult r = tree_query_min_treesize(g.kb, g.query());
    CHECK(r.value == optimize(g.kb, g.query(), Measure::TreeSize).value);
    CHECK(validate_proof(r.proof, g.kb, g.query(), Deriver::Skolem).ok);
  }
}

TEST_CASE("single-atom tree query") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> exists y. P(x,y)\nrule: P(y,x) -> B(x)\nfact: A(a)\n");
  BooleanCQ q = parse_cq("exists z. B(z)");
  AlgoResult r = tree_query_min_treesize(kb, q);
  CHECK(r.value == optimize(kb, q, Measure::TreeSize).value);
  CHECK(r.value == testing::oracle_tree_size(kb, q));
}

TEST_CASE("EL assignment algorithm") {
  for (int n = 1; n <= 3; ++n) {
    GeneratedInstance g = gen_el_tree(n);
    AlgoResult r = el_cq_min_treesize(g.kb, g.query());
    CHECK(r.value == optimize(g.kb, g.query(), Measure::TreeSize).value);
    CHECK(validate_proof(r.proof, g.kb, g.query(), Deriver::Skolem).ok);
  }
  // A query whose only match uses an anonymous element.
  KnowledgeBase kb = parse_kb("rule: A(x) -> exists y. r(x,y), B(y)\nrule: B(x) -> C(x)\nfact: A(a)\n");
  BooleanCQ q = parse_cq("exists y. r(a,y), C(y)");
  AlgoResult r = el_cq_min_treesize(kb, q);
  CHECK(r.value == optimize(kb, q, Measure::TreeSize).value);
  CHECK(validate_proof(r.proof, kb, q, Deriver::Skolem).ok);
}

TEST_CASE("compressed structures") {
  KnowledgeBase dl = parse_kb("rule: A(x) -> exists y. P(x,y)\nrule: P(x,y) -> Q(x,y)\nfact: A(a)\nfact: P(a,b)\n");
  DerivationView c = compress_dllite(dl);
  bool fresh_p = false, qab = false;
  for (const Atom &a : c.atoms) {
    if (a.kind == AtomKind::Role && sym_name(a.pred) == "P" && is_fresh_name(a.b))
      fresh_p = true;
    if (atom_str(a) == "Q(a,b)")
      qab = true;
  }
  CHECK(fresh_p);
  CHECK(qab);

  KnowledgeBase el = parse_kb("rule: A(x) -> exists y. r(x,y), B(y)\nfact: A(a)\n");
  DerivationView ce = compress_el(el);
  int fresh = 0;
  for (const Atom &a : ce.atoms)
    fresh += (a.b != kNoTerm && is_fresh_name(a.b)) || is_fresh_name(a.a);
  CHECK(fresh == 2);  // r(a,c) and B(c)

  DerivationView plain = compress_el(parse_kb("rule: A(x) -> B(x)\nfact: A(a)\n"));
  for (const Atom &a : plain.atoms)
    CHECK_FALSE(is_fresh_name(a.a));
}

TEST_CASE("decompression yields a valid Skolem proof") {
  KnowledgeBase kb = parse_kb("rule: A(x) -> exists y. r(x,y), B(y)\nrule: B(x) -> C(x)\nfact: A(a)\n");
  DerivationView ce = compress_el(kb);
  Costs costs = min_tree_size_dp(ce);
  int target = -1;
  for (std::size_t i = 0; i < ce.atoms.size(); ++i)
    if (sym_name(ce.atoms[i].pred) == "C")
      target = static_cast<int>(i);
  REQUIRE(target >= 0);
  ProofGraph p = decompress(compressed_proof(ce, costs, target), kb);
  const Label &sink = p.vertices[static_cast<std::size_t>(p.sink())];
  CHECK(label_str(sink) == "C(f_1(a))");
  CHECK(validate_proof(p, kb, sink.cq(), Deriver::Skolem).ok);

  ProofGraph plain = testing::running_proof();
  ProofGraph same = decompress(plain, testing::example1());
  CHECK(proof_size(same) == proof_size(plain));
}

TEST_CASE("SAT reduction decisions at the stated bounds") {
  GeneratedInstance sat = gen_sat(parse_clauses("1 2, -1"));
  GeneratedInstance unsat = gen_sat(parse_clauses("1, -1"));
  for (Measure m : {Measure::Size, Measure::DomainSize}) {
    SearchBudget b;
    b.measure = m;
    b.bound = sat.bounds.at(measure_name(m));
    CHECK(bounded_search(sat.kb, sat.query(), b).status == SearchStatus::Found);
    b.bound = unsat.bounds.at(measure_name(m));
    CHECK(bounded_search(unsat.kb, unsat.query(), b).status == SearchStatus::None);
  }
}

} // TEST_SUITE
