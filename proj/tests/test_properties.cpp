/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "doctest.h"

#include <random>

#include "deriver_cq.hpp"
#include "oracle.hpp"
#include "search.hpp"
#include "support.hpp"
#include "validate.hpp"

using namespace omqe;

namespace {

struct Case {
  KnowledgeBase kb;
  BooleanCQ q;
};

bool has_equality_rule(const KnowledgeBase &kb) {
  for (const Rule &r : kb.tbox)
    if (r.head.front().kind == AtomKind::Equality)
      return true;
  return false;
}

// Random KB plus a query read off its chase: one or two atoms sharing a
// term, Skolem terms turned into variables.
std::optional<Case> random_case(std::mt19937 &rng) {
  KnowledgeBase kb;
  try {
    kb = parse_kb(testing::random_kb_text(rng));
  } catch (const std::exception &) {
    return std::nullopt;
  }
  ChaseState st = chase(kb, 2);
  const auto &all = st.atoms.all();
  std::vector<Atom> pick;
  for (const Atom &a : all)
    if (a.kind != AtomKind::Equality)
      pick.push_back(a);
  if (pick.empty())
    return std::nullopt;
  std::uniform_int_distribution<std::size_t> d(0, pick.size() - 1);
  std::vector<Atom> atoms = {pick[d(rng)]};
  Atom second = pick[d(rng)];
  if (second != atoms[0] && (second.a == atoms[0].a || second.a == atoms[0].b))
    atoms.push_back(second);
  std::map<TermId, TermId> to_var;
  std::vector<TermId> vars;
  auto var_of = [&](TermId t) {
    if (t == kNoTerm || !is_skolem(t))
      return t;
    auto [it, fresh] = to_var.emplace(t, kNoTerm);
    if (fresh) {
      it->second = make_var("v" + std::to_string(vars.size()));
      vars.push_back(it->second);
    }
    return it->second;
  };
  for (Atom &a : atoms) {
    a.a = var_of(a.a);
    a.b = var_of(a.b);
  }
  return Case{kb, BooleanCQ{atoms, vars}};
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("random KBs: optimal proofs validate and measures are consistent") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int attempt = 0; attempt < 2000 && checked < 150; ++attempt) {
    auto c = random_case(rng);
    if (!c || entails(c->kb, c->q).verdict != Verdict::Yes)
      continue;
    ++checked;
    std::string ctx = serialize_kb(c->kb) + "query: " + cq_str(c->q);
    SearchBudget b;
    b.max_nodes = 200000;
    b.measure = Measure::Size;
    SearchResult size = bounded_search(c->kb, c->q, b);
    b.measure = Measure::TreeSize;
    SearchResult tree = bounded_search(c->kb, c->q, b);
    REQUIRE_MESSAGE(size.status == SearchStatus::Found, ctx);
    REQUIRE_MESSAGE(tree.status == SearchStatus::Found, ctx);
    CHECK_MESSAGE(size.value <= tree.value, ctx);
    CHECK_MESSAGE(proof_size(*size.proof) <= proof_tree_size(*size.proof), ctx);
    CHECK_MESSAGE(proof_size(tree_unravel(*tree.proof)) == proof_tree_size(*tree.proof), ctx);
    if (!has_equality_rule(c->kb))
      CHECK_MESSAGE(tree.value == testing::oracle_tree_size(c->kb, c->q), ctx);
    for (const SearchResult *r : {&size, &tree}) {
      Validation v = validate_proof(*r->proof, c->kb, c->q, Deriver::Skolem);
      CHECK_MESSAGE(v.ok, ctx << "\n" << (v.ok ? "" : v.diagnostics.front()));
    }

    ProofGraph cq = transform_sk_to_cq(*tree.proof, c->kb, c->q);
    Validation vc = validate_proof(cq, c->kb, c->q, Deriver::CQ);
    CHECK_MESSAGE(vc.ok, ctx << "\n" << (vc.ok ? "" : vc.diagnostics.front()));
    if (vc.ok) {
      ProofGraph back = transform_cq_to_sk(cq, c->kb, c->q);
      Validation vb = validate_proof(back, c->kb, c->q, Deriver::Skolem);
      CHECK_MESSAGE(vb.ok, ctx << "\n" << (vb.ok ? "" : vb.diagnostics.front()));
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("random KBs: chase is monotone in the depth bound") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    KnowledgeBase kb;
    try {
      kb = parse_kb(testing::random_kb_text(rng));
    } catch (const std::exception &) {
      continue;
    }
    ChaseState prev = chase(kb, 0);
    for (int d = 1; d <= 3; ++d) {
      ChaseState cur = chase(kb, d);
      for (const Atom &a : prev.atoms.all()) {
        Atom c = a;
        for (auto [from, to] : cur.equalities) {
          c.a = replace_deep(c.a, from, to);
          if (c.b != kNoTerm)
            c.b = replace_deep(c.b, from, to);
        }
        CHECK(cur.atoms.contains(c));
      }
      for (const Atom &a : cur.atoms.all())
        CHECK(atom_depth(a) <= d);
      if (prev.saturated_at_bound)
        CHECK(cur.atoms.size() == prev.atoms.size());
      prev = std::move(cur);
    }
  }
}

TEST_CASE("unique-label restriction keeps optima") {
  std::mt19937 rng(23);
  int checked = 0;
  for (int attempt = 0; attempt < 1000 && checked < 60; ++attempt) {
    auto c = random_case(rng);
    if (!c || entails(c->kb, c->q).verdict != Verdict::Yes)
      continue;
    ++checked;
    for (Measure m : {Measure::Size, Measure::TreeSize}) {
      SearchBudget b;
      b.measure = m;
      b.max_nodes = 200000;
      SearchResult u = bounded_search(c->kb, c->q, b);
      b.unique_labels = false;
      SearchResult a = bounded_search(c->kb, c->q, b);
      if (u.optimal && a.optimal)
        CHECK(u.value == a.value);
    }
  }
}

} // TEST_SUITE
