/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "validate.hpp"

#include <algorithm>

#include "chase.hpp"
#include "deriver_cq.hpp"
#include "deriver_sk.hpp"

namespace omqe {

const char *deriver_name(Deriver d) { return d == Deriver::Skolem ? "sk" : "cq"; }

std::optional<Deriver> deriver_from_name(const std::string &s) {
  if (s == "sk")
    return Deriver::Skolem;
  if (s == "cq")
    return Deriver::CQ;
  return std::nullopt;
}

namespace {

bool sk_leaf_ok(const Label &l, const KnowledgeBase &kb, const std::vector<Rule> &rules) {
  if (l.kind == LabelKind::Atom)
    return std::find(kb.abox.begin(), kb.abox.end(), l.atoms[0]) != kb.abox.end();
  if (l.kind == LabelKind::Rule)
    return std::find(rules.begin(), rules.end(), l.rule) != rules.end();
  return false;
}

bool cq_leaf_ok(const Label &l, const KnowledgeBase &kb) {
  if (l.kind == LabelKind::Query)
    return l.atoms.size() == 1 && l.vars.empty() && atom_ground(l.atoms[0]) &&
           std::find(kb.abox.begin(), kb.abox.end(), l.atoms[0]) != kb.abox.end();
  if (l.kind == LabelKind::Rule)
    return std::find(kb.tbox.begin(), kb.tbox.end(), l.rule) != kb.tbox.end();
  return false;
}

} // namespace

Validation validate_proof(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal, Deriver d,
                          bool strict_cg) {
  Validation v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.diagnostics.push_back(std::move(msg));
  };
  if (std::string s = structural_violation(p); !s.empty()) {
    fail(s);
    return v;
  }
  std::vector<Rule> rules = skolemize(kb.tbox);
  int sink = p.sink();
  const Label &top = p.vertices[sink];
  if (d == Deriver::Skolem) {
    Label want = omit_cg(goal, strict_cg) ? Label::of_atom(goal.atoms[0]) : Label::of_query(goal);
    bool ok = top == want || (top.kind == LabelKind::Query && top.cq().atoms == goal.atoms &&
                              std::is_permutation(top.vars.begin(), top.vars.end(), goal.vars.begin(), goal.vars.end()));
    if (!ok)
      fail("sink " + label_str(top) + " is not the goal");
  } else if (top.kind != LabelKind::Query || !cq_isomorphic(top.cq(), goal)) {
    fail("sink " + label_str(top) + " is not the goal");
  }
  std::vector<int> incoming = p.incoming();
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (incoming[i] >= 0)
      continue;
    const Label &l = p.vertices[i];
    bool ok = d == Deriver::Skolem ? sk_leaf_ok(l, kb, rules) : cq_leaf_ok(l, kb);
    if (!ok)
      fail("leaf not in K: " + label_str(l));
  }
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge &e = p.edges[i];
    std::vector<Label> prem;
    for (int u : e.premises)
      prem.push_back(p.vertices[u]);
    const Label &c = p.vertices[e.conclusion];
    bool ok = d == Deriver::Skolem ? is_sk_schema(e.schema) && check_sk_edge(e.schema, prem, c, rules, &goal)
                                   : !is_sk_schema(e.schema) && check_cq_edge(e.schema, prem, c, kb.tbox);
    if (!ok)
      fail(std::string("edge ") + std::to_string(i) + " is not an instance of " + schema_name(e.schema) + ": " +
           label_str(c));
  }
  return v;
}

} // namespace omqe
