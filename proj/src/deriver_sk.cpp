/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "deriver_sk.hpp"

#include <algorithm>

namespace omqe {

std::vector<InferenceInstance> mp_instances(const AtomSet &atoms, const std::vector<Rule> &rules) {
  std::vector<InferenceInstance> out;
  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    const Rule &r = rules[ri];
    Subst s;
    match_atoms(r.body, atoms, s, [&](const Subst &m) {
      std::vector<Label> prem;
      for (const Atom &b : r.body)
        prem.push_back(Label::of_atom(m.apply(b)));
      prem.push_back(Label::of_rule(r));
      for (const Atom &h : r.head) {
        InferenceInstance inst;
        inst.schema = Schema::MP;
        inst.premises = prem;
        inst.conclusion = Label::of_atom(m.apply(h));
        inst.witness = m;
        inst.rule = static_cast<int>(ri);
        out.push_back(std::move(inst));
      }
      return true;
    });
  }
  return out;
}

std::pair<TermId, TermId> equality_orientation(const Atom &eq) {
  if (is_const(eq.a) && !is_const(eq.b))
    return {eq.b, eq.a};
  return {eq.a, eq.b};
}

Atom replace_top_level(const Atom &a, TermId from, TermId to) {
  Atom r = a;
  if (r.a == from)
    r.a = to;
  if (r.b == from)
    r.b = to;
  return r;
}

std::vector<InferenceInstance> e_instances(const AtomSet &atoms) {
  std::vector<InferenceInstance> out;
  for (const Atom &eq : atoms.all()) {
    if (eq.kind != AtomKind::Equality)
      continue;
    auto [from, to] = equality_orientation(eq);
    if (from == to)
      continue;
    for (const Atom &a : atoms.all()) {
      if (a.kind == AtomKind::Equality || !atom_has_top_level(a, from))
        continue;
      InferenceInstance inst;
      inst.schema = Schema::E;
      inst.premises = {Label::of_atom(eq), Label::of_atom(a)};
      inst.conclusion = Label::of_atom(replace_top_level(a, from, to));
      out.push_back(std::move(inst));
    }
  }
  return out;
}

CGPair cg_for(const BooleanCQ &goal, const Subst &sigma) {
  CGPair cg;
  cg.sigma = sigma;
  std::vector<Atom> ground;
  for (const Atom &a : goal.atoms)
    ground.push_back(sigma.apply(a));
  cg.conjunction.schema = Schema::C;
  for (const Atom &a : ground)
    cg.conjunction.premises.push_back(Label::of_atom(a));
  cg.conjunction.conclusion = Label::of_conjunction(ground);
  cg.generalization.schema = Schema::G;
  cg.generalization.premises = {cg.conjunction.conclusion};
  cg.generalization.conclusion = Label::of_query(goal);
  cg.generalization.witness = sigma;
  return cg;
}

CGPair cg_instances(const AtomSet &atoms, const BooleanCQ &goal) {
  std::optional<Subst> m = match_one(goal.atoms, atoms);
  if (!m)
    throw InputError("no match of the goal in the given atoms");
  return cg_for(goal, *m);
}

bool omit_cg(const BooleanCQ &goal, bool strict_cg) {
  return !strict_cg && goal.vars.empty() && goal.atoms.size() == 1;
}

namespace {

bool all_atoms(const std::vector<Label> &ls) {
  return std::all_of(ls.begin(), ls.end(), [](const Label &l) { return l.kind == LabelKind::Atom; });
}

bool check_mp(const std::vector<Label> &premises, const Label &conclusion, const std::vector<Rule> &rules) {
  if (conclusion.kind != LabelKind::Atom)
    return false;
  int rule_pos = -1;
  std::vector<Atom> given;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (premises[i].kind == LabelKind::Rule) {
      if (rule_pos >= 0)
        return false;
      rule_pos = static_cast<int>(i);
    } else if (premises[i].kind == LabelKind::Atom) {
      given.push_back(premises[i].atoms.front());
    } else {
      return false;
    }
  }
  if (rule_pos < 0)
    return false;
  const Rule &r = premises[rule_pos].rule;
  if (std::find(rules.begin(), rules.end(), r) == rules.end())
    return false;
  if (given.size() != r.body.size())
    return false;
  std::vector<Atom> sorted_given = given;
  std::sort(sorted_given.begin(), sorted_given.end(), atom_less);
  AtomSet data = make_atom_set(given);
  bool ok = false;
  Subst s;
  match_atoms(r.body, data, s, [&](const Subst &m) {
    std::vector<Atom> img;
    for (const Atom &b : r.body)
      img.push_back(m.apply(b));
    std::sort(img.begin(), img.end(), atom_less);
    if (img != sorted_given)
      return true;
    for (const Atom &h : r.head)
      if (m.apply(h) == conclusion.atoms.front()) {
        ok = true;
        return false;
      }
    return true;
  });
  return ok;
}

bool check_e(const std::vector<Label> &premises, const Label &conclusion) {
  if (premises.size() != 2 || !all_atoms(premises) || conclusion.kind != LabelKind::Atom)
    return false;
  for (int k = 0; k < 2; ++k) {
    const Atom &eq = premises[k].atoms.front();
    const Atom &a = premises[1 - k].atoms.front();
    if (eq.kind != AtomKind::Equality || a.kind == AtomKind::Equality)
      continue;
    auto [from, to] = equality_orientation(eq);
    if (from != to && atom_has_top_level(a, from) && replace_top_level(a, from, to) == conclusion.atoms.front())
      return true;
  }
  return false;
}

bool check_c(const std::vector<Label> &premises, const Label &conclusion) {
  if (premises.empty() || !all_atoms(premises) || conclusion.kind != LabelKind::Conjunction)
    return false;
  if (conclusion.atoms.size() != premises.size())
    return false;
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (!(premises[i].atoms.front() == conclusion.atoms[i]) || !atom_ground(conclusion.atoms[i]))
      return false;
  return true;
}

bool check_g(const std::vector<Label> &premises, const Label &conclusion, const BooleanCQ *goal) {
  if (premises.size() != 1 || premises[0].kind != LabelKind::Conjunction || conclusion.kind != LabelKind::Query)
    return false;
  if (goal && !(conclusion == Label::of_query(*goal)))
    return false;
  const std::vector<Atom> &conj = premises[0].atoms;
  const std::vector<Atom> &pat = conclusion.atoms;
  if (conj.size() != pat.size())
    return false;
  Subst s;
  const std::vector<TermId> &vars = conclusion.vars;
  BindablePred bindable = [&](TermId t) { return std::find(vars.begin(), vars.end(), t) != vars.end(); };
  for (std::size_t i = 0; i < pat.size(); ++i) {
    std::size_t added = 0;
    if (!unify_atom(pat[i], conj[i], s, bindable, added))
      return false;
  }
  return true;
}

} // namespace

bool check_sk_edge(Schema schema, const std::vector<Label> &premises, const Label &conclusion,
                   const std::vector<Rule> &rules, const BooleanCQ *goal) {
  switch (schema) {
  case Schema::MP: return check_mp(premises, conclusion, rules);
  case Schema::E: return check_e(premises, conclusion);
  case Schema::C: return check_c(premises, conclusion);
  case Schema::G: return check_g(premises, conclusion, goal);
  default: return false;
  }
}

} // namespace omqe
