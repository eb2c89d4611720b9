/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "chase.hpp"

#include <algorithm>
#include <string>

namespace omqe {

Sym skolem_symbol(int rule_index) { return intern("f_" + std::to_string(rule_index)); }

std::vector<Rule> skolemize(const std::vector<Rule> &tbox) {
  std::vector<Rule> out;
  out.reserve(tbox.size());
  for (const Rule &r : tbox) {
    Rule s = r;
    if (!r.existentials.empty()) {
      // The frontier is the head variable that also occurs in the body.
      std::vector<TermId> body_vars = atom_vars(r.body);
      TermId frontier = kNoTerm;
      for (const Atom &a : r.head)
        for (TermId t : {a.a, a.b})
          if (t != kNoTerm && std::find(body_vars.begin(), body_vars.end(), t) != body_vars.end())
            frontier = t;
      Subst sub;
      Sym f = skolem_symbol(r.index);
      for (TermId y : r.existentials)
        sub.set(y, make_skolem(f, frontier));
      for (Atom &a : s.head)
        a = sub.apply(a);
      s.existentials.clear();
      s.skolemized = true;
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Head instances of rule r under body match m. Returns false if any head
// atom was suppressed by the depth bound.
bool fire(const Rule &r, const Subst &m, int bound, std::vector<Atom> &out) {
  bool ok = true;
  for (const Atom &h : r.head) {
    Atom g = m.apply(h);
    if (atom_depth(g) > bound) {
      ok = false;
      continue;
    }
    out.push_back(g);
  }
  return ok;
}

Atom replace_in_atom(const Atom &a, TermId from, TermId to) {
  Atom r = a;
  r.a = replace_deep(a.a, from, to);
  if (a.b != kNoTerm)
    r.b = replace_deep(a.b, from, to);
  return r;
}

} // namespace

ChaseState chase(const KnowledgeBase &kb, int depth_bound) {
  ChaseState st;
  st.depth_bound = depth_bound;
  std::vector<Rule> rules = skolemize(kb.tbox);
  std::vector<Atom> delta;
  for (const Atom &a : kb.abox)
    if (st.atoms.insert(a))
      delta.push_back(a);

  // Semi-naive rounds: each match must use at least one atom from delta.
  while (!delta.empty()) {
    AtomSet delta_set = make_atom_set(delta);
    std::vector<Atom> produced;
    std::vector<std::pair<TermId, TermId>> eqs;
    for (const Rule &r : rules) {
      for (std::size_t pin = 0; pin < r.body.size(); ++pin) {
        for (const Atom &d : delta_set.bucket(r.body[pin].kind, r.body[pin].pred)) {
          Subst s;
          std::size_t added = 0;
          if (!unify_atom(r.body[pin], d, s, {}, added))
            continue;
          std::vector<Atom> rest;
          for (std::size_t i = 0; i < r.body.size(); ++i)
            if (i != pin)
              rest.push_back(r.body[i]);
          match_atoms(rest, st.atoms, s, [&](const Subst &m) {
            std::vector<Atom> heads;
            if (!fire(r, m, depth_bound, heads))
              st.saturated_at_bound = false;
            for (Atom h : heads) {
              for (auto [f, t] : st.equalities)
                h = replace_in_atom(h, f, t);
              if (h.kind == AtomKind::Equality) {
                if (h.a != h.b)
                  eqs.emplace_back(h.a, h.b);
              } else {
                produced.push_back(h);
              }
            }
            return true;
          });
        }
      }
    }
    delta.clear();
    for (const Atom &a : produced)
      if (st.atoms.insert(a))
        delta.push_back(a);
    if (eqs.empty())
      continue;
    // Apply equalities globally, complex term replaced by the constant.
    for (auto [lhs, rhs] : eqs) {
      TermId from = lhs, to = rhs;
      if (is_const(from) && !is_const(to))
        std::swap(from, to);
      for (auto [f, t] : st.equalities) {
        from = replace_deep(from, f, t);
        to = replace_deep(to, f, t);
      }
      if (is_const(from) && !is_const(to))
        std::swap(from, to);
      if (from == to)
        continue;
      st.equalities.emplace_back(from, to);
      AtomSet next;
      for (const Atom &a : st.atoms.all())
        next.insert(replace_in_atom(a, from, to));
      st.atoms = std::move(next);
    }
    // Everything may now match differently; restart from the full set.
    delta = st.atoms.all();
  }
  return st;
}

std::vector<Subst> match_query(const BooleanCQ &q, const ChaseState &state, std::size_t limit) {
  std::vector<Subst> out;
  if (limit == 0)
    return out;
  Subst s;
  match_atoms(q.atoms, state.atoms, s, [&](const Subst &m) {
    out.push_back(m);
    return out.size() < limit;
  });
  return out;
}

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Yes: return "yes";
  case Verdict::No: return "no";
  default: return "unknown";
  }
}

int default_depth_ceiling(const KnowledgeBase &kb, const BooleanCQ &q) {
  return static_cast<int>(kb.tbox.size() * (q.atoms.size() + 1)) + 2;
}

Entailment entails(const KnowledgeBase &kb, const BooleanCQ &q, int ceiling) {
  if (ceiling < 0)
    ceiling = default_depth_ceiling(kb, q);
  Entailment e;
  for (int d = 0; d <= ceiling; ++d) {
    ChaseState st = chase(kb, d);
    std::vector<Subst> m = match_query(q, st, 1);
    e.depth = d;
    if (!m.empty()) {
      e.verdict = Verdict::Yes;
      e.match = m.front();
      return e;
    }
    if (st.saturated_at_bound) {
      e.verdict = Verdict::No;
      return e;
    }
  }
  e.verdict = Verdict::Unknown;
  return e;
}

} // namespace omqe
