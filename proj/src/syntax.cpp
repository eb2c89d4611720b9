/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "syntax.hpp"

#include <algorithm>

namespace omqe {

Atom concept_atom(Sym pred, TermId t) { return Atom{AtomKind::Concept, pred, t, kNoTerm}; }
Atom role_atom(Sym pred, TermId s, TermId t) { return Atom{AtomKind::Role, pred, s, t}; }
Atom equality_atom(TermId lhs, TermId rhs) { return Atom{AtomKind::Equality, intern("="), lhs, rhs}; }

std::string atom_str(const Atom &a) {
  switch (a.kind) {
  case AtomKind::Concept:
    return sym_name(a.pred) + "(" + term_str(a.a) + ")";
  case AtomKind::Role:
    return sym_name(a.pred) + "(" + term_str(a.a) + "," + term_str(a.b) + ")";
  case AtomKind::Equality:
    return term_str(a.a) + " = " + term_str(a.b);
  }
  return {};
}

bool atom_ground(const Atom &a) {
  return term_ground(a.a) && (a.b == kNoTerm || term_ground(a.b));
}

int atom_depth(const Atom &a) {
  int d = term_depth(a.a);
  if (a.b != kNoTerm)
    d = std::max(d, term_depth(a.b));
  return d;
}

bool atom_less(const Atom &x, const Atom &y) {
  if (x.kind != y.kind)
    return x.kind < y.kind;
  if (x.pred != y.pred)
    return sym_name(x.pred) < sym_name(y.pred);
  if (x.a != y.a)
    return term_less(x.a, y.a);
  if (x.b == y.b)
    return false;
  if (x.b == kNoTerm || y.b == kNoTerm)
    return x.b == kNoTerm;
  return term_less(x.b, y.b);
}

bool atom_has_top_level(const Atom &a, TermId t) { return a.a == t || a.b == t; }

TermId Subst::apply(TermId t) const {
  switch (term_kind(t)) {
  case TermKind::Variable: {
    TermId v = get(t);
    return v == kNoTerm ? t : v;
  }
  case TermKind::Skolem: {
    TermId a = term_arg(t);
    TermId r = apply(a);
    return r == a ? t : make_skolem(term_name(t), r);
  }
  default:
    return t;
  }
}

Atom Subst::apply(const Atom &a) const {
  Atom r = a;
  r.a = apply(a.a);
  if (a.b != kNoTerm)
    r.b = apply(a.b);
  return r;
}

const char *normal_form_name(NormalForm f) {
  static const char *names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
  return names[static_cast<int>(f)];
}

namespace {

std::string join_atoms(const std::vector<Atom> &atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i)
      out += ", ";
    out += atom_str(atoms[i]);
  }
  return out;
}

std::string quantifier(const std::vector<TermId> &vars) {
  if (vars.empty())
    return {};
  std::string out = "exists ";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i)
      out += ", ";
    out += term_str(vars[i]);
  }
  return out + ". ";
}

} // namespace

std::string rule_str(const Rule &r) {
  return join_atoms(r.body) + " -> " + quantifier(r.existentials) + join_atoms(r.head);
}

std::vector<TermId> atom_vars(const std::vector<Atom> &atoms) {
  std::vector<TermId> out;
  auto add = [&](TermId t) {
    while (t != kNoTerm) {
      if (is_var(t)) {
        if (std::find(out.begin(), out.end(), t) == out.end())
          out.push_back(t);
        return;
      }
      t = term_arg(t);
    }
  };
  for (const Atom &a : atoms) {
    add(a.a);
    if (a.b != kNoTerm)
      add(a.b);
  }
  return out;
}

std::string cq_str(const BooleanCQ &q) { return quantifier(q.vars) + join_atoms(q.atoms); }
std::string conjunction_str(const std::vector<Atom> &atoms) { return join_atoms(atoms); }

const char *fragment_name(Fragment f) {
  static const char *names[] = {"DLLiteR", "EL", "HornALC", "HornALCHOI"};
  return names[static_cast<int>(f)];
}

std::optional<Fragment> fragment_from_name(const std::string &s) {
  for (Fragment f : {Fragment::DLLiteR, Fragment::EL, Fragment::HornALC, Fragment::HornALCHOI})
    if (s == fragment_name(f))
      return f;
  return std::nullopt;
}

std::string serialize_kb(const KnowledgeBase &kb) {
  std::string out;
  for (const Rule &r : kb.tbox)
    out += "rule: " + rule_str(r) + "\n";
  for (const Atom &a : kb.abox)
    out += "fact: " + atom_str(a) + "\n";
  if (kb.query)
    out += "query: " + cq_str(*kb.query) + "\n";
  return out;
}

} // namespace omqe
