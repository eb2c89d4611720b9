/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "normalize.hpp"

#include <algorithm>
#include <set>

#include "parser.hpp"

namespace omqe {
namespace {

class Normalizer {
public:
  explicit Normalizer(const KnowledgeBase &kb) {
    for (const Rule &r : kb.tbox)
      for (const auto *side : {&r.body, &r.head})
        for (const Atom &a : *side)
          taken_.insert(sym_name(a.pred));
    for (const Atom &a : kb.abox)
      taken_.insert(sym_name(a.pred));
  }

  void add(Rule r) {
    if (r.head.empty() || r.body.empty())
      throw InputError("cannot normalize rule with an empty side: " + rule_str(r));
    if (r.head.size() == 1 && r.head[0].kind == AtomKind::Equality) {
      emit_with_body(std::move(r), r.head[0].a);
      return;
    }
    std::vector<Atom> plain;
    for (const Atom &h : r.head) {
      bool existential = std::any_of(r.existentials.begin(), r.existentials.end(),
                                     [&](TermId y) { return h.a == y || h.b == y; });
      if (!existential)
        plain.push_back(h);
    }
    for (TermId y : r.existentials)
      add_existential(r, y);
    for (const Atom &h : plain) {
      Rule s;
      s.body = r.body;
      s.head = {h};
      if (h.kind == AtomKind::Concept)
        emit_with_body(std::move(s), h.a);
      else
        out_.push_back(std::move(s));
    }
  }

  std::vector<Rule> take() { return std::move(out_); }

private:
  Sym fresh() {
    for (;;) {
      std::string n = "N" + std::to_string(++counter_);
      if (taken_.insert(n).second)
        return intern(n);
    }
  }

  void add_existential(const Rule &r, TermId y) {
    const Atom *role = nullptr;
    std::vector<Atom> concepts;
    for (const Atom &h : r.head) {
      if (h.kind == AtomKind::Role && (h.a == y || h.b == y)) {
        if (role)
          throw InputError("cannot normalize: two role atoms on one existential variable: " + rule_str(r));
        role = &h;
      } else if (h.kind == AtomKind::Concept && h.a == y) {
        concepts.push_back(h);
      }
    }
    if (!role)
      throw InputError("cannot normalize: existential variable without a role atom: " + rule_str(r));
    TermId x = role->a == y ? role->b : role->a;
    Rule s;
    s.body = r.body;
    s.existentials = {y};
    s.head = {*role};
    if (concepts.size() == 1) {
      s.head.push_back(concepts[0]);
    } else if (concepts.size() > 1) {
      Sym n = fresh();
      s.head.push_back(concept_atom(n, y));
      TermId v = make_var("x");
      for (const Atom &c : concepts) {
        Rule t;
        t.body = {concept_atom(n, v)};
        t.head = {concept_atom(c.pred, v)};
        out_.push_back(std::move(t));
      }
    }
    emit_with_body(std::move(s), x);
  }

  // Folds every branch below the centre that has further role atoms into a
  // fresh concept on the branch root.
  void emit_with_body(Rule r, TermId centre) {
    std::size_t roles = std::count_if(r.body.begin(), r.body.end(), [](const Atom &a) { return a.kind == AtomKind::Role; });
    std::vector<TermId> vars = atom_vars(r.body);
    if (!std::count(vars.begin(), vars.end(), centre))
      vars.push_back(centre);
    if (branch(r.body, centre, kNoTerm).size() != r.body.size() || roles + 1 != vars.size())
      throw InputError("cannot normalize: body is not a tree around its centre variable: " + rule_str(r));
    r.body = fold(r.body, centre, kNoTerm);
    out_.push_back(std::move(r));
  }

  std::vector<Atom> fold(const std::vector<Atom> &body, TermId centre, TermId parent) {
    std::vector<Atom> kept;
    std::vector<std::pair<Atom, TermId>> edges;
    for (const Atom &a : body) {
      if (a.kind == AtomKind::Role && (a.a == centre || a.b == centre)) {
        TermId other = a.a == centre ? a.b : a.a;
        if (other != parent)
          edges.emplace_back(a, other);
      } else if (a.kind == AtomKind::Concept && a.a == centre) {
        kept.push_back(a);
      }
    }
    for (auto &[edge, leaf] : edges) {
      std::vector<Atom> sub = branch(body, leaf, centre);
      bool deep = std::any_of(sub.begin(), sub.end(), [](const Atom &a) { return a.kind == AtomKind::Role; });
      kept.push_back(edge);
      if (!deep) {
        kept.insert(kept.end(), sub.begin(), sub.end());
        continue;
      }
      Sym n = fresh();
      Rule s;
      s.body = fold(sub, leaf, kNoTerm);
      s.head = {concept_atom(n, leaf)};
      out_.push_back(std::move(s));
      kept.push_back(concept_atom(n, leaf));
    }
    return kept;
  }

  // Atoms reachable from `root` without passing through `block`.
  std::vector<Atom> branch(const std::vector<Atom> &body, TermId root, TermId block) {
    std::vector<Atom> out;
    std::set<TermId> seen = {block, root};
    std::vector<TermId> todo = {root};
    std::vector<bool> used(body.size(), false);
    while (!todo.empty()) {
      TermId t = todo.back();
      todo.pop_back();
      for (std::size_t i = 0; i < body.size(); ++i) {
        const Atom &a = body[i];
        if (used[i] || !(a.a == t || a.b == t))
          continue;
        if (a.kind == AtomKind::Role && (a.a == block || a.b == block))
          continue;
        used[i] = true;
        out.push_back(a);
        for (TermId u : {a.a, a.b})
          if (u != kNoTerm && seen.insert(u).second)
            todo.push_back(u);
      }
    }
    return out;
  }

  std::set<std::string> taken_;
  std::vector<Rule> out_;
  int counter_ = 0;
};

} // namespace

KnowledgeBase normalize_kb(std::string_view text) {
  KnowledgeBase in = parse_kb_lenient(text);
  Normalizer n(in);
  for (const Rule &r : in.tbox)
    n.add(r);
  KnowledgeBase out;
  out.tbox = n.take();
  out.abox = in.abox;
  out.query = in.query;
  for (std::size_t i = 0; i < out.tbox.size(); ++i) {
    out.tbox[i].index = static_cast<int>(i) + 1;
    classify_rule(out.tbox[i]);
  }
  finalize_kb(out);
  return out;
}

} // namespace omqe
