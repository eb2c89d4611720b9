/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "view.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "deriver_sk.hpp"

namespace omqe {
namespace {

// Maps an instantiated head atom into the view; nullopt when it is cut.
using HeadMap = std::function<std::optional<Atom>(const Atom &, const Rule &)>;

struct Builder {
  DerivationView &v;
  std::set<std::tuple<int, int, std::vector<int>, int>> seen_edges;
  std::vector<int> equalities;

  struct Pending {
    Atom conclusion;
    ViewEdge edge;
  };
  std::vector<Pending> pending;

  int add_atom(const Atom &a, bool is_fact, std::vector<int> &delta) {
    int id = v.find(a);
    if (id >= 0)
      return id;
    id = static_cast<int>(v.atoms.size());
    v.atoms.push_back(a);
    v.fact.push_back(is_fact);
    v.in.emplace_back();
    v.index.emplace(a, id);
    v.set.insert(a);
    delta.push_back(id);
    if (a.kind == AtomKind::Equality)
      equalities.push_back(id);
    return id;
  }

  void commit(std::vector<int> &delta) {
    for (Pending &p : pending) {
      int c = add_atom(p.conclusion, false, delta);
      auto key = std::make_tuple(static_cast<int>(p.edge.schema), p.edge.rule, p.edge.premises, c);
      if (!seen_edges.insert(key).second)
        continue;
      p.edge.conclusion = c;
      v.in[c].push_back(static_cast<int>(v.edges.size()));
      v.edges.push_back(std::move(p.edge));
    }
    pending.clear();
  }

  void mp_round(const std::vector<int> &delta, const HeadMap &map) {
    AtomSet dset;
    for (int id : delta)
      dset.insert(v.atoms[id]);
    for (std::size_t ri = 0; ri < v.rules.size(); ++ri) {
      const Rule &r = v.rules[ri];
      for (std::size_t pin = 0; pin < r.body.size(); ++pin) {
        std::vector<Atom> rest;
        for (std::size_t i = 0; i < r.body.size(); ++i)
          if (i != pin)
            rest.push_back(r.body[i]);
        for (const Atom &d : dset.bucket(r.body[pin].kind, r.body[pin].pred)) {
          Subst s;
          std::size_t added = 0;
          if (!unify_atom(r.body[pin], d, s, {}, added))
            continue;
          match_atoms(rest, v.set, s, [&](const Subst &m) {
            std::vector<int> prem;
            for (const Atom &b : r.body)
              prem.push_back(v.find(m.apply(b)));
            for (const Atom &h : r.head) {
              std::optional<Atom> c = map(m.apply(h), r);
              if (!c) {
                v.saturated = false;
                continue;
              }
              pending.push_back({*c, ViewEdge{Schema::MP, -1, prem, static_cast<int>(ri)}});
            }
            return true;
          });
        }
      }
    }
  }

  void e_round(const std::vector<int> &delta) {
    auto try_pair = [&](int eq, int a) {
      const Atom &e = v.atoms[eq];
      const Atom &x = v.atoms[a];
      if (x.kind == AtomKind::Equality)
        return;
      auto [from, to] = equality_orientation(e);
      if (from == to || !atom_has_top_level(x, from))
        return;
      pending.push_back({replace_top_level(x, from, to), ViewEdge{Schema::E, -1, {eq, a}, -1}});
    };
    std::set<int> dset(delta.begin(), delta.end());
    for (int id : delta) {
      if (v.atoms[id].kind == AtomKind::Equality) {
        for (std::size_t a = 0; a < v.atoms.size(); ++a)
          try_pair(id, static_cast<int>(a));
      } else {
        for (int eq : equalities)
          if (!dset.count(eq))
            try_pair(eq, id);
      }
    }
  }

  void run(const std::vector<Atom> &abox, const HeadMap &map) {
    std::vector<int> delta;
    for (const Atom &a : abox)
      add_atom(a, true, delta);
    while (!delta.empty()) {
      mp_round(delta, map);
      e_round(delta);
      delta.clear();
      commit(delta);
    }
  }
};

DerivationView build(const KnowledgeBase &kb, ViewKind kind, int depth, const HeadMap &map) {
  DerivationView v;
  v.kind = kind;
  v.depth = depth;
  v.rules = skolemize(kb.tbox);
  Builder b{v, {}, {}, {}};
  b.run(kb.abox, map);
  return v;
}

TermId compress_term(TermId t, const std::function<TermId(TermId)> &fresh) {
  return is_skolem(t) ? fresh(t) : t;
}

} // namespace

DerivationView build_sk_view(const KnowledgeBase &kb, int depth) {
  return build(kb, ViewKind::Skolem, depth, [depth](const Atom &a, const Rule &) -> std::optional<Atom> {
    if (atom_depth(a) > depth)
      return std::nullopt;
    return a;
  });
}

bool is_fresh_name(TermId t) { return is_const(t) && term_str(t).find('#') != std::string::npos; }

DerivationView compress_dllite(const KnowledgeBase &kb) {
  if (kb.fragment != Fragment::DLLiteR)
    throw InputError(std::string("compressed DL-Lite structure needs a DLLiteR KB, got ") + fragment_name(kb.fragment));
  return build(kb, ViewKind::CompressedDLLite, 0, [](const Atom &a, const Rule &r) -> std::optional<Atom> {
    if (r.form != NormalForm::IV)
      return a;
    // The fresh name stands for "some element in the range of the role".
    std::string role = sym_name(a.pred);
    Atom out = a;
    if (a.kind == AtomKind::Role && is_skolem(a.b))
      out.b = make_const("b#" + role + "-");
    else if (a.kind == AtomKind::Role && is_skolem(a.a))
      out.a = make_const("b#" + role);
    return out;
  });
}

DerivationView compress_el(const KnowledgeBase &kb) {
  if (kb.fragment != Fragment::EL && kb.fragment != Fragment::DLLiteR)
    throw InputError(std::string("compressed EL structure needs an EL or DLLiteR KB, got ") + fragment_name(kb.fragment));
  auto fresh = [](TermId t) { return make_const("c#" + sym_name(term_name(t))); };
  return build(kb, ViewKind::CompressedEL, 0, [fresh](const Atom &a, const Rule &) -> std::optional<Atom> {
    Atom out = a;
    out.a = compress_term(a.a, fresh);
    if (a.b != kNoTerm)
      out.b = compress_term(a.b, fresh);
    return out;
  });
}

int view_depth(const KnowledgeBase &kb, int entail_depth) {
  int existential = static_cast<int>(std::count_if(kb.tbox.begin(), kb.tbox.end(),
                                                   [](const Rule &r) { return !r.existentials.empty(); }));
  return std::max(entail_depth, 0) + std::min(existential, 4);
}

namespace {

Costs relax(const DerivationView &v, bool distinct_premises) {
  Costs c;
  c.value.assign(v.atoms.size(), kInf);
  c.best_edge.assign(v.atoms.size(), -1);
  for (std::size_t a = 0; a < v.atoms.size(); ++a)
    if (v.fact[a])
      c.value[a] = 1;
  bool changed = true;
  std::vector<int> prem;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < v.edges.size(); ++e) {
      const ViewEdge &ed = v.edges[e];
      if (v.fact[ed.conclusion])
        continue;
      prem = ed.premises;
      if (distinct_premises) {
        std::sort(prem.begin(), prem.end());
        prem.erase(std::unique(prem.begin(), prem.end()), prem.end());
      }
      std::uint64_t total = ed.schema == Schema::MP ? 2 : 1;
      for (int q : prem) {
        if (c.value[q] == kInf) {
          total = kInf;
          break;
        }
        total = (kInf - total <= c.value[q]) ? kInf - 1 : total + c.value[q];
      }
      if (total < c.value[ed.conclusion]) {
        c.value[ed.conclusion] = total;
        c.best_edge[ed.conclusion] = static_cast<int>(e);
        changed = true;
      }
    }
  }
  return c;
}

} // namespace

Costs min_tree_size_dp(const DerivationView &v) { return relax(v, false); }
Costs min_size_relaxation(const DerivationView &v) { return relax(v, true); }

ProofGraph assemble_proof(const DerivationView &v, const std::vector<int> &best_edge, const std::vector<int> &roots,
                          const BooleanCQ *goal, bool strict_cg) {
  ProofGraph p;
  std::vector<int> vertex(v.atoms.size(), -1);
  std::vector<int> rule_vertex(v.rules.size(), -1);
  std::vector<bool> active(v.atoms.size(), false);
  std::function<int(int)> visit = [&](int a) -> int {
    if (vertex[a] >= 0)
      return vertex[a];
    if (active[a])
      throw InputError("cyclic witness");
    active[a] = true;
    int e = v.fact[a] ? -1 : best_edge[a];
    std::vector<int> prem;
    if (e >= 0) {
      const ViewEdge &ed = v.edges[e];
      for (int q : ed.premises)
        prem.push_back(visit(q));
      if (ed.schema == Schema::MP) {
        if (rule_vertex[ed.rule] < 0)
          rule_vertex[ed.rule] = p.add_vertex(Label::of_rule(v.rules[ed.rule]));
        prem.push_back(rule_vertex[ed.rule]);
      }
    } else if (!v.fact[a]) {
      throw InputError("atom has no derivation: " + atom_str(v.atoms[a]));
    }
    int id = p.add_vertex(Label::of_atom(v.atoms[a]));
    vertex[a] = id;
    active[a] = false;
    if (e >= 0)
      p.add_edge(std::move(prem), id, v.edges[e].schema);
    return id;
  };
  std::vector<int> root_vertices;
  for (int r : roots)
    root_vertices.push_back(visit(r));
  if (goal && !omit_cg(*goal, strict_cg)) {
    std::vector<Atom> ground;
    for (int r : roots)
      ground.push_back(v.atoms[r]);
    int conj = p.add_vertex(Label::of_conjunction(ground));
    p.add_edge(root_vertices, conj, Schema::C);
    int g = p.add_vertex(Label::of_query(*goal));
    p.add_edge({conj}, g, Schema::G);
  }
  return p;
}

std::vector<Subst> view_matches(const DerivationView &v, const BooleanCQ &q, std::size_t limit) {
  std::vector<Subst> out;
  Subst s;
  match_atoms(q.atoms, v.set, s, [&](const Subst &m) {
    out.push_back(m);
    return out.size() < limit;
  });
  return out;
}

} // namespace omqe
