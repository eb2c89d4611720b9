/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "deriver_cq.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "chase.hpp"
#include "deriver_sk.hpp"
#include "matcher.hpp"
#include "view.hpp"

namespace omqe {
namespace {

std::vector<Atom> dedupe(const std::vector<Atom> &atoms) {
  std::vector<Atom> out;
  for (const Atom &a : atoms)
    if (std::find(out.begin(), out.end(), a) == out.end())
      out.push_back(a);
  return out;
}

bool contains(const std::vector<TermId> &v, TermId t) { return std::find(v.begin(), v.end(), t) != v.end(); }

std::set<TermId> vars_of(const std::vector<Atom> &atoms) {
  std::vector<TermId> v = atom_vars(atoms);
  return {v.begin(), v.end()};
}

Atom subst_atom(const Atom &a, TermId from, TermId to) {
  Atom r = a;
  if (r.a == from)
    r.a = to;
  if (r.b == from)
    r.b = to;
  return r;
}

} // namespace

BooleanCQ cq_normalize(const BooleanCQ &q) {
  BooleanCQ out;
  out.atoms = dedupe(q.atoms);
  std::vector<TermId> occurring = atom_vars(out.atoms);
  for (TermId v : q.vars)
    if (contains(occurring, v) && !contains(out.vars, v))
      out.vars.push_back(v);
  for (TermId v : occurring)
    if (!contains(out.vars, v))
      out.vars.push_back(v);
  return out;
}

bool cq_isomorphic(const BooleanCQ &x, const BooleanCQ &y) {
  BooleanCQ a = cq_normalize(x), b = cq_normalize(y);
  if (a.atoms.size() != b.atoms.size() || a.vars.size() != b.vars.size())
    return false;
  AtomSet target = make_atom_set(b.atoms);
  bool ok = false;
  Subst s;
  BindablePred bindable = [&](TermId t) { return contains(a.vars, t); };
  match_atoms(a.atoms, target, s, [&](const Subst &m) {
    std::set<TermId> images;
    for (auto &[v, t] : m.entries()) {
      if (!is_var(t) || !images.insert(t).second)
        return true;
    }
    std::vector<Atom> img;
    for (const Atom &at : a.atoms)
      img.push_back(m.apply(at));
    if (dedupe(img).size() != b.atoms.size())
      return true;
    ok = true;
    return false;
  }, bindable);
  return ok;
}

TermId fresh_variable(std::set<TermId> &used, const std::string &prefix) {
  for (int k = 1;; ++k) {
    TermId v = make_var(prefix + std::to_string(k));
    if (!used.count(v)) {
      used.insert(v);
      return v;
    }
  }
}

BooleanCQ mpe_apply(const BooleanCQ &cq, const Rule &rule, const Subst &pi, const std::vector<Atom> &replace,
                    const std::vector<std::size_t> &keep_head) {
  std::vector<Atom> body_img;
  for (const Atom &b : rule.body)
    body_img.push_back(pi.apply(b));
  for (const Atom &b : body_img)
    if (std::find(cq.atoms.begin(), cq.atoms.end(), b) == cq.atoms.end())
      throw InputError("MPe: substitution is not a match of the rule body");
  for (const Atom &r : replace)
    if (std::find(body_img.begin(), body_img.end(), r) == body_img.end())
      throw InputError("MPe: replaced atom is not part of the matched body");
  std::set<TermId> used = vars_of(cq.atoms);
  for (TermId v : atom_vars(rule.body))
    used.insert(v);
  Subst ext = pi;
  for (TermId w : rule.existentials)
    ext.set(w, fresh_variable(used));
  BooleanCQ out;
  for (const Atom &a : cq.atoms)
    if (std::find(replace.begin(), replace.end(), a) == replace.end())
      out.atoms.push_back(a);
  for (std::size_t k : keep_head) {
    if (k >= rule.head.size())
      throw InputError("MPe: head index out of range");
    out.atoms.push_back(ext.apply(rule.head[k]));
  }
  out.vars = cq.vars;
  return cq_normalize(out);
}

Rule te_rule(const std::vector<Atom> &pattern, const std::vector<TermId> &vars_to_duplicate) {
  Rule r;
  r.body = pattern;
  r.head = pattern;
  r.existentials = vars_to_duplicate;
  r.index = 0;
  return r;
}

bool is_tautology(const Rule &r) {
  if (r.body.empty() || !(r.body == r.head))
    return false;
  std::vector<TermId> vars = atom_vars(r.body);
  for (const Atom &a : r.body)
    for (TermId t : {a.a, a.b})
      if (t != kNoTerm && !is_var(t))
        return false;
  for (TermId v : r.existentials)
    if (!contains(vars, v))
      return false;
  return true;
}

BooleanCQ ee_apply(const BooleanCQ &cq, std::size_t eq_index) {
  if (eq_index >= cq.atoms.size() || cq.atoms[eq_index].kind != AtomKind::Equality)
    throw InputError("Ee: no equality conjunct at the given position");
  TermId from = cq.atoms[eq_index].a, to = cq.atoms[eq_index].b;
  BooleanCQ out;
  for (std::size_t i = 0; i < cq.atoms.size(); ++i)
    if (i != eq_index)
      out.atoms.push_back(subst_atom(cq.atoms[i], from, to));
  out.vars = cq.vars;
  return cq_normalize(out);
}

BooleanCQ ce_apply(const BooleanCQ &a, const BooleanCQ &b) {
  std::set<TermId> used = vars_of(a.atoms);
  Subst ren;
  for (TermId v : atom_vars(b.atoms))
    ren.set(v, used.count(v) ? fresh_variable(used) : (used.insert(v), v));
  BooleanCQ out = a;
  for (const Atom &x : b.atoms)
    out.atoms.push_back(ren.apply(x));
  for (TermId v : atom_vars(b.atoms))
    out.vars.push_back(ren.apply(v));
  return cq_normalize(out);
}

BooleanCQ ge_apply(const BooleanCQ &cq, const std::vector<TermId> &constants) {
  std::set<TermId> used = vars_of(cq.atoms);
  BooleanCQ out = cq;
  for (TermId c : constants) {
    if (!is_const(c))
      throw InputError("Ge: only constants can be generalized");
    TermId v = fresh_variable(used, "g");
    for (Atom &a : out.atoms)
      a = subst_atom(a, c, v);
    out.vars.push_back(v);
  }
  return cq_normalize(out);
}

namespace {

// t(w) -> exists vars(t). t(w), where the constants of t became the
// universal variables w; pi maps them back.
Rule copy_tautology(const BooleanCQ &t, Subst &pi) {
  std::set<TermId> used = vars_of(t.atoms);
  Subst to_var;
  std::vector<Atom> pattern;
  for (const Atom &a : t.atoms) {
    Atom r = a;
    for (TermId *x : {&r.a, &r.b}) {
      if (*x == kNoTerm || is_var(*x))
        continue;
      TermId v = to_var.get(*x);
      if (v == kNoTerm) {
        v = fresh_variable(used, "w");
        to_var.set(*x, v);
        pi.set(v, *x);
      }
      *x = v;
    }
    pattern.push_back(r);
  }
  return te_rule(pattern, atom_vars(t.atoms));
}

// A body match pi under which some choice of replaced body atoms and kept
// head atoms turns phi into concl.
// Subset masks over n items, full set first. Beyond 16 items only the full
// and the empty subset are tried.
std::vector<std::uint32_t> subset_masks(std::size_t n) {
  if (n > 16)
    return {0xffffffffu, 0};
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = (1u << n); m-- > 0;)
    out.push_back(m);
  return out;
}

bool in_mask(std::uint32_t mask, std::size_t i) { return mask == 0xffffffffu || (i < 32 && (mask >> i) & 1u); }

std::optional<Subst> find_mpe(const BooleanCQ &phi, const Rule &rule, const BooleanCQ &concl) {
  std::vector<Atom> phi_atoms = dedupe(phi.atoms);
  AtomSet data = make_atom_set(phi_atoms);
  std::vector<TermId> rule_vars = atom_vars(rule.body);
  BindablePred bindable = [&](TermId t) { return contains(rule_vars, t); };
  BooleanCQ target = cq_normalize(concl);
  bool ok = false;
  std::optional<Subst> found;
  Subst s;
  match_atoms(rule.body, data, s, [&](const Subst &pi) {
    std::vector<Atom> img;
    for (const Atom &b : rule.body)
      img.push_back(pi.apply(b));
    img = dedupe(img);
    // Ground body atoms absent from the conclusion must be replaced; the
    // rest may go either way.
    std::vector<Atom> fixed, optional;
    for (const Atom &a : img) {
      bool in_concl = std::find(target.atoms.begin(), target.atoms.end(), a) != target.atoms.end();
      if (atom_ground(a) && !in_concl)
        fixed.push_back(a);
      else if (!atom_ground(a))
        optional.push_back(a);
    }
    for (std::uint32_t rm : subset_masks(optional.size())) {
      std::vector<Atom> replace = fixed;
      for (std::size_t i = 0; i < optional.size(); ++i)
        if (in_mask(rm, i))
          replace.push_back(optional[i]);
      for (std::uint32_t km : subset_masks(rule.head.size())) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rule.head.size(); ++i)
          if (in_mask(km, i))
            keep.push_back(i);
        BooleanCQ cand = mpe_apply(BooleanCQ{phi_atoms, phi.vars}, rule, pi, replace, keep);
        if (cand.atoms.size() == target.atoms.size() && cq_isomorphic(cand, target)) {
          ok = true;
          break;
        }
      }
      if (ok)
        break;
    }
    if (ok)
      found = pi;
    return !ok;
  }, bindable);
  return found;
}

bool check_ce(const BooleanCQ &a, const BooleanCQ &b, const BooleanCQ &concl) {
  return cq_isomorphic(ce_apply(a, b), concl);
}

bool check_ge(const BooleanCQ &prem, const BooleanCQ &concl) {
  BooleanCQ p = cq_normalize(prem), c = cq_normalize(concl);
  if (p.atoms.size() != c.atoms.size())
    return false;
  AtomSet data = make_atom_set(p.atoms);
  bool ok = false;
  Subst s;
  BindablePred bindable = [&](TermId t) { return contains(c.vars, t); };
  match_atoms(c.atoms, data, s, [&](const Subst &m) {
    std::vector<Atom> img;
    for (const Atom &a : c.atoms)
      img.push_back(m.apply(a));
    if (dedupe(img).size() == p.atoms.size()) {
      ok = true;
      return false;
    }
    return true;
  }, bindable);
  return ok;
}

bool check_ee(const BooleanCQ &prem, const BooleanCQ &concl) {
  for (std::size_t i = 0; i < prem.atoms.size(); ++i) {
    const Atom &e = prem.atoms[i];
    if (e.kind != AtomKind::Equality)
      continue;
    if (cq_isomorphic(ee_apply(prem, i), concl))
      return true;
    BooleanCQ flipped = prem;
    std::swap(flipped.atoms[i].a, flipped.atoms[i].b);
    if (cq_isomorphic(ee_apply(flipped, i), concl))
      return true;
  }
  return false;
}

} // namespace

bool check_cq_edge(Schema schema, const std::vector<Label> &premises, const Label &conclusion,
                   const std::vector<Rule> &tbox) {
  auto is_q = [](const Label &l) { return l.kind == LabelKind::Query; };
  switch (schema) {
  case Schema::Te:
    return premises.empty() && conclusion.kind == LabelKind::Rule && is_tautology(conclusion.rule);
  case Schema::MPe: {
    if (premises.size() != 2 || !is_q(conclusion))
      return false;
    int ri = premises[0].kind == LabelKind::Rule ? 0 : (premises[1].kind == LabelKind::Rule ? 1 : -1);
    if (ri < 0 || !is_q(premises[1 - ri]))
      return false;
    const Rule &r = premises[ri].rule;
    if (!is_tautology(r) && std::find(tbox.begin(), tbox.end(), r) == tbox.end())
      return false;
    return find_mpe(premises[1 - ri].cq(), r, conclusion.cq()).has_value();
  }
  case Schema::Ce:
    return premises.size() == 2 && is_q(premises[0]) && is_q(premises[1]) && is_q(conclusion) &&
           check_ce(premises[0].cq(), premises[1].cq(), conclusion.cq());
  case Schema::Ge:
    return premises.size() == 1 && is_q(premises[0]) && is_q(conclusion) && check_ge(premises[0].cq(), conclusion.cq());
  case Schema::Ee:
    return premises.size() == 1 && is_q(premises[0]) && is_q(conclusion) && check_ee(premises[0].cq(), conclusion.cq());
  default:
    return false;
  }
}


namespace {

// Cheap canonical form: atoms sorted with variables blanked, then variables
// renamed in order of first occurrence. Equal keys imply isomorphic CQs.
std::string cq_key(const BooleanCQ &q) {
  std::vector<Atom> atoms = dedupe(q.atoms);
  auto blank = [](const Atom &a) {
    auto t = [](TermId x) { return x == kNoTerm ? std::string() : (is_var(x) ? std::string("?") : term_str(x)); };
    return std::to_string(static_cast<int>(a.kind)) + sym_name(a.pred) + "(" + t(a.a) + "," + t(a.b) + ")";
  };
  std::vector<std::pair<std::string, Atom>> keyed;
  for (const Atom &a : atoms)
    keyed.emplace_back(blank(a), a);
  std::stable_sort(keyed.begin(), keyed.end(), [](auto &x, auto &y) { return x.first < y.first; });
  std::map<TermId, int> names;
  std::string out;
  auto t = [&](TermId x) {
    if (x == kNoTerm)
      return std::string();
    if (!is_var(x))
      return term_str(x);
    auto [it, fresh] = names.emplace(x, static_cast<int>(names.size()));
    return "?" + std::to_string(it->second);
  };
  for (auto &[k, a] : keyed)
    out += std::to_string(static_cast<int>(a.kind)) + sym_name(a.pred) + "(" + t(a.a) + "," + t(a.b) + ");";
  return out;
}

// Variable-connected components; ground atoms are components of their own.
std::vector<std::vector<Atom>> components(const std::vector<Atom> &atoms) {
  std::vector<int> parent(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    parent[i] = static_cast<int>(i);
  std::function<int(int)> root = [&](int i) { return parent[i] == i ? i : parent[i] = root(parent[i]); };
  std::map<TermId, int> owner;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (TermId v : atom_vars({atoms[i]})) {
      auto [it, fresh] = owner.emplace(v, static_cast<int>(i));
      if (!fresh)
        parent[root(static_cast<int>(i))] = root(it->second);
    }
  std::map<int, std::vector<Atom>> groups;
  std::vector<int> order;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    int r = root(static_cast<int>(i));
    if (!groups.count(r))
      order.push_back(r);
    groups[r].push_back(atoms[i]);
  }
  std::vector<std::vector<Atom>> out;
  for (int r : order)
    out.push_back(groups[r]);
  return out;
}

BooleanCQ make_cq(std::vector<Atom> atoms) { return cq_normalize(BooleanCQ{std::move(atoms), {}}); }

class CqSearch {
public:
  CqSearch(const KnowledgeBase &kb, const DerivationView &view, const SearchBudget &budget)
      : kb_(kb), view_(view), budget_(budget), start_(std::chrono::steady_clock::now()) {
    for (const Atom &a : kb.abox)
      abox_.insert(a);
  }

  struct Node {
    Label label;
    Schema schema = Schema::MP;
    bool derived = false;  // has an incoming edge (possibly premise-free)
    std::vector<int> kids;
    std::uint64_t cost = 1;
  };

  // Cheapest proof of t with tree size <= limit, as an arena index.
  std::optional<int> solve(const BooleanCQ &t, std::uint64_t limit) {
    if (limit == 0)
      return std::nullopt;
    std::string key = cq_key(t);
    if (auto it = exact_.find(key); it != exact_.end())
      return nodes_[it->second].cost <= limit ? std::optional<int>(it->second) : std::nullopt;
    if (auto it = lower_.find(key); it != lower_.end() && it->second >= limit)
      return std::nullopt;
    if (lower_bound(t) > limit)
      return std::nullopt;
    if (on_stack_.count(key)) {
      cut_ = true;
      return std::nullopt;
    }
    if (++expanded_ > budget_.max_nodes || out_of_time()) {
      exhausted_ = true;
      return std::nullopt;
    }
    bool outer_cut = cut_;
    cut_ = false;
    on_stack_.insert(key);
    std::optional<int> best;
    auto offer = [&](int n) {
      if (!best || nodes_[n].cost < nodes_[*best].cost) {
        best = n;
        limit = nodes_[n].cost - 1;
      }
    };
    expand(t, limit, offer);
    on_stack_.erase(key);
    if (!cut_ && !exhausted_) {
      if (best)
        exact_[key] = *best;
      else
        lower_[key] = std::max(lower_[key], limit);
    }
    cut_ = cut_ || outer_cut;
    return best;
  }

  const Node &node(int i) const { return nodes_[i]; }
  bool exhausted() const { return exhausted_; }
  std::uint64_t expanded() const { return expanded_; }

  ProofGraph to_graph(int root, const BooleanCQ &goal) const {
    ProofGraph g;
    std::function<int(int)> emit = [&](int n) {
      const Node &nd = nodes_[n];
      std::vector<int> prem;
      for (int k : nd.kids)
        prem.push_back(emit(k));
      int v = g.add_vertex(nd.label);
      if (nd.derived)
        g.add_edge(prem, v, nd.schema);
      return v;
    };
    int r = emit(root);
    g.vertices[r] = Label::of_query(goal);
    return g;
  }

private:
  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  bool out_of_time() {
    if ((expanded_ & 255) != 0)
      return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    return static_cast<std::uint64_t>(ms) > budget_.max_millis;
  }

  // Every component needs a proof of its own and Ce joins them.
  static std::uint64_t lower_bound(const BooleanCQ &t) {
    std::size_t c = components(dedupe(t.atoms)).size();
    return c == 0 ? 1 : 2 * c - 1;
  }

  template <typename Offer> void expand(const BooleanCQ &t, std::uint64_t &limit, Offer offer) {
    std::vector<Atom> atoms = dedupe(t.atoms);
    // Leaf.
    if (atoms.size() == 1 && atom_ground(atoms[0]) && abox_.contains(atoms[0])) {
      Node n;
      n.label = Label::of_query(make_cq(atoms));
      offer(add(std::move(n)));
      return;
    }
    // Ce: peel off the first component.
    std::vector<std::vector<Atom>> comps = components(atoms);
    if (comps.size() > 1) {
      BooleanCQ a = make_cq(comps[0]);
      std::vector<Atom> rest;
      for (std::size_t i = 1; i < comps.size(); ++i)
        rest.insert(rest.end(), comps[i].begin(), comps[i].end());
      BooleanCQ b = make_cq(rest);
      std::optional<int> sa, sb;
      if (limit > 1 + lower_bound(b))
        sa = solve(a, limit - 1 - lower_bound(b));
      if (sa && limit > 1 + nodes_[*sa].cost)
        sb = solve(b, limit - 1 - nodes_[*sa].cost);
      if (sb) {
        Node n;
        n.label = Label::of_query(make_cq(atoms));
        n.schema = Schema::Ce;
        n.derived = true;
        n.kids = {*sa, *sb};
        n.cost = 1 + nodes_[*sa].cost + nodes_[*sb].cost;
        offer(add(std::move(n)));
      }
    }
    if (!t.vars.empty())
      expand_matches(atoms, limit, offer);
    expand_rules(atoms, limit, offer);
  }

  // Ge and the Te+MPe collapse, guided by matches into the view.
  template <typename Offer> void expand_matches(const std::vector<Atom> &atoms, std::uint64_t &limit, Offer offer) {
    BooleanCQ t = make_cq(atoms);
    std::set<std::string> seen;
    std::vector<std::pair<int, BooleanCQ>> moves;  // 0: Ge, 1: collapse
    std::vector<Rule> te;
    std::size_t count = 0;
    Subst s;
    match_atoms(atoms, view_.set, s, [&](const Subst &m) {
      Subst ground, merge;
      std::map<TermId, TermId> rep;
      for (TermId v : t.vars) {
        TermId img = m.apply(v);
        if (is_const(img))
          ground.set(v, img);
        auto [it, fresh] = rep.emplace(img, v);
        if (!fresh)
          merge.set(v, it->second);
      }
      if (ground.size() > 0) {
        std::vector<Atom> p;
        for (const Atom &a : atoms)
          p.push_back(ground.apply(a));
        if (dedupe(p).size() == atoms.size()) {
          BooleanCQ pc = make_cq(p);
          if (seen.insert("G" + cq_key(pc)).second)
            moves.emplace_back(0, pc), te.emplace_back();
        }
      }
      if (merge.size() > 0 || ground.size() > 0) {
        Subst full = merge;
        for (auto &[v, c] : ground.entries())
          full.set(v, c);
        std::vector<Atom> g;
        for (const Atom &a : atoms)
          g.push_back(full.apply(a));
        BooleanCQ gc = make_cq(g);
        if ((gc.atoms.size() < atoms.size() || merge.size() > 0) && seen.insert("T" + cq_key(gc)).second) {
          Subst unused;
          moves.emplace_back(1, gc);
          te.push_back(copy_tautology(t, unused));
        }
      }
      return ++count < 4096;
    });
    for (std::size_t i = 0; i < moves.size(); ++i) {
      auto &[kind, p] = moves[i];
      std::uint64_t overhead = kind == 0 ? 1 : 2;
      if (limit <= overhead)
        continue;
      if (auto sp = solve(p, limit - overhead)) {
        Node n;
        n.label = Label::of_query(t);
        n.derived = true;
        n.cost = overhead + nodes_[*sp].cost;
        if (kind == 0) {
          n.schema = Schema::Ge;
          n.kids = {*sp};
        } else {
          Node rn;
          rn.label = Label::of_rule(te[i]);
          rn.schema = Schema::Te;
          rn.derived = true;
          n.schema = Schema::MPe;
          n.kids = {*sp, add(std::move(rn))};
        }
        offer(add(std::move(n)));
      }
    }
  }

  // Backward MPe with a TBox rule.
  template <typename Offer> void expand_rules(const std::vector<Atom> &atoms, std::uint64_t &limit, Offer offer) {
    if (limit <= 2)
      return;
    BooleanCQ t = make_cq(atoms);
    std::set<std::string> seen;
    for (const Rule &rule : kb_.tbox) {
      std::vector<TermId> rvars = atom_vars(rule.head);
      for (TermId v : atom_vars(rule.body))
        if (!contains(rvars, v))
          rvars.push_back(v);
      BindablePred bindable = [&](TermId x) { return contains(rvars, x); };
      AtomSet data = make_atom_set(atoms);
      std::size_t h = rule.head.size();
      for (std::uint32_t km = 1; km < (1u << h); ++km) {
        std::vector<Atom> kept;
        for (std::size_t i = 0; i < h; ++i)
          if (km & (1u << i))
            kept.push_back(rule.head[i]);
        std::vector<BooleanCQ> preds;
        Subst s;
        match_atoms(kept, data, s, [&](const Subst &pi) {
          std::vector<Atom> image;
          for (const Atom &k : kept)
            image.push_back(pi.apply(k));
          std::vector<Atom> rest;
          for (const Atom &a : atoms)
            if (std::find(image.begin(), image.end(), a) == image.end())
              rest.push_back(a);
          std::vector<TermId> rest_vars = atom_vars(rest);
          std::set<TermId> ex_images;
          for (TermId w : rule.existentials) {
            TermId img = pi.get(w);
            if (img == kNoTerm)
              continue;
            if (!is_var(img) || contains(rest_vars, img) || !ex_images.insert(img).second)
              return true;
          }
          for (TermId v : atom_vars(kept))
            if (!contains(rule.existentials, v) && ex_images.count(pi.apply(v)))
              return true;
          std::set<TermId> used = vars_of(atoms);
          Subst full = pi;
          for (TermId v : atom_vars(rule.body))
            if (full.get(v) == kNoTerm)
              full.set(v, fresh_variable(used));
          std::vector<Atom> p = rest;
          for (const Atom &b : rule.body)
            p.push_back(full.apply(b));
          preds.push_back(make_cq(p));
          return true;
        }, bindable);
        for (const BooleanCQ &p : preds) {
          if (limit <= 2 || !seen.insert(cq_key(p)).second)
            continue;
          if (auto sp = solve(p, limit - 2)) {
            Node rn;
            rn.label = Label::of_rule(rule);
            Node n;
            n.label = Label::of_query(t);
            n.schema = Schema::MPe;
            n.derived = true;
            n.cost = 2 + nodes_[*sp].cost;
            n.kids = {*sp, add(std::move(rn))};
            offer(add(std::move(n)));
          }
        }
      }
    }
  }

  const KnowledgeBase &kb_;
  const DerivationView &view_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  AtomSet abox_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, int> exact_;
  std::unordered_map<std::string, std::uint64_t> lower_;
  std::unordered_set<std::string> on_stack_;
  std::uint64_t expanded_ = 0;
  bool cut_ = false;
  bool exhausted_ = false;
};

} // namespace

SearchResult bounded_search_cq(const KnowledgeBase &kb, const BooleanCQ &q, const SearchBudget &budget) {
  if (budget.measure == Measure::DomainSize)
    throw InputError("the CQ deriver does not support the domain size measure");
  SearchResult r;
  Entailment e = entails(kb, q);
  if (e.verdict != Verdict::Yes) {
    r.status = e.verdict == Verdict::No ? SearchStatus::None : SearchStatus::Exhausted;
    r.optimal = e.verdict == Verdict::No;
    return r;
  }
  r.view_depth = view_depth(kb, e.depth);
  DerivationView view = build_sk_view(kb, r.view_depth);

  // Incumbent: the tree-size optimal Skolem proof carried over.
  std::optional<ProofGraph> incumbent;
  std::uint64_t inc_value = kInf;
  if (auto sk = min_tree_size_proof(view, q, budget.strict_cg)) {
    incumbent = transform_sk_to_cq(sk->proof, kb, q);
    inc_value = proof_tree_size(*incumbent);
  }
  std::uint64_t cap = budget.bound > 0 ? budget.bound : kInf - 1;
  if (incumbent && inc_value <= cap && budget.stop_at_first) {
    r.status = SearchStatus::Found;
    r.proof = incumbent;
    r.value = measure(*incumbent, budget.measure);
    return r;
  }
  std::uint64_t limit = std::min(cap, inc_value == kInf ? cap : inc_value - 1);
  CqSearch search(kb, view, budget);
  std::optional<int> best = search.solve(cq_normalize(q), limit);
  r.nodes = search.expanded();
  if (best) {
    r.proof = search.to_graph(*best, q);
  } else if (incumbent && inc_value <= cap) {
    r.proof = incumbent;
  }
  if (r.proof) {
    r.status = SearchStatus::Found;
    r.value = measure(*r.proof, budget.measure);
  } else {
    r.status = search.exhausted() ? SearchStatus::Exhausted : SearchStatus::None;
  }
  r.optimal = !search.exhausted() && budget.measure == Measure::TreeSize;
  return r;
}


ProofGraph transform_sk_to_cq(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal) {
  if (!structural_violation(p).empty())
    throw InputError("transform: " + structural_violation(p));
  std::vector<int> order = p.topo_order();
  std::vector<int> incoming = p.incoming();
  std::vector<Rule> skrules = skolemize(kb.tbox);
  auto atom_of = [&](int v) -> const Atom & { return p.vertices[v].atoms.at(0); };

  // Steps: one per MP rule application (edges sharing premises) and one per E edge.
  struct Step {
    Schema schema;
    std::vector<int> premises;
    std::vector<int> conclusions;
  };
  std::vector<Step> steps;
  std::map<std::vector<int>, std::size_t> mp_group;
  std::vector<int> facts;
  std::vector<Atom> final_atoms;
  for (int v : order) {
    const Label &l = p.vertices[v];
    if (incoming[v] < 0) {
      if (l.kind == LabelKind::Atom)
        facts.push_back(v);
      continue;
    }
    const Edge &e = p.edges[incoming[v]];
    if (e.schema == Schema::MP) {
      auto [it, fresh] = mp_group.emplace(e.premises, steps.size());
      if (fresh)
        steps.push_back({Schema::MP, e.premises, {}});
      steps[it->second].conclusions.push_back(v);
    } else if (e.schema == Schema::E) {
      steps.push_back({Schema::E, e.premises, {v}});
    } else if (e.schema == Schema::C) {
      for (int u : e.premises)
        final_atoms.push_back(atom_of(u));
    }
  }
  int sink = p.sink();
  if (final_atoms.empty())
    final_atoms.push_back(atom_of(sink));

  // Last step that reads each atom.
  std::unordered_map<Atom, std::size_t, AtomHash> last_use;
  for (std::size_t i = 0; i < steps.size(); ++i)
    for (int u : steps[i].premises)
      if (p.vertices[u].kind == LabelKind::Atom)
        last_use[atom_of(u)] = i;
  std::unordered_set<Atom, AtomHash> needed_at_end(final_atoms.begin(), final_atoms.end());

  std::set<TermId> used(goal.vars.begin(), goal.vars.end());
  for (TermId v : atom_vars(goal.atoms))
    used.insert(v);
  std::map<TermId, TermId> tmap;
  std::function<TermId(TermId)> map_term = [&](TermId t) -> TermId {
    if (auto it = tmap.find(t); it != tmap.end())
      return it->second;
    if (term_kind(t) != TermKind::Skolem)
      return t;
    TermId v = fresh_variable(used);
    tmap.emplace(t, v);
    return v;
  };
  auto map_atom = [&](const Atom &a) {
    Atom r = a;
    r.a = map_term(a.a);
    if (a.b != kNoTerm)
      r.b = map_term(a.b);
    return r;
  };

  ProofGraph out;
  std::vector<Atom> phi;
  int cur = -1;
  for (int f : facts) {
    int leaf = out.add_vertex(Label::of_query(BooleanCQ{{atom_of(f)}, {}}));
    if (cur < 0) {
      cur = leaf;
      phi = {atom_of(f)};
      continue;
    }
    if (std::find(phi.begin(), phi.end(), atom_of(f)) == phi.end())
      phi.push_back(atom_of(f));
    int next = out.add_vertex(Label::of_query(make_cq(phi)));
    out.add_edge({cur, leaf}, next, Schema::Ce);
    cur = next;
  }
  if (cur < 0)
    throw InputError("transform: proof has no facts");

  auto consumed = [&](const Atom &a, std::size_t step) {
    auto it = last_use.find(a);
    return it != last_use.end() && it->second == step && !needed_at_end.count(a);
  };
  std::unordered_set<Atom, AtomHash> removed_eqs;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step &st = steps[i];
    if (st.schema == Schema::MP) {
      const Rule *skr = nullptr;
      std::vector<Atom> body;
      for (int u : st.premises) {
        if (p.vertices[u].kind == LabelKind::Rule)
          skr = &p.vertices[u].rule;
        else
          body.push_back(atom_of(u));
      }
      auto pos = skr ? std::find(skrules.begin(), skrules.end(), *skr) : skrules.end();
      if (pos == skrules.end())
        throw InputError("transform: MP edge without a TBox rule premise");
      const Rule &rule = kb.tbox[static_cast<std::size_t>(pos - skrules.begin())];
      std::vector<Atom> replace;
      for (const Atom &b : body)
        if (consumed(b, i)) {
          Atom m = map_atom(b);
          if (std::find(replace.begin(), replace.end(), m) == replace.end())
            replace.push_back(m);
        }
      std::vector<Atom> next;
      for (const Atom &a : phi)
        if (std::find(replace.begin(), replace.end(), a) == replace.end())
          next.push_back(a);
      for (int c : st.conclusions) {
        Atom m = map_atom(atom_of(c));
        if (std::find(next.begin(), next.end(), m) == next.end())
          next.push_back(m);
      }
      int rv = out.add_vertex(Label::of_rule(rule));
      int nv = out.add_vertex(Label::of_query(make_cq(next)));
      out.add_edge({cur, rv}, nv, Schema::MPe);
      cur = nv;
      phi = next;
    } else {
      const Atom &eq = atom_of(st.premises.at(0));
      if (removed_eqs.count(eq))
        continue;
      removed_eqs.insert(eq);
      auto [from, to] = equality_orientation(eq);
      Atom meq = map_atom(eq);
      TermId mfrom = map_term(from), mto = map_term(to);
      BooleanCQ before = make_cq(phi);
      auto pos = std::find(before.atoms.begin(), before.atoms.end(), meq);
      if (pos == before.atoms.end())
        throw InputError("transform: equality not available");
      if (pos->a != mfrom)
        std::swap(pos->a, pos->b);
      BooleanCQ after = ee_apply(before, static_cast<std::size_t>(pos - before.atoms.begin()));
      for (auto &[k, v] : tmap)
        if (v == mfrom)
          v = mto;
      tmap[from] = mto;
      int nv = out.add_vertex(Label::of_query(after));
      out.add_edge({cur}, nv, Schema::Ee);
      cur = nv;
      phi = after.atoms;
    }
  }

  // Tail: Te on the goal pattern, then MPe onto the goal itself.
  BooleanCQ q = cq_normalize(goal);
  if (cq_isomorphic(make_cq(phi), q)) {
    out.vertices[cur] = Label::of_query(goal);
    return out;
  }
  Subst pi;
  Rule taut = copy_tautology(q, pi);
  int rv = out.add_vertex(Label::of_rule(taut));
  out.add_edge({}, rv, Schema::Te);
  int nv = out.add_vertex(Label::of_query(goal));
  out.add_edge({cur, rv}, nv, Schema::MPe);
  if (!find_mpe(make_cq(phi), taut, q))
    throw InputError("transform: final conjunction does not match the goal");
  return out;
}

ProofGraph transform_cq_to_sk(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal, bool strict_cg) {
  if (!structural_violation(p).empty())
    throw InputError("transform: " + structural_violation(p));
  std::vector<Rule> skrules = skolemize(kb.tbox);
  std::vector<int> incoming = p.incoming();

  ProofGraph out;
  AtomSet derived;
  std::unordered_map<Atom, int, AtomHash> vertex_of;
  std::map<int, int> rule_vertex;
  auto leaf = [&](const Atom &a) {
    if (derived.insert(a))
      vertex_of[a] = out.add_vertex(Label::of_atom(a));
    return vertex_of[a];
  };
  auto derive = [&](const Atom &a, std::vector<int> prem, Schema s) {
    if (!derived.insert(a))
      return;
    int v = out.add_vertex(Label::of_atom(a));
    vertex_of[a] = v;
    out.add_edge(std::move(prem), v, s);
  };
  // Ground image of every CQ vertex: its atoms mapped into derived atoms.
  std::map<int, Subst> image;
  auto ground = [&](int v) {
    BooleanCQ c = p.vertices[v].cq();
    std::optional<Subst> m = match_one(c.atoms, derived);
    if (!m)
      throw InputError("transform: no ground image for " + label_str(p.vertices[v]));
    image[v] = *m;
  };

  for (int v : p.topo_order()) {
    const Label &l = p.vertices[v];
    if (incoming[v] < 0) {
      if (l.kind == LabelKind::Query) {
        if (l.atoms.size() != 1 || !atom_ground(l.atoms[0]))
          throw InputError("transform: leaf is not a fact");
        leaf(l.atoms[0]);
        image[v] = Subst{};
      }
      continue;
    }
    const Edge &e = p.edges[incoming[v]];
    switch (e.schema) {
    case Schema::Te:
      break;
    case Schema::MPe: {
      int ri = p.vertices[e.premises[0]].kind == LabelKind::Rule ? 0 : 1;
      const Rule &rule = p.vertices[e.premises[ri]].rule;
      int phi = e.premises[1 - ri];
      if (!is_tautology(rule)) {
        std::optional<Subst> pi = find_mpe(p.vertices[phi].cq(), rule, l.cq());
        if (!pi)
          throw InputError("transform: invalid MPe edge");
        const Subst &theta = image.at(phi);
        auto it = std::find(kb.tbox.begin(), kb.tbox.end(), rule);
        if (it == kb.tbox.end())
          throw InputError("transform: rule not in the TBox");
        int idx = static_cast<int>(it - kb.tbox.begin());
        const Rule &skr = skrules[idx];
        Subst full;
        for (TermId x : atom_vars(rule.body))
          full.set(x, theta.apply(pi->apply(x)));
        if (!rule_vertex.count(idx))
          rule_vertex[idx] = out.add_vertex(Label::of_rule(skr));
        std::vector<int> prem;
        for (const Atom &b : skr.body)
          prem.push_back(vertex_of.at(full.apply(b)));
        prem.push_back(rule_vertex[idx]);
        for (const Atom &h : skr.head)
          derive(full.apply(h), prem, Schema::MP);
      }
      ground(v);
      break;
    }
    case Schema::Ee: {
      int phi = e.premises[0];
      const Subst &theta = image.at(phi);
      for (const Atom &a : p.vertices[phi].atoms) {
        if (a.kind != AtomKind::Equality)
          continue;
        Atom geq = theta.apply(a);
        auto [from, to] = equality_orientation(geq);
        for (const Atom &b : p.vertices[phi].atoms) {
          Atom gb = theta.apply(b);
          if (gb.kind == AtomKind::Equality || !atom_has_top_level(gb, from))
            continue;
          derive(replace_top_level(gb, from, to), {vertex_of.at(geq), vertex_of.at(gb)}, Schema::E);
        }
      }
      ground(v);
      break;
    }
    default:
      ground(v);
      break;
    }
  }
  int sink = p.sink();
  BooleanCQ sink_cq = p.vertices[sink].cq();
  const Subst &theta = image.at(sink);
  std::vector<Atom> sink_atoms;
  for (const Atom &a : sink_cq.atoms)
    sink_atoms.push_back(theta.apply(a));
  std::optional<Subst> sigma = match_one(goal.atoms, make_atom_set(sink_atoms));
  if (!sigma)
    throw InputError("transform: goal does not map into the final conjunction");
  int root;
  if (omit_cg(goal, strict_cg)) {
    root = vertex_of.at(goal.atoms[0]);
  } else {
    CGPair cg = cg_for(goal, *sigma);
    std::vector<int> prem;
    for (const Label &pl : cg.conjunction.premises)
      prem.push_back(vertex_of.at(pl.atoms[0]));
    int c = out.add_vertex(cg.conjunction.conclusion);
    out.add_edge(prem, c, Schema::C);
    root = out.add_vertex(cg.generalization.conclusion);
    out.add_edge({c}, root, Schema::G);
  }
  return subproof_at(out, root);
}

} // namespace omqe
