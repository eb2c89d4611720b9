/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "deriver_sk.hpp"
#include "query.hpp"
#include "search.hpp"

namespace omqe {
namespace {

std::vector<int> roots_of(const DerivationView &v, const BooleanCQ &q, const Subst &m) {
  std::vector<int> roots;
  for (const Atom &a : q.atoms)
    roots.push_back(v.find(m.apply(a)));
  return roots;
}

std::uint64_t tail(const BooleanCQ &q, bool strict_cg) { return omit_cg(q, strict_cg) ? 0 : 2; }

// Name of the compressed individual standing for Skolem term t.
TermId fresh_image(const DerivationView &compressed, TermId t) {
  if (!is_skolem(t))
    return t;
  if (compressed.kind == ViewKind::CompressedEL)
    return make_const("c#" + sym_name(term_name(t)));
  // DL-Lite: the role of the introducing rule decides the name.
  const std::string &f = sym_name(term_name(t));
  int idx = std::stoi(f.substr(2));
  for (const Rule &r : compressed.rules) {
    if (r.index != idx)
      continue;
    for (const Atom &h : r.head)
      if (h.kind == AtomKind::Role)
        return make_const("b#" + sym_name(h.pred) + (is_skolem(h.b) ? "-" : ""));
  }
  return t;
}

bool passes_filter(const DerivationView *filter, const BooleanCQ &q, TermId var, TermId value) {
  if (!filter)
    return true;
  TermId img = fresh_image(*filter, value);
  for (const Atom &a : q.atoms)
    if (a.kind == AtomKind::Concept && a.a == var && filter->find(concept_atom(a.pred, img)) < 0)
      return false;
  return true;
}

std::uint64_t add_sat(std::uint64_t x, std::uint64_t y) { return (x == kInf || y == kInf) ? kInf : x + y; }

} // namespace

std::optional<AlgoResult> min_size_dijkstra(const DerivationView &view, const BooleanCQ &q, bool strict_cg) {
  Costs c = min_size_relaxation(view);
  std::optional<AlgoResult> best;
  std::set<std::vector<int>> seen;
  for (const Subst &m : view_matches(view, q)) {
    std::vector<int> roots = roots_of(view, q, m);
    if (!seen.insert(roots).second)
      continue;
    if (std::any_of(roots.begin(), roots.end(), [&](int r) { return c.value[r] == kInf; }))
      continue;
    ProofGraph p = assemble_proof(view, c.best_edge, roots, &q, strict_cg);
    std::uint64_t s = proof_size(p);
    if (!best || s < best->value)
      best = AlgoResult{std::move(p), s};
  }
  return best;
}

std::optional<AlgoResult> min_tree_size_proof(const DerivationView &view, const BooleanCQ &q, bool strict_cg) {
  Costs c = min_tree_size_dp(view);
  std::optional<std::pair<std::uint64_t, std::vector<int>>> best;
  for (const Subst &m : view_matches(view, q)) {
    std::vector<int> roots = roots_of(view, q, m);
    std::uint64_t total = tail(q, strict_cg);
    for (int r : roots)
      total = add_sat(total, c.value[r]);
    if (total != kInf && (!best || total < best->first))
      best = std::make_pair(total, roots);
  }
  if (!best)
    return std::nullopt;
  ProofGraph p = assemble_proof(view, c.best_edge, best->second, &q, strict_cg);
  return AlgoResult{std::move(p), best->first};
}

CostGraph build_cost_graph(const DerivationView &view, const Costs &costs, const BooleanCQ &q,
                           const DerivationView *filter) {
  CostGraph g;
  GaifmanGraph gg = gaifman_graph(q);
  if (gg.nodes.empty())
    return g;
  g.root = gg.nodes.front();

  std::set<TermId> pool_set;
  for (const Atom &a : view.atoms) {
    if (a.kind == AtomKind::Equality)
      continue;
    pool_set.insert(a.a);
    if (a.b != kNoTerm)
      pool_set.insert(a.b);
  }
  std::vector<TermId> pool(pool_set.begin(), pool_set.end());
  std::sort(pool.begin(), pool.end(), term_less);

  auto atom_cost = [&](const Atom &a, TermId x, TermId vx, TermId y, TermId vy) {
    Subst s;
    if (is_var(x))
      s.set(x, vx);
    if (y != kNoTerm && is_var(y))
      s.set(y, vy);
    int id = view.find(s.apply(a));
    return id < 0 ? kInf : costs.value[id];
  };

  // Nodes: one per term and admissible value.
  std::map<TermId, std::vector<int>> nodes_of;
  for (TermId x : gg.nodes) {
    std::vector<TermId> values = is_var(x) ? pool : std::vector<TermId>{x};
    for (TermId val : values) {
      if (is_var(x) && !passes_filter(filter, q, x, val))
        continue;
      std::uint64_t cost = 0;
      for (const Atom &a : q.atoms) {
        bool only_x = a.a == x && (a.b == kNoTerm || a.b == x);
        if (only_x)
          cost = add_sat(cost, atom_cost(a, x, val, kNoTerm, kNoTerm));
      }
      if (cost == kInf)
        continue;
      nodes_of[x].push_back(static_cast<int>(g.nodes.size()));
      g.nodes.push_back({x, val, cost});
    }
  }

  // Orient Gaifman edges away from the root (BFS order).
  std::vector<TermId> order{g.root};
  std::set<TermId> visited{g.root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t xi = gg.index_of(order[i]);
    for (auto [a, b] : gg.edges) {
      std::size_t other = a == xi ? b : (b == xi ? a : gg.nodes.size());
      if (other == gg.nodes.size() || visited.count(gg.nodes[other]))
        continue;
      TermId y = gg.nodes[other];
      visited.insert(y);
      order.push_back(y);
      TermId x = order[i];
      for (int n1 : nodes_of[x])
        for (int n2 : nodes_of[y]) {
          std::uint64_t gamma = 0;
          for (const Atom &at : q.atoms) {
            bool pair = at.b != kNoTerm && ((at.a == x && at.b == y) || (at.a == y && at.b == x));
            if (pair)
              gamma = add_sat(gamma, atom_cost(at, x, g.nodes[n1].value, y, g.nodes[n2].value));
          }
          if (gamma != kInf)
            g.arcs.push_back({n1, n2, gamma});
        }
    }
  }
  return g;
}

namespace {

// Leaf-up elimination: keeps one minimal arc per (node, child term).
// Returns the chosen value per query term, or empty when no assignment
// survives.
std::map<TermId, TermId> eliminate(const CostGraph &g, std::uint64_t &total) {
  std::vector<std::uint64_t> combined(g.nodes.size());
  std::vector<std::vector<int>> out(g.nodes.size());
  for (std::size_t i = 0; i < g.arcs.size(); ++i)
    out[g.arcs[i].from].push_back(static_cast<int>(i));
  std::vector<std::map<TermId, int>> keep(g.nodes.size());
  std::vector<bool> done(g.nodes.size(), false);
  // Child terms per term, derived from arcs.
  std::map<TermId, std::set<TermId>> children;
  for (const auto &a : g.arcs)
    children[g.nodes[a.from].term].insert(g.nodes[a.to].term);
  std::function<std::uint64_t(int)> solve = [&](int n) -> std::uint64_t {
    if (done[n])
      return combined[n];
    done[n] = true;
    std::uint64_t c = g.nodes[n].cost;
    std::map<TermId, std::pair<std::uint64_t, int>> best;
    for (int ai : out[n]) {
      const auto &a = g.arcs[ai];
      std::uint64_t v = add_sat(a.gamma, solve(a.to));
      TermId t = g.nodes[a.to].term;
      auto it = best.find(t);
      if (v != kInf && (it == best.end() || v < it->second.first))
        best[t] = {v, ai};
    }
    for (TermId child : children[g.nodes[n].term]) {
      auto it = best.find(child);
      if (it == best.end()) {
        c = kInf;
        break;
      }
      c = add_sat(c, it->second.first);
      keep[n][child] = it->second.second;
    }
    return combined[n] = c;
  };
  int root_best = -1;
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    if (g.nodes[n].term != g.root)
      continue;
    std::uint64_t v = solve(static_cast<int>(n));
    if (v != kInf && (root_best < 0 || v < combined[root_best]))
      root_best = static_cast<int>(n);
  }
  std::map<TermId, TermId> assignment;
  if (root_best < 0)
    return assignment;
  total = combined[root_best];
  std::vector<int> stack{root_best};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    assignment[g.nodes[n].term] = g.nodes[n].value;
    for (auto &[t, ai] : keep[n])
      stack.push_back(g.arcs[ai].to);
  }
  return assignment;
}

void require_entailed_view(const KnowledgeBase &kb, const BooleanCQ &q, DerivationView &view) {
  view = goal_view(kb, q);
}

} // namespace

AlgoResult tree_query_min_treesize(const KnowledgeBase &kb, const BooleanCQ &q, bool strict_cg) {
  if (kb.fragment != Fragment::DLLiteR)
    throw InputError("tree-shaped query algorithm needs a DLLiteR KB");
  if (!is_tree_shaped(q))
    throw InputError("query is not tree-shaped");
  DerivationView view;
  require_entailed_view(kb, q, view);
  DerivationView filter = compress_dllite(kb);
  Costs costs = min_tree_size_dp(view);
  CostGraph g = build_cost_graph(view, costs, q, &filter);
  std::uint64_t total = 0;
  std::map<TermId, TermId> assignment = eliminate(g, total);
  if (assignment.empty())
    throw InputError("no assignment survives in the finite view");
  Subst s;
  for (auto &[t, val] : assignment)
    if (is_var(t))
      s.set(t, val);
  std::vector<int> roots = roots_of(view, q, s);
  ProofGraph p = assemble_proof(view, costs.best_edge, roots, &q, strict_cg);
  return AlgoResult{std::move(p), total + tail(q, strict_cg)};
}

AlgoResult el_cq_min_treesize(const KnowledgeBase &kb, const BooleanCQ &q, bool strict_cg) {
  if (kb.fragment != Fragment::EL && kb.fragment != Fragment::DLLiteR)
    throw InputError("EL algorithm needs an EL KB");
  DerivationView view;
  require_entailed_view(kb, q, view);
  DerivationView filter = compress_el(kb);
  Costs costs = min_tree_size_dp(view);
  std::optional<std::pair<std::uint64_t, std::vector<int>>> best;
  for (const Subst &m : view_matches(view, q)) {
    bool ok = true;
    for (auto &[var, val] : m.entries())
      ok = ok && passes_filter(&filter, q, var, val);
    if (!ok)
      continue;
    std::vector<int> roots = roots_of(view, q, m);
    std::uint64_t total = tail(q, strict_cg);
    for (int r : roots)
      total = add_sat(total, costs.value[r]);
    if (total != kInf && (!best || total < best->first))
      best = std::make_pair(total, roots);
  }
  if (!best)
    throw InputError("no assignment in the finite view");
  ProofGraph p = assemble_proof(view, costs.best_edge, best->second, &q, strict_cg);
  return AlgoResult{std::move(p), best->first};
}

ProofGraph compressed_proof(const DerivationView &compressed, const Costs &costs, int atom) {
  return assemble_proof(compressed, costs.best_edge, {atom}, nullptr, false);
}

namespace {

bool has_fresh(const Atom &a) { return is_fresh_name(a.a) || (a.b != kNoTerm && is_fresh_name(a.b)); }

Atom compress_like(const Atom &a, const std::vector<Rule> &rules, bool el) {
  DerivationView dummy;
  dummy.kind = el ? ViewKind::CompressedEL : ViewKind::CompressedDLLite;
  dummy.rules = rules;
  Atom r = a;
  r.a = fresh_image(dummy, a.a);
  if (a.b != kNoTerm)
    r.b = fresh_image(dummy, a.b);
  return r;
}

} // namespace

ProofGraph decompress(const ProofGraph &compressed, const KnowledgeBase &kb) {
  std::string bad = structural_violation(compressed);
  if (!bad.empty())
    throw InputError("decompress: " + bad);
  std::vector<Rule> rules = skolemize(kb.tbox);
  bool el = false;
  for (const Label &l : compressed.vertices)
    for (const Atom &a : l.atoms)
      for (TermId t : {a.a, a.b})
        if (t != kNoTerm && is_fresh_name(t) && term_str(t).rfind("c#", 0) == 0)
          el = true;

  ProofGraph tree = tree_unravel(compressed);
  std::vector<int> order = tree.topo_order();
  std::vector<int> in = tree.incoming();
  std::vector<Label> actual(tree.vertices.size());
  for (int x : order) {
    const Label &l = tree.vertices[x];
    if (in[x] < 0) {
      if (l.kind == LabelKind::Atom && has_fresh(l.atoms.front()))
        throw InputError("decompress: leaf with a fresh name");
      actual[x] = l;
      continue;
    }
    const Edge &e = tree.edges[in[x]];
    if (e.schema == Schema::MP) {
      const Rule *rule = nullptr;
      std::vector<Atom> prem;
      for (int p : e.premises) {
        if (actual[p].kind == LabelKind::Rule)
          rule = &actual[p].rule;
        else
          prem.push_back(actual[p].atoms.front());
      }
      if (!rule || prem.size() != rule->body.size())
        throw InputError("decompress: malformed MP edge");
      Subst s;
      for (std::size_t i = 0; i < prem.size(); ++i) {
        std::size_t added = 0;
        if (!unify_atom(rule->body[i], prem[i], s, {}, added))
          throw InputError("decompress: fresh name resolves inconsistently at " + label_str(l));
      }
      bool found = false;
      for (const Atom &h : rule->head) {
        Atom g = s.apply(h);
        Atom c = has_fresh(l.atoms.front()) ? compress_like(g, rules, el) : g;
        if (c == l.atoms.front()) {
          actual[x] = Label::of_atom(g);
          found = true;
          break;
        }
      }
      if (!found)
        throw InputError("decompress: no head atom matches " + label_str(l));
    } else if (e.schema == Schema::C) {
      std::vector<Atom> atoms;
      for (int p : e.premises)
        atoms.push_back(actual[p].atoms.front());
      actual[x] = Label::of_conjunction(atoms);
    } else {
      actual[x] = l;
    }
  }

  // Merge equal labels back into one vertex each (first derivation wins).
  ProofGraph out;
  std::vector<int> remap(tree.vertices.size(), -1);
  std::vector<std::pair<Label, int>> seen;
  for (int x : order) {
    int found = -1;
    for (auto &[lab, id] : seen)
      if (lab == actual[x]) {
        found = id;
        break;
      }
    if (found >= 0) {
      remap[x] = found;
      continue;
    }
    int id = out.add_vertex(actual[x]);
    remap[x] = id;
    seen.emplace_back(actual[x], id);
    if (in[x] >= 0) {
      const Edge &e = tree.edges[in[x]];
      std::vector<int> prem;
      for (int p : e.premises)
        prem.push_back(remap[p]);
      out.add_edge(std::move(prem), id, e.schema);
    }
  }
  return out;
}

} // namespace omqe
