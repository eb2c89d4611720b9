/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "proof.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace omqe {

namespace {
const char *kSchemaNames[] = {"MP", "E", "C", "G", "MPe", "Te", "Ee", "Ce", "Ge"};
}

const char *schema_name(Schema s) { return kSchemaNames[static_cast<int>(s)]; }

std::optional<Schema> schema_from_name(const std::string &s) {
  for (int i = 0; i < 9; ++i)
    if (s == kSchemaNames[i])
      return static_cast<Schema>(i);
  return std::nullopt;
}

bool is_sk_schema(Schema s) { return static_cast<int>(s) <= static_cast<int>(Schema::G); }

const char *label_kind_name(LabelKind k) {
  static const char *names[] = {"atom", "conjunction", "query", "rule"};
  return names[static_cast<int>(k)];
}

Label Label::of_atom(const Atom &a) {
  Label l;
  l.kind = LabelKind::Atom;
  l.atoms = {a};
  return l;
}

Label Label::of_conjunction(std::vector<Atom> atoms) {
  Label l;
  l.kind = LabelKind::Conjunction;
  l.atoms = std::move(atoms);
  return l;
}

Label Label::of_query(const BooleanCQ &q) {
  Label l;
  l.kind = LabelKind::Query;
  l.atoms = q.atoms;
  l.vars = q.vars;
  return l;
}

Label Label::of_rule(const Rule &r) {
  Label l;
  l.kind = LabelKind::Rule;
  l.rule = r;
  return l;
}

bool operator==(const Label &x, const Label &y) {
  if (x.kind != y.kind)
    return false;
  if (x.kind == LabelKind::Rule)
    return x.rule == y.rule;
  return x.atoms == y.atoms && x.vars == y.vars;
}

std::string label_str(const Label &l) {
  switch (l.kind) {
  case LabelKind::Atom:
    return atom_str(l.atoms.front());
  case LabelKind::Conjunction:
    return conjunction_str(l.atoms);
  case LabelKind::Query:
    return cq_str(l.cq());
  case LabelKind::Rule:
    return rule_str(l.rule);
  }
  return {};
}

int ProofGraph::add_vertex(Label l) {
  vertices.push_back(std::move(l));
  return static_cast<int>(vertices.size()) - 1;
}

void ProofGraph::add_edge(std::vector<int> premises, int conclusion, Schema schema) {
  edges.push_back(Edge{std::move(premises), conclusion, schema});
}

std::vector<int> ProofGraph::incoming() const {
  std::vector<int> in(vertices.size(), -1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int c = edges[e].conclusion;
    if (c >= 0 && c < static_cast<int>(vertices.size()) && in[c] < 0)
      in[c] = static_cast<int>(e);
  }
  return in;
}

std::vector<int> ProofGraph::sinks() const {
  std::vector<bool> used(vertices.size(), false);
  for (const Edge &e : edges)
    for (int p : e.premises)
      if (p >= 0 && p < static_cast<int>(vertices.size()))
        used[p] = true;
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!used[v])
      out.push_back(static_cast<int>(v));
  return out;
}

std::vector<int> ProofGraph::topo_order() const {
  // Kahn's algorithm on vertex dependencies (premise -> conclusion).
  std::size_t n = vertices.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (const Edge &e : edges) {
    std::set<int> ps(e.premises.begin(), e.premises.end());
    for (int p : ps) {
      succ[p].push_back(e.conclusion);
      ++indeg[e.conclusion];
    }
  }
  std::vector<int> order, stack;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0)
      stack.push_back(static_cast<int>(v));
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0)
        stack.push_back(w);
  }
  if (order.size() != n)
    return {};
  return order;
}

bool ProofGraph::acyclic() const { return vertices.empty() || !topo_order().empty(); }

int ProofGraph::sink() const {
  std::vector<int> s = sinks();
  return s.size() == 1 ? s.front() : -1;
}

const char *measure_name(Measure m) {
  static const char *names[] = {"size", "tree", "domain"};
  return names[static_cast<int>(m)];
}

std::optional<Measure> measure_from_name(const std::string &s) {
  if (s == "size" || s == "Size")
    return Measure::Size;
  if (s == "tree" || s == "tree_size" || s == "TreeSize")
    return Measure::TreeSize;
  if (s == "domain" || s == "domain_size" || s == "DomainSize")
    return Measure::DomainSize;
  return std::nullopt;
}

std::uint64_t proof_size(const ProofGraph &p) { return p.vertices.size(); }

std::uint64_t proof_tree_size(const ProofGraph &p) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<int> order = p.topo_order();
  if (order.empty() || p.sink() < 0)
    return 0;
  std::vector<int> in = p.incoming();
  std::vector<std::uint64_t> ts(p.vertices.size(), 1);
  for (int v : order) {
    if (in[v] < 0)
      continue;
    std::uint64_t t = 1;
    for (int q : p.edges[in[v]].premises)
      t = (kMax - t < ts[q]) ? kMax : t + ts[q];
    ts[v] = t;
  }
  return ts[p.sink()];
}

std::vector<TermId> proof_domain(const ProofGraph &p) {
  std::set<TermId> terms;
  for (const Label &l : p.vertices) {
    if (l.kind == LabelKind::Rule)
      continue;
    for (const Atom &a : l.atoms)
      for (TermId t : {a.a, a.b}) {
        std::vector<TermId> sub;
        if (t != kNoTerm)
          collect_subterms(t, sub);
        for (TermId s : sub)
          if (term_ground(s))
            terms.insert(s);
      }
  }
  std::vector<TermId> out(terms.begin(), terms.end());
  std::sort(out.begin(), out.end(), term_less);
  return out;
}

std::uint64_t proof_domain_size(const ProofGraph &p) { return proof_domain(p).size(); }

std::uint64_t measure(const ProofGraph &p, Measure m) {
  switch (m) {
  case Measure::Size: return proof_size(p);
  case Measure::TreeSize: return proof_tree_size(p);
  case Measure::DomainSize: return proof_domain_size(p);
  }
  return 0;
}

std::string structural_violation(const ProofGraph &p) {
  int n = static_cast<int>(p.vertices.size());
  if (n == 0)
    return "empty proof";
  std::vector<int> seen(n, 0);
  for (const Edge &e : p.edges) {
    if (e.conclusion < 0 || e.conclusion >= n)
      return "edge conclusion out of range";
    for (int q : e.premises)
      if (q < 0 || q >= n)
        return "edge premise out of range";
    if (++seen[e.conclusion] > 1)
      return "vertex " + std::to_string(e.conclusion) + " has more than one incoming hyperedge";
  }
  if (!p.acyclic())
    return "acyclicity violated";
  if (p.sinks().size() != 1)
    return "expected exactly one sink, found " + std::to_string(p.sinks().size());
  return {};
}

ProofGraph tree_unravel(const ProofGraph &p, std::size_t max_vertices) {
  ProofGraph t;
  int root = p.sink();
  if (root < 0)
    throw InputError("tree_unravel needs a single sink");
  std::vector<int> in = p.incoming();
  std::function<int(int)> copy = [&](int v) -> int {
    if (t.vertices.size() >= max_vertices)
      throw InputError("tree unraveling exceeds vertex limit");
    int nv = t.add_vertex(p.vertices[v]);
    if (in[v] >= 0) {
      const Edge &e = p.edges[in[v]];
      std::vector<int> prem;
      for (int q : e.premises)
        prem.push_back(copy(q));
      t.add_edge(std::move(prem), nv, e.schema);
    }
    return nv;
  };
  copy(root);
  return t;
}

namespace {

struct HomSearch {
  const ProofGraph &a;
  const ProofGraph &b;
  HomOptions opt;
  std::vector<int> map;
  std::vector<int> used;  // count of preimages per b-vertex
  std::vector<std::vector<int>> b_in;  // edges of b by conclusion
  std::vector<int> a_edge_order;
  std::vector<int> a_roots;
  std::vector<bool> a_leaf, b_leaf;

  bool assign(int v, int w, std::vector<int> &trail) {
    if (map[v] >= 0)
      return map[v] == w;
    if (!(a.vertices[v] == b.vertices[w]))
      return false;
    if (opt.injective && used[w] > 0)
      return false;
    if (opt.leaves_to_leaves && a_leaf[v] && !b_leaf[w])
      return false;
    map[v] = w;
    ++used[w];
    trail.push_back(v);
    return true;
  }

  void undo(std::vector<int> &trail, std::size_t to) {
    while (trail.size() > to) {
      int v = trail.back();
      trail.pop_back();
      --used[map[v]];
      map[v] = -1;
    }
  }

  bool edges_from(std::size_t k, std::vector<int> &trail) {
    if (k == a_edge_order.size())
      return rest(0, trail);
    const Edge &e = a.edges[a_edge_order[k]];
    int w = map[e.conclusion];
    for (int f : b_in[w]) {
      const Edge &g = b.edges[f];
      if (g.schema != e.schema || g.premises.size() != e.premises.size())
        continue;
      std::size_t mark = trail.size();
      bool ok = true;
      for (std::size_t i = 0; i < e.premises.size() && ok; ++i)
        ok = assign(e.premises[i], g.premises[i], trail);
      if (ok && edges_from(k + 1, trail))
        return true;
      undo(trail, mark);
    }
    return false;
  }

  // Vertices not reached through edges from the roots.
  bool rest(std::size_t v, std::vector<int> &trail) {
    while (v < map.size() && map[v] >= 0)
      ++v;
    if (v == map.size())
      return true;
    for (std::size_t w = 0; w < b.vertices.size(); ++w) {
      std::size_t mark = trail.size();
      if (assign(static_cast<int>(v), static_cast<int>(w), trail) && rest(v + 1, trail))
        return true;
      undo(trail, mark);
    }
    return false;
  }

  bool roots_from(std::size_t k, std::vector<int> &trail) {
    if (k == a_roots.size())
      return edges_from(0, trail);
    for (std::size_t w = 0; w < b.vertices.size(); ++w) {
      std::size_t mark = trail.size();
      if (assign(a_roots[k], static_cast<int>(w), trail) && roots_from(k + 1, trail))
        return true;
      undo(trail, mark);
    }
    return false;
  }
};

} // namespace

std::optional<std::vector<int>> homomorphism(const ProofGraph &h1, const ProofGraph &h2, HomOptions opt) {
  std::vector<int> order = h1.topo_order();
  if (order.empty() && !h1.vertices.empty())
    return std::nullopt;
  HomSearch s{h1, h2, opt, std::vector<int>(h1.vertices.size(), -1), std::vector<int>(h2.vertices.size(), 0), {}, {}, {}, {}, {}};
  s.b_in.resize(h2.vertices.size());
  for (std::size_t f = 0; f < h2.edges.size(); ++f)
    s.b_in[h2.edges[f].conclusion].push_back(static_cast<int>(f));
  std::vector<int> in1 = h1.incoming(), in2 = h2.incoming();
  for (int v : in1)
    s.a_leaf.push_back(v < 0);
  for (int v : in2)
    s.b_leaf.push_back(v < 0);
  s.a_roots = h1.sinks();
  // Edges in reverse topological order of conclusions, so each conclusion
  // is mapped (as a sink or an earlier premise) before its edge.
  std::vector<std::vector<int>> a_in(h1.vertices.size());
  for (std::size_t e = 0; e < h1.edges.size(); ++e)
    a_in[h1.edges[e].conclusion].push_back(static_cast<int>(e));
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int e : a_in[*it])
      s.a_edge_order.push_back(e);
  std::vector<int> trail;
  if (!s.roots_from(0, trail))
    return std::nullopt;
  return s.map;
}

bool is_subproof(const ProofGraph &s, const ProofGraph &h) {
  if (!structural_violation(s).empty())
    return false;
  return homomorphism(s, h, HomOptions{true, true}).has_value();
}

ProofGraph subproof_at(const ProofGraph &p, int v) {
  std::vector<int> in = p.incoming();
  std::vector<int> remap(p.vertices.size(), -1);
  ProofGraph out;
  std::function<int(int)> visit = [&](int x) -> int {
    if (remap[x] >= 0)
      return remap[x];
    std::vector<int> prem;
    if (in[x] >= 0)
      for (int q : p.edges[in[x]].premises)
        prem.push_back(visit(q));
    int nx = out.add_vertex(p.vertices[x]);
    remap[x] = nx;
    if (in[x] >= 0)
      out.add_edge(std::move(prem), nx, p.edges[in[x]].schema);
    return nx;
  };
  visit(v);
  return out;
}

std::vector<Schema> schema_sequence(const ProofGraph &p) {
  std::vector<int> order = p.topo_order();
  std::vector<int> pos(p.vertices.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    pos[order[i]] = static_cast<int>(i);
  std::vector<int> edges(p.edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    edges[e] = static_cast<int>(e);
  std::stable_sort(edges.begin(), edges.end(), [&](int x, int y) {
    return pos[p.edges[x].conclusion] < pos[p.edges[y].conclusion];
  });
  std::vector<Schema> out;
  std::set<std::pair<int, std::vector<int>>> groups;
  for (int e : edges) {
    const Edge &ed = p.edges[e];
    if (groups.insert({static_cast<int>(ed.schema), ed.premises}).second)
      out.push_back(ed.schema);
  }
  return out;
}

} // namespace omqe
