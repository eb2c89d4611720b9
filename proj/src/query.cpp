/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "query.hpp"

#include <algorithm>
#include <numeric>

namespace omqe {

std::size_t GaifmanGraph::index_of(TermId t) const {
  return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), t) - nodes.begin());
}

std::vector<TermId> query_terms(const BooleanCQ &q) {
  std::vector<TermId> out;
  auto add = [&](TermId t) {
    if (t != kNoTerm && std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
  };
  for (const Atom &a : q.atoms) {
    add(a.a);
    add(a.b);
  }
  return out;
}

GaifmanGraph gaifman_graph(const BooleanCQ &q) {
  GaifmanGraph g;
  g.nodes = query_terms(q);
  for (const Atom &a : q.atoms) {
    if (a.b == kNoTerm || a.a == a.b)
      continue;
    std::size_t i = g.index_of(a.a), j = g.index_of(a.b);
    std::pair<std::size_t, std::size_t> e{std::min(i, j), std::max(i, j)};
    if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end())
      g.edges.push_back(e);
  }
  return g;
}

bool is_tree_shaped(const BooleanCQ &q) {
  GaifmanGraph g = gaifman_graph(q);
  if (g.nodes.empty())
    return false;
  // Self loops r(x,x) make the graph non-simple; treat them as cycles.
  for (const Atom &a : q.atoms)
    if (a.b != kNoTerm && a.a == a.b)
      return false;
  if (g.edges.size() + 1 != g.nodes.size())
    return false;
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : g.edges) {
    std::size_t a = find(i), b = find(j);
    if (a == b)
      return false;
    parent[a] = b;
  }
  return true;
}

} // namespace omqe
