/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <set>

#include "deriver_sk.hpp"

namespace omqe {

const char *search_status_name(SearchStatus s) {
  switch (s) {
  case SearchStatus::Found: return "found";
  case SearchStatus::None: return "none";
  default: return "exhausted";
  }
}

namespace {

using Key = std::array<std::uint64_t, 3>;

struct Vertex {
  int atom;
  bool leaf;
  int edge = -1;          // view edge once derived
  std::vector<int> prem;  // vertex ids, parallel to the edge's premises
};

class Search {
public:
  Search(const DerivationView &v, const BooleanCQ &q, const SearchBudget &b)
      : v_(v), q_(q), b_(b), h_(min_tree_size_dp(v)), cg_(!omit_cg(q, b.strict_cg)),
        tree_mode_(!b.unique_labels && b.measure == Measure::TreeSize) {
    start_ = std::chrono::steady_clock::now();
    if (b.bound > 0)
      best_ = {b.bound + 1, 0, 0};
    else
      best_ = {kInf, kInf, kInf};
    order_edges();
  }

  SearchResult run() {
    std::vector<Subst> matches = view_matches(v_, q_);
    struct Cand {
      std::uint64_t lb;
      std::vector<int> roots;
    };
    std::vector<Cand> cands;
    std::set<std::vector<int>> seen;
    for (const Subst &m : matches) {
      std::vector<int> roots;
      std::uint64_t lb = 0;
      for (const Atom &a : q_.atoms) {
        int id = v_.find(m.apply(a));
        roots.push_back(id);
        lb = h_.value[id] == kInf || lb == kInf ? kInf : lb + h_.value[id];
      }
      if (lb == kInf || !seen.insert(roots).second)
        continue;
      cands.push_back({lb, std::move(roots)});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand &x, const Cand &y) { return x.lb < y.lb; });

    for (const Cand &c : cands) {
      if (stop_)
        break;
      vs_.clear();
      by_atom_.assign(v_.atoms.size(), {});
      rule_use_.assign(v_.rules.size(), 0);
      rules_used_ = 0;
      roots_.clear();
      for (int a : c.roots) {
        int existing = by_atom_[a].empty() ? -1 : by_atom_[a].front();
        roots_.push_back(existing >= 0 ? existing : new_vertex(a));
      }
      dfs();
    }

    SearchResult r;
    r.nodes = nodes_;
    r.view_depth = v_.depth;
    if (best_proof_) {
      r.status = SearchStatus::Found;
      r.proof = best_proof_;
      r.value = measure(*best_proof_, b_.measure);
      r.optimal = !exhausted_ && !b_.stop_at_first;
    } else {
      r.status = exhausted_ ? SearchStatus::Exhausted : SearchStatus::None;
      r.optimal = !exhausted_;
    }
    return r;
  }

private:
  const DerivationView &v_;
  const BooleanCQ &q_;
  SearchBudget b_;
  Costs h_;
  bool cg_;
  bool tree_mode_;
  std::vector<std::vector<int>> ordered_in_;
  std::vector<Vertex> vs_;
  std::vector<std::vector<int>> by_atom_;
  std::vector<int> rule_use_;
  int rules_used_ = 0;
  std::vector<int> roots_;
  Key best_;
  std::optional<ProofGraph> best_proof_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;

  std::uint64_t edge_cost(int e) const {
    const ViewEdge &ed = v_.edges[e];
    std::uint64_t t = ed.schema == Schema::MP ? 2 : 1;
    for (int p : ed.premises) {
      if (h_.value[p] == kInf)
        return kInf;
      t += h_.value[p];
    }
    return t;
  }

  void order_edges() {
    ordered_in_.resize(v_.atoms.size());
    for (std::size_t a = 0; a < v_.atoms.size(); ++a) {
      if (v_.fact[a])
        continue;
      std::vector<std::pair<std::uint64_t, int>> es;
      for (int e : v_.in[a]) {
        std::uint64_t c = edge_cost(e);
        if (c != kInf)
          es.emplace_back(c, e);
      }
      std::stable_sort(es.begin(), es.end(), [](auto &x, auto &y) { return x.first < y.first; });
      for (auto &[c, e] : es)
        ordered_in_[a].push_back(e);
    }
  }

  int new_vertex(int atom) {
    vs_.push_back(Vertex{atom, static_cast<bool>(v_.fact[atom]), -1, {}});
    int id = static_cast<int>(vs_.size()) - 1;
    by_atom_[atom].push_back(id);
    return id;
  }

  void pop_vertex() {
    by_atom_[vs_.back().atom].pop_back();
    vs_.pop_back();
  }

  bool reaches(int from, int target) const {
    if (from == target)
      return true;
    std::vector<int> stack{from};
    std::vector<bool> seen(vs_.size(), false);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == target)
        return true;
      if (seen[x])
        continue;
      seen[x] = true;
      for (int p : vs_[x].prem)
        stack.push_back(p);
    }
    return false;
  }

  std::uint64_t tree_lb() const {
    std::vector<std::uint64_t> memo(vs_.size(), 0);
    std::function<std::uint64_t(int)> ts = [&](int x) -> std::uint64_t {
      if (memo[x])
        return memo[x];
      const Vertex &vx = vs_[x];
      std::uint64_t t;
      if (vx.leaf)
        t = 1;
      else if (vx.edge < 0)
        t = h_.value[vx.atom];
      else {
        t = v_.edges[vx.edge].schema == Schema::MP ? 2 : 1;
        for (int p : vx.prem)
          t += ts(p);
      }
      return memo[x] = t;
    };
    std::uint64_t total = cg_ ? 2 : 0;
    for (int r : roots_)
      total += ts(r);
    return total;
  }

  std::uint64_t domain_lb() const {
    std::vector<TermId> terms;
    for (const Vertex &x : vs_) {
      const Atom &a = v_.atoms[x.atom];
      collect_subterms(a.a, terms);
      if (a.b != kNoTerm)
        collect_subterms(a.b, terms);
    }
    std::sort(terms.begin(), terms.end());
    return static_cast<std::uint64_t>(std::unique(terms.begin(), terms.end()) - terms.begin());
  }

  Key lower_key() const {
    std::uint64_t size = vs_.size() + rules_used_ + (cg_ ? 2 : 0);
    switch (b_.measure) {
    case Measure::Size: return {size, tree_lb(), 0};
    case Measure::TreeSize: return {tree_lb(), size, 0};
    case Measure::DomainSize: return {domain_lb(), size, tree_lb()};
    }
    return {};
  }

  bool out_of_budget() {
    ++nodes_;
    if (nodes_ > b_.max_nodes) {
      exhausted_ = stop_ = true;
      return true;
    }
    if ((nodes_ & 1023) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
      if (static_cast<std::uint64_t>(ms) > b_.max_millis) {
        exhausted_ = stop_ = true;
        return true;
      }
    }
    return false;
  }

  void dfs() {
    if (stop_ || out_of_budget())
      return;
    Key lb = lower_key();
    if (!(lb < best_))
      return;
    int open = -1;
    for (std::size_t i = 0; i < vs_.size(); ++i)
      if (!vs_[i].leaf && vs_[i].edge < 0) {
        open = static_cast<int>(i);
        break;
      }
    if (open < 0) {
      best_ = lb;
      best_proof_ = snapshot();
      if (b_.stop_at_first)
        stop_ = true;
      return;
    }
    for (int e : ordered_in_[vs_[open].atom]) {
      std::vector<int> chosen;
      choose(open, e, 0, chosen);
      if (stop_)
        return;
    }
  }

  void choose(int open, int e, std::size_t k, std::vector<int> &chosen) {
    const ViewEdge &ed = v_.edges[e];
    if (k == ed.premises.size()) {
      vs_[open].edge = e;
      vs_[open].prem = chosen;
      if (ed.schema == Schema::MP && rule_use_[ed.rule]++ == 0)
        ++rules_used_;
      dfs();
      if (ed.schema == Schema::MP && --rule_use_[ed.rule] == 0)
        --rules_used_;
      vs_[open].edge = -1;
      vs_[open].prem.clear();
      return;
    }
    int pa = ed.premises[k];
    const std::vector<int> existing = by_atom_[pa];
    if (!tree_mode_) {
      for (int u : existing) {
        if (reaches(u, open))
          continue;
        chosen.push_back(u);
        choose(open, e, k + 1, chosen);
        chosen.pop_back();
        if (stop_ || b_.unique_labels)
          return;
      }
      if (b_.unique_labels && !existing.empty())
        return;  // only existing vertex creates a cycle
      if (!b_.unique_labels && vs_.size() >= v_.atoms.size() && !existing.empty())
        return;
    }
    int u = new_vertex(pa);
    chosen.push_back(u);
    choose(open, e, k + 1, chosen);
    chosen.pop_back();
    pop_vertex();
  }

  ProofGraph snapshot() const {
    ProofGraph p;
    std::vector<int> out(vs_.size(), -1);
    std::vector<int> rule_vertex(v_.rules.size(), -1);
    std::function<int(int)> visit = [&](int x) -> int {
      if (out[x] >= 0)
        return out[x];
      const Vertex &vx = vs_[x];
      std::vector<int> prem;
      for (int q : vx.prem)
        prem.push_back(visit(q));
      if (vx.edge >= 0 && v_.edges[vx.edge].schema == Schema::MP) {
        int r = v_.edges[vx.edge].rule;
        if (rule_vertex[r] < 0)
          rule_vertex[r] = p.add_vertex(Label::of_rule(v_.rules[r]));
        prem.push_back(rule_vertex[r]);
      }
      int id = p.add_vertex(Label::of_atom(v_.atoms[vx.atom]));
      out[x] = id;
      if (vx.edge >= 0)
        p.add_edge(std::move(prem), id, v_.edges[vx.edge].schema);
      return id;
    };
    std::vector<int> roots;
    for (int r : roots_)
      roots.push_back(visit(r));
    if (cg_) {
      std::vector<Atom> ground;
      for (int r : roots_)
        ground.push_back(v_.atoms[vs_[r].atom]);
      int conj = p.add_vertex(Label::of_conjunction(ground));
      p.add_edge(roots, conj, Schema::C);
      int g = p.add_vertex(Label::of_query(q_));
      p.add_edge({conj}, g, Schema::G);
    }
    return p;
  }
};

} // namespace

SearchResult bounded_search(const DerivationView &view, const BooleanCQ &q, const SearchBudget &budget) {
  Search s(view, q, budget);
  return s.run();
}

DerivationView goal_view(const KnowledgeBase &kb, const BooleanCQ &q, int *entail_depth) {
  Entailment e = entails(kb, q);
  if (e.verdict != Verdict::Yes)
    throw InputError(std::string("query is not entailed (") + verdict_name(e.verdict) + ")");
  if (entail_depth)
    *entail_depth = e.depth;
  return build_sk_view(kb, view_depth(kb, e.depth));
}

SearchResult bounded_search(const KnowledgeBase &kb, const BooleanCQ &q, const SearchBudget &budget) {
  Entailment e = entails(kb, q);
  if (e.verdict != Verdict::Yes) {
    SearchResult r;
    r.status = e.verdict == Verdict::No ? SearchStatus::None : SearchStatus::Exhausted;
    r.optimal = e.verdict == Verdict::No;
    return r;
  }
  return bounded_search(build_sk_view(kb, view_depth(kb, e.depth)), q, budget);
}

} // namespace omqe
