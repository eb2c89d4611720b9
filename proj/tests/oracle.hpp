/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Reference computations that share no code with the view, the DP or the
// search: a Bellman-Ford style fixpoint over the inferences enumerated on
// the chase. Valid for KBs without equality rules.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "chase.hpp"
#include "deriver_sk.hpp"
#include "view.hpp"

namespace omqe::testing {

inline constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Minimal tree size of every atom of chase(kb, depth).
inline std::unordered_map<Atom, std::uint64_t, AtomHash> tree_costs(const KnowledgeBase &kb, int depth) {
  ChaseState st = chase(kb, depth);
  std::vector<Rule> rules = skolemize(kb.tbox);
  std::unordered_map<Atom, std::uint64_t, AtomHash> cost;
  for (const Atom &a : st.atoms.all())
    cost[a] = std::find(kb.abox.begin(), kb.abox.end(), a) != kb.abox.end() ? 1 : kNone;
  std::vector<InferenceInstance> inst = mp_instances(st.atoms, rules);
  for (bool changed = true; changed;) {
    changed = false;
    for (const InferenceInstance &i : inst) {
      std::uint64_t c = 2;  // the conclusion and the rule leaf
      for (const Label &p : i.premises) {
        if (p.kind == LabelKind::Rule)
          continue;
        std::uint64_t pc = cost.at(p.atoms[0]);
        if (pc == kNone) {
          c = kNone;
          break;
        }
        c += pc;
      }
      const Atom &h = i.conclusion.atoms[0];
      auto it = cost.find(h);
      if (c != kNone && it != cost.end() && c < it->second) {
        it->second = c;
        changed = true;
      }
    }
  }
  return cost;
}

// Minimal tree size of a proof of q; kNone when q has no match.
inline std::uint64_t oracle_tree_size(const KnowledgeBase &kb, const BooleanCQ &q) {
  Entailment e = entails(kb, q);
  if (e.verdict != Verdict::Yes)
    return kNone;
  int depth = view_depth(kb, e.depth);
  auto cost = tree_costs(kb, depth);
  if (omit_cg(q, false))
    return cost.at(q.atoms[0]);
  std::uint64_t best = kNone;
  for (const Subst &s : match_query(q, chase(kb, depth), 1000000)) {
    std::uint64_t sum = 2;  // conjunction and generalization vertices
    for (const Atom &a : q.atoms) {
      std::uint64_t c = cost.at(s.apply(a));
      if (c == kNone) {
        sum = kNone;
        break;
      }
      sum += c;
    }
    best = std::min(best, sum);
  }
  return best;
}

} // namespace omqe::testing
