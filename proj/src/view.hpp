/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "chase.hpp"
#include "matcher.hpp"
#include "proof.hpp"

namespace omqe {

// A finite part of a derivation structure over ground atoms. Rule vertices
// are implicit: an MP edge uses rules[rule] as its last premise.
enum class ViewKind : std::uint8_t { Skolem, CompressedDLLite, CompressedEL };

struct ViewEdge {
  Schema schema = Schema::MP;
  int conclusion = -1;
  std::vector<int> premises;  // atom ids; MP: body order, E: {equality, atom}
  int rule = -1;              // MP only
};

struct DerivationView {
  ViewKind kind = ViewKind::Skolem;
  int depth = 0;
  bool saturated = true;  // no inference was cut by the depth bound
  std::vector<Rule> rules;
  std::vector<Atom> atoms;
  std::vector<bool> fact;
  std::vector<std::vector<int>> in;  // incoming edge ids per atom
  std::vector<ViewEdge> edges;
  std::unordered_map<Atom, int, AtomHash> index;
  AtomSet set;

  int find(const Atom &a) const {
    auto it = index.find(a);
    return it == index.end() ? -1 : it->second;
  }
};

DerivationView build_sk_view(const KnowledgeBase &kb, int depth);

// Fresh individuals of the compressed structures. DL-Lite: one per role
// (b#R, b#R- for the inverse); EL: one per Skolem function (c#f_i).
DerivationView compress_dllite(const KnowledgeBase &kb);
DerivationView compress_el(const KnowledgeBase &kb);
bool is_fresh_name(TermId t);

// Depth used for the finite view of a goal: entailment depth plus the number
// of existential rules, at most 4 more.
int view_depth(const KnowledgeBase &kb, int entail_depth);

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

struct Costs {
  std::vector<std::uint64_t> value;  // kInf when not derivable
  std::vector<int> best_edge;        // -1 for facts and underivable atoms
};

// Minimal tree size per atom: 1 + sum of premise values (+1 for the rule).
Costs min_tree_size_dp(const DerivationView &v);
// Non-sharing relaxation of Size: premises counted once per edge.
Costs min_size_relaxation(const DerivationView &v);

// Proof made of the best edges below the given root atoms, one vertex per
// label. With a goal, adds the (C)/(G) tail unless omitted.
ProofGraph assemble_proof(const DerivationView &v, const std::vector<int> &best_edge, const std::vector<int> &roots,
                          const BooleanCQ *goal, bool strict_cg);

// All matches of q in the view, in matcher order, up to limit.
std::vector<Subst> view_matches(const DerivationView &v, const BooleanCQ &q, std::size_t limit = 1000000);

} // namespace omqe
