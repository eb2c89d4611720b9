/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proof.hpp"
#include "view.hpp"

namespace omqe {

struct SearchBudget {
  Measure measure = Measure::Size;
  std::uint64_t bound = 0;          // 0: optimize without a bound
  std::uint64_t max_nodes = 1000000;
  std::uint64_t max_millis = 60000;
  bool unique_labels = true;        // one vertex per label
  bool stop_at_first = false;       // decision mode: any proof within bound
  bool strict_cg = false;
};

enum class SearchStatus { Found, None, Exhausted };
const char *search_status_name(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<ProofGraph> proof;
  std::uint64_t value = 0;      // measure of proof
  bool optimal = false;         // search space fully explored
  std::uint64_t nodes = 0;
  int view_depth = 0;
};

// Exact branch-and-bound over proofs in the finite view. Returns Found with
// an optimal proof (or, with stop_at_first, any proof within the bound),
// None when no proof within the bound exists in the view, Exhausted when a
// resource limit stopped the search first.
SearchResult bounded_search(const DerivationView &view, const BooleanCQ &q, const SearchBudget &budget);

// Builds the Skolem view at view_depth and runs bounded_search; None
// without searching when the goal is not entailed.
SearchResult bounded_search(const KnowledgeBase &kb, const BooleanCQ &q, const SearchBudget &budget);

struct AlgoResult {
  ProofGraph proof;
  std::uint64_t value = 0;
};

// Per-match union of non-sharing Size witnesses; value is the measured Size
// of the best assembled proof. nullopt when no match exists in the view.
std::optional<AlgoResult> min_size_dijkstra(const DerivationView &view, const BooleanCQ &q, bool strict_cg = false);

// Best match under the exact tree-size DP.
std::optional<AlgoResult> min_tree_size_proof(const DerivationView &view, const BooleanCQ &q, bool strict_cg = false);

// Assignment node (query term -> view term) and the weighted edges of the
// cost graph, oriented from the root of the Gaifman tree.
struct CostGraph {
  struct Node {
    TermId term;
    TermId value;
    std::uint64_t cost;  // unary atoms on the term
  };
  struct Arc {
    int from;
    int to;
    std::uint64_t gamma;  // binary atoms between the two terms
  };
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  TermId root = kNoTerm;
};

CostGraph build_cost_graph(const DerivationView &view, const Costs &costs, const BooleanCQ &q,
                           const DerivationView *filter);

// Polynomial algorithm for tree-shaped queries over DL-Lite KBs. Throws
// InputError when preconditions fail or the goal is not entailed.
AlgoResult tree_query_min_treesize(const KnowledgeBase &kb, const BooleanCQ &q, bool strict_cg = false);

// EL: iterate over assignments to view individuals (filtered by the
// compressed structure) and sum per-atom minimal tree sizes.
AlgoResult el_cq_min_treesize(const KnowledgeBase &kb, const BooleanCQ &q, bool strict_cg = false);

// Proof of an atom of a compressed structure built from its DP witnesses.
ProofGraph compressed_proof(const DerivationView &compressed, const Costs &costs, int atom);

// Rewrites fresh names to Skolem terms bottom-up along the proof. Throws
// InputError when a fresh name cannot be resolved consistently.
ProofGraph decompress(const ProofGraph &compressed, const KnowledgeBase &kb);

// The shared Skolem view for kb and q, at the depth used by every optimal
// algorithm. Throws InputError when q is not entailed.
DerivationView goal_view(const KnowledgeBase &kb, const BooleanCQ &q, int *entail_depth = nullptr);

} // namespace omqe
