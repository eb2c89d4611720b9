/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <utility>
#include <vector>

#include "syntax.hpp"

namespace omqe {

// Co-occurrence graph of the terms of a query. Nodes keep first-occurrence
// order; edges are index pairs with first < second, without duplicates.
struct GaifmanGraph {
  std::vector<TermId> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t index_of(TermId t) const;
};

GaifmanGraph gaifman_graph(const BooleanCQ &q);
bool is_tree_shaped(const BooleanCQ &q);

// Terms of q (top-level arguments), first-occurrence order.
std::vector<TermId> query_terms(const BooleanCQ &q);

} // namespace omqe
