/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matcher.hpp"
#include "syntax.hpp"

namespace omqe {

// Skolem function symbol for the existential of rule `index` (1-based).
Sym skolem_symbol(int rule_index);

// One Skolem rule per TBox rule; form-IV existentials become f_i(frontier).
std::vector<Rule> skolemize(const std::vector<Rule> &tbox);

struct ChaseState {
  AtomSet atoms;
  // Oriented replacements (complex or left term -> constant), in order applied.
  std::vector<std::pair<TermId, TermId>> equalities;
  int depth_bound = 0;
  bool saturated_at_bound = true;
};

ChaseState chase(const KnowledgeBase &kb, int depth_bound);

std::vector<Subst> match_query(const BooleanCQ &q, const ChaseState &state, std::size_t limit);

enum class Verdict { Yes, No, Unknown };
const char *verdict_name(Verdict v);

struct Entailment {
  Verdict verdict = Verdict::Unknown;
  int depth = -1;              // depth of the first match, or the last depth tried
  std::optional<Subst> match;  // witness for Yes
};

// Default iterative-deepening ceiling: |T|*(|q|+1) + 2.
int default_depth_ceiling(const KnowledgeBase &kb, const BooleanCQ &q);

// ceiling < 0 selects the default.
Entailment entails(const KnowledgeBase &kb, const BooleanCQ &q, int ceiling = -1);

} // namespace omqe
