/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

#include "matcher.hpp"
#include "proof.hpp"

namespace omqe {

struct InferenceInstance {
  Schema schema = Schema::MP;
  std::vector<Label> premises;
  Label conclusion;
  Subst witness;   // MP: the body match
  int rule = -1;   // MP: position in the Skolem rule list
};

// All MP inferences whose premises lie in `atoms`, one per head atom.
// Rules in list order, matches in bucket order.
std::vector<InferenceInstance> mp_instances(const AtomSet &atoms, const std::vector<Rule> &rules);

// All E inferences: for t = a in `atoms` and every atom with t at top level.
std::vector<InferenceInstance> e_instances(const AtomSet &atoms);

// Oriented replacement for an equality atom: complex side -> constant side;
// between two constants, lhs -> rhs as written.
std::pair<TermId, TermId> equality_orientation(const Atom &eq);
Atom replace_top_level(const Atom &a, TermId from, TermId to);

struct CGPair {
  InferenceInstance conjunction;
  InferenceInstance generalization;
  Subst sigma;
};

// Throws InputError("no match") when goal does not map into atoms.
CGPair cg_instances(const AtomSet &atoms, const BooleanCQ &goal);
// Same for a fixed sigma.
CGPair cg_for(const BooleanCQ &goal, const Subst &sigma);

// Whether (premises, conclusion) is an instance of `schema` in the sk
// deriver. `rules` is the Skolemized TBox; `goal` fixes the (G) target.
bool check_sk_edge(Schema schema, const std::vector<Label> &premises, const Label &conclusion,
                   const std::vector<Rule> &rules, const BooleanCQ *goal);

// Whether the single-atom ground goal is emitted without the (C)+(G) tail.
bool omit_cg(const BooleanCQ &goal, bool strict_cg);

} // namespace omqe
