/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <set>
#include <vector>

#include "proof.hpp"
#include "search.hpp"

namespace omqe {

// CQs in this deriver are sets of atoms, equal up to variable renaming.
BooleanCQ cq_normalize(const BooleanCQ &q);
bool cq_isomorphic(const BooleanCQ &a, const BooleanCQ &b);

// A variable named prefix<k> with the smallest k not in `used`; adds it.
TermId fresh_variable(std::set<TermId> &used, const std::string &prefix = "u");

// (MPe): (cq \ replace) plus the kept head atoms under pi, with the rule's
// existential variables renamed to fresh ones. Throws InputError when pi
// is not a match of the body or replace is not part of pi(body).
BooleanCQ mpe_apply(const BooleanCQ &cq, const Rule &rule, const Subst &pi, const std::vector<Atom> &replace,
                    const std::vector<std::size_t> &keep_head);

// (Te): pattern -> exists dup. pattern.
Rule te_rule(const std::vector<Atom> &pattern, const std::vector<TermId> &vars_to_duplicate);
bool is_tautology(const Rule &r);

// (Ee): drops the equality conjunct at `eq_index` and replaces its lhs by
// its rhs everywhere.
BooleanCQ ee_apply(const BooleanCQ &cq, std::size_t eq_index);
// (Ce): conjunction with b's variables renamed apart from a's.
BooleanCQ ce_apply(const BooleanCQ &a, const BooleanCQ &b);
// (Ge): replaces each chosen constant by a fresh variable.
BooleanCQ ge_apply(const BooleanCQ &cq, const std::vector<TermId> &constants);

bool check_cq_edge(Schema schema, const std::vector<Label> &premises, const Label &conclusion,
                   const std::vector<Rule> &tbox);

// Branch-and-bound over tree proofs in the CQ deriver (measure TreeSize;
// Size is reported on the same proofs). DomainSize is rejected.
SearchResult bounded_search_cq(const KnowledgeBase &kb, const BooleanCQ &q, const SearchBudget &budget);

// Proof transformations between the two derivers. Both throw InputError on
// inputs that are not valid proofs of goal.
ProofGraph transform_sk_to_cq(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal);
ProofGraph transform_cq_to_sk(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal,
                              bool strict_cg = false);

} // namespace omqe
