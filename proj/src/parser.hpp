/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <string_view>

#include "syntax.hpp"

namespace omqe {

// Parses the line-oriented KB format. Rules must be in normal form.
KnowledgeBase parse_kb(std::string_view text);

// As parse_kb, but rules are kept as written (no shape check, no fragment).
// Used by the normalizer.
KnowledgeBase parse_kb_lenient(std::string_view text);

// Label parsers used for proof files. Function applications become Skolem
// terms; rule variables are the identifiers of the body plus the
// existentially quantified ones.
Atom parse_ground_atom(std::string_view text);
std::vector<Atom> parse_conjunction(std::string_view text);
BooleanCQ parse_cq(std::string_view text);
Rule parse_rule(std::string_view text);

// Assigns normal_form/inverse or throws InputError("not in normal form ...").
void classify_rule(Rule &r);

struct RuleFragments {
  bool dllite = false;
  bool el = false;
  bool horn_alc = false;
};
RuleFragments rule_fragments(const Rule &r);
Fragment detect_fragment(const std::vector<Rule> &tbox);

// Recomputes the signature and fragment after programmatic construction;
// throws InputError on overlapping name sets or reserved names.
void finalize_kb(KnowledgeBase &kb);

} // namespace omqe
