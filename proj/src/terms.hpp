/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace omqe {

// Interned identifiers. Ids are stable for the lifetime of the process and
// safe to read from several threads.
using Sym = std::uint32_t;
using TermId = std::uint32_t;

inline constexpr TermId kNoTerm = 0xffffffffu;

Sym intern(std::string_view text);
const std::string &sym_name(Sym s);

enum class TermKind : std::uint8_t { Constant, Variable, Skolem };

TermId make_const(Sym name);
TermId make_const(std::string_view name);
TermId make_var(Sym name);
TermId make_var(std::string_view name);
TermId make_skolem(Sym fn, TermId arg);

TermKind term_kind(TermId t);
Sym term_name(TermId t);      // constant/variable name or function id
TermId term_arg(TermId t);    // kNoTerm unless Skolem
int term_depth(TermId t);     // nesting depth; 0 for constants and variables
bool term_ground(TermId t);
const std::string &term_str(TermId t);

inline bool is_var(TermId t) { return term_kind(t) == TermKind::Variable; }
inline bool is_const(TermId t) { return term_kind(t) == TermKind::Constant; }
inline bool is_skolem(TermId t) { return term_kind(t) == TermKind::Skolem; }

// Lexicographic order on the rendered form, independent of interning order.
bool term_less(TermId a, TermId b);

// All subterms including t itself.
void collect_subterms(TermId t, std::vector<TermId> &out);

// Replaces every occurrence of `from` (at any depth) by `to`.
TermId replace_deep(TermId t, TermId from, TermId to);

} // namespace omqe
