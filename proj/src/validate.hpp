/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>
#include <vector>

#include "proof.hpp"

namespace omqe {

enum class Deriver : std::uint8_t { Skolem, CQ };
const char *deriver_name(Deriver d);
std::optional<Deriver> deriver_from_name(const std::string &s);

struct Validation {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

// Checks the structural conditions, that every leaf is part of the KB (an
// ABox fact or a rule of the respective TBox), that every edge is an
// instance of a schema of the deriver, and that the sink is the goal.
Validation validate_proof(const ProofGraph &p, const KnowledgeBase &kb, const BooleanCQ &goal, Deriver d,
                          bool strict_cg = false);

} // namespace omqe
