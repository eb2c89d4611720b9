/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <string>

#include "chase.hpp"
#include "json.hpp"
#include "proof.hpp"
#include "validate.hpp"

namespace omqe {

inline constexpr int kSchemaVersion = 1;

struct ProofDocument {
  ProofGraph proof;
  Deriver deriver = Deriver::Skolem;
  BooleanCQ goal;
};

nlohmann::ordered_json proof_to_json(const ProofGraph &p, Deriver d, const BooleanCQ &goal);
// Throws InputError on malformed documents; labels are parsed by kind.
ProofDocument proof_from_json(const nlohmann::json &j);

// Rule vertices gray and rounded, the sink filled.
std::string proof_to_dot(const ProofGraph &p);
// Nodes are terms labelled with their concept names, edges are role atoms.
std::string chase_to_dot(const ChaseState &state);

} // namespace omqe
