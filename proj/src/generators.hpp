/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "syntax.hpp"

namespace omqe {

struct GeneratedInstance {
  std::string family;
  std::string parameter;
  KnowledgeBase kb;  // kb.query holds the query
  std::string growth;                          // poly, exp or doubly-exp
  std::map<std::string, std::uint64_t> bounds;  // measure name -> bound or exact value
  std::map<std::string, std::string> formulas;  // measure name -> closed form in n

  const BooleanCQ &query() const { return *kb.query; }
};

GeneratedInstance gen_dllite_chain(int n);
GeneratedInstance gen_dllite_path(int n);
GeneratedInstance gen_dllite_tree(std::uint32_t seed);
GeneratedInstance gen_el_tree(int n);
GeneratedInstance gen_el_abox(int n);
GeneratedInstance gen_hornalc_counter(int n);

// Clauses as lists of nonzero literals over variables 1..k (negative =
// negated). A clause p_i or not p_i is added for every variable that lacks one.
using Clauses = std::vector<std::vector<int>>;
GeneratedInstance gen_sat(const Clauses &clauses);
GeneratedInstance gen_sat_cq(const Clauses &clauses);
// "1 -2, 2 3" style: clauses separated by ',', literals by blanks.
Clauses parse_clauses(const std::string &text);
bool brute_force_sat(const Clauses &clauses);

// Dispatch by family name; `param` is n, a seed, or a clause string.
GeneratedInstance generate(const std::string &family, const std::string &param);
std::vector<std::string> generator_families();

nlohmann::ordered_json instance_sidecar(const GeneratedInstance &g);

} // namespace omqe
