/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// High-level operations behind the C API. Every result is a JSON document
// carrying schema_version; inputs are KB text and label strings.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "proof.hpp"
#include "search.hpp"
#include "validate.hpp"

namespace omqe::api {

using Json = nlohmann::ordered_json;

// Query given explicitly, else the KB's query: line. Throws InputError when
// neither exists.
BooleanCQ resolve_query(const KnowledgeBase &kb, const std::string &query_text);

Json answer(const KnowledgeBase &kb, const BooleanCQ &q, int depth_ceiling);

enum class Algo { Auto, Poly, Exact };
std::optional<Algo> algo_from_name(const std::string &s);

struct ExplainOptions {
  Measure measure = Measure::Size;
  std::uint64_t bound = 0;  // 0: no bound, just optimize
  Algo algo = Algo::Auto;
  Deriver deriver = Deriver::Skolem;
  bool strict_cg = false;
  bool unique_labels = true;
  std::uint64_t max_nodes = 1000000;
  std::uint64_t max_millis = 60000;
};

// status: found | none | exhausted. A found proof satisfies the bound.
Json explain(const KnowledgeBase &kb, const BooleanCQ &q, const ExplainOptions &opt);

// format: "text" (one atom per line), "json" or "dot".
std::string chase_output(const KnowledgeBase &kb, int depth, const std::string &format);

Json convert(const KnowledgeBase &kb, const std::string &proof_json, Deriver to, bool strict_cg);
Json validate(const KnowledgeBase &kb, const std::string &proof_json, bool strict_cg);
std::string export_dot(const std::string &proof_json);

struct BenchOptions {
  std::string family;
  int from = 1;
  int to = 1;
  std::vector<Measure> measures = {Measure::Size, Measure::TreeSize, Measure::DomainSize};
  int jobs = 1;
  std::uint64_t max_nodes = 1000000;
  std::uint64_t max_millis = 60000;
};
// CSV: family,parameter,measure,optimum,search_nodes,wall_ms
std::string bench(const BenchOptions &opt);

} // namespace omqe::api
