/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "api.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "chase.hpp"
#include "deriver_cq.hpp"
#include "generators.hpp"
#include "parser.hpp"
#include "proof_io.hpp"
#include "query.hpp"

namespace omqe::api {

BooleanCQ resolve_query(const KnowledgeBase &kb, const std::string &query_text) {
  if (!query_text.empty())
    return parse_cq(query_text);
  if (!kb.query)
    throw InputError("no query given and the KB has no query: line");
  return *kb.query;
}

Json answer(const KnowledgeBase &kb, const BooleanCQ &q, int depth_ceiling) {
  Entailment e = entails(kb, q, depth_ceiling);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["query"] = cq_str(q);
  j["verdict"] = verdict_name(e.verdict);
  j["depth"] = e.depth;
  if (e.match) {
    Json m = Json::object();
    for (TermId v : q.vars)
      m[term_str(v)] = term_str(e.match->apply(v));
    j["match"] = m;
  }
  return j;
}

std::optional<Algo> algo_from_name(const std::string &s) {
  if (s == "auto")
    return Algo::Auto;
  if (s == "poly")
    return Algo::Poly;
  if (s == "exact")
    return Algo::Exact;
  return std::nullopt;
}

namespace {

Json measures_of(const ProofGraph &p, Deriver d) {
  Json m;
  m["size"] = proof_size(p);
  m["tree"] = proof_tree_size(p);
  if (d == Deriver::Skolem)
    m["domain"] = proof_domain_size(p);
  return m;
}

// Why the polynomial algorithm does not apply, or empty.
std::string poly_obstacle(const KnowledgeBase &kb, const BooleanCQ &q, const ExplainOptions &opt) {
  if (opt.deriver != Deriver::Skolem)
    return "no polynomial algorithm for the CQ deriver";
  if (opt.measure != Measure::TreeSize)
    return std::string("no polynomial algorithm for measure ") + measure_name(opt.measure);
  if (kb.fragment == Fragment::DLLiteR && !is_tree_shaped(q) && q.atoms.size() > 1)
    return "query is not tree-shaped";
  if (kb.fragment != Fragment::DLLiteR && kb.fragment != Fragment::EL)
    return std::string("no polynomial algorithm for ") + fragment_name(kb.fragment);
  return {};
}

} // namespace

Json explain(const KnowledgeBase &kb, const BooleanCQ &q, const ExplainOptions &opt) {
  if (opt.deriver == Deriver::CQ && opt.measure == Measure::DomainSize)
    throw InputError("domain size is not defined for the CQ deriver");
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["query"] = cq_str(q);
  j["deriver"] = deriver_name(opt.deriver);
  j["measure"] = measure_name(opt.measure);
  if (opt.bound)
    j["bound"] = opt.bound;
  Json warnings = Json::array();

  bool use_poly = false;
  std::string obstacle = poly_obstacle(kb, q, opt);
  if (opt.algo == Algo::Poly && !obstacle.empty())
    warnings.push_back(obstacle + "; falling back to exact search");
  use_poly = opt.algo != Algo::Exact && obstacle.empty();

  std::optional<ProofGraph> proof;
  std::string status;
  bool optimal = false;
  std::uint64_t nodes = 0;
  Entailment e = entails(kb, q);
  if (e.verdict != Verdict::Yes) {
    j["algorithm"] = "entailment";
    status = e.verdict == Verdict::No ? "none" : "exhausted";
    optimal = e.verdict == Verdict::No;
    if (e.verdict == Verdict::Unknown)
      warnings.push_back("entailment undecided up to chase depth " + std::to_string(e.depth));
  } else if (use_poly) {
    bool tree_dl = kb.fragment == Fragment::DLLiteR && (is_tree_shaped(q) || q.atoms.size() == 1);
    AlgoResult r = tree_dl ? tree_query_min_treesize(kb, q, opt.strict_cg) : el_cq_min_treesize(kb, q, opt.strict_cg);
    j["algorithm"] = tree_dl ? "tree-query" : "el-assignment";
    optimal = true;
    if (opt.bound && r.value > opt.bound) {
      status = "none";
    } else {
      status = "found";
      proof = std::move(r.proof);
    }
  } else {
    SearchBudget b;
    b.measure = opt.measure;
    b.bound = opt.bound;
    b.max_nodes = opt.max_nodes;
    b.max_millis = opt.max_millis;
    b.unique_labels = opt.unique_labels;
    b.strict_cg = opt.strict_cg;
    SearchResult r = opt.deriver == Deriver::Skolem ? bounded_search(kb, q, b) : bounded_search_cq(kb, q, b);
    j["algorithm"] = opt.deriver == Deriver::Skolem ? "bounded-search" : "bounded-search-cq";
    status = search_status_name(r.status);
    optimal = r.optimal;
    nodes = r.nodes;
    proof = std::move(r.proof);
    if (opt.deriver == Deriver::CQ && opt.measure == Measure::Size)
      warnings.push_back("CQ search minimizes tree size; size is reported for that proof");
  }
  j["status"] = status;
  j["optimal"] = optimal;
  j["nodes"] = nodes;
  if (proof) {
    j["value"] = measure(*proof, opt.measure);
    j["measures"] = measures_of(*proof, opt.deriver);
    j["proof"] = proof_to_json(*proof, opt.deriver, q);
  }
  j["warnings"] = warnings;
  return j;
}

std::string chase_output(const KnowledgeBase &kb, int depth, const std::string &format) {
  if (depth < 0)
    throw InputError("depth must be non-negative");
  ChaseState st = chase(kb, depth);
  if (format == "dot")
    return chase_to_dot(st);
  if (format == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["depth"] = depth;
    j["saturated"] = st.saturated_at_bound;
    j["atoms"] = Json::array();
    for (const Atom &a : st.atoms.all())
      j["atoms"].push_back(atom_str(a));
    return j.dump(2) + "\n";
  }
  if (format != "text")
    throw InputError("unknown chase format '" + format + "'");
  std::string out;
  for (const Atom &a : st.atoms.all())
    out += atom_str(a) + "\n";
  return out;
}

namespace {

ProofDocument read_proof(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("proof file is not JSON: ") + e.what());
  }
  return proof_from_json(j);
}

} // namespace

Json convert(const KnowledgeBase &kb, const std::string &proof_json, Deriver to, bool strict_cg) {
  ProofDocument doc = read_proof(proof_json);
  Validation v = validate_proof(doc.proof, kb, doc.goal, doc.deriver, strict_cg);
  if (!v.ok)
    throw InputError("input proof is invalid: " + v.diagnostics.front());
  if (doc.deriver == to)
    return proof_to_json(doc.proof, to, doc.goal);
  ProofGraph out = to == Deriver::CQ ? transform_sk_to_cq(doc.proof, kb, doc.goal)
                                     : transform_cq_to_sk(doc.proof, kb, doc.goal, strict_cg);
  return proof_to_json(out, to, doc.goal);
}

Json validate(const KnowledgeBase &kb, const std::string &proof_json, bool strict_cg) {
  ProofDocument doc = read_proof(proof_json);
  Validation v = validate_proof(doc.proof, kb, doc.goal, doc.deriver, strict_cg);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["valid"] = v.ok;
  j["diagnostics"] = v.diagnostics;
  if (v.ok)
    j["measures"] = measures_of(doc.proof, doc.deriver);
  return j;
}

std::string export_dot(const std::string &proof_json) {
  ProofDocument doc = read_proof(proof_json);
  if (std::string s = structural_violation(doc.proof); !s.empty())
    throw InputError("cannot export: " + s);
  return proof_to_dot(doc.proof);
}

std::string bench(const BenchOptions &opt) {
  if (opt.from > opt.to)
    throw InputError("bench: empty parameter range");
  std::vector<std::pair<int, Measure>> tasks;
  for (int n = opt.from; n <= opt.to; ++n)
    for (Measure m : opt.measures)
      tasks.emplace_back(n, m);
  std::vector<std::string> lines(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::string error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      auto [n, m] = tasks[i];
      try {
        auto t0 = std::chrono::steady_clock::now();
        GeneratedInstance g = generate(opt.family, std::to_string(n));
        SearchBudget b;
        b.measure = m;
        b.max_nodes = opt.max_nodes;
        b.max_millis = opt.max_millis;
        SearchResult r = bounded_search(g.kb, g.query(), b);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        std::string opt_value = r.status == SearchStatus::Found && r.optimal ? std::to_string(r.value)
                                : r.status == SearchStatus::Found         ? "<=" + std::to_string(r.value)
                                                                          : search_status_name(r.status);
        lines[i] = opt.family + "," + std::to_string(n) + "," + measure_name(m) + "," + opt_value + "," +
                   std::to_string(r.nodes) + "," + std::to_string(ms);
      } catch (const std::exception &e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (error.empty())
          error = e.what();
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < jobs; ++i)
    pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool)
    t.join();
  if (!error.empty())
    throw InputError("bench: " + error);
  std::string out = "family,parameter,measure,optimum,search_nodes,wall_ms\n";
  for (const std::string &l : lines)
    out += l + "\n";
  return out;
}

} // namespace omqe::api
