/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chase.hpp"
#include "generators.hpp"
#include "parser.hpp"
#include "proof.hpp"

namespace omqe::testing {

inline std::string read_text(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string &name) { return std::string(OMQE_DATA_DIR) + "/" + name; }

inline KnowledgeBase example1() { return parse_kb(read_text(data_path("example1.kb"))); }

// Hand transcription of the Skolemized proof of the running example:
// five MP inferences, the conjunction r(a,f(a)), r(a,f(a)), D(a), and the
// generalization to the goal. Vertex ids follow the comments.
inline ProofGraph running_proof() {
  KnowledgeBase kb = example1();
  std::vector<Rule> sk = skolemize(kb.tbox);
  auto atom = [](const char *s) { return Label::of_atom(parse_ground_atom(s)); };
  ProofGraph p;
  int fact = p.add_vertex(atom("A(a)"));                       // 0
  int r1 = p.add_vertex(Label::of_rule(sk[0]));                // 1
  int r = p.add_vertex(atom("r(a,f_1(a))"));                   // 2
  int b = p.add_vertex(atom("B(f_1(a))"));                     // 3
  int r2 = p.add_vertex(Label::of_rule(sk[1]));                // 4
  int s = p.add_vertex(atom("s(f_1(a),f_2(f_1(a)))"));         // 5
  int r3 = p.add_vertex(Label::of_rule(sk[2]));                // 6
  int e = p.add_vertex(atom("E(f_1(a))"));                     // 7
  int r4 = p.add_vertex(Label::of_rule(sk[3]));                // 8
  int d = p.add_vertex(atom("D(a)"));                          // 9
  int conj = p.add_vertex(Label::of_conjunction(
      {parse_ground_atom("r(a,f_1(a))"), parse_ground_atom("r(a,f_1(a))"), parse_ground_atom("D(a)")}));  // 10
  int goal = p.add_vertex(Label::of_query(*kb.query));         // 11
  p.add_edge({fact, r1}, r, Schema::MP);
  p.add_edge({fact, r1}, b, Schema::MP);
  p.add_edge({b, r2}, s, Schema::MP);
  p.add_edge({s, r, r3}, e, Schema::MP);
  p.add_edge({e, r, r4}, d, Schema::MP);
  p.add_edge({r, r, d}, conj, Schema::C);
  p.add_edge({conj}, goal, Schema::G);
  return p;
}

// The instance set shared by the oracle and subproof checks.
inline std::vector<GeneratedInstance> oracle_instances() {
  std::vector<GeneratedInstance> out;
  for (int n = 0; n <= 5; ++n)
    out.push_back(gen_dllite_chain(n));
  for (int n = 1; n <= 5; ++n)
    out.push_back(gen_dllite_path(n));
  for (int n = 1; n <= 3; ++n)
    out.push_back(gen_el_tree(n));
  for (int n = 1; n <= 4; ++n)
    out.push_back(gen_el_abox(n));
  for (std::uint32_t seed = 1; out.size() < 200; ++seed)
    out.push_back(gen_dllite_tree(seed));
  return out;
}

// Random KB in normal form over a small vocabulary; every rule shape occurs.
inline std::string random_kb_text(std::mt19937 &rng) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto c = [&] { return "A" + std::to_string(pick(4)); };
  auto r = [&] { return "r" + std::to_string(pick(3)); };
  auto k = [&] { return std::string(pick(2) ? "a" : "b"); };
  std::string text;
  int rules = 1 + pick(6);
  for (int i = 0; i < rules; ++i) {
    std::string rule;
    switch (pick(8)) {
    case 0: rule = c() + "(x) -> " + c() + "(x)"; break;
    case 1: rule = c() + "(x), " + c() + "(x) -> " + c() + "(x)"; break;
    case 2: rule = r() + "(x,y), " + c() + "(y) -> " + c() + "(x)"; break;
    case 3: rule = c() + "(x) -> exists y. " + r() + "(x,y), " + c() + "(y)"; break;
    case 4: rule = c() + "(x), " + r() + "(x,y) -> " + c() + "(y)"; break;
    case 5: rule = c() + "(x) -> x = " + k(); break;
    case 6: rule = r() + "(x,y) -> " + r() + "(x,y)"; break;
    default: rule = r() + "(x,y) -> " + r() + "(y,x)"; break;
    }
    text += "rule: " + rule + "\n";
  }
  int facts = 1 + pick(4);
  for (int i = 0; i < facts; ++i)
    text += pick(3) ? "fact: " + c() + "(" + k() + ")\n" : "fact: " + r() + "(" + k() + "," + k() + ")\n";
  return text;
}

} // namespace omqe::testing
