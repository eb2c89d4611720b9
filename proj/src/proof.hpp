/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syntax.hpp"

namespace omqe {

enum class Schema : std::uint8_t { MP, E, C, G, MPe, Te, Ee, Ce, Ge };
const char *schema_name(Schema s);
std::optional<Schema> schema_from_name(const std::string &s);
bool is_sk_schema(Schema s);

enum class LabelKind : std::uint8_t { Atom, Conjunction, Query, Rule };
const char *label_kind_name(LabelKind k);

struct Label {
  LabelKind kind = LabelKind::Atom;
  std::vector<Atom> atoms;   // Atom: exactly one; Conjunction/Query: the conjuncts
  std::vector<TermId> vars;  // Query: existential variables
  Rule rule;                 // Rule only

  static Label of_atom(const Atom &a);
  static Label of_conjunction(std::vector<Atom> atoms);
  static Label of_query(const BooleanCQ &q);
  static Label of_rule(const Rule &r);

  BooleanCQ cq() const { return BooleanCQ{atoms, vars}; }

  friend bool operator==(const Label &x, const Label &y);
};

std::string label_str(const Label &l);

struct Edge {
  std::vector<int> premises;  // ordered; a vertex may occur twice
  int conclusion = -1;
  Schema schema = Schema::MP;
};

struct ProofGraph {
  std::vector<Label> vertices;
  std::vector<Edge> edges;

  int add_vertex(Label l);
  void add_edge(std::vector<int> premises, int conclusion, Schema schema);

  // Index of the (first) incoming edge per vertex, -1 for leaves.
  std::vector<int> incoming() const;
  std::vector<int> sinks() const;
  bool acyclic() const;
  // Vertices ordered premises-before-conclusions; empty if cyclic.
  std::vector<int> topo_order() const;
  int sink() const;  // the unique sink, or -1
};

enum class Measure : std::uint8_t { Size, TreeSize, DomainSize };
const char *measure_name(Measure m);
std::optional<Measure> measure_from_name(const std::string &s);

std::uint64_t proof_size(const ProofGraph &p);
std::uint64_t proof_tree_size(const ProofGraph &p);   // saturates at UINT64_MAX
std::uint64_t proof_domain_size(const ProofGraph &p);
std::uint64_t measure(const ProofGraph &p, Measure m);

// Ground terms (with nested subterms) of the non-rule labels.
std::vector<TermId> proof_domain(const ProofGraph &p);

// Structural conditions of a proof: acyclic, one sink, at most one
// incoming edge per vertex, edge ids in range. Empty string if satisfied.
std::string structural_violation(const ProofGraph &p);

// Tree unraveling from the sink. Throws InputError beyond max_vertices.
ProofGraph tree_unravel(const ProofGraph &p, std::size_t max_vertices = 1000000);

struct HomOptions {
  bool injective = false;
  bool leaves_to_leaves = false;
};

// Label- and edge-preserving vertex map from h1 into h2.
std::optional<std::vector<int>> homomorphism(const ProofGraph &h1, const ProofGraph &h2, HomOptions opt = {});

bool is_subproof(const ProofGraph &s, const ProofGraph &h);

// Subgraph rooted at vertex v (everything v depends on), reindexed.
ProofGraph subproof_at(const ProofGraph &p, int v);

// Consecutive groups of edges sharing schema and premise list, listed in
// topological order of conclusions.
std::vector<Schema> schema_sequence(const ProofGraph &p);

} // namespace omqe
