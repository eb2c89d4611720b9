/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "terms.hpp"

namespace omqe {

enum class AtomKind : std::uint8_t { Concept, Role, Equality };

// Role atoms over inverse roles are stored with swapped arguments, so
// r-(s,t) and r(t,s) are the same value.
struct Atom {
  AtomKind kind = AtomKind::Concept;
  Sym pred = 0;
  TermId a = kNoTerm;
  TermId b = kNoTerm;

  friend bool operator==(const Atom &, const Atom &) = default;
};

Atom concept_atom(Sym pred, TermId t);
Atom role_atom(Sym pred, TermId s, TermId t);
Atom equality_atom(TermId lhs, TermId rhs);

std::string atom_str(const Atom &a);
bool atom_ground(const Atom &a);
int atom_depth(const Atom &a);
bool atom_less(const Atom &x, const Atom &y);
bool atom_has_top_level(const Atom &a, TermId t);

struct AtomHash {
  std::size_t operator()(const Atom &a) const noexcept {
    std::size_t h = static_cast<std::size_t>(a.kind);
    h = h * 1000003u ^ a.pred;
    h = h * 1000003u ^ a.a;
    h = h * 1000003u ^ a.b;
    return h;
  }
};

// Variable substitution; small and linear because patterns are small.
class Subst {
public:
  TermId get(TermId var) const {
    for (const auto &[v, t] : map_)
      if (v == var)
        return t;
    return kNoTerm;
  }
  void set(TermId var, TermId value) {
    for (auto &[v, t] : map_)
      if (v == var) {
        t = value;
        return;
      }
    map_.emplace_back(var, value);
  }
  void pop() { map_.pop_back(); }
  std::size_t size() const { return map_.size(); }
  const std::vector<std::pair<TermId, TermId>> &entries() const { return map_; }

  TermId apply(TermId t) const;
  Atom apply(const Atom &a) const;

private:
  std::vector<std::pair<TermId, TermId>> map_;
};

enum class NormalForm : std::uint8_t { I, II, III, IV, V, VI, VII };
const char *normal_form_name(NormalForm f);

struct Rule {
  std::vector<Atom> body;
  std::vector<Atom> head;
  std::vector<TermId> existentials;
  NormalForm form = NormalForm::I;
  int index = 0;          // 1-based TBox position; 0 for tautologies
  bool inverse = false;   // an inverse role relative to the centre variable
  bool skolemized = false;

  friend bool operator==(const Rule &x, const Rule &y) {
    return x.body == y.body && x.head == y.head && x.existentials == y.existentials &&
           x.skolemized == y.skolemized;
  }
};

std::string rule_str(const Rule &r);
std::vector<TermId> atom_vars(const std::vector<Atom> &atoms);

struct BooleanCQ {
  std::vector<Atom> atoms;
  std::vector<TermId> vars;

  bool ground() const { return vars.empty(); }
};

std::string cq_str(const BooleanCQ &q);
std::string conjunction_str(const std::vector<Atom> &atoms);

enum class Fragment : std::uint8_t { DLLiteR, EL, HornALC, HornALCHOI };
const char *fragment_name(Fragment f);
std::optional<Fragment> fragment_from_name(const std::string &s);

struct Signature {
  std::set<std::string> concept_names;
  std::set<std::string> role_names;
  std::set<std::string> individual_names;
};

struct KnowledgeBase {
  std::vector<Rule> tbox;
  std::vector<Atom> abox;
  Signature signature;
  Fragment fragment = Fragment::DLLiteR;
  std::optional<BooleanCQ> query;
};

std::string serialize_kb(const KnowledgeBase &kb);

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string &msg, int l, int c)
      : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
        line(l), column(c) {}
};

// Errors raised for invalid arguments to library operations.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace omqe
