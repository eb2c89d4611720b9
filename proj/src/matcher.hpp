/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "syntax.hpp"

namespace omqe {

// Set of atoms with insertion order and per-predicate buckets.
class AtomSet {
public:
  bool insert(const Atom &a);
  bool contains(const Atom &a) const { return set_.count(a) != 0; }
  const std::vector<Atom> &bucket(AtomKind kind, Sym pred) const;
  // Atoms of the bucket whose argument `pos` (0 or 1) is `t`, in insertion order.
  const std::vector<Atom> &bucket_at(AtomKind kind, Sym pred, int pos, TermId t) const;
  const std::vector<Atom> &all() const { return order_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

private:
  static std::uint64_t key(AtomKind k, Sym p) { return (static_cast<std::uint64_t>(p) << 2) | static_cast<std::uint64_t>(k); }
  std::unordered_set<Atom, AtomHash> set_;
  struct ArgKeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, TermId> &k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
    }
  };
  std::unordered_map<std::uint64_t, std::vector<Atom>> buckets_;
  std::unordered_map<std::pair<std::uint64_t, TermId>, std::vector<Atom>, ArgKeyHash> args_[2];
  std::vector<Atom> order_;
};

// Decides which pattern terms may be bound. The default binds every variable.
using BindablePred = std::function<bool(TermId)>;

// Unifies pattern term p against data term d under s, extending s. Returns
// false (and leaves s with possibly extra bindings recorded in `added`) on
// mismatch; callers undo via the returned count.
bool unify_term(TermId p, TermId d, Subst &s, const BindablePred &bindable, std::size_t &added);
bool unify_atom(const Atom &p, const Atom &d, Subst &s, const BindablePred &bindable, std::size_t &added);

// Enumerates homomorphisms of `pattern` into `data`, extending `s`. The
// callback returns false to stop. Atoms are chosen most-constrained first;
// candidates are tried in bucket (insertion) order.
void match_atoms(const std::vector<Atom> &pattern, const AtomSet &data, Subst &s,
                 const std::function<bool(const Subst &)> &on_match, const BindablePred &bindable = {});

// First match only.
std::optional<Subst> match_one(const std::vector<Atom> &pattern, const AtomSet &data, const BindablePred &bindable = {});

AtomSet make_atom_set(const std::vector<Atom> &atoms);

} // namespace omqe
