/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "matcher.hpp"

#include <algorithm>

namespace omqe {

bool AtomSet::insert(const Atom &a) {
  if (!set_.insert(a).second)
    return false;
  std::uint64_t k = key(a.kind, a.pred);
  buckets_[k].push_back(a);
  if (a.a != kNoTerm)
    args_[0][{k, a.a}].push_back(a);
  if (a.b != kNoTerm)
    args_[1][{k, a.b}].push_back(a);
  order_.push_back(a);
  return true;
}

const std::vector<Atom> &AtomSet::bucket(AtomKind kind, Sym pred) const {
  static const std::vector<Atom> empty;
  auto it = buckets_.find(key(kind, pred));
  return it == buckets_.end() ? empty : it->second;
}

const std::vector<Atom> &AtomSet::bucket_at(AtomKind kind, Sym pred, int pos, TermId t) const {
  static const std::vector<Atom> empty;
  auto it = args_[pos].find({key(kind, pred), t});
  return it == args_[pos].end() ? empty : it->second;
}

AtomSet make_atom_set(const std::vector<Atom> &atoms) {
  AtomSet s;
  for (const Atom &a : atoms)
    s.insert(a);
  return s;
}

namespace {

bool can_bind(TermId t, const BindablePred &bindable) { return bindable ? bindable(t) : is_var(t); }

} // namespace

bool unify_term(TermId p, TermId d, Subst &s, const BindablePred &bindable, std::size_t &added) {
  if (p == kNoTerm || d == kNoTerm)
    return p == d;
  if (can_bind(p, bindable)) {
    TermId v = s.get(p);
    if (v != kNoTerm)
      return v == d;
    s.set(p, d);
    ++added;
    return true;
  }
  if (term_kind(p) == TermKind::Skolem && !term_ground(p)) {
    if (term_kind(d) != TermKind::Skolem || term_name(d) != term_name(p))
      return false;
    return unify_term(term_arg(p), term_arg(d), s, bindable, added);
  }
  return p == d;
}

bool unify_atom(const Atom &p, const Atom &d, Subst &s, const BindablePred &bindable, std::size_t &added) {
  if (p.kind != d.kind || p.pred != d.pred)
    return false;
  if (!unify_term(p.a, d.a, s, bindable, added))
    return false;
  return unify_term(p.b, d.b, s, bindable, added);
}

namespace {

struct Matcher {
  const std::vector<Atom> &pattern;
  const AtomSet &data;
  const std::function<bool(const Subst &)> &on_match;
  const BindablePred &bindable;
  std::vector<bool> done;
  bool stop = false;

  int bound_args(const Atom &a, const Subst &s) const {
    int n = 0;
    for (TermId t : {a.a, a.b}) {
      if (t == kNoTerm)
        continue;
      if (!can_bind(t, bindable) || s.get(t) != kNoTerm)
        ++n;
    }
    return n;
  }

  // The data term a pattern argument is pinned to, or kNoTerm.
  TermId pinned(TermId t, const Subst &s) const {
    if (t == kNoTerm)
      return kNoTerm;
    if (can_bind(t, bindable))
      return s.get(t);
    return term_ground(t) ? t : kNoTerm;
  }

  // Smallest indexed candidate list for p under s.
  const std::vector<Atom> &candidates(const Atom &p, const Subst &s) const {
    const std::vector<Atom> *best = &data.bucket(p.kind, p.pred);
    TermId ta = pinned(p.a, s), tb = pinned(p.b, s);
    if (ta != kNoTerm) {
      const std::vector<Atom> &c = data.bucket_at(p.kind, p.pred, 0, ta);
      if (c.size() < best->size())
        best = &c;
    }
    if (tb != kNoTerm) {
      const std::vector<Atom> &c = data.bucket_at(p.kind, p.pred, 1, tb);
      if (c.size() < best->size())
        best = &c;
    }
    return *best;
  }

  void run(Subst &s, std::size_t remaining) {
    if (stop)
      return;
    if (remaining == 0) {
      if (!on_match(s))
        stop = true;
      return;
    }
    std::size_t pick = pattern.size();
    int best_bound = -1;
    std::size_t best_bucket = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (done[i])
        continue;
      int b = bound_args(pattern[i], s);
      std::size_t sz = candidates(pattern[i], s).size();
      if (b > best_bound || (b == best_bound && sz < best_bucket)) {
        pick = i;
        best_bound = b;
        best_bucket = sz;
      }
    }
    const Atom &p = pattern[pick];
    done[pick] = true;
    for (const Atom &d : candidates(p, s)) {
      std::size_t added = 0;
      if (unify_atom(p, d, s, bindable, added))
        run(s, remaining - 1);
      for (; added > 0; --added)
        s.pop();
      if (stop)
        break;
    }
    done[pick] = false;
  }
};

} // namespace

void match_atoms(const std::vector<Atom> &pattern, const AtomSet &data, Subst &s,
                 const std::function<bool(const Subst &)> &on_match, const BindablePred &bindable) {
  Matcher m{pattern, data, on_match, bindable, std::vector<bool>(pattern.size(), false)};
  m.run(s, pattern.size());
}

std::optional<Subst> match_one(const std::vector<Atom> &pattern, const AtomSet &data, const BindablePred &bindable) {
  std::optional<Subst> out;
  Subst s;
  match_atoms(pattern, data, s, [&](const Subst &m) {
    out = m;
    return false;
  }, bindable);
  return out;
}

} // namespace omqe
