/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "terms.hpp"

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace omqe {
namespace {

// Append-only storage with stable addresses: readers index chunks without
// locking, writers serialize on a mutex.
template <typename T> class ChunkedStore {
public:
  static constexpr std::size_t kChunkBits = 14;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = 1 << 16;

  ChunkedStore() : chunks_(new std::atomic<T *>[kMaxChunks]) {
    for (std::size_t i = 0; i < kMaxChunks; ++i)
      chunks_[i].store(nullptr, std::memory_order_relaxed);
  }

  const T &at(std::uint32_t id) const {
    return chunks_[id >> kChunkBits].load(std::memory_order_acquire)[id & (kChunkSize - 1)];
  }

  // Caller holds the writer mutex.
  std::uint32_t push(T value) {
    std::size_t id = size_;
    std::size_t c = id >> kChunkBits;
    if (c >= kMaxChunks)
      throw std::runtime_error("term store exhausted");
    T *chunk = chunks_[c].load(std::memory_order_relaxed);
    if (!chunk) {
      chunk = new T[kChunkSize];
      chunks_[c].store(chunk, std::memory_order_release);
    }
    chunk[id & (kChunkSize - 1)] = std::move(value);
    ++size_;
    return static_cast<std::uint32_t>(id);
  }

private:
  std::unique_ptr<std::atomic<T *>[]> chunks_;
  std::size_t size_ = 0;
};

struct TermNode {
  TermKind kind = TermKind::Constant;
  Sym name = 0;
  TermId arg = kNoTerm;
  int depth = 0;
  bool ground = true;
  std::string text;
};

struct Tables {
  std::mutex mu;
  ChunkedStore<std::string> syms;
  std::unordered_map<std::string, Sym> sym_index;
  ChunkedStore<TermNode> terms;
  std::unordered_multimap<std::uint64_t, TermId> term_index;
};

Tables &tables() {
  static Tables *t = new Tables();
  return *t;
}

std::uint64_t term_key(TermKind k, Sym name, TermId arg) {
  std::uint64_t key = (static_cast<std::uint64_t>(name) << 34) ^ (static_cast<std::uint64_t>(arg) << 2);
  return key ^ static_cast<std::uint64_t>(k);
}

TermId make_term(TermKind kind, Sym name, TermId arg) {
  Tables &t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  std::uint64_t key = term_key(kind, name, arg);
  auto [lo, hi] = t.term_index.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    const TermNode &n = t.terms.at(it->second);
    if (n.kind == kind && n.name == name && n.arg == arg)
      return it->second;
  }
  TermNode n;
  n.kind = kind;
  n.name = name;
  n.arg = arg;
  if (kind == TermKind::Skolem) {
    const TermNode &a = t.terms.at(arg);
    n.depth = a.depth + 1;
    n.ground = a.ground;
    n.text = t.syms.at(name) + "(" + a.text + ")";
  } else {
    n.ground = kind == TermKind::Constant;
    n.text = t.syms.at(name);
  }
  TermId id = t.terms.push(std::move(n));
  t.term_index.emplace(key, id);
  return id;
}

} // namespace

Sym intern(std::string_view text) {
  Tables &t = tables();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.sym_index.find(std::string(text));
  if (it != t.sym_index.end())
    return it->second;
  Sym id = t.syms.push(std::string(text));
  t.sym_index.emplace(std::string(text), id);
  return id;
}

const std::string &sym_name(Sym s) { return tables().syms.at(s); }

TermId make_const(Sym name) { return make_term(TermKind::Constant, name, kNoTerm); }
TermId make_const(std::string_view name) { return make_const(intern(name)); }
TermId make_var(Sym name) { return make_term(TermKind::Variable, name, kNoTerm); }
TermId make_var(std::string_view name) { return make_var(intern(name)); }
TermId make_skolem(Sym fn, TermId arg) { return make_term(TermKind::Skolem, fn, arg); }

TermKind term_kind(TermId t) { return tables().terms.at(t).kind; }
Sym term_name(TermId t) { return tables().terms.at(t).name; }
TermId term_arg(TermId t) { return tables().terms.at(t).arg; }
int term_depth(TermId t) { return tables().terms.at(t).depth; }
bool term_ground(TermId t) { return tables().terms.at(t).ground; }
const std::string &term_str(TermId t) { return tables().terms.at(t).text; }

bool term_less(TermId a, TermId b) {
  if (a == b)
    return false;
  const TermNode &x = tables().terms.at(a);
  const TermNode &y = tables().terms.at(b);
  if (x.depth != y.depth)
    return x.depth < y.depth;
  if (x.text != y.text)
    return x.text < y.text;
  return x.kind < y.kind;
}

void collect_subterms(TermId t, std::vector<TermId> &out) {
  while (t != kNoTerm) {
    out.push_back(t);
    t = term_arg(t);
  }
}

TermId replace_deep(TermId t, TermId from, TermId to) {
  if (t == from)
    return to;
  if (term_kind(t) != TermKind::Skolem)
    return t;
  TermId a = term_arg(t);
  TermId r = replace_deep(a, from, to);
  return r == a ? t : make_skolem(term_name(t), r);
}

} // namespace omqe
