/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "chase.hpp"
#include "parser.hpp"
#include "proof_io.hpp"
#include "query.hpp"

namespace omqe {
namespace {

std::string idx(const std::string &base, int i) { return base + std::to_string(i); }

struct Builder {
  std::ostringstream text;
  void rule(const std::string &r) { text << "rule: " << r << "\n"; }
  void fact(const std::string &f) { text << "fact: " << f << "\n"; }
  void query(const std::string &q) { text << "query: " << q << "\n"; }

  GeneratedInstance finish(std::string family, std::string param, std::string growth) {
    GeneratedInstance g;
    g.family = std::move(family);
    g.parameter = std::move(param);
    g.growth = std::move(growth);
    g.kb = parse_kb(text.str());
    return g;
  }
};

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw InputError(msg);
}

} // namespace

// Every query predicate P gets its own chain P0 -> P1 -> ... -> Pn -> P.
GeneratedInstance gen_dllite_chain(int n) {
  require(n >= 0, "dllite-chain: n must be non-negative");
  Builder b;
  for (int i = 0; i < n; ++i) {
    b.rule(idx("R", i) + "(x,y) -> " + idx("R", i + 1) + "(x,y)");
    b.rule(idx("A", i) + "(x) -> " + idx("A", i + 1) + "(x)");
  }
  b.rule(idx("R", n) + "(x,y) -> R(x,y)");
  b.rule(idx("A", n) + "(x) -> A(x)");
  b.fact("R0(a,cy)");
  b.fact("A0(cy)");
  b.query("exists y. R(a,y), A(y)");
  GeneratedInstance g = b.finish("dllite-chain", std::to_string(n), "poly");
  g.bounds["size"] = g.bounds["tree"] = 4 * static_cast<std::uint64_t>(n) + 8;
  g.formulas["size"] = g.formulas["tree"] = "4n+8";
  return g;
}

// A path R1..Rn hanging off a; every step goes through a concept.
GeneratedInstance gen_dllite_path(int n) {
  require(n >= 1, "dllite-path: n must be at least 1");
  Builder b;
  for (int i = 1; i <= n; ++i) {
    b.rule(idx("A", i - 1) + "(x) -> exists y. " + idx("R", i) + "(x,y)");
    b.rule(idx("R", i) + "(y,x) -> " + idx("A", i) + "(x)");
  }
  b.fact("A0(a)");
  std::string q = "exists ";
  for (int i = 1; i <= n; ++i)
    q += (i > 1 ? ", " : "") + idx("y", i);
  q += ". ";
  for (int i = 1; i <= n; ++i)
    q += (i > 1 ? ", " : "") + idx("R", i) + "(" + (i == 1 ? std::string("a") : idx("y", i - 1)) + "," + idx("y", i) + ")";
  b.query(q);
  GeneratedInstance g = b.finish("dllite-path", std::to_string(n), "poly");
  std::uint64_t un = static_cast<std::uint64_t>(n);
  g.bounds["tree"] = 2 * un * un + un + 2;
  g.formulas["tree"] = "2n^2+n+2";
  return g;
}

// Random DL-Lite TBox and ABox; the query is a small tree cut out of the chase.
GeneratedInstance gen_dllite_tree(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int kConcepts = 4, kRoles = 3;
  auto concept_name = [&] { return idx("A", pick(1, kConcepts)); };
  auto role_name = [&] { return idx("R", pick(1, kRoles)); };
  const char *consts[] = {"a", "b", "c"};
  for (int attempt = 0;; ++attempt) {
    Builder b;
    std::set<std::string> seen;
    auto add = [&](const std::string &r) {
      if (seen.insert(r).second)
        b.rule(r);
    };
    int nrules = pick(4, 7);
    for (int i = 0; i < nrules; ++i) {
      switch (pick(0, 5)) {
      case 0: {
        std::string c1 = concept_name(), c2 = concept_name();
        if (c1 != c2)
          add(c1 + "(x) -> " + c2 + "(x)");
        break;
      }
      case 1: add(concept_name() + "(x) -> exists y. " + role_name() + "(x,y)"); break;
      case 2: add(concept_name() + "(x) -> exists y. " + role_name() + "(y,x)"); break;
      case 3: add(role_name() + "(x,y) -> " + concept_name() + "(x)"); break;
      case 4: add(role_name() + "(y,x) -> " + concept_name() + "(x)"); break;
      default: {
        std::string r1 = role_name(), r2 = role_name();
        if (r1 != r2)
          add(r1 + (pick(0, 1) ? "(x,y) -> " : "(y,x) -> ") + r2 + "(x,y)");
      }
      }
    }
    int nfacts = pick(2, 4);
    for (int i = 0; i < nfacts; ++i) {
      if (pick(0, 1))
        b.fact(concept_name() + "(" + consts[pick(0, 2)] + ")");
      else
        b.fact(role_name() + "(" + consts[pick(0, 2)] + "," + consts[pick(0, 2)] + ")");
    }
    KnowledgeBase kb;
    try {
      kb = parse_kb(b.text.str());
    } catch (const std::exception &) {
      continue;  // e.g. a role self loop R(a,a) is fine, but keep retrying on shape errors
    }
    if (kb.fragment != Fragment::DLLiteR)
      continue;
    ChaseState st = chase(kb, 3);
    const std::vector<Atom> &all = st.atoms.all();
    if (all.empty())
      continue;
    // Grow a connected set of atoms where every step adds one new term.
    std::vector<Atom> chosen = {all[static_cast<std::size_t>(pick(0, static_cast<int>(all.size()) - 1))]};
    if (chosen[0].kind == AtomKind::Role && chosen[0].a == chosen[0].b)
      continue;
    std::set<TermId> terms = {chosen[0].a};
    if (chosen[0].b != kNoTerm)
      terms.insert(chosen[0].b);
    int target = pick(1, 4);
    for (int step = 0; step < 20 && static_cast<int>(chosen.size()) < target; ++step) {
      const Atom &c = all[static_cast<std::size_t>(pick(0, static_cast<int>(all.size()) - 1))];
      if (std::find(chosen.begin(), chosen.end(), c) != chosen.end())
        continue;
      if (c.kind == AtomKind::Concept && terms.count(c.a)) {
        chosen.push_back(c);
      } else if (c.kind == AtomKind::Role && c.a != c.b && (terms.count(c.a) != terms.count(c.b))) {
        chosen.push_back(c);
        terms.insert(c.a);
        terms.insert(c.b);
      }
    }
    // Skolem terms always become variables, constants half of the time.
    std::map<TermId, std::string> names;
    int nv = 0;
    for (TermId t : terms)
      if (term_kind(t) == TermKind::Skolem || pick(0, 1))
        names[t] = idx("x", ++nv);
    auto show = [&](TermId t) { return names.count(t) ? names[t] : term_str(t); };
    std::string q;
    if (nv > 0) {
      q = "exists ";
      for (int i = 1; i <= nv; ++i)
        q += (i > 1 ? ", " : "") + idx("x", i);
      q += ". ";
    }
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Atom &a = chosen[i];
      q += (i ? ", " : "") + sym_name(a.pred) + "(" + show(a.a) + (a.b != kNoTerm ? "," + show(a.b) : "") + ")";
    }
    // At least one query atom must need an inference.
    if (std::all_of(chosen.begin(), chosen.end(), [&](const Atom &a) {
          return std::find(kb.abox.begin(), kb.abox.end(), a) != kb.abox.end();
        }))
      continue;
    b.query(q);
    GeneratedInstance g = b.finish("dllite-tree", std::to_string(seed), "poly");
    if (!is_tree_shaped(g.query()))
      continue;
    return g;
  }
}

// A -> A1; Ai -> exists r.A(i+1) and exists s.A(i+1); An -> Bn;
// exists r.B(i+1) and exists s.B(i+1) -> Bi via fresh Ni, Mi; B1 -> B.
GeneratedInstance gen_el_tree(int n) {
  require(n >= 1, "el-tree: n must be at least 1");
  Builder b;
  b.rule("A(x) -> A1(x)");
  for (int i = 1; i < n; ++i) {
    b.rule(idx("A", i) + "(x) -> exists y. r(x,y), " + idx("A", i + 1) + "(y)");
    b.rule(idx("A", i) + "(x) -> exists y. s(x,y), " + idx("A", i + 1) + "(y)");
  }
  b.rule(idx("A", n) + "(x) -> " + idx("B", n) + "(x)");
  for (int i = 1; i < n; ++i) {
    b.rule("r(x,y), " + idx("B", i + 1) + "(y) -> " + idx("N", i) + "(x)");
    b.rule("s(x,y), " + idx("B", i + 1) + "(y) -> " + idx("M", i) + "(x)");
    b.rule(idx("N", i) + "(x), " + idx("M", i) + "(x) -> " + idx("B", i) + "(x)");
  }
  b.rule("B1(x) -> B(x)");
  b.fact("A(a)");
  b.query("B(a)");
  return b.finish("el-tree", std::to_string(n), "exp");
}

// A(a0), r(a_i,a_{i-1}), s(a_i,a_{i-1}); exists r.A and exists s.A -> A.
GeneratedInstance gen_el_abox(int n) {
  require(n >= 1, "el-abox: n must be at least 1");
  Builder b;
  b.rule("r(x,y), A(y) -> N1(x)");
  b.rule("s(x,y), A(y) -> N2(x)");
  b.rule("N1(x), N2(x) -> A(x)");
  auto name = [&](int i) { return i == n ? std::string("a") : idx("a", i); };
  b.fact("A(" + name(0) + ")");
  for (int i = 1; i <= n; ++i) {
    b.fact("r(" + name(i) + "," + name(i - 1) + ")");
    b.fact("s(" + name(i) + "," + name(i - 1) + ")");
  }
  b.query("A(a)");
  GeneratedInstance g = b.finish("el-abox", std::to_string(n), "exp");
  std::uint64_t un = static_cast<std::uint64_t>(n);
  g.bounds["size"] = 5 * un + 4;
  g.bounds["tree"] = 9 * (std::uint64_t{1} << un) - 8;
  g.formulas["size"] = "5n+4";
  g.formulas["tree"] = "9*2^n-8";
  return g;
}

// Binary counter over bits A_i / Abar_i; bit 0 is constantly set.
GeneratedInstance gen_hornalc_counter(int n) {
  require(n >= 1, "hornalc-counter: n must be at least 1");
  Builder b;
  auto A = [](int i) { return idx("A", i); };
  auto Abar = [](int i) { return idx("Abar", i); };
  for (int i = 1; i <= n; ++i)
    b.rule("A(x) -> " + Abar(i) + "(x)");
  for (int i = 1; i <= n; ++i) {
    for (auto [bit, tag] : {std::pair{A(i), idx("Er", i)}, std::pair{Abar(i), idx("Ebr", i)}}) {
      b.rule("r(x,y), " + bit + "(y) -> " + tag + "(x)");
      b.rule(tag + "(x), r(x,y) -> " + bit + "(y)");
      b.rule(tag + "(x) -> exists y. s(x,y), " + bit + "(y)");
      b.rule(tag + "(x), s(x,y) -> " + bit + "(y)");
    }
    std::string lower;
    for (int j = 1; j < i; ++j)
      lower += ", " + A(j) + "(x)";
    b.rule(Abar(i) + "(x)" + lower + " -> exists y. r(x,y), " + A(i) + "(y)");
    b.rule(A(i) + "(x)" + lower + " -> exists y. r(x,y), " + Abar(i) + "(y)");
    for (int j = 1; j < i; ++j) {
      b.rule(Abar(i) + "(x), " + Abar(j) + "(x) -> exists y. r(x,y), " + Abar(i) + "(y)");
      b.rule(A(i) + "(x), " + Abar(j) + "(x) -> exists y. r(x,y), " + A(i) + "(y)");
    }
  }
  std::string all;
  for (int i = 1; i <= n; ++i)
    all += (i > 1 ? ", " : "") + A(i) + "(x)";
  b.rule(all + " -> B(x)");
  b.rule("r(x,y), B(y) -> NB1(x)");
  b.rule("s(x,y), B(y) -> NB2(x)");
  b.rule("NB1(x), NB2(x) -> B(x)");
  b.fact("A(a)");
  b.query("B(a)");
  return b.finish("hornalc-counter", std::to_string(n), "doubly-exp");
}

namespace {

Clauses with_tautologies(const Clauses &clauses, int &k) {
  require(!clauses.empty(), "sat: at least one clause is required");
  k = 0;
  for (const auto &c : clauses) {
    require(!c.empty(), "sat: empty clause");
    for (int l : c) {
      require(l != 0, "sat: literal 0");
      k = std::max(k, std::abs(l));
    }
  }
  Clauses out = clauses;
  for (int v = 1; v <= k; ++v) {
    bool present = std::any_of(clauses.begin(), clauses.end(), [&](const std::vector<int> &c) {
      return std::find(c.begin(), c.end(), v) != c.end() && std::find(c.begin(), c.end(), -v) != c.end();
    });
    if (!present)
      out.push_back({v, -v});
  }
  return out;
}

std::string literal(int l) { return (l < 0 ? "np" : "p") + std::to_string(std::abs(l)); }

std::string clause_text(const Clauses &clauses) {
  std::string s;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i)
      s += ", ";
    for (std::size_t j = 0; j < clauses[i].size(); ++j)
      s += (j ? " " : "") + std::to_string(clauses[i][j]);
  }
  return s;
}

Builder sat_builder(const Clauses &all, int k) {
  Builder b;
  for (int v = 1; v <= k; ++v) {
    b.fact("T(" + literal(v) + ")");
    b.fact("T(" + literal(-v) + ")");
  }
  int m = static_cast<int>(all.size());
  for (int j = 1; j <= m; ++j) {
    std::set<int> seen;
    for (int l : all[j - 1])
      if (seen.insert(l).second)
        b.fact("c(" + idx("c", j) + "," + literal(l) + ")");
    if (j < m)
      b.fact("r(" + idx("c", j) + "," + idx("c", j + 1) + ")");
  }
  std::string q = "exists ";
  for (int j = 1; j <= m; ++j)
    q += (j > 1 ? ", " : "") + idx("xc", j) + ", " + idx("xp", j);
  q += ". ";
  for (int j = 1; j <= m; ++j) {
    q += (j > 1 ? ", " : "") + std::string("c(") + idx("xc", j) + "," + idx("xp", j) + "), T(" + idx("xp", j) + ")";
    if (j < m)
      q += ", r(" + idx("xc", j) + "," + idx("xc", j + 1) + ")";
  }
  b.query(q);
  return b;
}

} // namespace

GeneratedInstance gen_sat(const Clauses &clauses) {
  int k = 0;
  Clauses all = with_tautologies(clauses, k);
  std::uint64_t m = all.size(), uk = static_cast<std::uint64_t>(k);
  GeneratedInstance g = sat_builder(all, k).finish("sat", clause_text(clauses), "poly");
  g.bounds["size"] = 2 + m + (m - 1) + uk;
  g.bounds["domain"] = m + uk;
  g.formulas["size"] = "2+m+(m-1)+k";
  g.formulas["domain"] = "m+k";
  return g;
}

GeneratedInstance gen_sat_cq(const Clauses &clauses) {
  int k = 0;
  Clauses all = with_tautologies(clauses, k);
  std::uint64_t m = all.size(), uk = static_cast<std::uint64_t>(k);
  GeneratedInstance g = sat_builder(all, k).finish("sat-cq", clause_text(clauses), "poly");
  g.bounds["tree"] = 4 * m + 2 * uk - 1;
  g.formulas["tree"] = "4m+2k-1";
  return g;
}

Clauses parse_clauses(const std::string &text) {
  Clauses out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::stringstream ls(part);
    std::vector<int> clause;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        int l = std::stoi(tok, &used);
        if (used != tok.size() || l == 0)
          throw InputError("");
        clause.push_back(l);
      } catch (const std::exception &) {
        throw InputError("sat: bad literal '" + tok + "'");
      }
    }
    if (clause.empty())
      throw InputError("sat: empty clause");
    out.push_back(clause);
  }
  if (out.empty())
    throw InputError("sat: at least one clause is required");
  return out;
}

bool brute_force_sat(const Clauses &clauses) {
  int k = 0;
  for (const auto &c : clauses)
    for (int l : c)
      k = std::max(k, std::abs(l));
  for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
    bool ok = std::all_of(clauses.begin(), clauses.end(), [&](const std::vector<int> &c) {
      return std::any_of(c.begin(), c.end(), [&](int l) {
        bool v = bits & (1u << (std::abs(l) - 1));
        return l > 0 ? v : !v;
      });
    });
    if (ok)
      return true;
  }
  return false;
}

std::vector<std::string> generator_families() {
  return {"dllite-chain", "dllite-path", "dllite-tree", "el-tree", "el-abox", "hornalc-counter", "sat", "sat-cq"};
}

GeneratedInstance generate(const std::string &family, const std::string &param) {
  auto number = [&] {
    try {
      std::size_t used = 0;
      long v = std::stol(param, &used);
      if (used != param.size() || v < 0 || v > 1000000)
        throw InputError("");
      return v;
    } catch (const std::exception &) {
      throw InputError(family + ": expected a non-negative integer, got '" + param + "'");
    }
  };
  if (family == "dllite-chain")
    return gen_dllite_chain(static_cast<int>(number()));
  if (family == "dllite-path")
    return gen_dllite_path(static_cast<int>(number()));
  if (family == "dllite-tree")
    return gen_dllite_tree(static_cast<std::uint32_t>(number()));
  if (family == "el-tree")
    return gen_el_tree(static_cast<int>(number()));
  if (family == "el-abox")
    return gen_el_abox(static_cast<int>(number()));
  if (family == "hornalc-counter")
    return gen_hornalc_counter(static_cast<int>(number()));
  if (family == "sat")
    return gen_sat(parse_clauses(param));
  if (family == "sat-cq")
    return gen_sat_cq(parse_clauses(param));
  throw InputError("unknown generator family '" + family + "'");
}

nlohmann::ordered_json instance_sidecar(const GeneratedInstance &g) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["family"] = g.family;
  j["parameter"] = g.parameter;
  j["fragment"] = fragment_name(g.kb.fragment);
  j["rules"] = g.kb.tbox.size();
  j["facts"] = g.kb.abox.size();
  j["query"] = cq_str(g.query());
  j["growth"] = g.growth;
  j["bounds"] = g.bounds;
  j["formulas"] = g.formulas;
  return j;
}

} // namespace omqe
