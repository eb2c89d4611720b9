/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace omqe {
namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Arrow, Eq, Minus, End };

struct Token {
  Tok kind;
  std::string text;
  int col;
};

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

std::vector<Token> lex(std::string_view s, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    int col = col0 + static_cast<int>(i);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '#')
      break;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j]))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
    case '(': k = Tok::LParen; break;
    case ')': k = Tok::RParen; break;
    case ',': k = Tok::Comma; break;
    case '.': k = Tok::Dot; break;
    case '=': k = Tok::Eq; break;
    case '-': k = Tok::Minus; break;
    default:
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
    }
    out.push_back({k, std::string(1, static_cast<char>(c)), col});
    ++i;
  }
  out.push_back({Tok::End, "", col0 + static_cast<int>(s.size())});
  return out;
}

struct RawTerm {
  std::string name;
  int col = 0;
  std::vector<RawTerm> args; // empty or one element (function application)
};

struct RawAtom {
  bool equality = false;
  std::string pred;
  bool inverse = false;
  std::vector<RawTerm> args;
  int col = 0;
};

class Parser {
public:
  Parser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token &peek(int k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, line_, peek().col); }

  Token expect(Tok k, const char *what) {
    if (!at(k))
      fail(std::string("expected ") + what);
    return take();
  }

  RawTerm term() {
    Token id = expect(Tok::Ident, "term");
    RawTerm t{id.text, id.col, {}};
    if (at(Tok::LParen)) {
      take();
      t.args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    return t;
  }

  RawAtom atom() {
    Token id = expect(Tok::Ident, "atom");
    RawAtom a;
    a.col = id.col;
    bool inverse = false;
    if (at(Tok::Minus) && peek(1).kind == Tok::LParen) {
      take();
      inverse = true;
    }
    if (at(Tok::LParen)) {
      take();
      std::vector<RawTerm> args;
      args.push_back(term());
      while (at(Tok::Comma)) {
        take();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      if (args.size() == 1 && at(Tok::Eq) && !inverse) {
        // f(t) = c: the identifier was a function symbol.
        take();
        RawTerm lhs{id.text, id.col, {args[0]}};
        a.equality = true;
        a.args = {lhs, term()};
        return a;
      }
      if (args.size() > 2)
        throw ParseError("predicates take one or two arguments", line_, id.col);
      if (inverse && args.size() != 2)
        throw ParseError("inverse marker on a concept name", line_, id.col);
      a.pred = id.text;
      a.inverse = inverse;
      a.args = std::move(args);
      return a;
    }
    if (at(Tok::Eq)) {
      take();
      a.equality = true;
      a.args = {RawTerm{id.text, id.col, {}}, term()};
      return a;
    }
    fail("expected '(' or '='");
  }

  std::vector<RawAtom> atoms() {
    std::vector<RawAtom> out;
    out.push_back(atom());
    while (at(Tok::Comma)) {
      take();
      out.push_back(atom());
    }
    return out;
  }

  std::vector<Token> quantifier() {
    std::vector<Token> vars;
    if (at(Tok::Ident) && peek().text == "exists") {
      take();
      vars.push_back(expect(Tok::Ident, "variable"));
      while (at(Tok::Comma)) {
        take();
        vars.push_back(expect(Tok::Ident, "variable"));
      }
      expect(Tok::Dot, "'.' after quantified variables");
    }
    return vars;
  }

  void end() {
    if (!at(Tok::End))
      fail("unexpected trailing input");
  }

  int line() const { return line_; }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

void check_reserved(const std::string &name, int line, int col) {
  if (name == "Bottom" || name == "⊥")
    throw ParseError("bottom concept is not allowed (KBs are assumed consistent)", line, col);
  if (name == "Top" || name == "⊤")
    throw ParseError("top concept is implicit and cannot be named", line, col);
}

using Resolver = std::function<TermId(const std::string &)>;

TermId convert_term(const RawTerm &t, const Resolver &leaf, int line) {
  if (t.args.empty())
    return leaf(t.name);
  TermId inner = convert_term(t.args[0], leaf, line);
  return make_skolem(intern(t.name), inner);
}

Atom convert_atom(const RawAtom &a, const Resolver &leaf, int line) {
  if (a.equality)
    return equality_atom(convert_term(a.args[0], leaf, line), convert_term(a.args[1], leaf, line));
  check_reserved(a.pred, line, a.col);
  Sym p = intern(a.pred);
  if (a.args.size() == 1)
    return concept_atom(p, convert_term(a.args[0], leaf, line));
  TermId s = convert_term(a.args[0], leaf, line);
  TermId t = convert_term(a.args[1], leaf, line);
  return a.inverse ? role_atom(p, t, s) : role_atom(p, s, t);
}

void collect_leaf_names(const RawTerm &t, std::vector<std::string> &out) {
  if (t.args.empty())
    out.push_back(t.name);
  else
    collect_leaf_names(t.args[0], out);
}

Rule convert_rule(const std::vector<RawAtom> &body, const std::vector<Token> &ex,
                  const std::vector<RawAtom> &head, int line) {
  std::vector<std::string> vars;
  for (const RawAtom &a : body)
    for (const RawTerm &t : a.args)
      collect_leaf_names(t, vars);
  for (const Token &t : ex) {
    if (std::find(vars.begin(), vars.end(), t.text) != vars.end())
      // Tautologies quantify body variables again; that is allowed.
      continue;
    vars.push_back(t.text);
  }
  Resolver leaf = [&](const std::string &n) {
    if (std::find(vars.begin(), vars.end(), n) != vars.end())
      return make_var(n);
    return make_const(n);
  };
  Rule r;
  for (const RawAtom &a : body)
    r.body.push_back(convert_atom(a, leaf, line));
  for (const RawAtom &a : head)
    r.head.push_back(convert_atom(a, leaf, line));
  for (const Token &t : ex)
    r.existentials.push_back(make_var(t.text));
  for (const Atom &a : r.head)
    for (TermId t : {a.a, a.b})
      if (t != kNoTerm && is_skolem(t))
        r.skolemized = true;
  return r;
}

BooleanCQ convert_cq(const std::vector<Token> &ex, const std::vector<RawAtom> &atoms, int line) {
  std::vector<std::string> vars;
  for (const Token &t : ex) {
    if (std::find(vars.begin(), vars.end(), t.text) != vars.end())
      throw ParseError("variable quantified twice: " + t.text, line, t.col);
    vars.push_back(t.text);
  }
  Resolver leaf = [&](const std::string &n) {
    if (std::find(vars.begin(), vars.end(), n) != vars.end())
      return make_var(n);
    return make_const(n);
  };
  BooleanCQ q;
  for (const RawAtom &a : atoms) {
    Atom at = convert_atom(a, leaf, line);
    if (at.kind == AtomKind::Equality)
      throw ParseError("equality atoms are not allowed in queries", line, a.col);
    q.atoms.push_back(at);
  }
  std::vector<TermId> used = atom_vars(q.atoms);
  for (const Token &t : ex) {
    TermId v = make_var(t.text);
    if (std::find(used.begin(), used.end(), v) == used.end())
      throw ParseError("quantified variable does not occur: " + t.text, line, t.col);
    q.vars.push_back(v);
  }
  return q;
}

// Centre-star check: concept atoms on c, role atoms between c and distinct
// leaf variables, concept atoms on leaves.
bool star_around(const std::vector<Atom> &body, TermId c, bool &inverse) {
  std::map<TermId, int> leaf_roles;
  bool mentions_c = false;
  for (const Atom &a : body) {
    if (a.kind == AtomKind::Equality)
      return false;
    if (a.kind == AtomKind::Role) {
      if (a.a == a.b)
        return false;
      if (a.a == c) {
        ++leaf_roles[a.b];
        mentions_c = true;
      } else if (a.b == c) {
        ++leaf_roles[a.a];
        inverse = true;
        mentions_c = true;
      } else {
        return false;
      }
    }
  }
  for (auto &[leaf, n] : leaf_roles)
    if (n != 1)
      return false;
  for (const Atom &a : body) {
    if (a.kind != AtomKind::Concept)
      continue;
    if (a.a == c)
      mentions_c = true;
    else if (!leaf_roles.count(a.a))
      return false;
  }
  return mentions_c;
}

bool all_vars(const std::vector<Atom> &atoms) {
  for (const Atom &a : atoms)
    for (TermId t : {a.a, a.b})
      if (t != kNoTerm && !is_var(t))
        return false;
  return true;
}

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

KnowledgeBase parse_impl(std::string_view text, bool strict) {
  KnowledgeBase kb;
  std::optional<Fragment> declared;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line;
    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#')
      continue;
    std::size_t colon = raw.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected 'rule:', 'fact:', 'query:' or 'fragment:'", line, static_cast<int>(first) + 1);
    std::string keyword = strip(raw.substr(0, colon));
    std::string_view rest = raw.substr(colon + 1);
    int col0 = static_cast<int>(colon) + 2;
    Parser p(lex(rest, line, col0), line);
    if (keyword == "rule") {
      std::vector<RawAtom> body = p.atoms();
      p.expect(Tok::Arrow, "'->'");
      std::vector<Token> ex = p.quantifier();
      std::vector<RawAtom> head = p.atoms();
      p.end();
      Rule r = convert_rule(body, ex, head, line);
      if (r.skolemized)
        throw ParseError("function terms are not allowed in TBox rules", line, col0);
      r.index = static_cast<int>(kb.tbox.size()) + 1;
      if (strict) {
        try {
          classify_rule(r);
        } catch (const InputError &e) {
          throw ParseError(e.what(), line, col0);
        }
        if (declared) {
          RuleFragments rf = rule_fragments(r);
          bool ok = *declared == Fragment::HornALCHOI ||
                    (*declared == Fragment::DLLiteR && rf.dllite) || (*declared == Fragment::EL && rf.el) ||
                    (*declared == Fragment::HornALC && rf.horn_alc);
          if (!ok) {
            if (r.inverse && (*declared == Fragment::EL || *declared == Fragment::HornALC))
              throw ParseError(std::string("inverse role not allowed in ") + fragment_name(*declared), line, col0);
            throw ParseError(std::string("rule outside declared fragment ") + fragment_name(*declared), line, col0);
          }
        }
      }
      kb.tbox.push_back(std::move(r));
    } else if (keyword == "fact") {
      std::vector<RawAtom> atoms = p.atoms();
      p.end();
      for (const RawAtom &ra : atoms) {
        if (ra.equality)
          throw ParseError("equality facts are not allowed", line, ra.col);
        for (const RawTerm &t : ra.args)
          if (!t.args.empty())
            throw ParseError("facts range over individual names only", line, t.col);
        kb.abox.push_back(convert_atom(ra, [](const std::string &n) { return make_const(n); }, line));
      }
    } else if (keyword == "query") {
      if (kb.query)
        throw ParseError("only one query per file", line, col0);
      std::vector<Token> ex = p.quantifier();
      std::vector<RawAtom> atoms = p.atoms();
      p.end();
      for (const RawAtom &ra : atoms)
        for (const RawTerm &t : ra.args)
          if (!t.args.empty())
            throw ParseError("function terms are not allowed in queries", line, t.col);
      kb.query = convert_cq(ex, atoms, line);
    } else if (keyword == "fragment") {
      Token t = p.expect(Tok::Ident, "fragment name");
      p.end();
      declared = fragment_from_name(t.text);
      if (!declared)
        throw ParseError("unknown fragment " + t.text, line, t.col);
      if (!kb.tbox.empty())
        throw ParseError("fragment must be declared before rules", line, t.col);
    } else {
      throw ParseError("unknown statement '" + keyword + "'", line, static_cast<int>(first) + 1);
    }
  }
  if (strict) {
    try {
      finalize_kb(kb);
    } catch (const InputError &e) {
      throw ParseError(e.what(), line, 1);
    }
  }
  return kb;
}

template <typename F> auto parse_label(std::string_view text, F body) {
  Parser p(lex(text, 1, 1), 1);
  auto r = body(p);
  p.end();
  return r;
}

} // namespace

KnowledgeBase parse_kb(std::string_view text) { return parse_impl(text, true); }
KnowledgeBase parse_kb_lenient(std::string_view text) { return parse_impl(text, false); }

Atom parse_ground_atom(std::string_view text) {
  return parse_label(text, [](Parser &p) {
    RawAtom a = p.atom();
    return convert_atom(a, [](const std::string &n) { return make_const(n); }, 1);
  });
}

std::vector<Atom> parse_conjunction(std::string_view text) {
  return parse_label(text, [](Parser &p) {
    std::vector<Atom> out;
    for (const RawAtom &a : p.atoms())
      out.push_back(convert_atom(a, [](const std::string &n) { return make_const(n); }, 1));
    return out;
  });
}

BooleanCQ parse_cq(std::string_view text) {
  return parse_label(text, [](Parser &p) {
    std::vector<Token> ex = p.quantifier();
    std::vector<RawAtom> atoms = p.atoms();
    return convert_cq(ex, atoms, 1);
  });
}

Rule parse_rule(std::string_view text) {
  return parse_label(text, [](Parser &p) {
    std::vector<RawAtom> body = p.atoms();
    p.expect(Tok::Arrow, "'->'");
    std::vector<Token> ex = p.quantifier();
    std::vector<RawAtom> head = p.atoms();
    return convert_rule(body, ex, head, 1);
  });
}

void classify_rule(Rule &r) {
  auto reject = [&](const std::string &why) {
    throw InputError("not in normal form (" + why + "): " + rule_str(r));
  };
  if (r.body.empty() || r.head.empty())
    reject("empty side");
  if (!all_vars(r.body))
    reject("body must range over variables");
  for (const Atom &a : r.body)
    if (a.kind == AtomKind::Equality)
      reject("equality in body");
  bool inv = false;

  // (vii) R1(x,y) -> R2(x,y)
  if (r.body.size() == 1 && r.head.size() == 1 && r.body[0].kind == AtomKind::Role &&
      r.head[0].kind == AtomKind::Role && r.existentials.empty()) {
    const Atom &b = r.body[0], &h = r.head[0];
    if (b.a == b.b)
      reject("self loop");
    if (h.a == b.a && h.b == b.b) {
      r.form = NormalForm::VII;
      r.inverse = false;
      return;
    }
    if (h.a == b.b && h.b == b.a) {
      r.form = NormalForm::VII;
      r.inverse = true;
      return;
    }
    reject("role inclusion over different variables");
  }

  // (vi) A(x) -> x = a
  if (r.head.size() == 1 && r.head[0].kind == AtomKind::Equality) {
    const Atom &h = r.head[0];
    TermId x = h.a, a = h.b;
    if (!(is_var(x) && is_const(a)) && is_var(a) && is_const(x))
      std::swap(x, a);
    if (!is_var(x) || !is_const(a) || !r.existentials.empty())
      reject("equality head must be x = a");
    if (!star_around(r.body, x, inv))
      reject("body is not centred on x");
    r.form = NormalForm::VI;
    r.inverse = inv;
    return;
  }

  if (!all_vars(r.head))
    reject("head must range over variables");

  // (iv) A(x) -> exists y. R(x,y), B(y)
  if (!r.existentials.empty()) {
    if (r.existentials.size() != 1)
      reject("one existential variable expected");
    TermId y = r.existentials[0];
    const Atom *role = nullptr;
    int concepts = 0;
    for (const Atom &a : r.head) {
      if (a.kind == AtomKind::Role) {
        if (role)
          reject("two role atoms in head");
        role = &a;
      } else if (a.kind == AtomKind::Concept) {
        if (a.a != y)
          reject("head concept must be on the existential variable");
        ++concepts;
      }
    }
    if (!role || concepts > 1)
      reject("existential head must be R(x,y) with at most one concept on y");
    TermId x;
    if (role->a == y && role->b != y) {
      x = role->b;
      inv = true;
    } else if (role->b == y && role->a != y) {
      x = role->a;
    } else {
      reject("existential variable must be a role endpoint");
    }
    if (!star_around(r.body, x, inv))
      reject("body is not centred on the frontier variable");
    r.form = NormalForm::IV;
    r.inverse = inv;
    return;
  }

  if (r.head.size() != 1 || r.head[0].kind != AtomKind::Concept)
    reject("head must be a single concept atom");
  TermId h = r.head[0].a;

  // A(x), R(x,y) -> B(y) also reads as an inverse star; keep it as (v).
  auto forward_v = [&] {
    const Atom *role = nullptr;
    for (const Atom &a : r.body)
      if (a.kind == AtomKind::Role) {
        if (role)
          return false;
        role = &a;
      }
    if (!role || role->b != h || role->a == h)
      return false;
    // Without a concept on the tail this is the DL-Lite shape exists R-.Top.
    bool tail_concept = false;
    for (const Atom &a : r.body)
      if (a.kind == AtomKind::Concept) {
        if (a.a != role->a)
          return false;
        tail_concept = true;
      }
    return tail_concept;
  };
  if (star_around(r.body, h, inv)) {
    if (inv && forward_v()) {
      r.form = NormalForm::V;
      r.inverse = false;
      return;
    }
    bool roles = std::any_of(r.body.begin(), r.body.end(), [](const Atom &a) { return a.kind == AtomKind::Role; });
    r.form = roles ? NormalForm::III : (r.body.size() == 1 ? NormalForm::I : NormalForm::II);
    r.inverse = inv;
    return;
  }

  // (v) A(x), R(x,y) -> B(y)
  const Atom *role = nullptr;
  for (const Atom &a : r.body) {
    if (a.kind == AtomKind::Role) {
      if (role)
        reject("too many role atoms");
      role = &a;
    }
  }
  if (!role || role->a == role->b || (role->a != h && role->b != h))
    reject("unsupported body shape");
  TermId x = role->a == h ? role->b : role->a;
  for (const Atom &a : r.body)
    if (a.kind == AtomKind::Concept && a.a != x)
      reject("unsupported body shape");
  r.form = NormalForm::V;
  r.inverse = role->a == h;
}

RuleFragments rule_fragments(const Rule &r) {
  RuleFragments f;
  auto concepts = [](const std::vector<Atom> &as) {
    return std::count_if(as.begin(), as.end(), [](const Atom &a) { return a.kind == AtomKind::Concept; });
  };
  switch (r.form) {
  case NormalForm::I:
    f.dllite = true;
    break;
  case NormalForm::III:
    f.dllite = r.body.size() == 1;
    break;
  case NormalForm::IV:
    f.dllite = r.body.size() == 1 && concepts(r.head) == 0;
    break;
  case NormalForm::VII:
    f.dllite = true;
    break;
  default:
    break;
  }
  bool el_form = r.form == NormalForm::I || r.form == NormalForm::II || r.form == NormalForm::III ||
                 r.form == NormalForm::IV;
  f.el = el_form && !r.inverse;
  f.horn_alc = (el_form || r.form == NormalForm::V) && !r.inverse;
  return f;
}

Fragment detect_fragment(const std::vector<Rule> &tbox) {
  bool dl = true, el = true, alc = true;
  for (const Rule &r : tbox) {
    RuleFragments f = rule_fragments(r);
    dl = dl && f.dllite;
    el = el && f.el;
    alc = alc && f.horn_alc;
  }
  if (dl)
    return Fragment::DLLiteR;
  if (el)
    return Fragment::EL;
  if (alc)
    return Fragment::HornALC;
  return Fragment::HornALCHOI;
}

void finalize_kb(KnowledgeBase &kb) {
  Signature sig;
  auto add_term = [&](TermId t) {
    while (t != kNoTerm) {
      if (is_const(t))
        sig.individual_names.insert(term_str(t));
      t = term_arg(t);
    }
  };
  auto add_atom = [&](const Atom &a) {
    if (a.kind == AtomKind::Concept)
      sig.concept_names.insert(sym_name(a.pred));
    else if (a.kind == AtomKind::Role)
      sig.role_names.insert(sym_name(a.pred));
    add_term(a.a);
    if (a.b != kNoTerm)
      add_term(a.b);
  };
  for (const Rule &r : kb.tbox) {
    for (const Atom &a : r.body)
      add_atom(a);
    for (const Atom &a : r.head)
      add_atom(a);
  }
  for (const Atom &a : kb.abox) {
    if (!atom_ground(a) || a.kind == AtomKind::Equality)
      throw InputError("ABox atoms must be ground concept or role assertions");
    add_atom(a);
  }
  if (kb.query)
    for (const Atom &a : kb.query->atoms)
      add_atom(a);
  for (const std::string &c : sig.concept_names) {
    if (sig.role_names.count(c))
      throw InputError("name used as concept and role: " + c);
    if (sig.individual_names.count(c))
      throw InputError("name used as concept and individual: " + c);
  }
  for (const std::string &r : sig.role_names)
    if (sig.individual_names.count(r))
      throw InputError("name used as role and individual: " + r);
  for (const auto *set : {&sig.concept_names, &sig.role_names, &sig.individual_names})
    for (const std::string &n : *set)
      if (n == "Top" || n == "Bottom" || n == "⊤" || n == "⊥")
        throw InputError("reserved name: " + n);
  kb.signature = std::move(sig);
  kb.fragment = detect_fragment(kb.tbox);
}

} // namespace omqe
