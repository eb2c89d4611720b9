/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "proof_io.hpp"

#include <map>
#include <sstream>

#include "parser.hpp"

namespace omqe {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json proof_to_json(const ProofGraph &p, Deriver d, const BooleanCQ &goal) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["deriver"] = deriver_name(d);
  j["goal"] = cq_str(goal);
  j["vertices"] = ordered_json::array();
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    j["vertices"].push_back(
        {{"id", i}, {"label", label_str(p.vertices[i])}, {"kind", label_kind_name(p.vertices[i].kind)}});
  j["edges"] = ordered_json::array();
  for (const Edge &e : p.edges)
    j["edges"].push_back({{"premises", e.premises}, {"conclusion", e.conclusion}, {"schema", schema_name(e.schema)}});
  return j;
}

namespace {

Label parse_label_of_kind(const std::string &kind, const std::string &text) {
  if (kind == "atom")
    return Label::of_atom(parse_ground_atom(text));
  if (kind == "conjunction")
    return Label::of_conjunction(parse_conjunction(text));
  if (kind == "query")
    return Label::of_query(parse_cq(text));
  if (kind == "rule")
    return Label::of_rule(parse_rule(text));
  throw InputError("unknown vertex kind '" + kind + "'");
}

} // namespace

ProofDocument proof_from_json(const json &j) {
  if (!j.is_object())
    throw InputError("proof document must be a JSON object");
  try {
    ProofDocument doc;
    if (j.contains("deriver")) {
      auto d = deriver_from_name(j.at("deriver").get<std::string>());
      if (!d)
        throw InputError("unknown deriver");
      doc.deriver = *d;
    }
    doc.goal = parse_cq(j.at("goal").get<std::string>());
    std::map<long, int> ids;
    for (const json &v : j.at("vertices")) {
      long id = v.at("id").get<long>();
      if (ids.count(id))
        throw InputError("duplicate vertex id " + std::to_string(id));
      ids[id] = doc.proof.add_vertex(parse_label_of_kind(v.at("kind").get<std::string>(), v.at("label").get<std::string>()));
    }
    if (doc.proof.vertices.empty())
      throw InputError("proof has no vertices");
    auto vertex = [&](const json &x) {
      auto it = ids.find(x.get<long>());
      if (it == ids.end())
        throw InputError("edge refers to unknown vertex " + x.dump());
      return it->second;
    };
    for (const json &e : j.at("edges")) {
      auto s = schema_from_name(e.at("schema").get<std::string>());
      if (!s)
        throw InputError("unknown schema " + e.at("schema").dump());
      std::vector<int> prem;
      for (const json &x : e.at("premises"))
        prem.push_back(vertex(x));
      doc.proof.add_edge(prem, vertex(e.at("conclusion")), *s);
    }
    return doc;
  } catch (const json::exception &ex) {
    throw InputError(std::string("malformed proof document: ") + ex.what());
  }
}

namespace {

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string proof_to_dot(const ProofGraph &p) {
  std::ostringstream os;
  int sink = p.sink();
  os << "digraph proof {\n  rankdir=BT;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    os << "  v" << i << " [label=\"" << dot_escape(label_str(p.vertices[i])) << "\"";
    if (p.vertices[i].kind == LabelKind::Rule)
      os << ", style=\"rounded,filled\", fillcolor=lightgray";
    else if (static_cast<int>(i) == sink)
      os << ", style=filled, fillcolor=lightblue";
    os << "];\n";
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const Edge &ed = p.edges[e];
    os << "  e" << e << " [shape=point, xlabel=\"" << schema_name(ed.schema) << "\"];\n";
    for (int u : ed.premises)
      os << "  v" << u << " -> e" << e << " [arrowhead=none];\n";
    os << "  e" << e << " -> v" << ed.conclusion << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string chase_to_dot(const ChaseState &state) {
  std::map<std::string, std::vector<std::string>> concepts;
  std::vector<std::string> order;
  auto node = [&](TermId t) {
    const std::string &s = term_str(t);
    if (!concepts.count(s)) {
      concepts[s];
      order.push_back(s);
    }
    return s;
  };
  std::ostringstream edges;
  for (const Atom &a : state.atoms.all()) {
    if (a.kind == AtomKind::Concept) {
      concepts[node(a.a)].push_back(sym_name(a.pred));
    } else if (a.kind == AtomKind::Role) {
      std::string x = node(a.a), y = node(a.b);
      edges << "  \"" << dot_escape(x) << "\" -> \"" << dot_escape(y) << "\" [label=\"" << dot_escape(sym_name(a.pred))
            << "\"];\n";
    } else {
      std::string x = node(a.a), y = node(a.b);
      edges << "  \"" << dot_escape(x) << "\" -> \"" << dot_escape(y) << "\" [style=dashed, label=\"=\"];\n";
    }
  }
  std::ostringstream os;
  os << "digraph model {\n  node [shape=ellipse, fontname=\"Helvetica\"];\n";
  for (const std::string &n : order) {
    std::string label = n;
    if (!concepts[n].empty()) {
      label += "\\n";
      for (std::size_t i = 0; i < concepts[n].size(); ++i)
        label += (i ? ", " : "") + dot_escape(concepts[n][i]);
    }
    os << "  \"" << dot_escape(n) << "\" [label=\"" << dot_escape(n) << (concepts[n].empty() ? "" : label.substr(n.size()))
       << "\"];\n";
  }
  os << edges.str() << "}\n";
  return os.str();
}

} // namespace omqe
