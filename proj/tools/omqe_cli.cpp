/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end. Talks to the library only through omqe.h.
//
// Exit codes: 0 success / found / yes, 1 definitive negative, 2 resource
// limit or unknown, 64 usage, 65 bad input data, 66 missing file, 70 internal.

#include <omqe/omqe.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kNegative = 1, kUnknown = 2, kUsage = 64, kData = 65, kNoInput = 66, kSoftware = 70 };

struct Failure {
  int code;
  std::string message;
};

int exit_for(omqe_status s) {
  switch (s) {
  case OMQE_OK:
    return kOk;
  case OMQE_ERR_PARSE:
  case OMQE_ERR_INPUT:
    return kData;
  case OMQE_ERR_ARGUMENT:
    return kUsage;
  default:
    return kSoftware;
  }
}

void check(omqe_status s) {
  if (s != OMQE_OK)
    throw Failure{exit_for(s), omqe_last_error()};
}

// Owns a string returned by the library.
struct CString {
  char *p = nullptr;
  ~CString() { omqe_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct KbHandle {
  omqe_kb *p = nullptr;
  ~KbHandle() { omqe_kb_free(p); }
};

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure{kNoInput, "cannot open '" + path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Failure{kNoInput, "cannot write '" + path + "'"};
  out << text;
}

void load_kb(const std::string &path, KbHandle &kb) { check(omqe_kb_parse(read_file(path).c_str(), &kb.p)); }

// Sidecar path: the output path with its extension replaced by .json.
std::string sidecar_path(const std::string &out) {
  auto slash = out.find_last_of('/');
  auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + ".json";
  return out.substr(0, dot) + ".json";
}

struct AnswerArgs {
  std::string kb, query, format = "text";
  int ceiling = -1;
};

int run_answer(const AnswerArgs &a) {
  KbHandle kb;
  load_kb(a.kb, kb);
  CString out;
  check(omqe_answer(kb.p, a.query.c_str(), a.ceiling, &out.p));
  Json j = Json::parse(out.str());
  std::string verdict = j["verdict"];
  if (a.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict;
    if (verdict != "unknown")
      std::cout << ", depth " << j["depth"].get<int>();
    if (j.contains("match"))
      for (auto &[var, term] : j["match"].items())
        std::cout << ", " << var << "->" << term.get<std::string>();
    std::cout << "\n";
  }
  return verdict == "yes" ? kOk : verdict == "no" ? kNegative : kUnknown;
}

struct ExplainArgs {
  std::string kb, query, measure = "size", algo = "auto", deriver = "sk", format = "text", output, dot;
  std::uint64_t bound = 0;
  bool strict_cg = false, all_labels = false;
  std::uint64_t max_nodes = 0, max_millis = 0;
};

int run_explain(const ExplainArgs &a) {
  omqe_explain_options opt;
  omqe_explain_options_init(&opt);
  opt.measure = a.measure == "size" ? OMQE_MEASURE_SIZE : a.measure == "tree" ? OMQE_MEASURE_TREE : OMQE_MEASURE_DOMAIN;
  opt.algo = a.algo == "poly" ? OMQE_ALGO_POLY : a.algo == "exact" ? OMQE_ALGO_EXACT : OMQE_ALGO_AUTO;
  opt.deriver = a.deriver == "cq" ? OMQE_DERIVER_CQ : OMQE_DERIVER_SK;
  opt.bound = a.bound;
  opt.strict_cg = a.strict_cg;
  opt.unique_labels = !a.all_labels;
  if (a.max_nodes)
    opt.max_nodes = a.max_nodes;
  if (a.max_millis)
    opt.max_millis = a.max_millis;

  KbHandle kb;
  load_kb(a.kb, kb);
  CString out;
  check(omqe_explain(kb.p, a.query.c_str(), &opt, &out.p));
  Json j = Json::parse(out.str());
  for (auto &w : j["warnings"])
    std::cerr << "warning: " << w.get<std::string>() << "\n";

  std::string status = j["status"];
  if (j.contains("proof")) {
    std::string proof = j["proof"].dump(2) + "\n";
    if (!a.output.empty())
      write_output(a.output, proof);
    if (!a.dot.empty()) {
      CString dot;
      check(omqe_export_dot(proof.c_str(), &dot.p));
      write_output(a.dot, dot.str());
    }
  }
  if (a.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "status: " << status << "\n";
    std::cout << "algorithm: " << j["algorithm"].get<std::string>() << "\n";
    if (j.contains("value")) {
      std::cout << j["measure"].get<std::string>() << ": " << j["value"].get<std::uint64_t>()
                << (j["optimal"].get<bool>() ? " (optimal)" : "") << "\n";
      for (auto &[k, v] : j["measures"].items())
        std::cout << "  " << k << " = " << v.get<std::uint64_t>() << "\n";
    }
    std::cout << "search nodes: " << j["nodes"].get<std::uint64_t>() << "\n";
  }
  return status == "found" ? kOk : status == "none" ? kNegative : kUnknown;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Optimal proofs for ontology-mediated conjunctive queries"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override");
  app.set_version_flag("--version", std::string(omqe_version()));

  std::function<int()> action;

  // answer
  AnswerArgs ans;
  auto *c_answer = app.add_subcommand("answer", "Decide entailment of the query and print a witness match");
  c_answer->add_option("kb", ans.kb, "KB file ('-' for stdin)")->required();
  c_answer->add_option("-q,--query", ans.query, "query text; defaults to the KB's query line");
  c_answer->add_option("--ceiling", ans.ceiling, "chase depth ceiling (negative: default)");
  c_answer->add_option("--format", ans.format)->check(CLI::IsMember({"text", "json"}));
  c_answer->callback([&] { action = [&] { return run_answer(ans); }; });

  // explain
  ExplainArgs ex;
  auto *c_explain = app.add_subcommand("explain", "Search for a proof that is optimal for a measure");
  c_explain->add_option("kb", ex.kb, "KB file ('-' for stdin)")->required();
  c_explain->add_option("-q,--query", ex.query, "query text; defaults to the KB's query line");
  c_explain->add_option("--measure", ex.measure)->check(CLI::IsMember({"size", "tree", "domain"}));
  c_explain->add_option("--bound", ex.bound, "accept only proofs with measure <= N (N > 1)")
      ->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  c_explain->add_option("--algo", ex.algo)->check(CLI::IsMember({"auto", "poly", "exact"}));
  c_explain->add_option("--deriver", ex.deriver)->check(CLI::IsMember({"sk", "cq"}));
  c_explain->add_flag("--strict-cg", ex.strict_cg, "keep the conjunction/generalization tail on ground atomic goals");
  c_explain->add_flag("--all-labels", ex.all_labels, "search without the unique-label restriction");
  c_explain->add_option("--max-nodes", ex.max_nodes, "search node budget");
  c_explain->add_option("--max-millis", ex.max_millis, "search time budget in milliseconds");
  c_explain->add_option("-o,--output", ex.output, "write the proof JSON here");
  c_explain->add_option("--dot", ex.dot, "write the proof as DOT here");
  c_explain->add_option("--format", ex.format)->check(CLI::IsMember({"text", "json"}));
  c_explain->callback([&] { action = [&] { return run_explain(ex); }; });

  // chase
  std::string chase_kb, chase_format = "text";
  int chase_depth = 2;
  auto *c_chase = app.add_subcommand("chase", "Print the depth-bounded Skolem chase");
  c_chase->add_option("kb", chase_kb)->required();
  c_chase->add_option("--depth", chase_depth)->check(CLI::NonNegativeNumber);
  c_chase->add_option("--format", chase_format)->check(CLI::IsMember({"text", "json", "dot"}));
  c_chase->callback([&] {
    action = [&] {
      KbHandle kb;
      load_kb(chase_kb, kb);
      CString out;
      check(omqe_chase(kb.p, chase_depth, chase_format.c_str(), &out.p));
      std::cout << out.str();
      return kOk;
    };
  });

  // gen
  std::string gen_family, gen_param, gen_out;
  auto *c_gen = app.add_subcommand("gen", "Generate an instance of a benchmark family");
  c_gen->add_option("family", gen_family)
      ->required()
      ->check(CLI::IsMember(
          {"dllite-chain", "dllite-path", "dllite-tree", "el-tree", "el-abox", "hornalc-counter", "sat", "sat-cq"}));
  c_gen->add_option("param", gen_param, "size n, seed, or clause list such as \"1 -2, 2 3\"")->required();
  c_gen->add_option("-o,--output", gen_out, "KB file; the sidecar goes next to it with extension .json");
  c_gen->callback([&] {
    action = [&] {
      CString kb, side;
      check(omqe_generate(gen_family.c_str(), gen_param.c_str(), &kb.p, &side.p));
      if (gen_out.empty()) {
        std::cout << kb.str();
      } else {
        write_output(gen_out, kb.str());
        write_output(sidecar_path(gen_out), side.str());
      }
      return kOk;
    };
  });

  // convert
  std::string cv_kb, cv_proof, cv_to, cv_out;
  bool cv_strict = false;
  auto *c_convert = app.add_subcommand("convert", "Transform a proof between the two derivers");
  c_convert->add_option("kb", cv_kb)->required();
  c_convert->add_option("proof", cv_proof, "proof JSON file")->required();
  c_convert->add_option("--to", cv_to)->required()->check(CLI::IsMember({"sk", "cq"}));
  c_convert->add_flag("--strict-cg", cv_strict);
  c_convert->add_option("-o,--output", cv_out);
  c_convert->callback([&] {
    action = [&] {
      KbHandle kb;
      load_kb(cv_kb, kb);
      CString out;
      check(omqe_convert(kb.p, read_file(cv_proof).c_str(), cv_to.c_str(), cv_strict, &out.p));
      write_output(cv_out, Json::parse(out.str()).dump(2) + "\n");
      return kOk;
    };
  });

  // validate
  std::string va_kb, va_proof;
  bool va_strict = false;
  auto *c_validate = app.add_subcommand("validate", "Check a proof against a KB");
  c_validate->add_option("kb", va_kb)->required();
  c_validate->add_option("proof", va_proof)->required();
  c_validate->add_flag("--strict-cg", va_strict);
  c_validate->callback([&] {
    action = [&] {
      KbHandle kb;
      load_kb(va_kb, kb);
      CString out;
      check(omqe_validate(kb.p, read_file(va_proof).c_str(), va_strict, &out.p));
      Json j = Json::parse(out.str());
      std::cout << j.dump(2) << "\n";
      return j["valid"].get<bool>() ? kOk : kNegative;
    };
  });

  // export
  std::string exp_proof, exp_out;
  auto *c_export = app.add_subcommand("export", "Render a proof JSON file as DOT");
  c_export->add_option("proof", exp_proof)->required();
  c_export->add_option("-o,--output", exp_out);
  c_export->callback([&] {
    action = [&] {
      CString out;
      check(omqe_export_dot(read_file(exp_proof).c_str(), &out.p));
      write_output(exp_out, out.str());
      return kOk;
    };
  });

  // bench
  std::string b_family, b_measures = "size,tree,domain";
  int b_from = 1, b_to = 3, b_jobs = 1;
  std::uint64_t b_nodes = 1000000, b_millis = 60000;
  auto *c_bench = app.add_subcommand("bench", "Sweep a family and print optimal measures as CSV");
  c_bench->add_option("family", b_family)->required();
  c_bench->add_option("--from", b_from);
  c_bench->add_option("--to", b_to);
  c_bench->add_option("--measures", b_measures, "comma-separated subset of size,tree,domain");
  c_bench->add_option("-j,--jobs", b_jobs)->check(CLI::PositiveNumber);
  c_bench->add_option("--max-nodes", b_nodes);
  c_bench->add_option("--max-millis", b_millis);
  c_bench->callback([&] {
    action = [&] {
      CString out;
      check(omqe_bench(b_family.c_str(), b_from, b_to, b_measures.c_str(), b_jobs, b_nodes, b_millis, &out.p));
      std::cout << out.str();
      return kOk;
    };
  });

  // normalize
  std::string norm_in, norm_out;
  auto *c_norm = app.add_subcommand("normalize", "Rewrite rules with conjunctive heads or tree bodies into normal form");
  c_norm->add_option("input", norm_in)->required();
  c_norm->add_option("-o,--output", norm_out);
  c_norm->callback([&] {
    action = [&] {
      CString out;
      check(omqe_normalize(read_file(norm_in).c_str(), &out.p));
      write_output(norm_out, out.str());
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSoftware;
  }
}
