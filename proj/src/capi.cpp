/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "omqe/omqe.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "api.hpp"
#include "generators.hpp"
#include "normalize.hpp"
#include "parser.hpp"
#include "proof_io.hpp"

struct omqe_kb {
  omqe::KnowledgeBase kb;
};

namespace {

thread_local std::string g_last_error;

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p)
    std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::string str(const char *s) { return s ? std::string(s) : std::string(); }

template <typename F> omqe_status guarded(F &&f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const omqe::ParseError &e) {
    g_last_error = e.what();
    return OMQE_ERR_PARSE;
  } catch (const omqe::InputError &e) {
    g_last_error = e.what();
    return OMQE_ERR_INPUT;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return OMQE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OMQE_ERR_INTERNAL;
  }
}

omqe_status bad_argument(const char *what) {
  g_last_error = what;
  return OMQE_ERR_ARGUMENT;
}

} // namespace

extern "C" {

const char *omqe_version(void) { return "1.0.0"; }

const char *omqe_last_error(void) { return g_last_error.c_str(); }

void omqe_string_free(char *s) { std::free(s); }

omqe_status omqe_kb_parse(const char *text, omqe_kb **out) {
  if (!text || !out)
    return bad_argument("omqe_kb_parse: null argument");
  return guarded([&] {
    *out = new omqe_kb{omqe::parse_kb(text)};
    return OMQE_OK;
  });
}

void omqe_kb_free(omqe_kb *kb) { delete kb; }

omqe_status omqe_kb_info(const omqe_kb *kb, char **json_out) {
  if (!kb || !json_out)
    return bad_argument("omqe_kb_info: null argument");
  return guarded([&] {
    omqe::api::Json j;
    j["schema_version"] = omqe::kSchemaVersion;
    j["fragment"] = omqe::fragment_name(kb->kb.fragment);
    j["rules"] = kb->kb.tbox.size();
    j["facts"] = kb->kb.abox.size();
    j["has_query"] = kb->kb.query.has_value();
    j["text"] = omqe::serialize_kb(kb->kb);
    *json_out = dup(j.dump());
    return OMQE_OK;
  });
}

omqe_status omqe_answer(const omqe_kb *kb, const char *query, int depth_ceiling, char **json_out) {
  if (!kb || !json_out)
    return bad_argument("omqe_answer: null argument");
  return guarded([&] {
    omqe::BooleanCQ q = omqe::api::resolve_query(kb->kb, str(query));
    *json_out = dup(omqe::api::answer(kb->kb, q, depth_ceiling).dump());
    return OMQE_OK;
  });
}

void omqe_explain_options_init(omqe_explain_options *opt) {
  if (!opt)
    return;
  omqe::api::ExplainOptions d;
  opt->measure = OMQE_MEASURE_SIZE;
  opt->bound = 0;
  opt->algo = OMQE_ALGO_AUTO;
  opt->deriver = OMQE_DERIVER_SK;
  opt->strict_cg = 0;
  opt->unique_labels = 1;
  opt->max_nodes = d.max_nodes;
  opt->max_millis = d.max_millis;
}

omqe_status omqe_explain(const omqe_kb *kb, const char *query, const omqe_explain_options *opt, char **json_out) {
  if (!kb || !json_out)
    return bad_argument("omqe_explain: null argument");
  omqe_explain_options o;
  omqe_explain_options_init(&o);
  if (opt)
    o = *opt;
  if (o.measure < OMQE_MEASURE_SIZE || o.measure > OMQE_MEASURE_DOMAIN)
    return bad_argument("omqe_explain: unknown measure");
  if (o.algo < OMQE_ALGO_AUTO || o.algo > OMQE_ALGO_EXACT)
    return bad_argument("omqe_explain: unknown algorithm");
  if (o.deriver != OMQE_DERIVER_SK && o.deriver != OMQE_DERIVER_CQ)
    return bad_argument("omqe_explain: unknown deriver");
  if (o.bound == 1)
    return bad_argument("omqe_explain: the bound must be greater than 1");
  return guarded([&] {
    omqe::api::ExplainOptions e;
    e.measure = static_cast<omqe::Measure>(o.measure);
    e.bound = o.bound;
    e.algo = static_cast<omqe::api::Algo>(o.algo);
    e.deriver = o.deriver == OMQE_DERIVER_SK ? omqe::Deriver::Skolem : omqe::Deriver::CQ;
    e.strict_cg = o.strict_cg != 0;
    e.unique_labels = o.unique_labels != 0;
    e.max_nodes = o.max_nodes;
    e.max_millis = o.max_millis;
    omqe::BooleanCQ q = omqe::api::resolve_query(kb->kb, str(query));
    *json_out = dup(omqe::api::explain(kb->kb, q, e).dump());
    return OMQE_OK;
  });
}

omqe_status omqe_chase(const omqe_kb *kb, int depth, const char *format, char **out) {
  if (!kb || !out)
    return bad_argument("omqe_chase: null argument");
  return guarded([&] {
    *out = dup(omqe::api::chase_output(kb->kb, depth, format ? format : "text"));
    return OMQE_OK;
  });
}

omqe_status omqe_generate(const char *family, const char *param, char **kb_text_out, char **sidecar_json_out) {
  if (!family || !param || !kb_text_out)
    return bad_argument("omqe_generate: null argument");
  return guarded([&] {
    omqe::GeneratedInstance g = omqe::generate(family, param);
    *kb_text_out = dup(omqe::serialize_kb(g.kb));
    if (sidecar_json_out)
      *sidecar_json_out = dup(omqe::instance_sidecar(g).dump(2) + "\n");
    return OMQE_OK;
  });
}

omqe_status omqe_convert(const omqe_kb *kb, const char *proof_json, const char *to, int strict_cg, char **json_out) {
  if (!kb || !proof_json || !to || !json_out)
    return bad_argument("omqe_convert: null argument");
  auto d = omqe::deriver_from_name(to);
  if (!d)
    return bad_argument("omqe_convert: target must be sk or cq");
  return guarded([&] {
    *json_out = dup(omqe::api::convert(kb->kb, proof_json, *d, strict_cg != 0).dump());
    return OMQE_OK;
  });
}

omqe_status omqe_validate(const omqe_kb *kb, const char *proof_json, int strict_cg, char **json_out) {
  if (!kb || !proof_json || !json_out)
    return bad_argument("omqe_validate: null argument");
  return guarded([&] {
    *json_out = dup(omqe::api::validate(kb->kb, proof_json, strict_cg != 0).dump());
    return OMQE_OK;
  });
}

omqe_status omqe_export_dot(const char *proof_json, char **dot_out) {
  if (!proof_json || !dot_out)
    return bad_argument("omqe_export_dot: null argument");
  return guarded([&] {
    *dot_out = dup(omqe::api::export_dot(proof_json));
    return OMQE_OK;
  });
}

omqe_status omqe_bench(const char *family, int from, int to, const char *measures, int jobs, uint64_t max_nodes,
                       uint64_t max_millis, char **csv_out) {
  if (!family || !csv_out)
    return bad_argument("omqe_bench: null argument");
  return guarded([&] {
    omqe::api::BenchOptions b;
    b.family = family;
    b.from = from;
    b.to = to;
    b.jobs = jobs;
    b.max_nodes = max_nodes;
    b.max_millis = max_millis;
    if (measures && *measures) {
      b.measures.clear();
      std::stringstream ss(measures);
      std::string m;
      while (std::getline(ss, m, ',')) {
        auto v = omqe::measure_from_name(m);
        if (!v)
          throw omqe::InputError("unknown measure '" + m + "'");
        b.measures.push_back(*v);
      }
    }
    *csv_out = dup(omqe::api::bench(b));
    return OMQE_OK;
  });
}

omqe_status omqe_normalize(const char *text, char **kb_text_out) {
  if (!text || !kb_text_out)
    return bad_argument("omqe_normalize: null argument");
  return guarded([&] {
    *kb_text_out = dup(omqe::serialize_kb(omqe::normalize_kb(text)));
    return OMQE_OK;
  });
}

} // extern "C"
