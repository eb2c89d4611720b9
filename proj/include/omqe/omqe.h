/*
 * (C) Copyright 2026 omqe contributors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef OMQE_OMQE_H
#define OMQE_OMQE_H

#include <stdint.h>

#if defined(OMQE_BUILDING)
#define OMQE_API __attribute__((visibility("default")))
#else
#define OMQE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. On failure omqe_last_error() describes the problem. */
typedef enum {
  OMQE_OK = 0,
  OMQE_ERR_PARSE = 1,    /* KB or label text is malformed */
  OMQE_ERR_INPUT = 2,    /* well-formed but unusable input */
  OMQE_ERR_ARGUMENT = 3, /* null pointer or out-of-range option */
  OMQE_ERR_INTERNAL = 4
} omqe_status;

typedef enum { OMQE_MEASURE_SIZE = 0, OMQE_MEASURE_TREE = 1, OMQE_MEASURE_DOMAIN = 2 } omqe_measure;
typedef enum { OMQE_ALGO_AUTO = 0, OMQE_ALGO_POLY = 1, OMQE_ALGO_EXACT = 2 } omqe_algo;
typedef enum { OMQE_DERIVER_SK = 0, OMQE_DERIVER_CQ = 1 } omqe_deriver;

typedef struct omqe_kb omqe_kb;

typedef struct {
  omqe_measure measure;
  uint64_t bound; /* 0: optimize without a bound */
  omqe_algo algo;
  omqe_deriver deriver;
  int strict_cg;
  int unique_labels;
  uint64_t max_nodes;
  uint64_t max_millis;
} omqe_explain_options;

OMQE_API const char *omqe_version(void);

/* Message of the last failed call on this thread; never null. */
OMQE_API const char *omqe_last_error(void);

/* Strings returned through char** outputs are owned by the caller. */
OMQE_API void omqe_string_free(char *s);

OMQE_API omqe_status omqe_kb_parse(const char *text, omqe_kb **out);
OMQE_API void omqe_kb_free(omqe_kb *kb);
/* Fragment, counts and the KB in canonical text form, as JSON. */
OMQE_API omqe_status omqe_kb_info(const omqe_kb *kb, char **json_out);

/* query may be null or empty to use the KB's own query; depth_ceiling < 0
 * selects the default iterative-deepening ceiling. */
OMQE_API omqe_status omqe_answer(const omqe_kb *kb, const char *query, int depth_ceiling, char **json_out);

OMQE_API void omqe_explain_options_init(omqe_explain_options *opt);
OMQE_API omqe_status omqe_explain(const omqe_kb *kb, const char *query, const omqe_explain_options *opt,
                                  char **json_out);

/* format: "text", "json" or "dot". */
OMQE_API omqe_status omqe_chase(const omqe_kb *kb, int depth, const char *format, char **out);

/* family: dllite-chain, dllite-path, dllite-tree, el-tree, el-abox,
 * hornalc-counter, sat, sat-cq. param: n, seed or clause list. */
OMQE_API omqe_status omqe_generate(const char *family, const char *param, char **kb_text_out,
                                   char **sidecar_json_out);

/* to: "sk" or "cq". The input proof is validated first. */
OMQE_API omqe_status omqe_convert(const omqe_kb *kb, const char *proof_json, const char *to, int strict_cg,
                                  char **json_out);
OMQE_API omqe_status omqe_validate(const omqe_kb *kb, const char *proof_json, int strict_cg, char **json_out);
OMQE_API omqe_status omqe_export_dot(const char *proof_json, char **dot_out);

/* measures: comma-separated subset of size,tree,domain; null for all. */
OMQE_API omqe_status omqe_bench(const char *family, int from, int to, const char *measures, int jobs,
                                uint64_t max_nodes, uint64_t max_millis, char **csv_out);

OMQE_API omqe_status omqe_normalize(const char *text, char **kb_text_out);

#ifdef __cplusplus
}
#endif

#endif
