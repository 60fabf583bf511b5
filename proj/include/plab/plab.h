// Copyright 2026 The plab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the plab library. Every call returns a plab_status; on
 * failure plab_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * plab_string_free(). */
#ifndef PLAB_PLAB_H_
#define PLAB_PLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PLAB_BUILDING_LIBRARY)
#define PLAB_API __attribute__((visibility("default")))
#else
#define PLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plab_status {
  PLAB_OK = 0,
  PLAB_ERR_PARAMETER = 1,
  PLAB_ERR_BUDGET = 2,
  PLAB_ERR_CONTRACT = 3,
  PLAB_ERR_CAPABILITY = 4,
  PLAB_ERR_OVERFLOW = 5,
  PLAB_ERR_FORMAT = 6,
  PLAB_ERR_IO = 7,
  PLAB_ERR_VERIFY_FAILED = 8,
  PLAB_ERR_INTERNAL = 99
} plab_status;

/* Query models, in the order used by plab_session_counts. */
enum { PLAB_MODEL_EDGE_PROBE = 0, PLAB_MODEL_MV, PLAB_MODEL_UTMV, PLAB_MODEL_SKETCH,
       PLAB_MODEL_F2_SKETCH, PLAB_MODEL_COUNT };

typedef struct plab_instance plab_instance;
typedef struct plab_session plab_session;

PLAB_API const char* plab_version(void);
PLAB_API const char* plab_status_name(int status);
PLAB_API const char* plab_last_error(void);
PLAB_API void plab_string_free(char* s);

/* Runs "gen", "detect", "sweep" or "verify" with JSON parameters whose keys
 * mirror the CLI flags. *output receives the command's text even when a
 * verification fails (status PLAB_ERR_VERIFY_FAILED). */
PLAB_API int plab_command(const char* name, const char* params_json, char** output);

/* Instances. params_json carries problem, n, k, ... and seed. */
PLAB_API int plab_instance_generate(const char* params_json, plab_instance** out);
PLAB_API int plab_instance_load(const char* path, plab_instance** out);
PLAB_API int plab_instance_save(const plab_instance* inst, const char* path);
PLAB_API int plab_instance_shape(const plab_instance* inst, size_t* rows, size_t* cols,
                                 int* is_real);
/* Planted truth as JSON ("none" kind for null instances and loaded files). */
PLAB_API int plab_instance_truth(const plab_instance* inst, char** truth_json);
PLAB_API void plab_instance_free(plab_instance* inst);

/* Query sessions. Entries are bounded by n^bound_exponent. Exact answers
 * that do not fit in int64 fail with PLAB_ERR_OVERFLOW. */
PLAB_API int plab_session_open(const plab_instance* inst, int bound_exponent,
                               plab_session** out);
PLAB_API void plab_session_free(plab_session* s);
PLAB_API int plab_session_set_budget(plab_session* s, uint64_t total);
PLAB_API int plab_session_edge_probe(plab_session* s, size_t i, size_t j, double* out);
PLAB_API int plab_session_mv(plab_session* s, const int64_t* v, size_t v_len, int64_t* out,
                             size_t out_len);
PLAB_API int plab_session_mv_real(plab_session* s, const double* v, size_t v_len, double* out,
                                  size_t out_len);
PLAB_API int plab_session_utmv(plab_session* s, const int64_t* u, size_t u_len, const int64_t* v,
                               size_t v_len, int64_t* out);
PLAB_API int plab_session_sketch(plab_session* s, const int64_t* w, size_t w_len, int64_t* out);
PLAB_API int plab_session_f2_sketch(plab_session* s, const uint8_t* w, size_t w_len, int* out);
PLAB_API int plab_session_counts(const plab_session* s, uint64_t counts[PLAB_MODEL_COUNT]);
/* Transcript of every answered query as JSON lines. */
PLAB_API int plab_session_enable_transcript(plab_session* s);
PLAB_API int plab_session_transcript(const plab_session* s, char** jsonl);

/* Runs one detector (problem/model/n/k/... in params_json) on the session. */
PLAB_API int plab_detect(plab_session* s, const char* params_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* PLAB_PLAB_H_ */
