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

#include "plab/plab.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <span>
#include <string>

#include "core/commands.hpp"
#include "core/error.hpp"
#include "core/instance_io.hpp"
#include "core/oracle.hpp"

struct plab_instance {
  plab::StoredInstance stored;
  plab::PlantedTruth truth;
};

struct plab_session {
  std::unique_ptr<plab::OracleSession> session;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const plab::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLAB_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw plab::ParameterError(std::string(what) + " must not be null");
}

int64_t narrow(plab::Wide x) {
  if (x > std::numeric_limits<int64_t>::max() || x < std::numeric_limits<int64_t>::min()) {
    throw plab::OverflowError("answer " + plab::wide_to_string(x) + " does not fit in int64");
  }
  return static_cast<int64_t>(x);
}

plab::OracleSession& sess(plab_session* s) {
  need(s, "session");
  return *s->session;
}

}  // namespace

extern "C" {

const char* plab_version(void) { return "0.1.0"; }

const char* plab_status_name(int status) {
  switch (status) {
    case PLAB_OK: return "ok";
    case PLAB_ERR_PARAMETER: return "parameter";
    case PLAB_ERR_BUDGET: return "budget";
    case PLAB_ERR_CONTRACT: return "contract";
    case PLAB_ERR_CAPABILITY: return "capability";
    case PLAB_ERR_OVERFLOW: return "overflow";
    case PLAB_ERR_FORMAT: return "format";
    case PLAB_ERR_IO: return "io";
    case PLAB_ERR_VERIFY_FAILED: return "verify-failed";
    default: return "internal";
  }
}

const char* plab_last_error(void) { return g_last_error.c_str(); }

void plab_string_free(char* s) { std::free(s); }

int plab_command(const char* name, const char* params_json, char** output) {
  return guarded([&] {
    need(name, "name");
    need(output, "output");
    *output = nullptr;
    const auto params = plab::params_from_json(params_json ? params_json : "");
    const auto result = plab::run_command(name, params);
    *output = dup_string(result.text);
    if (!result.pass) {
      g_last_error = std::string(name) + ": verification failed";
      return static_cast<int>(PLAB_ERR_VERIFY_FAILED);
    }
    return static_cast<int>(PLAB_OK);
  });
}

int plab_instance_generate(const char* params_json, plab_instance** out) {
  return guarded([&] {
    need(out, "out");
    auto params = plab::params_from_json(params_json ? params_json : "");
    auto gen = plab::generate_instance(params);
    *out = new plab_instance{std::move(gen.instance), std::move(gen.truth)};
    return static_cast<int>(PLAB_OK);
  });
}

int plab_instance_load(const char* path, plab_instance** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new plab_instance{plab::load_instance(path), {}};
    return static_cast<int>(PLAB_OK);
  });
}

int plab_instance_save(const plab_instance* inst, const char* path) {
  return guarded([&] {
    need(inst, "instance");
    need(path, "path");
    plab::save_instance(path, inst->stored);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_instance_shape(const plab_instance* inst, size_t* rows, size_t* cols, int* is_real) {
  return guarded([&] {
    need(inst, "instance");
    const bool real = inst->stored.kind == plab::PayloadKind::kReal;
    if (rows) *rows = real ? inst->stored.real.rows() : inst->stored.bits.rows();
    if (cols) *cols = real ? inst->stored.real.cols() : inst->stored.bits.cols();
    if (is_real) *is_real = real ? 1 : 0;
    return static_cast<int>(PLAB_OK);
  });
}

int plab_instance_truth(const plab_instance* inst, char** truth_json) {
  return guarded([&] {
    need(inst, "instance");
    need(truth_json, "truth_json");
    *truth_json = dup_string(plab::truth_to_json(inst->truth));
    return static_cast<int>(PLAB_OK);
  });
}

void plab_instance_free(plab_instance* inst) { delete inst; }

int plab_session_open(const plab_instance* inst, int bound_exponent, plab_session** out) {
  return guarded([&] {
    need(inst, "instance");
    need(out, "out");
    *out = new plab_session{plab::open_session(inst->stored, bound_exponent)};
    return static_cast<int>(PLAB_OK);
  });
}

void plab_session_free(plab_session* s) { delete s; }

int plab_session_set_budget(plab_session* s, uint64_t total) {
  return guarded([&] {
    sess(s).set_budget(total);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_edge_probe(plab_session* s, size_t i, size_t j, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = sess(s).edge_probe(i, j);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_mv(plab_session* s, const int64_t* v, size_t v_len, int64_t* out, size_t out_len) {
  return guarded([&] {
    need(v, "v");
    need(out, "out");
    auto& o = sess(s);
    if (out_len != o.rows()) throw plab::ParameterError("out_len must equal the row count");
    const auto y = o.mv(std::span<const int64_t>(v, v_len));
    for (size_t i = 0; i < y.size(); ++i) out[i] = narrow(y[i]);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_mv_real(plab_session* s, const double* v, size_t v_len, double* out,
                         size_t out_len) {
  return guarded([&] {
    need(v, "v");
    need(out, "out");
    auto& o = sess(s);
    if (out_len != o.rows()) throw plab::ParameterError("out_len must equal the row count");
    const auto y = o.mv_real(std::span<const double>(v, v_len));
    std::copy(y.begin(), y.end(), out);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_utmv(plab_session* s, const int64_t* u, size_t u_len, const int64_t* v,
                      size_t v_len, int64_t* out) {
  return guarded([&] {
    need(u, "u");
    need(v, "v");
    need(out, "out");
    *out = narrow(sess(s).utmv(std::span<const int64_t>(u, u_len), std::span<const int64_t>(v, v_len)));
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_sketch(plab_session* s, const int64_t* w, size_t w_len, int64_t* out) {
  return guarded([&] {
    need(w, "w");
    need(out, "out");
    *out = narrow(sess(s).sketch(std::span<const int64_t>(w, w_len)));
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_f2_sketch(plab_session* s, const uint8_t* w, size_t w_len, int* out) {
  return guarded([&] {
    need(w, "w");
    need(out, "out");
    *out = sess(s).f2_sketch(std::span<const uint8_t>(w, w_len));
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_counts(const plab_session* s, uint64_t counts[PLAB_MODEL_COUNT]) {
  return guarded([&] {
    need(s, "session");
    need(counts, "counts");
    const auto c = s->session->counts();
    for (size_t m = 0; m < PLAB_MODEL_COUNT; ++m) counts[m] = c.by_model[m];
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_enable_transcript(plab_session* s) {
  return guarded([&] {
    sess(s).enable_transcript(true);
    return static_cast<int>(PLAB_OK);
  });
}

int plab_session_transcript(const plab_session* s, char** jsonl) {
  return guarded([&] {
    need(s, "session");
    need(jsonl, "jsonl");
    *jsonl = dup_string(s->session->transcript_jsonl());
    return static_cast<int>(PLAB_OK);
  });
}

int plab_detect(plab_session* s, const char* params_json, char** report_json) {
  return guarded([&] {
    need(report_json, "report_json");
    auto params = plab::params_from_json(params_json ? params_json : "");
    if (params.n == 0) params.n = sess(s).rows();
    const auto rep = plab::detect_on(sess(s), params);
    *report_json = dup_string(rep.to_json());
    return static_cast<int>(PLAB_OK);
  });
}

}  // extern "C"
