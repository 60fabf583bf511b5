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

#include <gtest/gtest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "plab/plab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  plab_string_free(s);
  return out;
}

struct Fixture : ::testing::Test {
  plab_instance* inst = nullptr;
  plab_session* sess = nullptr;
  void SetUp() override {
    ASSERT_EQ(plab_instance_generate(R"({"problem":"pc","n":64,"k":10,"seed":5})", &inst), PLAB_OK);
    ASSERT_EQ(plab_session_open(inst, 62, &sess), PLAB_OK);
  }
  void TearDown() override {
    plab_session_free(sess);
    plab_instance_free(inst);
  }
};

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(plab_status_name(PLAB_OK), "ok");
  EXPECT_STREQ(plab_status_name(PLAB_ERR_BUDGET), "budget");
  EXPECT_NE(std::string(plab_version()), "");
}

TEST_F(Fixture, ShapeTruthAndQueries) {
  size_t rows = 0, cols = 0;
  int is_real = -1;
  ASSERT_EQ(plab_instance_shape(inst, &rows, &cols, &is_real), PLAB_OK);
  EXPECT_EQ(rows, 64u);
  EXPECT_EQ(cols, 64u);
  EXPECT_EQ(is_real, 0);
  char* truth = nullptr;
  ASSERT_EQ(plab_instance_truth(inst, &truth), PLAB_OK);
  EXPECT_NE(take(truth).find("rows"), std::string::npos);

  // Mv with e_j reads column j; compare against edge probes.
  std::vector<int64_t> v(64, 0), out(64, -1);
  v[3] = 1;
  ASSERT_EQ(plab_session_mv(sess, v.data(), v.size(), out.data(), out.size()), PLAB_OK);
  for (size_t i = 0; i < 64; ++i) {
    double e = -1;
    ASSERT_EQ(plab_session_edge_probe(sess, i, 3, &e), PLAB_OK);
    EXPECT_EQ(static_cast<double>(out[i]), e);
  }
  int64_t bil = 0;
  std::vector<int64_t> u(64, 1);
  ASSERT_EQ(plab_session_utmv(sess, u.data(), u.size(), v.data(), v.size(), &bil), PLAB_OK);
  int64_t col_sum = 0;
  for (auto x : out) col_sum += x;
  EXPECT_EQ(bil, col_sum);

  std::vector<int64_t> w(64 * 64, 0);
  w[3] = 1;  // entry (0,3)
  int64_t sk = -1;
  ASSERT_EQ(plab_session_sketch(sess, w.data(), w.size(), &sk), PLAB_OK);
  EXPECT_EQ(sk, out[0]);
  std::vector<uint8_t> wb(64 * 64, 0);
  wb[3] = 1;
  int f2 = -1;
  ASSERT_EQ(plab_session_f2_sketch(sess, wb.data(), wb.size(), &f2), PLAB_OK);
  EXPECT_EQ(f2, out[0] & 1);

  uint64_t counts[PLAB_MODEL_COUNT];
  ASSERT_EQ(plab_session_counts(sess, counts), PLAB_OK);
  EXPECT_EQ(counts[PLAB_MODEL_EDGE_PROBE], 64u);
  EXPECT_EQ(counts[PLAB_MODEL_MV], 1u);
  EXPECT_EQ(counts[PLAB_MODEL_UTMV], 1u);
  EXPECT_EQ(counts[PLAB_MODEL_SKETCH], 1u);
  EXPECT_EQ(counts[PLAB_MODEL_F2_SKETCH], 1u);
}

TEST_F(Fixture, Errors) {
  std::vector<int64_t> v(63, 0), out(64);
  EXPECT_EQ(plab_session_mv(sess, v.data(), v.size(), out.data(), out.size()), PLAB_ERR_PARAMETER);
  EXPECT_NE(std::string(plab_last_error()), "");

  // 64 rows of weight near 2^62 cannot fit in int64.
  std::vector<int64_t> big(64, int64_t{1} << 61);
  EXPECT_EQ(plab_session_mv(sess, big.data(), big.size(), out.data(), out.size()), PLAB_ERR_OVERFLOW);

  std::vector<double> rv(64, 1.0), rout(64);
  EXPECT_EQ(plab_session_mv_real(sess, rv.data(), rv.size(), rout.data(), rout.size()), PLAB_OK);

  ASSERT_EQ(plab_session_set_budget(sess, 1), PLAB_OK);
  double e;
  EXPECT_EQ(plab_session_edge_probe(sess, 0, 1, &e), PLAB_ERR_BUDGET);
  EXPECT_EQ(plab_session_edge_probe(nullptr, 0, 1, &e), PLAB_ERR_PARAMETER);

  plab_instance* bad = nullptr;
  EXPECT_EQ(plab_instance_generate("{", &bad), PLAB_ERR_PARAMETER);
  EXPECT_EQ(plab_instance_load("/nonexistent/x.plab", &bad), PLAB_ERR_IO);
  EXPECT_EQ(bad, nullptr);
}

TEST(CApi, RealInstanceRejectsIntegerModels) {
  plab_instance* inst = nullptr;
  ASSERT_EQ(plab_instance_generate(R"({"problem":"hh","n":32,"k":4})", &inst), PLAB_OK);
  plab_session* s = nullptr;
  ASSERT_EQ(plab_session_open(inst, 10, &s), PLAB_OK);
  std::vector<int64_t> v(32, 1), out(32);
  EXPECT_EQ(plab_session_mv(s, v.data(), v.size(), out.data(), out.size()), PLAB_ERR_CAPABILITY);
  plab_session_free(s);
  plab_instance_free(inst);
}

TEST(CApi, SaveLoadAndDetect) {
  plab_instance* inst = nullptr;
  ASSERT_EQ(plab_instance_generate(R"({"problem":"pc","n":256,"k":64,"seed":2})", &inst), PLAB_OK);
  const std::string path = ::testing::TempDir() + "capi_inst.plab";
  ASSERT_EQ(plab_instance_save(inst, path.c_str()), PLAB_OK);
  plab_instance* again = nullptr;
  ASSERT_EQ(plab_instance_load(path.c_str(), &again), PLAB_OK);
  plab_session* s = nullptr;
  ASSERT_EQ(plab_session_open(again, 10, &s), PLAB_OK);
  ASSERT_EQ(plab_session_enable_transcript(s), PLAB_OK);
  char* report = nullptr;
  ASSERT_EQ(plab_detect(s, R"({"problem":"pc","k":64})", &report), PLAB_OK);
  const std::string r = take(report);
  EXPECT_NE(r.find("\"verdict\":\"H1\""), std::string::npos) << r;
  char* tr = nullptr;
  ASSERT_EQ(plab_session_transcript(s, &tr), PLAB_OK);
  EXPECT_NE(take(tr).find("edge-probe"), std::string::npos);
  plab_session_free(s);
  plab_instance_free(again);
  plab_instance_free(inst);
  std::remove(path.c_str());
}

TEST(CApi, Command) {
  char* out = nullptr;
  EXPECT_EQ(plab_command("verify", R"({"target":"design","n":100,"k":5})", &out), PLAB_OK);
  EXPECT_NE(take(out).find("pass"), std::string::npos);
  out = nullptr;
  EXPECT_EQ(plab_command("frobnicate", "{}", &out), PLAB_ERR_PARAMETER);
  plab_string_free(out);
}

}  // namespace
