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

#include "core/detectors.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "core/clique_search.hpp"
#include "core/designs.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/oracle.hpp"

namespace plab {
namespace {

size_t brute_max_clique(const BitMatrix& g) {
  const size_t n = g.rows();
  size_t best = 0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
    const size_t size = static_cast<size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (size_t a = 0; a < n && ok; ++a) {
      if (!((mask >> a) & 1)) continue;
      for (size_t b = a + 1; b < n; ++b) {
        if (((mask >> b) & 1) && !g.get(a, b)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) best = size;
  }
  return best;
}

bool is_clique(const BitMatrix& g, const std::vector<size_t>& vs) {
  for (size_t a = 0; a < vs.size(); ++a) {
    for (size_t b = a + 1; b < vs.size(); ++b) {
      if (!g.get(vs[a], vs[b])) return false;
    }
  }
  return true;
}

TEST(CliqueSearch, MatchesBruteForce) {
  for (uint64_t s = 0; s < 60; ++s) {
    const double p = 0.3 + 0.1 * static_cast<double>(s % 5);
    BitMatrix g = gen_er(14, p, Seed(s));
    const size_t truth = brute_max_clique(g);
    auto mx = max_clique(g, 1, 1'000'000);
    ASSERT_TRUE(mx.certified);
    EXPECT_EQ(mx.clique.size(), truth) << "seed " << s;
    EXPECT_TRUE(is_clique(g, mx.clique));
    auto hit = find_clique_at_least(g, truth, 1'000'000);
    EXPECT_GE(hit.clique.size(), truth);
    EXPECT_TRUE(is_clique(g, hit.clique));
    auto miss = find_clique_at_least(g, truth + 1, 1'000'000);
    EXPECT_TRUE(miss.clique.empty());
    EXPECT_TRUE(miss.certified);
  }
}

TEST(CliqueSearch, TrivialGraphs) {
  BitMatrix empty(20, 20);
  EXPECT_EQ(max_clique(empty, 1, 1000).clique.size(), 1u);
  EXPECT_TRUE(find_clique_at_least(empty, 2, 1000).clique.empty());
  BitMatrix full(70, 70);
  for (size_t a = 0; a < 70; ++a)
    for (size_t b = a + 1; b < 70; ++b) full.set_sym(a, b, true);
  EXPECT_EQ(max_clique(full, 1, 1000).clique.size(), 70u);
  EXPECT_EQ(find_clique_at_least(full, 70, 1000).clique.size(), 70u);
}

TEST(CliqueSearch, FindsPlantedClique) {
  auto inst = gen_planted_clique(300, 40, Seed(5));
  auto r = max_clique(inst.matrix, 20, 5'000'000);
  EXPECT_EQ(r.clique, inst.truth.rows);
}

TEST(BatchProbes, DecodeMatchesMatrix) {
  BitMatrix m = gen_er(100, 0.5, Seed(3));
  OracleSession s(m);
  std::vector<size_t> cols = {0, 7, 8, 50, 99};
  BitMatrix got = probe_batch_mv(s, cols);
  for (size_t i = 0; i < 100; ++i)
    for (size_t b = 0; b < cols.size(); ++b) EXPECT_EQ(got.get(i, b), m.get(i, cols[b]));
  std::vector<size_t> rows(62);
  for (size_t i = 0; i < 62; ++i) rows[i] = i + 20;
  auto bits = probe_batch_utmv(s, 13, rows);
  for (size_t i = 0; i < 62; ++i) EXPECT_EQ(bits[i], m.get(rows[i], 13));
  EXPECT_EQ(s.counts()[Model::kMv], 1u);
  EXPECT_EQ(s.counts()[Model::kUtMv], 1u);
  EXPECT_THROW(probe_batch_mv(s, {1, 1}), ParameterError);
}

TEST(Detectors, SizingHelpers) {
  EXPECT_EQ(auto_batch_width(1024, 10), 62u);
  EXPECT_EQ(auto_batch_width(1024, 2), 20u);
  EXPECT_EQ(pc_tau(1024, 3.5), 35u);
  EXPECT_EQ(pc_sample_size(1024, 1024, 1.0), 7u);
  EXPECT_EQ(pc_sample_size(100, 2, 6.0), 100u);
}

TEST(Detectors, PreconditionsEnforced) {
  BitMatrix m = gen_er(256, 0.5, Seed(1));
  OracleSession s(m);
  EXPECT_THROW(detect_pc_edge_probe(s, 256, 20, {}), ParameterError);
  EXPECT_THROW(detect_pc_one_query(s, 256, 40), ParameterError);
  EXPECT_THROW(detect_bpc_utmv(s, 256, 50, 50, {}), ParameterError);
}

BitMatrix complete(size_t n) {
  BitMatrix g(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) g.set_sym(a, b, true);
  return g;
}

BitMatrix all_ones(size_t n) {
  BitMatrix g(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) g.set(a, b, true);
  return g;
}

TEST(Detectors, TrivialInputs) {
  DetectorConfig cfg;
  {
    OracleSession full(complete(256)), empty(BitMatrix(256, 256));
    auto rep = detect_pc_edge_probe(full, 256, 64, cfg);
    EXPECT_EQ(rep.verdict, Hypothesis::kH1);
    // |B| = ceil(6 * 4 * ln 256) = 134, all pairs probed.
    EXPECT_EQ(rep.queries.total(), 134u * 133u / 2);
    EXPECT_EQ(detect_pc_edge_probe(empty, 256, 64, cfg).verdict, Hypothesis::kH0);
    EXPECT_EQ(detect_pc_mv(full, 256, 64, cfg).verdict, Hypothesis::kH1);
    EXPECT_EQ(detect_pc_mv(empty, 256, 64, cfg).verdict, Hypothesis::kH0);
  }
  {
    OracleSession full(complete(64));
    auto rep = find_pc_edge_probe(full, 64, 64, cfg);
    ASSERT_TRUE(rep.found);
    EXPECT_EQ(rep.found->rows.size(), 64u);
    auto rep_mv = find_pc_mv(full, 64, 64, cfg);
    ASSERT_TRUE(rep_mv.found);
    EXPECT_EQ(rep_mv.found->rows.size(), 64u);
  }
  {
    OracleSession ones(all_ones(100)), zero(BitMatrix(100, 100));
    EXPECT_EQ(detect_pc_one_query(ones, 100, 30).verdict, Hypothesis::kH1);
    EXPECT_EQ(detect_pc_one_query(zero, 100, 30).verdict, Hypothesis::kH0);
  }
  {
    OracleSession ones(all_ones(256)), zero(BitMatrix(256, 256));
    EXPECT_EQ(detect_bpc_utmv(ones, 256, 160, 160, cfg).verdict, Hypothesis::kH1);
    EXPECT_EQ(detect_bpc_utmv(zero, 256, 160, 160, cfg).verdict, Hypothesis::kH0);
  }
  {
    OracleSession ones(all_ones(64));
    auto rep = find_bpc_mv(ones, 64, 64, cfg);
    ASSERT_TRUE(rep.found);
    EXPECT_EQ(rep.found->rows.size(), 64u);
    EXPECT_EQ(rep.found->cols.size(), 64u);
    EXPECT_EQ(rep.queries.total(), 1u);
    BitMatrix almost = all_ones(64);
    almost.set(5, 9, false);
    OracleSession broken(almost);
    EXPECT_FALSE(find_bpc_mv(broken, 64, 64, cfg).found);
  }
  {
    const auto design = make_ppc_design(512, 64);
    OracleSession full(complete(512)), empty(BitMatrix(512, 512));
    EXPECT_EQ(detect_ppc(full, design, 512, 64, cfg).verdict, Hypothesis::kH1);
    EXPECT_EQ(detect_ppc(empty, design, 512, 64, cfg).verdict, Hypothesis::kH0);
  }
  {
    // One block per batch (36 / (6 ln 64) = 1.4): a lone planted block on an
    // empty graph gives C(6,2) = 15 >= 15/2 + 36/9.
    const auto design = make_ppc_design(64, 6);
    BitMatrix g(64, 64);
    const auto& blk = design.blocks[0];
    for (size_t a = 0; a < blk.size(); ++a)
      for (size_t b = a + 1; b < blk.size(); ++b) g.set_sym(blk[a], blk[b], true);
    DetectorConfig small = cfg;
    small.ppc_const = 6;
    OracleSession o(g);
    auto rep = detect_ppc(o, design, 64, 6, small);
    EXPECT_EQ(rep.verdict, Hypothesis::kH1);
    EXPECT_EQ(rep.queries.total(), design.blocks.size());
  }
}

class PcDetectors : public ::testing::TestWithParam<int> {};

TEST_P(PcDetectors, EdgeProbeAndMv) {
  const uint64_t s = static_cast<uint64_t>(GetParam());
  DetectorConfig cfg;
  cfg.seed = Seed(100 + s);
  auto h1 = gen_planted_clique(256, 64, Seed(s));
  BitMatrix h0 = gen_er(256, 0.5, Seed(1000 + s));
  {
    OracleSession o(h1.matrix);
    auto rep = find_pc_edge_probe(o, 256, 64, cfg);
    EXPECT_EQ(rep.verdict, Hypothesis::kH1);
    ASSERT_TRUE(rep.found);
    EXPECT_EQ(rep.found->rows, h1.truth.rows);
    EXPECT_EQ(rep.queries.total(), rep.queries[Model::kEdgeProbe]);
  }
  {
    OracleSession o(h0);
    EXPECT_EQ(detect_pc_edge_probe(o, 256, 64, cfg).verdict, Hypothesis::kH0);
  }
  {
    OracleSession o(h1.matrix);
    auto rep = find_pc_mv(o, 256, 64, cfg);
    EXPECT_EQ(rep.verdict, Hypothesis::kH1);
    ASSERT_TRUE(rep.found);
    EXPECT_EQ(rep.found->rows, h1.truth.rows);
    // 133 sampled columns, 62 per query.
    EXPECT_EQ(rep.queries[Model::kMv], 3u);
  }
  {
    OracleSession o(h0);
    EXPECT_EQ(detect_pc_mv(o, 256, 64, cfg).verdict, Hypothesis::kH0);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PcDetectors, ::testing::Range(0, 4));

TEST(Detectors, OneQuery) {
  int errors = 0;
  for (uint64_t s = 0; s < 20; ++s) {
    auto h1 = gen_planted_clique(400, 60, Seed(s));
    OracleSession o1(h1.matrix);
    auto rep = detect_pc_one_query(o1, 400, 60);
    errors += rep.verdict != Hypothesis::kH1;
    EXPECT_EQ(rep.queries.total(), 1u);
    OracleSession o0(gen_er(400, 0.5, Seed(500 + s)));
    errors += detect_pc_one_query(o0, 400, 60).verdict != Hypothesis::kH0;
  }
  EXPECT_LE(errors, 1);
}

TEST(Detectors, BicliqueUtMv) {
  for (uint64_t s = 0; s < 4; ++s) {
    DetectorConfig cfg;
    cfg.seed = Seed(s);
    auto h1 = gen_bpc(256, 160, 160, Seed(s));
    OracleSession o1(h1.matrix);
    auto rep = detect_bpc_utmv(o1, 256, 160, 160, cfg);
    EXPECT_EQ(rep.verdict, Hypothesis::kH1);
    EXPECT_EQ(rep.queries.total(), rep.queries[Model::kUtMv]);
    OracleSession o0(gen_bipartite_null(256, Seed(70 + s)));
    EXPECT_EQ(detect_bpc_utmv(o0, 256, 160, 160, cfg).verdict, Hypothesis::kH0);
  }
}

TEST(Detectors, FindBiclique) {
  for (uint64_t s = 0; s < 4; ++s) {
    DetectorConfig cfg;
    cfg.seed = Seed(s);
    auto h1 = gen_bpc(256, 64, 64, Seed(s));
    OracleSession o(h1.matrix);
    auto rep = find_bpc_mv(o, 256, 64, cfg);
    ASSERT_TRUE(rep.found) << "seed " << s;
    EXPECT_EQ(rep.found->rows, h1.truth.rows);
    EXPECT_EQ(rep.found->cols, h1.truth.cols);
    EXPECT_EQ(rep.queries.total(), rep.queries[Model::kMv]);
  }
}

TEST(Detectors, SemiRandomAdversaries) {
  for (auto kind : {AdversaryKind::kIdentity, AdversaryKind::kDeleteAll,
                    AdversaryKind::kHalfThinning, AdversaryKind::kDegreeMasking}) {
    for (uint64_t s = 0; s < 2; ++s) {
      DetectorConfig cfg;
      cfg.seed = Seed(s);
      auto h1 = gen_srpc(256, 64, Hypothesis::kH1, make_adversary(kind), Seed(s));
      OracleSession o1(h1.matrix);
      EXPECT_EQ(detect_srpc(o1, 256, 64, cfg).verdict, Hypothesis::kH1) << adversary_name(kind);
      auto h0 = gen_srpc(256, 64, Hypothesis::kH0, make_adversary(kind), Seed(s));
      OracleSession o0(h0.matrix);
      EXPECT_EQ(detect_srpc(o0, 256, 64, cfg).verdict, Hypothesis::kH0) << adversary_name(kind);
    }
  }
}

TEST(Detectors, PlantedPartitionSketch) {
  const auto design = make_ppc_design(512, 64);
  for (uint64_t s = 0; s < 4; ++s) {
    DetectorConfig cfg;
    cfg.seed = Seed(s);
    for (auto h : {Hypothesis::kH0, Hypothesis::kH1}) {
      auto inst = gen_ppc(512, 64, design, h, Seed(s));
      OracleSession o(inst.matrix);
      auto rep = detect_ppc(o, design, 512, 64, cfg);
      EXPECT_EQ(rep.verdict, h);
      EXPECT_EQ(rep.queries.total(), rep.queries[Model::kSketch]);
      EXPECT_EQ(rep.queries.total(), 1u);  // 8 blocks, 8 per batch
    }
  }
}

TEST(Detectors, HubCalibrationNullLaw) {
  auto cal = calibrate_hh(1024, 64, 1.0, 4.0);
  EXPECT_EQ(cal.samples_per_row, 444u);
  EXPECT_NEAR(cal.tau, 3.0, 0.2);
  EXPECT_EQ(cal.row_cutoff, 5u);
  EXPECT_LE(cal.row_flag_prob, 64.0 / (8.0 * 1024));
}

TEST(Detectors, HiddenHubs) {
  int errors = 0;
  for (uint64_t s = 0; s < 6; ++s) {
    DetectorConfig cfg;
    cfg.seed = Seed(s);
    for (auto h : {Hypothesis::kH0, Hypothesis::kH1}) {
      auto inst = gen_hidden_hubs(512, 32, 1.0, 2.0, h, Seed(s));
      OracleSession o(inst.matrix);
      auto rep = detect_hh(o, 512, 32, 1.0, 2.0, cfg);
      errors += rep.verdict != h;
      EXPECT_EQ(rep.queries.total(), rep.queries[Model::kEdgeProbe]);
    }
  }
  EXPECT_LE(errors, 1);
}

TEST(Detectors, ReportJson) {
  DetectorReport rep;
  rep.verdict = Hypothesis::kH1;
  rep.found = PlantedTruth{};
  rep.found->kind = TruthKind::kClique;
  rep.found->rows = {1, 2};
  rep.stats["tau"] = 3;
  auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["verdict"], "H1");
  EXPECT_EQ(j["stats"]["tau"], 3);
  EXPECT_EQ(j["queries"]["mv"], 0);
  EXPECT_EQ(j["found"]["rows"].size(), 2u);
}

}  // namespace
}  // namespace plab
