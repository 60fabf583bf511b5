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

#ifndef PLAB_CORE_DETECTORS_HPP_
#define PLAB_CORE_DETECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/designs.hpp"
#include "core/instances.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"

namespace plab {

struct DetectorConfig {
  double c1 = 6.0;            // PC sample size c1 (n/k) ln n
  double min_k_factor = 10.0; // require k >= min_k_factor ln n; 0 disables
  double tau_factor = 3.5;    // clique threshold tau_factor log2 n
  double c2 = 16.0;           // BPC group size r^2 / (c2 n ln n)
  double c3 = 6.0;            // BPC sampled columns c3 (n/s) ln n
  double c4 = 6.0;            // BPC finding: sampled columns c4 (n/k) ln n
  double c5 = 4.0;            // HH samples per row c5 (n/k) ln n
  double ppc_const = 81.0;    // PPC batch size k^2 / (ppc_const ln n)
  double zeta = 0.05;
  int bound_exponent = 10;    // query entries bounded by n^c
  size_t batch_width = 0;     // 0: min(62, floor(c log2 n))
  uint64_t clique_node_limit = 2000000;
  Seed seed;                  // detector randomness
};

struct DetectorReport {
  Hypothesis verdict = Hypothesis::kH0;
  std::optional<PlantedTruth> found;
  QueryCounts queries;
  // False when a clique search hit its node limit.
  bool certified = true;
  std::map<std::string, double> stats;

  std::string to_json() const;
};

size_t auto_batch_width(size_t n, int bound_exponent);
size_t pc_sample_size(size_t n, size_t k, double c1);
size_t pc_tau(size_t n, double tau_factor);

// Bits A[rows[b]][col] for b < rows.size(), from one uTMv query.
std::vector<bool> probe_batch_utmv(Oracle& o, size_t col, const std::vector<size_t>& rows);
// Columns `cols` of A (rows() x cols.size()), from one Mv query.
BitMatrix probe_batch_mv(Oracle& o, const std::vector<size_t>& cols);

DetectorReport detect_pc_edge_probe(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport find_pc_edge_probe(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport detect_pc_one_query(Oracle& o, size_t n, size_t k);
DetectorReport detect_pc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport find_pc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport detect_bpc_utmv(Oracle& o, size_t n, size_t r, size_t s, const DetectorConfig& cfg);
DetectorReport find_bpc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport detect_srpc(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg);
DetectorReport detect_ppc(Oracle& o, const CliqueDesign& design, size_t n, size_t k,
                          const DetectorConfig& cfg);
DetectorReport detect_hh(Oracle& o, size_t n, size_t k, double sigma0, double sigma1,
                         const DetectorConfig& cfg);

// Null calibration used by detect_hh.
struct HhCalibration {
  size_t samples_per_row = 0;
  double tau = 0.0;        // entry threshold on |x|
  size_t row_cutoff = 0;   // a row is flagged when its count reaches this
  size_t count_cutoff = 0; // H1 when more than this many rows are flagged
  double row_flag_prob = 0.0;
};
HhCalibration calibrate_hh(size_t n, size_t k, double sigma0, double c5);

}  // namespace plab

#endif  // PLAB_CORE_DETECTORS_HPP_
