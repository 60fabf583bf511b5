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

#ifndef PLAB_CORE_STATS_HPP_
#define PLAB_CORE_STATS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core/instances.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace plab {

struct ChiSquare {
  double statistic = 0.0;
  double p_value = 1.0;
  size_t dof = 0;
};

// Pearson goodness of fit; cells with zero expected probability must be empty.
ChiSquare chi_square_uniformity(const std::vector<uint64_t>& counts,
                                const std::vector<double>& expected_probs);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};
Interval wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054);

double hellinger_sq(const std::vector<double>& p, const std::vector<double>& q);

// One paired trial outcome for a single hypothesis.
struct TrialOutcome {
  bool correct = false;
  uint64_t queries = 0;
};

struct SuccessReport {
  uint64_t trials = 0;  // per hypothesis
  uint64_t h0_correct = 0;
  uint64_t h1_correct = 0;
  double rate_h0 = 0.0;
  double rate_h1 = 0.0;
  Interval ci_h0, ci_h1;
  double queries_mean = 0.0;
  uint64_t queries_max = 0;
};

using TrialFn = std::function<TrialOutcome(Hypothesis, Seed)>;

// Runs `trials` H0 and `trials` H1 instances. Trial i of hypothesis h uses
// seed.derive(h).child(i), so results do not depend on `threads`. When
// run_h0 is false only H1 trials are run (H0 fields stay zero).
SuccessReport success_rate(const TrialFn& trial, uint64_t trials, Seed seed,
                           unsigned threads, bool run_h0 = true);

// Distribution of the XOR of the two players' edge sets for one clique
// block of size 3 in the four-colour construction, obtained by enumerating
// all 4^3 colourings. Index = bitmask over the 3 edges. Entries are counts
// out of 64.
std::array<uint64_t, 8> exhaustive_block_oracle(int x, int y);

struct SparseScan {
  std::vector<size_t> support;
  double variance = 0.0;
  std::vector<double> direction;
};
// Best k-sparse direction by brute force over all supports.
SparseScan sparse_variance_scan(const RealMatrix& x, size_t k);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

uint64_t binomial(uint64_t n, uint64_t k);

}  // namespace plab

#endif  // PLAB_CORE_STATS_HPP_
