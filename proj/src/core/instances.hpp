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

#ifndef PLAB_CORE_INSTANCES_HPP_
#define PLAB_CORE_INSTANCES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/designs.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace plab {

enum class Hypothesis { kH0 = 0, kH1 = 1 };

enum class TruthKind { kNone, kClique, kBiclique, kHubRows, kSpike, kColumn };

struct PlantedTruth {
  TruthKind kind = TruthKind::kNone;
  std::vector<size_t> rows;  // clique R, biclique R, or hub rows
  std::vector<size_t> cols;  // biclique S
  // For hub rows: planted column set of each hub row, parallel to `rows`.
  std::vector<std::vector<size_t>> hub_entries;
  std::vector<double> spike;  // unit vector u for SCDC
  std::optional<size_t> block;   // design block index for PPC plants
  std::optional<size_t> column;  // planted coordinate for PE instances
};

std::string truth_to_json(const PlantedTruth& t);
PlantedTruth truth_from_json(const std::string& text);

template <class M>
struct Instance {
  M matrix;
  PlantedTruth truth;
};

BitMatrix gen_er(size_t n, double p, Seed seed);
Instance<BitMatrix> gen_planted_clique(size_t n, size_t k, Seed seed);
Instance<BitMatrix> gen_bpc(size_t n, size_t r, size_t s, Seed seed);
// Bipartite Bernoulli(1/2) matrix, the null for BPC.
BitMatrix gen_bipartite_null(size_t n, Seed seed);

// Maps (G_max, G_min) to a graph; must stay inside the sandwich.
using Adversary =
    std::function<BitMatrix(const BitMatrix& g_max, const BitMatrix& g_min, Seed)>;

enum class AdversaryKind { kIdentity, kDeleteAll, kHalfThinning, kDegreeMasking };

Adversary make_adversary(AdversaryKind kind);
AdversaryKind adversary_from_name(const std::string& name);
const char* adversary_name(AdversaryKind kind);

Instance<BitMatrix> gen_srpc(size_t n, size_t k, Hypothesis h,
                             const Adversary& adversary, Seed seed);
// True iff g_min <= g <= g_max entrywise.
bool in_sandwich(const BitMatrix& g, const BitMatrix& g_min, const BitMatrix& g_max);

Instance<BitMatrix> gen_ppc(size_t n, size_t k, const CliqueDesign& design,
                            Hypothesis h, Seed seed);

Instance<RealMatrix> gen_hidden_hubs(size_t n, size_t k, double sigma0,
                                     double sigma1, Hypothesis h, Seed seed);

// d x t matrix whose columns are the samples.
RealMatrix gen_scdc_null(size_t d, size_t t, Seed seed);
Instance<RealMatrix> gen_scdc_spiked(size_t d, size_t t, size_t k, double theta,
                                     Seed seed);
double empirical_variance(const RealMatrix& x, const std::vector<double>& v);
double scdc_d0_bound(size_t d, double zeta);
double scdc_d1_bound(size_t d, size_t k, double theta, double zeta);

// players x coords; B = 1 plants one all-ones column.
Instance<BitMatrix> gen_pe(size_t players, size_t coords, bool b, Seed seed);
// Gaussian variant: entries N(0, sigma0^2), the planted column N(0, sigma1^2).
Instance<RealMatrix> gen_pe_gaussian(size_t players, size_t coords, bool b,
                                     double sigma0, double sigma1, Seed seed);

struct UdInstance {
  std::vector<uint8_t> x, y;
  std::optional<size_t> witness;
};

UdInstance gen_ud(size_t len, bool intersecting, Seed seed);
// Checks the UD promise: at most one index with x = y = 1.
bool is_valid_ud(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y);

}  // namespace plab

#endif  // PLAB_CORE_INSTANCES_HPP_
