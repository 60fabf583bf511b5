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

#include "core/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <nlohmann/json.hpp>

#include "core/error.hpp"

namespace plab {

namespace {

// Fills the strict upper triangle with fair coins and mirrors it.
void fill_half_symmetric(BitMatrix& g, Rng& rng) {
  const size_t n = g.rows();
  for (size_t i = 0; i < n; ++i) {
    uint64_t* row = g.row(i);
    for (size_t w = (i + 1) / 64; w < g.stride(); ++w) {
      uint64_t bits = rng.next();
      const size_t lo = w * 64;
      if (lo <= i) bits &= ~((uint64_t{2} << (i - lo)) - 1);  // clear cols <= i
      if (lo + 64 > n) bits &= (uint64_t{1} << (n - lo)) - 1;
      row[w] = bits;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    const uint64_t* row = g.row(i);
    for (size_t w = 0; w < g.stride(); ++w) {
      uint64_t bits = row[w];
      while (bits) {
        const size_t j = w * 64 + static_cast<size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (j > i) g.set(j, i, true);
      }
    }
  }
}

void fill_half(BitMatrix& g, Rng& rng) {
  for (size_t i = 0; i < g.rows(); ++i) {
    uint64_t* row = g.row(i);
    for (size_t w = 0; w < g.stride(); ++w) {
      uint64_t bits = rng.next();
      const size_t lo = w * 64;
      if (lo + 64 > g.cols()) bits &= (uint64_t{1} << (g.cols() - lo)) - 1;
      row[w] = bits;
    }
  }
}

void plant_clique(BitMatrix& g, const std::vector<size_t>& r) {
  for (size_t a = 0; a < r.size(); ++a) {
    for (size_t b = a + 1; b < r.size(); ++b) g.set_sym(r[a], r[b], true);
  }
}

BitMatrix clique_only(size_t n, const std::vector<size_t>& r) {
  BitMatrix g(n, n);
  plant_clique(g, r);
  return g;
}

}  // namespace

BitMatrix gen_er(size_t n, double p, Seed seed) {
  require(p >= 0.0 && p <= 1.0, "gen_er: p must lie in [0, 1]");
  BitMatrix g(n, n);
  Rng rng(seed);
  if (p == 0.5) {
    fill_half_symmetric(g, rng);
    return g;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) g.set_sym(i, j, true);
    }
  }
  return g;
}

Instance<BitMatrix> gen_planted_clique(size_t n, size_t k, Seed seed) {
  require(k >= 2 && k <= n, "gen_planted_clique: need 2 <= k <= n");
  Rng rng(seed);
  Instance<BitMatrix> out;
  out.truth.kind = TruthKind::kClique;
  out.truth.rows = rng.subset(n, k);
  out.matrix = BitMatrix(n, n);
  fill_half_symmetric(out.matrix, rng);
  plant_clique(out.matrix, out.truth.rows);
  return out;
}

BitMatrix gen_bipartite_null(size_t n, Seed seed) {
  Rng rng(seed);
  BitMatrix g(n, n);
  fill_half(g, rng);
  return g;
}

Instance<BitMatrix> gen_bpc(size_t n, size_t r, size_t s, Seed seed) {
  require(r <= n && s <= n, "gen_bpc: need r, s <= n");
  Rng rng(seed);
  Instance<BitMatrix> out;
  out.truth.kind = TruthKind::kBiclique;
  out.truth.rows = rng.subset(n, r);
  out.truth.cols = rng.subset(n, s);
  out.matrix = BitMatrix(n, n);
  fill_half(out.matrix, rng);
  for (size_t i : out.truth.rows) {
    for (size_t j : out.truth.cols) out.matrix.set(i, j, true);
  }
  return out;
}

bool in_sandwich(const BitMatrix& g, const BitMatrix& g_min, const BitMatrix& g_max) {
  if (g.rows() != g_min.rows() || g.cols() != g_min.cols() ||
      g.rows() != g_max.rows() || g.cols() != g_max.cols()) {
    return false;
  }
  auto w = g.words();
  auto lo = g_min.words();
  auto hi = g_max.words();
  for (size_t i = 0; i < w.size(); ++i) {
    if ((lo[i] & ~w[i]) != 0 || (w[i] & ~hi[i]) != 0) return false;
  }
  return true;
}

Adversary make_adversary(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kIdentity:
      return [](const BitMatrix& g_max, const BitMatrix&, Seed) { return g_max; };
    case AdversaryKind::kDeleteAll:
      return [](const BitMatrix&, const BitMatrix& g_min, Seed) { return g_min; };
    case AdversaryKind::kHalfThinning:
      return [](const BitMatrix& g_max, const BitMatrix& g_min, Seed seed) {
        Rng rng(seed);
        BitMatrix g = g_max;
        const size_t n = g.rows();
        for (size_t i = 0; i < n; ++i) {
          for (size_t j = i + 1; j < n; ++j) {
            if (g.get(i, j) && !g_min.get(i, j) && rng.bit()) g.set_sym(i, j, false);
          }
        }
        return g;
      };
    case AdversaryKind::kDegreeMasking:
      return [](const BitMatrix& g_max, const BitMatrix& g_min, Seed seed) {
        Rng rng(seed);
        BitMatrix g = g_max;
        const size_t n = g.rows();
        const size_t target = (n - 1) / 2;
        for (size_t v = 0; v < n; ++v) {
          if (g_min.row_count(v) == 0) continue;
          std::vector<size_t> removable;
          for (size_t u = 0; u < n; ++u) {
            if (g.get(v, u) && !g_min.get(v, u)) removable.push_back(u);
          }
          rng.shuffle(removable);
          size_t deg = g.row_count(v);
          for (size_t u : removable) {
            if (deg <= target) break;
            g.set_sym(v, u, false);
            --deg;
          }
        }
        return g;
      };
  }
  throw ParameterError("unknown adversary");
}

AdversaryKind adversary_from_name(const std::string& name) {
  if (name == "identity") return AdversaryKind::kIdentity;
  if (name == "delete-all") return AdversaryKind::kDeleteAll;
  if (name == "half-thinning") return AdversaryKind::kHalfThinning;
  if (name == "degree-masking") return AdversaryKind::kDegreeMasking;
  throw ParameterError("unknown adversary '" + name + "'");
}

const char* adversary_name(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kIdentity: return "identity";
    case AdversaryKind::kDeleteAll: return "delete-all";
    case AdversaryKind::kHalfThinning: return "half-thinning";
    case AdversaryKind::kDegreeMasking: return "degree-masking";
  }
  return "?";
}

Instance<BitMatrix> gen_srpc(size_t n, size_t k, Hypothesis h,
                             const Adversary& adversary, Seed seed) {
  Instance<BitMatrix> base;
  BitMatrix g_min(n, n);
  if (h == Hypothesis::kH1) {
    base = gen_planted_clique(n, k, seed.derive("graph"));
    g_min = clique_only(n, base.truth.rows);
  } else {
    base.matrix = gen_er(n, 0.5, seed.derive("graph"));
  }
  BitMatrix g = adversary(base.matrix, g_min, seed.derive("adversary"));
  if (!in_sandwich(g, g_min, base.matrix)) {
    throw ContractError("adversary output violates G_min <= G <= G_max");
  }
  return {std::move(g), std::move(base.truth)};
}

Instance<BitMatrix> gen_ppc(size_t n, size_t k, const CliqueDesign& design,
                            Hypothesis h, Seed seed) {
  require(design.n == n && design.k == k, "gen_ppc: design dims do not match (n, k)");
  require(!design.blocks.empty(), "gen_ppc: design has no blocks");
  Rng rng(seed);
  Instance<BitMatrix> out;
  out.matrix = BitMatrix(n, n);
  size_t block = 0;
  if (h == Hypothesis::kH1) block = static_cast<size_t>(rng.below(design.blocks.size()));
  fill_half_symmetric(out.matrix, rng);
  if (h == Hypothesis::kH1) {
    out.truth.kind = TruthKind::kClique;
    out.truth.rows = design.blocks[block];
    std::sort(out.truth.rows.begin(), out.truth.rows.end());
    out.truth.block = block;
    plant_clique(out.matrix, out.truth.rows);
  }
  return out;
}

Instance<RealMatrix> gen_hidden_hubs(size_t n, size_t k, double sigma0,
                                     double sigma1, Hypothesis h, Seed seed) {
  require(sigma0 > 0 && sigma1 > 0, "gen_hidden_hubs: sigmas must be positive");
  require(k <= n, "gen_hidden_hubs: need k <= n");
  Rng rng(seed);
  Instance<RealMatrix> out;
  out.matrix = RealMatrix(n, n);
  for (double& x : out.matrix.data()) x = sigma0 * rng.gaussian();
  if (h == Hypothesis::kH1) {
    out.truth.kind = TruthKind::kHubRows;
    out.truth.rows = rng.subset(n, k);
    for (size_t r : out.truth.rows) {
      std::vector<size_t> cols = rng.subset(n, k);
      for (size_t c : cols) out.matrix(r, c) = sigma1 * rng.gaussian();
      out.truth.hub_entries.push_back(std::move(cols));
    }
  }
  return out;
}

RealMatrix gen_scdc_null(size_t d, size_t t, Seed seed) {
  Rng rng(seed);
  RealMatrix x(d, t);
  for (double& v : x.data()) v = rng.gaussian();
  return x;
}

Instance<RealMatrix> gen_scdc_spiked(size_t d, size_t t, size_t k, double theta,
                                     Seed seed) {
  require(k >= 1 && k <= d, "gen_scdc_spiked: need 1 <= k <= d");
  require(theta >= 0, "gen_scdc_spiked: theta must be non-negative");
  Rng rng(seed.derive("spike"));
  Instance<RealMatrix> out;
  out.truth.kind = TruthKind::kSpike;
  out.truth.rows = rng.subset(d, k);
  out.truth.spike.assign(d, 0.0);
  const double mag = 1.0 / std::sqrt(static_cast<double>(k));
  for (size_t i : out.truth.rows) out.truth.spike[i] = rng.bit() ? mag : -mag;
  out.matrix = gen_scdc_null(d, t, seed.derive("samples"));
  const double lift = std::sqrt(1.0 + theta) - 1.0;
  for (size_t c = 0; c < t; ++c) {
    double proj = 0.0;
    for (size_t i : out.truth.rows) proj += out.truth.spike[i] * out.matrix(i, c);
    for (size_t i : out.truth.rows) out.matrix(i, c) += lift * proj * out.truth.spike[i];
  }
  return out;
}

double empirical_variance(const RealMatrix& x, const std::vector<double>& v) {
  require(v.size() == x.rows(), "empirical_variance: v length must equal rows");
  double norm = 0.0;
  for (double a : v) norm += a * a;
  require(std::abs(std::sqrt(norm) - 1.0) <= 1e-9, "empirical_variance: v must be unit");
  require(x.cols() > 0, "empirical_variance: need at least one sample");
  double total = 0.0;
  for (size_t c = 0; c < x.cols(); ++c) {
    double p = 0.0;
    for (size_t i = 0; i < x.rows(); ++i) p += v[i] * x(i, c);
    total += p * p;
  }
  return total / static_cast<double>(x.cols());
}

double scdc_d0_bound(size_t d, double zeta) {
  require(zeta > 0 && zeta < 1, "scdc_d0_bound: zeta must lie in (0, 1)");
  const double l = std::log(2.0 / zeta);
  const double dd = static_cast<double>(d);
  return 4.0 * std::sqrt(l / dd) + 4.0 * l / dd;
}

double scdc_d1_bound(size_t d, size_t k, double theta, double zeta) {
  require(zeta > 0 && zeta < 1, "scdc_d1_bound: zeta must lie in (0, 1)");
  const double l = std::log(2.0 / zeta);
  const double dd = static_cast<double>(d);
  return 2.0 * std::sqrt(theta * static_cast<double>(k) * l / dd) + 4.0 * l / dd;
}

Instance<BitMatrix> gen_pe(size_t players, size_t coords, bool b, Seed seed) {
  require(coords >= 1, "gen_pe: need at least one coordinate");
  Rng rng(seed);
  Instance<BitMatrix> out;
  out.matrix = BitMatrix(players, coords);
  fill_half(out.matrix, rng);
  if (b) {
    const size_t col = static_cast<size_t>(rng.below(coords));
    for (size_t p = 0; p < players; ++p) out.matrix.set(p, col, true);
    out.truth.kind = TruthKind::kColumn;
    out.truth.column = col;
  }
  return out;
}

Instance<RealMatrix> gen_pe_gaussian(size_t players, size_t coords, bool b,
                                     double sigma0, double sigma1, Seed seed) {
  require(coords >= 1, "gen_pe_gaussian: need at least one coordinate");
  Rng rng(seed);
  Instance<RealMatrix> out;
  out.matrix = RealMatrix(players, coords);
  for (double& x : out.matrix.data()) x = sigma0 * rng.gaussian();
  if (b) {
    const size_t col = static_cast<size_t>(rng.below(coords));
    for (size_t p = 0; p < players; ++p) out.matrix(p, col) = sigma1 * rng.gaussian();
    out.truth.kind = TruthKind::kColumn;
    out.truth.column = col;
  }
  return out;
}

UdInstance gen_ud(size_t len, bool intersecting, Seed seed) {
  require(len >= 1, "gen_ud: len must be >= 1");
  Rng rng(seed);
  UdInstance out;
  out.x.assign(len, 0);
  out.y.assign(len, 0);
  if (intersecting) out.witness = static_cast<size_t>(rng.below(len));
  for (size_t i = 0; i < len; ++i) {
    if (out.witness && *out.witness == i) {
      out.x[i] = out.y[i] = 1;
      continue;
    }
    switch (rng.below(3)) {
      case 0: break;
      case 1: out.y[i] = 1; break;
      default: out.x[i] = 1; break;
    }
  }
  return out;
}

bool is_valid_ud(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y) {
  if (x.size() != y.size()) return false;
  size_t common = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1 || y[i] > 1) return false;
    common += (x[i] & y[i]);
  }
  return common <= 1;
}

namespace {

const char* kind_name(TruthKind k) {
  switch (k) {
    case TruthKind::kNone: return "none";
    case TruthKind::kClique: return "clique";
    case TruthKind::kBiclique: return "biclique";
    case TruthKind::kHubRows: return "hub-rows";
    case TruthKind::kSpike: return "spike";
    case TruthKind::kColumn: return "column";
  }
  return "none";
}

}  // namespace

std::string truth_to_json(const PlantedTruth& t) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(t.kind);
  if (!t.rows.empty()) j["rows"] = t.rows;
  if (!t.cols.empty()) j["cols"] = t.cols;
  if (!t.hub_entries.empty()) j["hub_entries"] = t.hub_entries;
  if (!t.spike.empty()) j["spike"] = t.spike;
  if (t.block) j["block"] = *t.block;
  if (t.column) j["column"] = *t.column;
  return j.dump();
}

PlantedTruth truth_from_json(const std::string& text) {
  PlantedTruth t;
  try {
    auto j = nlohmann::json::parse(text);
    const std::string kind = j.value("kind", std::string("none"));
    for (TruthKind k : {TruthKind::kNone, TruthKind::kClique, TruthKind::kBiclique,
                        TruthKind::kHubRows, TruthKind::kSpike, TruthKind::kColumn}) {
      if (kind == kind_name(k)) t.kind = k;
    }
    if (j.contains("rows")) t.rows = j["rows"].get<std::vector<size_t>>();
    if (j.contains("cols")) t.cols = j["cols"].get<std::vector<size_t>>();
    if (j.contains("hub_entries")) {
      t.hub_entries = j["hub_entries"].get<std::vector<std::vector<size_t>>>();
    }
    if (j.contains("spike")) t.spike = j["spike"].get<std::vector<double>>();
    if (j.contains("block")) t.block = j["block"].get<size_t>();
    if (j.contains("column")) t.column = j["column"].get<size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("truth json: ") + e.what());
  }
  return t;
}

}  // namespace plab
