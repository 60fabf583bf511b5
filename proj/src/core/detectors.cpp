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

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "core/clique_search.hpp"
#include "core/error.hpp"
#include "core/stats.hpp"

namespace plab {

namespace {

double ln(size_t n) { return std::log(static_cast<double>(n)); }

size_t batch_width(const DetectorConfig& cfg, size_t n) {
  return cfg.batch_width ? std::min<size_t>(cfg.batch_width, 62)
                         : auto_batch_width(n, cfg.bound_exponent);
}

void check_min_k(size_t n, size_t k, const DetectorConfig& cfg) {
  require(k >= 2 && k <= n, "need 2 <= k <= n");
  if (cfg.min_k_factor > 0) {
    require(static_cast<double>(k) >= cfg.min_k_factor * ln(n),
            "precondition k >= " + std::to_string(cfg.min_k_factor) + " ln n violated");
  }
}

PlantedTruth clique_truth(std::vector<size_t> vertices) {
  PlantedTruth t;
  t.kind = TruthKind::kClique;
  std::sort(vertices.begin(), vertices.end());
  t.rows = std::move(vertices);
  return t;
}

// Shared body of the PC detectors once the sample's adjacency is known.
struct CliquePhase {
  std::vector<size_t> sample;
  BitMatrix local;
  CliqueSearchResult search;
  size_t tau = 0;
};

void finish_detect(DetectorReport& rep, const CliquePhase& ph) {
  rep.verdict = ph.search.clique.size() >= ph.tau ? Hypothesis::kH1 : Hypothesis::kH0;
  rep.certified = ph.search.certified;
  rep.stats["sample_size"] = static_cast<double>(ph.sample.size());
  rep.stats["tau"] = static_cast<double>(ph.tau);
  rep.stats["clique_size"] = static_cast<double>(ph.search.clique.size());
  rep.stats["search_nodes"] = static_cast<double>(ph.search.nodes);
}

CliquePhase edge_probe_phase(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg,
                             bool maximum) {
  CliquePhase ph;
  Rng rng(cfg.seed.derive("sample"));
  ph.sample = rng.subset(n, pc_sample_size(n, k, cfg.c1));
  const size_t b = ph.sample.size();
  ph.local = BitMatrix(b, b);
  for (size_t x = 0; x < b; ++x) {
    for (size_t y = x + 1; y < b; ++y) {
      if (o.edge_probe(ph.sample[x], ph.sample[y]) != 0.0) ph.local.set_sym(x, y, true);
    }
  }
  ph.tau = pc_tau(n, cfg.tau_factor);
  ph.search = maximum ? max_clique(ph.local, ph.tau, cfg.clique_node_limit)
                      : find_clique_at_least(ph.local, ph.tau, cfg.clique_node_limit);
  return ph;
}

}  // namespace

std::string DetectorReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict == Hypothesis::kH1 ? "H1" : "H0";
  nlohmann::ordered_json q;
  for (size_t m = 0; m < kModelCount; ++m) q[model_name(static_cast<Model>(m))] = queries.by_model[m];
  j["queries"] = q;
  j["certified"] = certified;
  j["found"] = found ? nlohmann::ordered_json::parse(truth_to_json(*found)) : nlohmann::ordered_json();
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [key, v] : stats) s[key] = v;
  j["stats"] = s;
  return j.dump();
}

size_t auto_batch_width(size_t n, int bound_exponent) {
  const double lg = std::log2(static_cast<double>(std::max<size_t>(n, 2)));
  return std::clamp<size_t>(static_cast<size_t>(std::floor(bound_exponent * lg)), 1, 62);
}

size_t pc_sample_size(size_t n, size_t k, double c1) {
  const double want = std::ceil(c1 * static_cast<double>(n) / static_cast<double>(k) * ln(n));
  return std::min<size_t>(n, static_cast<size_t>(std::max(want, 1.0)));
}

size_t pc_tau(size_t n, double tau_factor) {
  return static_cast<size_t>(std::ceil(tau_factor * std::log2(static_cast<double>(n))));
}

std::vector<bool> probe_batch_utmv(Oracle& o, size_t col, const std::vector<size_t>& rows) {
  require(!rows.empty() && rows.size() <= 62, "probe_batch_utmv: need 1..62 rows");
  require(col < o.cols(), "probe_batch_utmv: column out of range");
  std::vector<int64_t> u(o.rows(), 0), v(o.cols(), 0);
  for (size_t b = 0; b < rows.size(); ++b) {
    require(rows[b] < o.rows() && u[rows[b]] == 0, "probe_batch_utmv: rows must be distinct and in range");
    u[rows[b]] = int64_t{1} << b;
  }
  v[col] = 1;
  const Wide ans = o.utmv(u, v);
  std::vector<bool> bits(rows.size());
  for (size_t b = 0; b < rows.size(); ++b) bits[b] = ((ans >> b) & 1) != 0;
  return bits;
}

BitMatrix probe_batch_mv(Oracle& o, const std::vector<size_t>& cols) {
  require(!cols.empty() && cols.size() <= 62, "probe_batch_mv: need 1..62 columns");
  std::vector<int64_t> v(o.cols(), 0);
  for (size_t b = 0; b < cols.size(); ++b) {
    require(cols[b] < o.cols() && v[cols[b]] == 0, "probe_batch_mv: columns must be distinct and in range");
    v[cols[b]] = int64_t{1} << b;
  }
  const auto y = o.mv(v);
  BitMatrix out(o.rows(), cols.size());
  for (size_t i = 0; i < y.size(); ++i) {
    const auto word = static_cast<uint64_t>(y[i]);
    out.row(i)[0] = word;
  }
  return out;
}

DetectorReport detect_pc_edge_probe(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  check_min_k(n, k, cfg);
  const QueryCounts before = o.counts();
  DetectorReport rep;
  const auto ph = edge_probe_phase(o, n, k, cfg, false);
  finish_detect(rep, ph);
  rep.queries = o.counts() - before;
  return rep;
}

DetectorReport find_pc_edge_probe(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  check_min_k(n, k, cfg);
  const QueryCounts before = o.counts();
  DetectorReport rep;
  const auto ph = edge_probe_phase(o, n, k, cfg, true);
  finish_detect(rep, ph);
  if (rep.verdict == Hypothesis::kH1) {
    // Seed clique B' in global labels; extend by everything adjacent to all of it.
    std::vector<size_t> seed;
    std::vector<char> in_sample(n, 0), in_seed(n, 0);
    for (size_t x : ph.sample) in_sample[x] = 1;
    for (size_t x : ph.search.clique) {
      seed.push_back(ph.sample[x]);
      in_seed[ph.sample[x]] = 1;
    }
    std::vector<size_t> local_index(n, 0);
    for (size_t x = 0; x < ph.sample.size(); ++x) local_index[ph.sample[x]] = x;
    std::vector<size_t> found = seed;
    for (size_t v = 0; v < n; ++v) {
      if (in_seed[v]) continue;
      bool all = true;
      for (size_t u : seed) {
        const bool adj = in_sample[v] ? ph.local.get(local_index[v], local_index[u])
                                      : o.edge_probe(v, u) != 0.0;
        if (!adj) {
          all = false;
          break;
        }
      }
      if (all) found.push_back(v);
    }
    rep.found = clique_truth(std::move(found));
    rep.stats["seed_size"] = static_cast<double>(seed.size());
  }
  rep.queries = o.counts() - before;
  return rep;
}

DetectorReport detect_pc_one_query(Oracle& o, size_t n, size_t k) {
  require(k >= 2 && k <= n, "need 2 <= k <= n");
  require(static_cast<double>(k) >= 3.0 * std::sqrt(static_cast<double>(n)),
          "precondition k >= 3 sqrt(n) violated");
  const QueryCounts before = o.counts();
  std::vector<int64_t> ones(n, 1);
  const Wide total = o.utmv(ones, ones);
  const double edges = static_cast<double>(total) / 2.0;  // each edge counted twice
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  // Midpoint between the null mean C(n,2)/2 and the planted mean C(n,2)/2 + C(k,2)/2.
  const double threshold = 0.5 * nn * (nn - 1) / 2 + 0.25 * kk * (kk - 1) / 2;
  DetectorReport rep;
  rep.verdict = edges >= threshold ? Hypothesis::kH1 : Hypothesis::kH0;
  rep.stats["edges"] = edges;
  rep.stats["threshold"] = threshold;
  rep.queries = o.counts() - before;
  return rep;
}

namespace {

// Reads the sampled columns with batched Mv queries; returns n x |sample| bits.
BitMatrix read_columns(Oracle& o, const std::vector<size_t>& sample, size_t width) {
  BitMatrix cols(o.rows(), sample.size());
  for (size_t start = 0; start < sample.size(); start += width) {
    const size_t end = std::min(sample.size(), start + width);
    std::vector<size_t> batch(sample.begin() + static_cast<std::ptrdiff_t>(start),
                              sample.begin() + static_cast<std::ptrdiff_t>(end));
    const BitMatrix part = probe_batch_mv(o, batch);
    for (size_t i = 0; i < o.rows(); ++i) {
      for (size_t b = 0; b < batch.size(); ++b) {
        if (part.get(i, b)) cols.set(i, start + b, true);
      }
    }
  }
  return cols;
}

}  // namespace

static DetectorReport pc_mv_impl(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg,
                                 bool find) {
  check_min_k(n, k, cfg);
  const QueryCounts before = o.counts();
  CliquePhase ph;
  Rng rng(cfg.seed.derive("sample"));
  ph.sample = rng.subset(n, pc_sample_size(n, k, cfg.c1));
  const size_t b = ph.sample.size();
  const BitMatrix cols = read_columns(o, ph.sample, batch_width(cfg, n));
  ph.local = BitMatrix(b, b);
  for (size_t x = 0; x < b; ++x) {
    for (size_t y = 0; y < b; ++y) {
      if (x != y && cols.get(ph.sample[x], y)) ph.local.set(x, y, true);
    }
  }
  ph.tau = pc_tau(n, cfg.tau_factor);
  ph.search = find ? max_clique(ph.local, ph.tau, cfg.clique_node_limit)
                   : find_clique_at_least(ph.local, ph.tau, cfg.clique_node_limit);
  DetectorReport rep;
  finish_detect(rep, ph);
  if (find && rep.verdict == Hypothesis::kH1) {
    // Common neighbourhood of B' from the columns already read.
    std::vector<size_t> found;
    std::vector<char> in_seed(n, 0);
    for (size_t x : ph.search.clique) in_seed[ph.sample[x]] = 1;
    for (size_t v = 0; v < n; ++v) {
      bool all = true;
      for (size_t x : ph.search.clique) {
        if (ph.sample[x] != v && !cols.get(v, x)) {
          all = false;
          break;
        }
      }
      if (all) found.push_back(v);
    }
    rep.found = clique_truth(std::move(found));
    rep.stats["seed_size"] = static_cast<double>(ph.search.clique.size());
  }
  rep.queries = o.counts() - before;
  return rep;
}

DetectorReport detect_pc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  return pc_mv_impl(o, n, k, cfg, false);
}

DetectorReport find_pc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  return pc_mv_impl(o, n, k, cfg, true);
}

DetectorReport detect_bpc_utmv(Oracle& o, size_t n, size_t r, size_t s, const DetectorConfig& cfg) {
  require(r >= 1 && s >= 1 && r <= n && s <= n, "need 1 <= r, s <= n");
  const double scale = cfg.c2 * static_cast<double>(n) * ln(n);
  require(static_cast<double>(r) * r >= scale,
          "precondition r >= sqrt(c2 n ln n) violated (group size would be 0)");
  const size_t g = static_cast<size_t>(std::floor(static_cast<double>(r) * r / scale));
  const size_t samples = std::min<size_t>(
      n, static_cast<size_t>(std::ceil(cfg.c3 * static_cast<double>(n) / static_cast<double>(s) * ln(n))));
  const QueryCounts before = o.counts();
  Rng rng(cfg.seed.derive("sample"));
  std::vector<size_t> cols = rng.subset(n, samples);
  rng.shuffle(cols);
  std::vector<int64_t> ones(n, 1);
  DetectorReport rep;
  double best_margin = -1e300;
  for (size_t start = 0; start < cols.size(); start += g) {
    const size_t end = std::min(cols.size(), start + g);
    std::vector<int64_t> v(n, 0);
    for (size_t i = start; i < end; ++i) v[cols[i]] = 1;
    const double sum = static_cast<double>(o.utmv(ones, v));
    const double threshold = static_cast<double>(n) / 2.0 * static_cast<double>(end - start) +
                             static_cast<double>(r) / 4.0;
    best_margin = std::max(best_margin, sum - threshold);
    if (sum >= threshold) rep.verdict = Hypothesis::kH1;
  }
  rep.stats["group_size"] = static_cast<double>(g);
  rep.stats["sampled_columns"] = static_cast<double>(samples);
  rep.stats["best_margin"] = best_margin;
  rep.queries = o.counts() - before;
  return rep;
}

namespace {

std::vector<size_t> top_indices(const std::vector<double>& score, size_t count) {
  std::vector<size_t> idx(score.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](size_t a, size_t b) {
                      return score[a] != score[b] ? score[a] > score[b] : a < b;
                    });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Columns (as bit rows of the transpose) all-ones on `rows`.
struct BicliqueGuess {
  std::vector<size_t> rows;
  std::vector<size_t> cols;  // indices into the sampled set
};

// Alternating refinement from an initial row guess. `colbits` holds each
// sampled column as a packed bit row over the n matrix rows.
std::optional<BicliqueGuess> refine(const BitMatrix& colbits, std::vector<size_t> rows, size_t k) {
  const size_t n = colbits.cols(), c = colbits.rows();
  const double kk = static_cast<double>(k);
  const double col_cut = kk / 2.0 + 1.25 * std::sqrt(kk);  // 2.5 sd above a null column
  for (int iter = 0; iter < 30; ++iter) {
    BitMatrix mask(1, n);
    for (size_t r : rows) mask.set(0, r, true);
    std::vector<size_t> chosen;
    for (size_t j = 0; j < c; ++j) {
      const double hits = static_cast<double>(popcount_and(colbits.row(j), mask.row(0), colbits.stride()));
      if (hits >= col_cut) chosen.push_back(j);
    }
    if (chosen.empty()) return std::nullopt;
    std::vector<double> row_score(n, 0.0);
    for (size_t j : chosen) {
      const uint64_t* bits = colbits.row(j);
      for (size_t w = 0; w < colbits.stride(); ++w) {
        uint64_t x = bits[w];
        while (x) {
          row_score[w * 64 + static_cast<size_t>(std::countr_zero(x))] += 1.0;
          x &= x - 1;
        }
      }
    }
    auto next = top_indices(row_score, k);
    if (next == rows) break;
    rows = std::move(next);
  }
  // Exact step: sampled columns all-ones on the row guess, then the rows
  // all-ones on those columns.
  BitMatrix mask(1, n);
  for (size_t r : rows) mask.set(0, r, true);
  BicliqueGuess g;
  for (size_t j = 0; j < c; ++j) {
    if (popcount_and(colbits.row(j), mask.row(0), colbits.stride()) == k) g.cols.push_back(j);
  }
  if (g.cols.size() < 2) return std::nullopt;
  std::vector<uint64_t> common(colbits.row(g.cols[0]), colbits.row(g.cols[0]) + colbits.stride());
  for (size_t j : g.cols) {
    for (size_t w = 0; w < colbits.stride(); ++w) common[w] &= colbits.row(j)[w];
  }
  for (size_t i = 0; i < n; ++i) {
    if ((common[i / 64] >> (i % 64)) & 1u) g.rows.push_back(i);
  }
  if (g.rows.size() != k) return std::nullopt;
  return g;
}

}  // namespace

DetectorReport find_bpc_mv(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  require(k >= 2 && k <= n, "need 2 <= k <= n");
  const QueryCounts before = o.counts();
  if (k == n) {
    // The promise forces the all-ones matrix; one query of row sums confirms it.
    const auto sums = o.mv(std::vector<int64_t>(n, 1));
    DetectorReport rep;
    rep.verdict = Hypothesis::kH0;
    if (std::all_of(sums.begin(), sums.end(), [&](Wide x) { return x == static_cast<Wide>(n); })) {
      PlantedTruth t;
      t.kind = TruthKind::kBiclique;
      t.rows.resize(n);
      std::iota(t.rows.begin(), t.rows.end(), size_t{0});
      t.cols = t.rows;
      rep.verdict = Hypothesis::kH1;
      rep.found = std::move(t);
    }
    rep.queries = o.counts() - before;
    return rep;
  }
  const size_t width = batch_width(cfg, n);
  const size_t samples = std::min<size_t>(
      n, static_cast<size_t>(std::ceil(cfg.c4 * static_cast<double>(n) / static_cast<double>(k) * ln(n))));
  Rng rng(cfg.seed.derive("sample"));
  const std::vector<size_t> sample = rng.subset(n, samples);
  const BitMatrix read = read_columns(o, sample, width);
  // Transpose: one packed bit row per sampled column.
  BitMatrix colbits(samples, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < samples; ++j) {
      if (read.get(i, j)) colbits.set(j, i, true);
    }
  }
  DetectorReport rep;
  std::optional<BicliqueGuess> guess;
  // Leading eigenvector of the +-1 Gram matrix of the sampled columns.
  const size_t c = samples;
  std::vector<double> gram(c * c);
  for (size_t a = 0; a < c; ++a) {
    for (size_t b = a; b < c; ++b) {
      size_t diff = 0;
      for (size_t w = 0; w < colbits.stride(); ++w) {
        diff += static_cast<size_t>(std::popcount(colbits.row(a)[w] ^ colbits.row(b)[w]));
      }
      const double g = static_cast<double>(n) - 2.0 * static_cast<double>(diff);
      gram[a * c + b] = gram[b * c + a] = g;
    }
  }
  std::vector<double> v(c), next(c);
  for (size_t j = 0; j < c; ++j) {
    v[j] = static_cast<double>(colbits.row_count(j)) - static_cast<double>(n) / 2.0;
  }
  for (int iter = 0; iter < 200; ++iter) {
    double norm = 0.0;
    for (size_t a = 0; a < c; ++a) {
      double s = 0.0;
      const double* row = gram.data() + a * c;
      for (size_t b = 0; b < c; ++b) s += row[b] * v[b];
      next[a] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (size_t a = 0; a < c; ++a) v[a] = next[a] / norm;
  }
  // Row scores u = M v with M the +-1 matrix of sampled columns.
  for (double sign : {1.0, -1.0}) {
    std::vector<double> u(n, 0.0);
    double vsum = 0.0;
    for (size_t j = 0; j < c; ++j) vsum += sign * v[j];
    for (size_t i = 0; i < n; ++i) u[i] = -vsum;
    for (size_t j = 0; j < c; ++j) {
      const uint64_t* bits = colbits.row(j);
      for (size_t w = 0; w < colbits.stride(); ++w) {
        uint64_t x = bits[w];
        while (x) {
          u[w * 64 + static_cast<size_t>(std::countr_zero(x))] += 2.0 * sign * v[j];
          x &= x - 1;
        }
      }
    }
    guess = refine(colbits, top_indices(u, k), k);
    if (guess) break;
  }
  rep.stats["sampled_columns"] = static_cast<double>(samples);
  if (!guess) {
    rep.verdict = Hypothesis::kH0;
    rep.queries = o.counts() - before;
    return rep;
  }
  // Columns outside the sample: read them and keep those all-ones on R.
  std::vector<char> sampled(n, 0);
  for (size_t j : sample) sampled[j] = 1;
  std::vector<size_t> rest;
  for (size_t j = 0; j < n; ++j) {
    if (!sampled[j]) rest.push_back(j);
  }
  std::vector<size_t> found_cols;
  for (size_t j : guess->cols) found_cols.push_back(sample[j]);
  if (!rest.empty()) {
    const BitMatrix more = read_columns(o, rest, width);
    for (size_t j = 0; j < rest.size(); ++j) {
      bool all = true;
      for (size_t r : guess->rows) {
        if (!more.get(r, j)) {
          all = false;
          break;
        }
      }
      if (all) found_cols.push_back(rest[j]);
    }
  }
  std::sort(found_cols.begin(), found_cols.end());
  PlantedTruth t;
  t.kind = TruthKind::kBiclique;
  t.rows = guess->rows;
  t.cols = std::move(found_cols);
  rep.verdict = Hypothesis::kH1;
  rep.found = std::move(t);
  rep.queries = o.counts() - before;
  return rep;
}

DetectorReport detect_srpc(Oracle& o, size_t n, size_t k, const DetectorConfig& cfg) {
  return detect_pc_edge_probe(o, n, k, cfg);
}

DetectorReport detect_ppc(Oracle& o, const CliqueDesign& design, size_t n, size_t k,
                          const DetectorConfig& cfg) {
  require(design.n == n && design.k == k, "detect_ppc: design dims do not match (n, k)");
  const double kk = static_cast<double>(k);
  const double per_d = std::floor(kk * kk / (cfg.ppc_const * ln(n)));
  require(per_d >= 1.0, "precondition k^2 >= ppc_const ln n violated (batch would be empty)");
  const size_t per = static_cast<size_t>(per_d);
  const QueryCounts before = o.counts();
  std::vector<size_t> order(design.blocks.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(cfg.seed.derive("shuffle"));
  rng.shuffle(order);
  DetectorReport rep;
  const double pairs = kk * (kk - 1) / 2;
  double best_margin = -1e300;
  for (size_t start = 0; start < order.size(); start += per) {
    const size_t end = std::min(order.size(), start + per);
    SparseQuery q;
    for (size_t b = start; b < end; ++b) {
      const auto& blk = design.blocks[order[b]];
      for (size_t x = 0; x < blk.size(); ++x) {
        for (size_t y = x + 1; y < blk.size(); ++y) {
          const size_t i = std::min(blk[x], blk[y]), j = std::max(blk[x], blk[y]);
          q.index.push_back(i * n + j);
          q.weight.push_back(1);
        }
      }
    }
    const double count = static_cast<double>(o.sketch_sparse(q));
    const double m = static_cast<double>(end - start) * pairs;
    const double threshold = m / 2 + kk * kk / 9;
    best_margin = std::max(best_margin, count - threshold);
    if (count >= threshold) rep.verdict = Hypothesis::kH1;
  }
  rep.stats["batch_blocks"] = static_cast<double>(per);
  rep.stats["best_margin"] = best_margin;
  rep.queries = o.counts() - before;
  return rep;
}

HhCalibration calibrate_hh(size_t n, size_t k, double sigma0, double c5) {
  using boost::math::binomial_distribution;
  HhCalibration cal;
  cal.samples_per_row = std::min<size_t>(
      n, static_cast<size_t>(std::ceil(c5 * static_cast<double>(n) / static_cast<double>(k) * ln(n))));
  const double t = static_cast<double>(cal.samples_per_row);
  // P(|x| > tau) = 1/t under N(0, sigma0^2).
  const double p_entry = std::min(0.5, 1.0 / t);
  cal.tau = sigma0 * boost::math::quantile(boost::math::normal(), 1.0 - p_entry / 2.0);
  binomial_distribution<double> row_law(t, p_entry);
  const double row_target = static_cast<double>(k) / (8.0 * static_cast<double>(n));
  size_t c = 1;
  while (c <= cal.samples_per_row &&
         boost::math::cdf(boost::math::complement(row_law, static_cast<double>(c) - 1.0)) > row_target) {
    ++c;
  }
  cal.row_cutoff = c;
  cal.row_flag_prob = boost::math::cdf(boost::math::complement(row_law, static_cast<double>(c) - 1.0));
  binomial_distribution<double> count_law(static_cast<double>(n), cal.row_flag_prob);
  const double count_target = 1.0 / (10.0 * static_cast<double>(n));
  size_t q = 0;
  while (q < n && boost::math::cdf(boost::math::complement(count_law, static_cast<double>(q))) > count_target) {
    ++q;
  }
  cal.count_cutoff = q;
  return cal;
}

DetectorReport detect_hh(Oracle& o, size_t n, size_t k, double sigma0, double sigma1,
                         const DetectorConfig& cfg) {
  require(sigma0 > 0 && sigma1 > 0, "detect_hh: sigmas must be positive");
  require(sigma1 * sigma1 > 2 * sigma0 * sigma0, "detect_hh: regime sigma1^2 > 2 sigma0^2 violated");
  require(k >= 1 && k <= n, "detect_hh: need 1 <= k <= n");
  const HhCalibration cal = calibrate_hh(n, k, sigma0, cfg.c5);
  const QueryCounts before = o.counts();
  Rng rng(cfg.seed.derive("sample"));
  size_t flagged = 0;
  for (size_t r = 0; r < n; ++r) {
    const auto cols = rng.subset(n, cal.samples_per_row);
    size_t hits = 0;
    for (size_t c : cols) {
      if (std::abs(o.edge_probe(r, c)) > cal.tau) ++hits;
    }
    if (hits >= cal.row_cutoff) ++flagged;
  }
  DetectorReport rep;
  rep.verdict = flagged > cal.count_cutoff ? Hypothesis::kH1 : Hypothesis::kH0;
  rep.stats["flagged_rows"] = static_cast<double>(flagged);
  rep.stats["count_cutoff"] = static_cast<double>(cal.count_cutoff);
  rep.stats["row_cutoff"] = static_cast<double>(cal.row_cutoff);
  rep.stats["tau"] = cal.tau;
  rep.stats["samples_per_row"] = static_cast<double>(cal.samples_per_row);
  rep.queries = o.counts() - before;
  return rep;
}

}  // namespace plab
