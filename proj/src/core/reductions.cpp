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

#include "core/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <numbers>

#include "core/error.hpp"
#include "core/instance_io.hpp"

namespace plab {

namespace {

void check_ud(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y, size_t len) {
  require(x.size() == len && y.size() == len,
          "UD input length must equal the number of blocks (" + std::to_string(len) + ")");
  require(is_valid_ud(x, y), "invalid UD instance: more than one common 1 or non-binary entry");
}

void check_design_dims(const CliqueDesign& design, size_t n, size_t k) {
  require(design.n == n && design.k == k, "design dims do not match (n, k)");
}

// Colour c in 0..3 stands for colours 1..4.
bool first_gets(uint8_t x, uint64_t c) { return x ? (c == 0 || c == 1) : (c == 0 || c == 2); }
bool second_gets(uint8_t y, uint64_t c) { return y ? (c == 2 || c == 3) : (c == 0 || c == 3); }

std::vector<char> covered_mask(const CliqueDesign& design) {
  const auto owner = pair_owner(design);
  std::vector<char> covered(owner.size());
  for (size_t i = 0; i < owner.size(); ++i) covered[i] = owner[i] >= 0;
  return covered;
}

// Red/blue coins for the SRPC construction; shared by the reduction and the
// sandwich recovery so both see the same draws.
struct SrpcCoins {
  std::vector<std::vector<uint8_t>> red;  // per block, per lexicographic pair
  BitMatrix uncovered;                    // fair coins on pairs outside blocks
};

SrpcCoins srpc_coins(const CliqueDesign& design, size_t n, Seed seed) {
  Rng rng(seed.public_coins());
  SrpcCoins c;
  c.red.resize(design.blocks.size());
  for (size_t b = 0; b < design.blocks.size(); ++b) {
    const size_t sz = design.blocks[b].size();
    c.red[b].resize(sz * (sz - 1) / 2);
    for (auto& bit : c.red[b]) bit = rng.bit() ? 1 : 0;
  }
  const auto covered = covered_mask(design);
  c.uncovered = BitMatrix(n, n);
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = u + 1; v < n; ++v) {
      if (!covered[pair_index(u, v, n)] && rng.bit()) c.uncovered.set_sym(u, v, true);
    }
  }
  return c;
}

template <typename Fn>
void for_block_pairs(const std::vector<size_t>& blk, Fn&& fn) {
  size_t slot = 0;
  for (size_t a = 0; a < blk.size(); ++a) {
    for (size_t b = a + 1; b < blk.size(); ++b) fn(slot++, blk[a], blk[b]);
  }
}

}  // namespace

SharePair xor_ud_to_pc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                       size_t n, size_t k, const CliqueDesign& design, Seed seed) {
  check_design_dims(design, n, k);
  check_ud(x, y, design.blocks.size());
  const auto covered = covered_mask(design);
  Rng rng(seed.public_coins());
  const auto perm = rng.permutation(n);
  SharePair out{BitMatrix(n, n), BitMatrix(n, n), perm, perm};
  for (size_t i = 0; i < design.blocks.size(); ++i) {
    for_block_pairs(design.blocks[i], [&](size_t, size_t u, size_t v) {
      const uint64_t c = rng.below(4);
      if (first_gets(x[i], c)) out.first.set_sym(perm[u], perm[v], true);
      if (second_gets(y[i], c)) out.second.set_sym(perm[u], perm[v], true);
    });
  }
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = u + 1; v < n; ++v) {
      if (!covered[pair_index(u, v, n)] && rng.bit()) out.first.set_sym(perm[u], perm[v], true);
    }
  }
  return out;
}

SharePair xor_ud_to_bpc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                        size_t n, size_t r, size_t s, Seed seed) {
  const BicliqueDesign design = biclique_partition(n, r, s);
  std::vector<BicliqueBlock> full;
  for (const auto& b : design.blocks) {
    if (b.rows() == r && b.cols() == s) full.push_back(b);
  }
  check_ud(x, y, full.size());
  Rng rng(seed.public_coins());
  const auto row_perm = rng.permutation(n);
  const auto col_perm = rng.permutation(n);
  SharePair out{BitMatrix(n, n), BitMatrix(n, n), row_perm, col_perm};
  BitMatrix covered(n, n);
  for (size_t i = 0; i < full.size(); ++i) {
    const auto& b = full[i];
    for (size_t a = b.row_begin; a < b.row_end; ++a) {
      for (size_t c = b.col_begin; c < b.col_end; ++c) {
        covered.set(a, c, true);
        const uint64_t colour = rng.below(4);
        if (first_gets(x[i], colour)) out.first.set(row_perm[a], col_perm[c], true);
        if (second_gets(y[i], colour)) out.second.set(row_perm[a], col_perm[c], true);
      }
    }
  }
  for (size_t a = 0; a < n; ++a) {
    for (size_t c = 0; c < n; ++c) {
      if (!covered.get(a, c) && rng.bit()) out.first.set(row_perm[a], col_perm[c], true);
    }
  }
  return out;
}

PlayerShares ud_to_srpc(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                        size_t n, size_t k, const CliqueDesign& design, Seed seed) {
  check_design_dims(design, n, k);
  check_ud(x, y, design.blocks.size());
  const SrpcCoins coins = srpc_coins(design, n, seed);
  PlayerShares out;
  out.mode = GameMode::kUnion;
  out.public_coins = seed.public_coins();
  out.bits = {coins.uncovered, BitMatrix(n, n)};
  for (size_t i = 0; i < design.blocks.size(); ++i) {
    for_block_pairs(design.blocks[i], [&](size_t slot, size_t u, size_t v) {
      const bool red = coins.red[i][slot] != 0;
      if (red && x[i]) out.bits[0].set_sym(u, v, true);
      if (!red && y[i]) out.bits[1].set_sym(u, v, true);
    });
  }
  return out;
}

Sandwich srpc_sandwich(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y,
                       size_t n, size_t k, const CliqueDesign& design, Seed seed) {
  check_design_dims(design, n, k);
  check_ud(x, y, design.blocks.size());
  const SrpcCoins coins = srpc_coins(design, n, seed);
  Sandwich out{BitMatrix(n, n), coins.uncovered};
  for (size_t i = 0; i < design.blocks.size(); ++i) {
    const bool witness = x[i] && y[i];
    for_block_pairs(design.blocks[i], [&](size_t slot, size_t u, size_t v) {
      const bool red = coins.red[i][slot] != 0;
      // Blue blocks use the blue half, everything else the red half; either
      // half is a fair coin per edge.
      const bool keep = witness || (y[i] ? !red : red);
      if (keep) out.g_max.set_sym(u, v, true);
      if (witness) out.g_min.set_sym(u, v, true);
    });
  }
  return out;
}

PlayerShares pe_to_pc(const BitMatrix& inputs, size_t n, size_t k, const CliqueDesign& design,
                      Seed seed) {
  check_design_dims(design, n, k);
  const size_t slots = k * (k - 1) / 2;
  require(inputs.rows() == slots, "pe_to_pc: need C(k,2) = " + std::to_string(slots) + " players");
  require(inputs.cols() == design.blocks.size(),
          "pe_to_pc: coordinates must equal the number of blocks");
  const auto covered = covered_mask(design);
  Rng rng(seed.public_coins());
  const auto perm = rng.permutation(n);
  PlayerShares out;
  out.mode = GameMode::kUnion;
  out.public_coins = seed.public_coins();
  out.relabel = perm;
  out.bits.assign(slots, BitMatrix(n, n));
  for (size_t i = 0; i < design.blocks.size(); ++i) {
    for_block_pairs(design.blocks[i], [&](size_t slot, size_t u, size_t v) {
      if (inputs.get(slot, i)) out.bits[slot].set_sym(perm[u], perm[v], true);
    });
  }
  for (size_t u = 0; u < n; ++u) {
    for (size_t v = u + 1; v < n; ++v) {
      if (!covered[pair_index(u, v, n)] && rng.bit()) out.bits[0].set_sym(perm[u], perm[v], true);
    }
  }
  return out;
}

HhCells hh_cells(size_t n, size_t k, Seed seed) {
  require(k >= 1 && k <= n, "hh_cells: need 1 <= k <= n");
  HhCells out;
  out.w = n / k;
  const size_t w = out.w;
  out.cells.assign(w * w, std::vector<size_t>(k * k));
  Rng rng(seed);
  const auto rows = rng.permutation(n);
  for (size_t i = 0; i < w; ++i) {
    for (size_t a = 0; a < k; ++a) {
      const size_t row = rows[i * k + a];
      const auto cols = rng.permutation(n);
      for (size_t j = 0; j < w; ++j) {
        for (size_t b = 0; b < k; ++b) out.cells[i * w + j][a * k + b] = row * n + cols[j * k + b];
      }
    }
  }
  return out;
}

PlayerShares pe_to_hh(const RealMatrix& inputs, size_t n, size_t k, double sigma0, Seed seed) {
  require(sigma0 > 0, "pe_to_hh: sigma0 must be positive");
  const HhCells cells = hh_cells(n, k, seed.public_coins());
  const size_t w = cells.w;
  require(inputs.rows() == k * k, "pe_to_hh: need k^2 players");
  require(inputs.cols() == w * w, "pe_to_hh: need w^2 coordinates with w = floor(n/k)");
  PlayerShares out;
  out.mode = GameMode::kUnion;
  out.public_coins = seed.public_coins();
  out.real.assign(k * k, RealMatrix(n, n));
  std::vector<char> in_cell(n * n, 0);
  for (size_t coord = 0; coord < cells.cells.size(); ++coord) {
    const auto& cell = cells.cells[coord];
    for (size_t p = 0; p < cell.size(); ++p) {
      in_cell[cell[p]] = 1;
      out.real[p](cell[p] / n, cell[p] % n) = inputs(p, coord);
    }
  }
  Rng rng(seed.public_coins().derive("background"));
  for (size_t e = 0; e < n * n; ++e) {
    if (!in_cell[e]) out.real[0](e / n, e % n) = sigma0 * rng.gaussian();
  }
  return out;
}

FindBpcEmbedding findpe_to_findbpc(const BitMatrix& inputs, size_t n, size_t r, size_t s,
                                   Seed seed) {
  require(static_cast<double>(r) >= 3.0 * std::log2(static_cast<double>(n)) && r <= s &&
              2 * s <= n,
          "findpe_to_findbpc: need 3 log2 n <= r <= s <= n/2");
  const size_t free_cols = n - s + 1;
  require(inputs.rows() == r && inputs.cols() == free_cols,
          "findpe_to_findbpc: inputs must be r x (n - s + 1)");
  std::optional<size_t> witness;
  for (size_t c = 0; c < free_cols; ++c) {
    bool all = true;
    for (size_t p = 0; p < r && all; ++p) all = inputs.get(p, c);
    if (all) {
      require(!witness, "findpe_to_findbpc: promise violated (two all-ones columns)");
      witness = c;
    }
  }
  require(witness.has_value(), "findpe_to_findbpc: promise violated (no all-ones column)");

  Rng rng(seed.public_coins());
  const auto special = rng.subset(n, r);
  const auto planted = rng.subset(n, s - 1);
  std::vector<char> is_special(n, 0), is_planted(n, 0);
  for (size_t v : special) is_special[v] = 1;
  for (size_t c : planted) is_planted[c] = 1;
  std::vector<size_t> rest;
  for (size_t c = 0; c < n; ++c) {
    if (!is_planted[c]) rest.push_back(c);
  }
  FindBpcEmbedding out{BitMatrix(n, n), BitMatrix(n, n), {}};
  size_t player = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!is_special[i]) {
      for (size_t c = 0; c < n; ++c) {
        out.known.set(i, c, true);
        if (rng.bit()) out.matrix.set(i, c, true);
      }
      continue;
    }
    for (size_t c : planted) {
      out.matrix.set(i, c, true);
      out.known.set(i, c, true);
    }
    for (size_t j = 0; j < rest.size(); ++j) {
      if (inputs.get(player, j)) out.matrix.set(i, rest[j], true);
    }
    ++player;
  }
  out.truth.kind = TruthKind::kBiclique;
  out.truth.rows = special;
  out.truth.cols = planted;
  out.truth.cols.push_back(rest[*witness]);
  std::sort(out.truth.cols.begin(), out.truth.cols.end());
  return out;
}

std::string bl_region_violation(const BlParams& p) {
  if (!p.check_r0) return "";
  char buf[160];
  const double d = static_cast<double>(p.d), t = static_cast<double>(p.t),
               k = static_cast<double>(p.k);
  const double lhs = 15.0 * std::sqrt(k * std::log(6.0 * std::numbers::e * d / p.delta) / t);
  if (lhs > 1.0) {
    std::snprintf(buf, sizeof buf, "15 sqrt(k log(6ed/delta) / t) <= 1 fails: lhs = %.4g", lhs);
    return buf;
  }
  if (k > std::pow(d, 0.49)) {
    std::snprintf(buf, sizeof buf, "k <= d^0.49 fails: d^0.49 = %.4g", std::pow(d, 0.49));
    return buf;
  }
  if (p.gamma) {
    if (k < std::pow(t, *p.gamma)) {
      std::snprintf(buf, sizeof buf, "k >= t^gamma fails: t^gamma = %.4g", std::pow(t, *p.gamma));
      return buf;
    }
    if (p.t >= p.d) return "t < d fails";
  }
  return "";
}

BlReduction bl_build(const BitMatrix& g, const BlParams& p, Seed seed) {
  require(p.t >= 1 && p.t <= p.m, "bl: t <= m violated");
  require(p.m < p.d, "bl: m < d violated");
  require(p.k >= 1 && p.k <= p.kappa && p.kappa <= p.m, "bl: k <= kappa <= m violated");
  require(p.delta > 0 && p.delta < 1.0 / 3.0, "bl: delta must lie in (0, 1/3)");
  require(g.rows() == 2 * p.m && g.cols() == 2 * p.m, "bl: graph must have 2m vertices");
  const std::string bad = bl_region_violation(p);
  require(bad.empty(), "bl: parameter region violated: " + bad);

  Rng rng(seed.public_coins());
  const size_t two_m = 2 * p.m;
  const auto left = rng.subset(two_m, p.m);
  std::vector<char> is_left(two_m, 0);
  for (size_t v : left) is_left[v] = 1;
  std::vector<size_t> remaining;
  for (size_t v = 0; v < two_m; ++v) {
    if (!is_left[v]) remaining.push_back(v);
  }
  std::vector<size_t> right;
  for (size_t idx : rng.subset(p.m, p.t)) right.push_back(remaining[idx]);

  BlReduction red;
  red.params = p;
  red.stack = TransformStack(two_m, two_m);
  red.stack.push(SelectRows{left});
  red.stack.push(SelectCols{right});
  for (size_t j = p.m; j < p.d; ++j) {
    std::vector<double> coins(p.t);
    for (double& c : coins) c = rng.bit() ? 1.0 : 0.0;
    red.stack.push(InsertRow{j, std::move(coins)});
  }
  const auto row_perm = rng.permutation(p.d);
  const auto col_perm = rng.permutation(p.t);
  red.stack.push(PermuteRows{row_perm});
  red.stack.push(PermuteCols{col_perm});
  red.eta.resize(p.t);
  for (size_t i = 0; i < p.t; ++i) {
    red.eta[i] = rng.bit() ? 1 : -1;
    red.stack.push(AffineCol{i, 2.0 * red.eta[i], -1.0 * red.eta[i]});
  }
  red.row_source.assign(p.d, -1);
  for (size_t r = 0; r < p.m; ++r) red.row_source[row_perm[r]] = static_cast<int64_t>(left[r]);
  red.col_source.assign(p.t, -1);
  for (size_t c = 0; c < p.t; ++c) red.col_source[col_perm[c]] = static_cast<int64_t>(right[c]);
  return red;
}

IntMatrix bl_materialize(const BlReduction& red, const BitMatrix& g) {
  return materialize(red.stack, g);
}

std::vector<double> bl_support_direction(const BlReduction& red,
                                         const std::vector<size_t>& vertices) {
  std::vector<char> in(red.stack.source_rows(), 0);
  for (size_t v : vertices) {
    require(v < in.size(), "bl_support_direction: vertex out of range");
    in[v] = 1;
  }
  std::vector<double> dir(red.params.d, 0.0);
  size_t hits = 0;
  for (size_t r = 0; r < dir.size(); ++r) {
    if (red.row_source[r] >= 0 && in[static_cast<size_t>(red.row_source[r])]) {
      dir[r] = 1.0;
      ++hits;
    }
  }
  require(hits > 0, "bl_support_direction: no selected vertex survived the row sampling");
  const double scale = 1.0 / std::sqrt(static_cast<double>(hits));
  for (double& x : dir) x *= scale;
  return dir;
}

BitMatrix reconstruct(const PlayerShares& shares, GameMode mode) {
  require(!shares.bits.empty(), "reconstruct: no bit shares");
  BitMatrix out = shares.bits[0];
  for (size_t p = 1; p < shares.bits.size(); ++p) {
    const BitMatrix& s = shares.bits[p];
    require(s.rows() == out.rows() && s.cols() == out.cols(), "reconstruct: share dims differ");
    for (size_t i = 0; i < out.rows(); ++i) {
      uint64_t* acc = out.row(i);
      const uint64_t* src = s.row(i);
      if (mode == GameMode::kUnion && popcount_and(acc, src, out.stride()) != 0) {
        throw ContractError("reconstruct: union shares overlap (player " + std::to_string(p) +
                            ", row " + std::to_string(i) + ")");
      }
      for (size_t w = 0; w < out.stride(); ++w) {
        acc[w] = mode == GameMode::kUnion ? (acc[w] | src[w]) : (acc[w] ^ src[w]);
      }
    }
  }
  return out;
}

BitMatrix reconstruct(const PlayerShares& shares) { return reconstruct(shares, shares.mode); }

RealMatrix reconstruct_real(const PlayerShares& shares) {
  require(!shares.real.empty(), "reconstruct_real: no real shares");
  RealMatrix out = shares.real[0];
  for (size_t p = 1; p < shares.real.size(); ++p) {
    const auto& s = shares.real[p];
    require(s.rows() == out.rows() && s.cols() == out.cols(), "reconstruct_real: share dims differ");
    for (size_t e = 0; e < s.data().size(); ++e) {
      if (s.data()[e] != 0.0 && out.data()[e] != 0.0) {
        throw ContractError("reconstruct_real: shares overlap at entry " + std::to_string(e));
      }
      out.data()[e] += s.data()[e];
    }
  }
  return out;
}

BitMatrix xor_combine(const SharePair& pair) {
  PlayerShares s;
  s.mode = GameMode::kXor;
  s.bits = {pair.first, pair.second};
  return reconstruct(s);
}

void save_shares(const std::string& dir, const PlayerShares& shares) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  nlohmann::ordered_json manifest;
  manifest["game"] = shares.mode == GameMode::kUnion ? "union" : "xor";
  manifest["payload"] = shares.bits.empty() ? "real" : "bits";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(splitmix64(shares.public_coins.value())));
  manifest["public_coin_digest"] = hex;
  manifest["public_coin_seed"] = std::to_string(shares.public_coins.value());
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (size_t p = 0; p < shares.players(); ++p) {
    const std::string name = "player_" + std::to_string(p) + ".plab";
    StoredInstance inst;
    if (shares.bits.empty()) {
      inst.kind = PayloadKind::kReal;
      inst.real = shares.real[p];
    } else {
      inst.kind = shares.bits[p].is_symmetric_adjacency() ? PayloadKind::kAdjacency
                                                         : PayloadKind::kBipartite;
      inst.bits = shares.bits[p];
    }
    save_instance((fs::path(dir) / name).string(), inst);
    files.push_back(name);
  }
  manifest["players"] = files;
  write_text_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

PlayerShares load_shares(const std::string& dir) {
  namespace fs = std::filesystem;
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file((fs::path(dir) / "manifest.json").string()));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad share manifest: ") + e.what());
  }
  PlayerShares out;
  try {
    const std::string game = manifest.at("game");
    if (game != "union" && game != "xor") throw FormatError("bad share manifest: unknown game " + game);
    out.mode = game == "union" ? GameMode::kUnion : GameMode::kXor;
    out.public_coins = Seed(std::stoull(manifest.at("public_coin_seed").get<std::string>()));
    for (const auto& f : manifest.at("players")) {
      StoredInstance inst = load_instance((fs::path(dir) / f.get<std::string>()).string());
      if (inst.kind == PayloadKind::kReal) {
        out.real.push_back(std::move(inst.real));
      } else {
        out.bits.push_back(std::move(inst.bits));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad share manifest: ") + e.what());
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("bad share manifest: ") + e.what());
  }
  if (!out.bits.empty() && !out.real.empty()) throw FormatError("bad share manifest: mixed payloads");
  return out;
}

}  // namespace plab
