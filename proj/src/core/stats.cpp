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

#include "core/stats.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace plab {

ChiSquare chi_square_uniformity(const std::vector<uint64_t>& counts,
                                const std::vector<double>& expected_probs) {
  require(counts.size() == expected_probs.size() && !counts.empty(),
          "chi_square_uniformity: counts and probabilities must match and be non-empty");
  double total = 0.0, psum = 0.0;
  for (uint64_t c : counts) total += static_cast<double>(c);
  for (double p : expected_probs) {
    require(p >= 0.0, "chi_square_uniformity: negative probability");
    psum += p;
  }
  require(std::abs(psum - 1.0) <= 1e-9, "chi_square_uniformity: probabilities must sum to 1");
  require(total >= 5.0 * static_cast<double>(counts.size()),
          "chi_square_uniformity: need at least 5 observations per cell");
  ChiSquare out;
  size_t cells = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double e = total * expected_probs[i];
    if (e == 0.0) {
      require(counts[i] == 0, "chi_square_uniformity: count in a zero-probability cell");
      continue;
    }
    const double d = static_cast<double>(counts[i]) - e;
    out.statistic += d * d / e;
    ++cells;
  }
  out.dof = cells > 0 ? cells - 1 : 0;
  out.p_value = out.dof == 0 ? 1.0
                             : boost::math::gamma_q(static_cast<double>(out.dof) / 2.0,
                                                    out.statistic / 2.0);
  return out;
}

Interval wilson_interval(uint64_t successes, uint64_t trials, double z) {
  require(trials > 0 && successes <= trials, "wilson_interval: need 0 <= successes <= trials > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double hellinger_sq(const std::vector<double>& p, const std::vector<double>& q) {
  require(p.size() == q.size(), "hellinger_sq: supports differ in size");
  double sp = 0.0, sq = 0.0, h = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    require(p[i] >= 0.0 && q[i] >= 0.0, "hellinger_sq: negative mass");
    sp += p[i];
    sq += q[i];
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    h += d * d;
  }
  require(std::abs(sp - 1.0) <= 1e-9 && std::abs(sq - 1.0) <= 1e-9,
          "hellinger_sq: distributions must sum to 1");
  return std::clamp(0.5 * h, 0.0, 1.0);
}

SuccessReport success_rate(const TrialFn& trial, uint64_t trials, Seed seed,
                           unsigned threads, bool run_h0) {
  require(trials > 0, "success_rate: need at least one trial");
  std::vector<TrialOutcome> out0(run_h0 ? trials : 0), out1(trials);
  const Seed s0 = seed.derive("h0"), s1 = seed.derive("h1");
  const size_t jobs = out0.size() + out1.size();
  parallel_for(jobs, threads, [&](size_t j) {
    if (j < out0.size()) {
      out0[j] = trial(Hypothesis::kH0, s0.child(j));
    } else {
      const size_t i = j - out0.size();
      out1[i] = trial(Hypothesis::kH1, s1.child(i));
    }
  });
  SuccessReport r;
  r.trials = trials;
  double qsum = 0.0;
  for (const auto& o : out0) {
    r.h0_correct += o.correct;
    qsum += static_cast<double>(o.queries);
    r.queries_max = std::max(r.queries_max, o.queries);
  }
  for (const auto& o : out1) {
    r.h1_correct += o.correct;
    qsum += static_cast<double>(o.queries);
    r.queries_max = std::max(r.queries_max, o.queries);
  }
  r.queries_mean = qsum / static_cast<double>(jobs);
  r.rate_h1 = static_cast<double>(r.h1_correct) / static_cast<double>(trials);
  r.ci_h1 = wilson_interval(r.h1_correct, trials);
  if (run_h0) {
    r.rate_h0 = static_cast<double>(r.h0_correct) / static_cast<double>(trials);
    r.ci_h0 = wilson_interval(r.h0_correct, trials);
  } else {
    r.ci_h0 = {0.0, 0.0};
  }
  return r;
}

std::array<uint64_t, 8> exhaustive_block_oracle(int x, int y) {
  require((x == 0 || x == 1) && (y == 0 || y == 1), "exhaustive_block_oracle: bits expected");
  // Alice keeps colours {1,3} on x = 0 and {1,2} on x = 1; Bob keeps {1,4}
  // on y = 0 and {3,4} on y = 1. An edge is present in the XOR when exactly
  // one player holds it.
  auto alice = [&](int c) { return x == 0 ? (c == 1 || c == 3) : (c == 1 || c == 2); };
  auto bob = [&](int c) { return y == 0 ? (c == 1 || c == 4) : (c == 3 || c == 4); };
  std::array<uint64_t, 8> hist{};
  for (int code = 0; code < 64; ++code) {
    int pattern = 0;
    for (int e = 0; e < 3; ++e) {
      const int colour = ((code >> (2 * e)) & 3) + 1;
      if (alice(colour) != bob(colour)) pattern |= 1 << e;
    }
    ++hist[static_cast<size_t>(pattern)];
  }
  return hist;
}

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw OverflowError("binomial coefficient overflows 64 bits");
  }
  return static_cast<uint64_t>(r);
}

SparseScan sparse_variance_scan(const RealMatrix& x, size_t k) {
  const size_t d = x.rows(), t = x.cols();
  require(k >= 1 && k <= d && t >= 1, "sparse_variance_scan: need 1 <= k <= d and t >= 1");
  require(binomial(d, k) <= 1000000, "sparse_variance_scan: C(d,k) exceeds 1e6");
  // Full empirical second-moment matrix; each support reads a k x k block.
  Eigen::MatrixXd data(d, t);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < t; ++j) data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(i, j);
  }
  const Eigen::MatrixXd cov = data * data.transpose() / static_cast<double>(t);
  SparseScan best;
  best.variance = -1.0;
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd block(kk, kk);
  for (;;) {
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = 0; b < k; ++b) {
        block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            cov(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    const double top = es.eigenvalues()(kk - 1);
    if (top > best.variance) {
      best.variance = top;
      best.support = idx;
      best.direction.assign(d, 0.0);
      for (size_t a = 0; a < k; ++a) {
        best.direction[idx[a]] = es.eigenvectors()(static_cast<Eigen::Index>(a), kk - 1);
      }
    }
    // Next combination in lexicographic order.
    size_t i = k;
    while (i > 0 && idx[i - 1] == d - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "loglog_slope: need at least two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0 && y[i] > 0, "loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  require(sxx > 0, "loglog_slope: x values must not all be equal");
  return sxy / sxx;
}

}  // namespace plab
