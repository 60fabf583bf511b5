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

#include "core/commands.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <nlohmann/json.hpp>

#include "core/designs.hpp"
#include "core/error.hpp"
#include "core/instance_io.hpp"
#include "core/instances.hpp"
#include "core/oracle.hpp"
#include "core/parallel.hpp"
#include "core/reductions.hpp"
#include "core/transforms.hpp"

namespace plab {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::string>& model_defaults() {
  static const std::map<std::string, std::string> m = {
      {"pc", "edge-probe"},  {"find-pc", "edge-probe"}, {"bpc", "utmv"},
      {"find-bpc", "mv"},    {"srpc", "edge-probe"},    {"ppc", "sketch"},
      {"hh", "edge-probe"},
  };
  return m;
}

template <typename T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParameterError("parameter '" + key + "' has the wrong type");
  }
}

size_t get_size(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<int64_t>() < 0) {
    throw ParameterError("parameter '" + key + "' must be a non-negative integer");
  }
  return v.get<size_t>();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

const std::vector<std::string> kResultColumns = {
    "problem",    "model",      "n",          "k",          "r",         "s",
    "sigma0",     "sigma1",     "theta",      "seed",       "trials",    "queries_mean",
    "queries_max", "success_h0", "success_h1", "ci_low_h0", "ci_high_h0", "ci_low_h1",
    "ci_high_h1", "wall_ms"};

std::string default_model(const std::string& problem) {
  const auto it = model_defaults().find(problem);
  if (it == model_defaults().end()) throw ParameterError("unknown problem '" + problem + "'");
  return it->second;
}

CommandParams params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = text.empty() ? nlohmann::json::object() : nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("parameters are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("parameters must be a JSON object");
  CommandParams p;
  DetectorConfig& d = p.detector;
  const std::map<std::string, double*> detector_reals = {
      {"c1", &d.c1},           {"c2", &d.c2},          {"c3", &d.c3},
      {"c4", &d.c4},           {"c5", &d.c5},          {"tau_factor", &d.tau_factor},
      {"ppc_const", &d.ppc_const}, {"min_k_factor", &d.min_k_factor}};
  for (const auto& [key, v] : j.items()) {
    if (key == "n" || key == "k" || key == "r" || key == "s") {
      std::vector<size_t> axis;
      if (v.is_array()) {
        for (const auto& x : v) axis.push_back(get_size(x, key));
        if (axis.empty()) throw ParameterError("parameter '" + key + "' is an empty list");
      } else {
        axis.push_back(get_size(v, key));
      }
      p.grid[key] = axis;
      size_t& slot = key == "n" ? p.n : key == "k" ? p.k : key == "r" ? p.r : p.s;
      slot = axis.front();
    } else if (key == "t") {
      p.t = get_size(v, key);
    } else if (key == "problem") {
      p.problem = get_as<std::string>(v, key);
    } else if (key == "model") {
      p.model = get_as<std::string>(v, key);
    } else if (key == "sigma0") {
      p.sigma0 = get_as<double>(v, key);
    } else if (key == "sigma1") {
      p.sigma1 = get_as<double>(v, key);
    } else if (key == "theta") {
      p.theta = get_as<double>(v, key);
    } else if (key == "trials") {
      p.trials = get_size(v, key);
    } else if (key == "seed") {
      p.seed = get_as<uint64_t>(v, key);
    } else if (key == "threads") {
      p.threads = static_cast<unsigned>(get_size(v, key));
    } else if (key == "json") {
      p.json = get_as<bool>(v, key);
    } else if (key == "timing") {
      p.timing = get_as<bool>(v, key);
    } else if (key == "adversary") {
      p.adversary = get_as<std::string>(v, key);
    } else if (key == "hypothesis") {
      p.hypothesis = get_as<int>(v, key);
      if (p.hypothesis != 0 && p.hypothesis != 1) throw ParameterError("hypothesis must be 0 or 1");
    } else if (key == "out") {
      p.out = get_as<std::string>(v, key);
    } else if (key == "target") {
      p.target = get_as<std::string>(v, key);
    } else if (key == "design") {
      p.design_file = get_as<std::string>(v, key);
    } else if (key == "bound_exponent") {
      d.bound_exponent = get_as<int>(v, key);
    } else if (key == "batch_width") {
      d.batch_width = get_size(v, key);
    } else if (key == "clique_node_limit") {
      d.clique_node_limit = get_size(v, key);
    } else if (auto it = detector_reals.find(key); it != detector_reals.end()) {
      *it->second = get_as<double>(v, key);
    } else {
      throw ParameterError("unknown parameter '" + key + "'");
    }
  }
  return p;
}

namespace {

Hypothesis to_h(int h) { return h ? Hypothesis::kH1 : Hypothesis::kH0; }

struct TrialPlan {
  TrialFn fn;
  bool run_h0 = true;
};

bool supported(const std::string& problem, const std::string& model) {
  static const std::set<std::pair<std::string, std::string>> ok = {
      {"pc", "edge-probe"},  {"pc", "mv"},      {"pc", "utmv"},       {"find-pc", "edge-probe"},
      {"find-pc", "mv"},     {"bpc", "utmv"},   {"find-bpc", "mv"},   {"srpc", "edge-probe"},
      {"ppc", "sketch"},     {"hh", "edge-probe"}};
  return ok.count({problem, model}) > 0;
}

TrialPlan make_plan(const CommandParams& p, const std::string& model) {
  default_model(p.problem);  // unknown problem -> error naming it
  if (!supported(p.problem, model)) {
    throw ParameterError("problem '" + p.problem + "' does not support model '" + model + "'");
  }
  CommandParams base = p;
  base.model = model;
  const bool find = p.problem.rfind("find-", 0) == 0;
  // Finding problems draw H1 instances of the underlying detection problem.
  CommandParams gen = base;
  if (p.problem == "find-pc") gen.problem = "pc";
  if (p.problem == "find-bpc") {
    gen.problem = "bpc";
    gen.r = gen.s = p.k;
  }
  TrialPlan plan;
  plan.run_h0 = !find;
  plan.fn = [base, gen, find](Hypothesis h, Seed s) {
    CommandParams g = gen;
    g.hypothesis = h == Hypothesis::kH1 ? 1 : 0;
    g.seed = s.derive("instance").value();
    const GeneratedInstance inst = generate_instance(g);
    auto session = open_session(inst.instance, base.detector.bound_exponent);
    CommandParams q = base;
    q.detector.seed = s.derive("detector");
    const DetectorReport rep = detect_on(*session, q);
    bool correct = rep.verdict == h;
    if (find) {
      correct = rep.found && rep.found->rows == inst.truth.rows &&
                (base.problem != "find-bpc" || rep.found->cols == inst.truth.cols);
    }
    return TrialOutcome{correct, rep.queries.total()};
  };
  return plan;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::unique_ptr<OracleSession> open_session(const StoredInstance& inst, int bound_exponent) {
  if (inst.kind == PayloadKind::kReal) {
    return std::make_unique<OracleSession>(inst.real, bound_exponent);
  }
  return std::make_unique<OracleSession>(inst.bits, bound_exponent);
}

DetectorReport detect_on(Oracle& o, const CommandParams& p) {
  const std::string model = p.model.empty() ? default_model(p.problem) : p.model;
  const std::string& prob = p.problem;
  const size_t n = p.n, k = p.k;
  const DetectorConfig& cfg = p.detector;
  if (prob == "pc" && model == "edge-probe") return detect_pc_edge_probe(o, n, k, cfg);
  if (prob == "pc" && model == "mv") return detect_pc_mv(o, n, k, cfg);
  if (prob == "pc" && model == "utmv") return detect_pc_one_query(o, n, k);
  if (prob == "find-pc" && model == "edge-probe") return find_pc_edge_probe(o, n, k, cfg);
  if (prob == "find-pc" && model == "mv") return find_pc_mv(o, n, k, cfg);
  if (prob == "bpc" && model == "utmv") return detect_bpc_utmv(o, n, p.r, p.s, cfg);
  if (prob == "find-bpc" && model == "mv") return find_bpc_mv(o, n, k, cfg);
  if (prob == "srpc" && model == "edge-probe") return detect_srpc(o, n, k, cfg);
  if (prob == "ppc" && model == "sketch") return detect_ppc(o, make_ppc_design(n, k), n, k, cfg);
  if (prob == "hh" && model == "edge-probe") return detect_hh(o, n, k, p.sigma0, p.sigma1, cfg);
  default_model(prob);
  throw ParameterError("problem '" + prob + "' does not support model '" + model + "'");
}

ResultRow run_detect(const CommandParams& p) {
  require(!p.problem.empty(), "missing --problem");
  require(p.trials >= 1, "trials must be positive");
  ResultRow row;
  row.params = p;
  if (row.params.model.empty()) row.params.model = default_model(p.problem);
  // Fail on bad parameters before spinning up workers.
  const TrialPlan plan = make_plan(p, row.params.model);
  const auto t0 = std::chrono::steady_clock::now();
  const unsigned threads = p.threads ? p.threads : default_threads();
  row.report = success_rate(plan.fn, p.trials, Seed(p.seed), threads, plan.run_h0);
  row.has_h0 = plan.run_h0;
  row.wall_ms = p.timing ? ms_since(t0) : 0.0;
  return row;
}

namespace {

json row_json(const ResultRow& row) {
  const CommandParams& p = row.params;
  const SuccessReport& r = row.report;
  auto h0 = [&](double v) { return row.has_h0 ? json(v) : json(); };
  json o;
  o["problem"] = p.problem;
  o["model"] = p.model;
  o["n"] = p.n;
  o["k"] = p.k;
  o["r"] = p.r;
  o["s"] = p.s;
  o["sigma0"] = p.sigma0;
  o["sigma1"] = p.sigma1;
  o["theta"] = p.theta;
  o["seed"] = p.seed;
  o["trials"] = r.trials;
  o["queries_mean"] = r.queries_mean;
  o["queries_max"] = r.queries_max;
  o["success_h0"] = h0(r.rate_h0);
  o["success_h1"] = r.rate_h1;
  o["ci_low_h0"] = h0(r.ci_h0.low);
  o["ci_high_h0"] = h0(r.ci_h0.high);
  o["ci_low_h1"] = r.ci_h1.low;
  o["ci_high_h1"] = r.ci_h1.high;
  o["wall_ms"] = row.wall_ms;
  return o;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

}  // namespace

std::string format_rows(const std::vector<ResultRow>& rows, bool as_json,
                        const std::optional<double>& slope, const std::string& axis) {
  if (as_json) {
    json out;
    out["rows"] = json::array();
    for (const auto& r : rows) out["rows"].push_back(row_json(r));
    if (!axis.empty() || slope) {
      out["slope_axis"] = axis.empty() ? json() : json(axis);
      out["slope"] = slope ? json(*slope) : json();
    }
    return out.dump(2) + "\n";
  }
  std::string text;
  for (size_t c = 0; c < kResultColumns.size(); ++c) text += (c ? "," : "") + kResultColumns[c];
  text += "\n";
  for (const auto& r : rows) {
    const json o = row_json(r);
    for (size_t c = 0; c < kResultColumns.size(); ++c) {
      text += (c ? "," : "") + csv_cell(o[kResultColumns[c]]);
    }
    text += "\n";
  }
  if (!axis.empty() || slope) {
    text += "# slope," + (axis.empty() ? std::string("none") : axis) + "," +
            (slope ? fmt(*slope) : std::string("null")) + "\n";
  }
  return text;
}

CommandOutput cmd_detect(const CommandParams& p) {
  for (const auto& [axis, values] : p.grid) {
    require(values.size() == 1, "detect takes a single value for '" + axis + "'; use sweep");
  }
  return {format_rows({run_detect(p)}, p.json), true};
}

CommandOutput cmd_sweep(const CommandParams& p) {
  const std::vector<std::string> axes = {"n", "k", "r", "s"};
  std::vector<std::vector<size_t>> values;
  std::string varying;
  size_t varying_count = 0;
  for (const auto& a : axes) {
    const auto it = p.grid.find(a);
    values.push_back(it == p.grid.end() ? std::vector<size_t>{} : it->second);
    if (values.back().size() > 1) {
      varying = a;
      ++varying_count;
    }
  }
  // Cartesian product, first axis outermost.
  std::vector<std::array<size_t, 4>> points = {{p.n, p.k, p.r, p.s}};
  for (size_t a = 0; a < axes.size(); ++a) {
    if (values[a].empty()) continue;
    std::vector<std::array<size_t, 4>> next;
    for (const auto& pt : points) {
      for (size_t v : values[a]) {
        auto q = pt;
        q[a] = v;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  std::vector<ResultRow> rows;
  for (const auto& pt : points) {
    CommandParams q = p;
    q.n = pt[0];
    q.k = pt[1];
    q.r = pt[2];
    q.s = pt[3];
    q.grid.clear();
    rows.push_back(run_detect(q));
  }
  std::optional<double> slope;
  if (varying_count == 1) {
    std::vector<double> xs, ys;
    bool positive = true;
    for (const auto& r : rows) {
      const CommandParams& q = r.params;
      xs.push_back(static_cast<double>(varying == "n" ? q.n : varying == "k" ? q.k
                                       : varying == "r" ? q.r : q.s));
      ys.push_back(r.report.queries_mean);
      positive = positive && ys.back() > 0;
    }
    if (positive) slope = loglog_slope(xs, ys);
  }
  return {format_rows(rows, p.json, slope, varying_count == 1 ? varying : "none"), true};
}

GeneratedInstance generate_instance(const CommandParams& p) {
  require(p.n >= 2, "n must be at least 2");
  const Seed seed(p.seed);
  const Hypothesis h = to_h(p.hypothesis);
  GeneratedInstance out;
  StoredInstance& inst = out.instance;
  PlantedTruth& truth = out.truth;
  const std::string& prob = p.problem;
  if (prob == "pc") {
    if (h == Hypothesis::kH1) {
      auto g = gen_planted_clique(p.n, p.k, seed);
      inst.bits = std::move(g.matrix);
      truth = std::move(g.truth);
    } else {
      inst.bits = gen_er(p.n, 0.5, seed);
    }
  } else if (prob == "bpc") {
    inst.kind = PayloadKind::kBipartite;
    if (h == Hypothesis::kH1) {
      auto g = gen_bpc(p.n, p.r, p.s, seed);
      inst.bits = std::move(g.matrix);
      truth = std::move(g.truth);
    } else {
      inst.bits = gen_bipartite_null(p.n, seed);
    }
  } else if (prob == "srpc") {
    auto g = gen_srpc(p.n, p.k, h, make_adversary(adversary_from_name(p.adversary)), seed);
    inst.bits = std::move(g.matrix);
    truth = std::move(g.truth);
  } else if (prob == "ppc") {
    const auto design = make_ppc_design(p.n, p.k);
    auto g = gen_ppc(p.n, p.k, design, h, seed);
    inst.bits = std::move(g.matrix);
    truth = std::move(g.truth);
  } else if (prob == "hh") {
    inst.kind = PayloadKind::kReal;
    auto g = gen_hidden_hubs(p.n, p.k, p.sigma0, p.sigma1, h, seed);
    inst.real = std::move(g.matrix);
    truth = std::move(g.truth);
  } else if (prob == "scdc") {
    require(p.t >= 1, "scdc needs --t (number of samples)");
    inst.kind = PayloadKind::kReal;
    if (h == Hypothesis::kH1) {
      auto g = gen_scdc_spiked(p.n, p.t, p.k, p.theta, seed);
      inst.real = std::move(g.matrix);
      truth = std::move(g.truth);
    } else {
      inst.real = gen_scdc_null(p.n, p.t, seed);
    }
  } else {
    throw ParameterError("unknown problem '" + prob + "'");
  }
  return out;
}

CommandOutput cmd_gen(const CommandParams& p) {
  require(!p.out.empty(), "gen needs --out");
  GeneratedInstance g = generate_instance(p);
  const StoredInstance& inst = g.instance;
  const std::string& prob = p.problem;
  const PlantedTruth& truth = g.truth;
  save_instance(p.out, inst);
  json side;
  side["problem"] = prob;
  side["hypothesis"] = p.hypothesis ? "H1" : "H0";
  side["seed"] = p.seed;
  side["truth"] = json::parse(truth_to_json(truth));
  const std::string truth_path = p.out + ".truth.json";
  write_text_file(truth_path, side.dump(2) + "\n");
  json summary;
  summary["instance"] = p.out;
  summary["truth"] = truth_path;
  const bool real = inst.kind == PayloadKind::kReal;
  summary["rows"] = real ? inst.real.rows() : inst.bits.rows();
  summary["cols"] = real ? inst.real.cols() : inst.bits.cols();
  summary["payload"] = inst.kind == PayloadKind::kAdjacency  ? "adjacency"
                       : inst.kind == PayloadKind::kBipartite ? "bipartite"
                                                              : "real";
  return {summary.dump(2) + "\n", true};
}

namespace {

CommandOutput verify_design(const CommandParams& p) {
  json out;
  out["target"] = "design";
  CliqueDesign d;
  if (!p.design_file.empty()) {
    d = design_from_json(read_text_file(p.design_file));
    out["source"] = p.design_file;
  } else {
    require(p.n >= 2 && p.k >= 2, "verify design needs n and k");
    d = make_ppc_design(p.n, p.k);
  }
  const DesignCheck c = check_design(d);
  out["n"] = d.n;
  out["k"] = d.k;
  out["blocks"] = d.blocks.size();
  out["pass"] = c.ok;
  if (c.ok) {
    out["covered_pairs"] = covered_pairs(d);
  } else {
    out["message"] = c.message;
    json ce;
    if (c.block_a) ce["block_a"] = *c.block_a;
    if (c.block_b) ce["block_b"] = *c.block_b;
    ce["shared"] = c.shared;
    out["counterexample"] = ce;
  }
  return {out.dump(2) + "\n", c.ok};
}

CommandOutput verify_transform(const CommandParams& p) {
  json out;
  out["target"] = "transform";
  out["trials"] = p.trials;
  bool ok = true;
  json models = json::array();
  for (Model m : {Model::kEdgeProbe, Model::kMv, Model::kUtMv, Model::kSketch, Model::kF2Sketch}) {
    const auto rep = check_transform_equivalence(m, p.trials, Seed(p.seed).derive(model_name(m)));
    json r;
    r["model"] = model_name(m);
    r["mismatches"] = rep.mismatches;
    r["max_source_queries"] = rep.max_source_queries;
    if (!rep.counterexample.empty()) r["counterexample"] = rep.counterexample;
    ok = ok && rep.mismatches == 0 && rep.max_source_queries <= 1;
    models.push_back(r);
  }
  out["models"] = models;
  out["pass"] = ok;
  return {out.dump(2) + "\n", ok};
}

CommandOutput verify_reduction(const CommandParams& p) {
  json out;
  out["target"] = "reduction";
  bool ok = true;
  json cases = json::array();
  const auto design3 = make_ppc_design(3, 3);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const auto exact = exhaustive_block_oracle(x, y);
      std::vector<uint64_t> counts(8, 0);
      for (uint64_t i = 0; i < p.trials; ++i) {
        const auto g = xor_combine(xor_ud_to_pc({uint8_t(x)}, {uint8_t(y)}, 3, 3, design3,
                                                Seed(p.seed).child(i)));
        ++counts[static_cast<size_t>(g.get(0, 1) | (g.get(0, 2) << 1) | (g.get(1, 2) << 2))];
      }
      json c;
      c["x"] = x;
      c["y"] = y;
      c["counts"] = counts;
      bool case_ok;
      if (x && y) {
        case_ok = counts[7] == p.trials;
      } else {
        std::vector<double> probs(8);
        for (size_t i = 0; i < 8; ++i) probs[i] = static_cast<double>(exact[i]) / 64.0;
        const double pv = p.trials >= 40 ? chi_square_uniformity(counts, probs).p_value : 1.0;
        c["p_value"] = pv;
        case_ok = pv > 1e-3;
      }
      c["pass"] = case_ok;
      ok = ok && case_ok;
      cases.push_back(c);
    }
  }
  out["xor_block_cases"] = cases;
  // Union games must hand out disjoint supports.
  const auto design9 = make_ppc_design(9, 3);
  const size_t len = design9.blocks.size();
  std::string overlap;
  for (uint64_t i = 0; i < p.trials && overlap.empty(); ++i) {
    const Seed s = Seed(p.seed).derive("union").child(i);
    const UdInstance ud = gen_ud(len, i % 2 == 1, s.derive("ud"));
    try {
      reconstruct(ud_to_srpc(ud.x, ud.y, 9, 3, design9, s));
      reconstruct(pe_to_pc(gen_pe(3, len, i % 2 == 1, s.derive("pe")).matrix, 9, 3, design9, s));
    } catch (const ContractError& e) {
      overlap = "trial " + std::to_string(i) + ": " + e.what();
    }
  }
  out["union_shares_disjoint"] = overlap.empty();
  if (!overlap.empty()) out["counterexample"] = overlap;
  ok = ok && overlap.empty();
  out["pass"] = ok;
  return {out.dump(2) + "\n", ok};
}

CommandOutput verify_oracle_hierarchy(const CommandParams& p) {
  json out;
  out["target"] = "oracle-hierarchy";
  out["trials"] = p.trials;
  std::string bad;
  const size_t dim = 16;
  for (uint64_t t = 0; t < p.trials && bad.empty(); ++t) {
    Rng rng(Seed(p.seed).derive("oracle").child(t));
    BitMatrix m(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) m.set(i, j, rng.bit());
    OracleSession o(m);
    std::vector<int64_t> v(dim);
    for (auto& x : v) x = static_cast<int64_t>(rng.below(201)) - 100;
    const auto mv = o.mv(v);
    for (size_t i = 0; i < dim && bad.empty(); ++i) {
      std::vector<int64_t> ei(dim, 0);
      ei[i] = 1;
      if (o.utmv(ei, v) != mv[i]) bad = "mv(v)[" + std::to_string(i) + "] != utmv(e_i, v)";
      for (size_t j = 0; j < dim && bad.empty(); ++j) {
        std::vector<int64_t> ej(dim, 0), w(dim * dim, 0);
        std::vector<uint8_t> w2(dim * dim, 0);
        ej[j] = 1;
        w[i * dim + j] = 1;
        w2[i * dim + j] = 1;
        const double probe = o.edge_probe(i, j);
        const bool agree = probe == static_cast<double>(o.utmv(ei, ej)) &&
                           probe == static_cast<double>(o.sketch(w)) &&
                           probe == static_cast<double>(o.f2_sketch(w2));
        if (!agree) bad = "models disagree at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      }
    }
    if (!bad.empty()) bad = "matrix " + std::to_string(t) + ": " + bad;
  }
  out["pass"] = bad.empty();
  if (!bad.empty()) out["counterexample"] = bad;
  return {out.dump(2) + "\n", bad.empty()};
}

}  // namespace

CommandOutput cmd_verify(const CommandParams& p) {
  if (p.target == "design") return verify_design(p);
  if (p.target == "transform") return verify_transform(p);
  if (p.target == "reduction") return verify_reduction(p);
  if (p.target == "oracle-hierarchy") return verify_oracle_hierarchy(p);
  throw ParameterError("verify: unknown target '" + p.target +
                       "' (design, transform, reduction, oracle-hierarchy)");
}

CommandOutput run_command(const std::string& name, const CommandParams& p) {
  if (name == "gen") return cmd_gen(p);
  if (name == "detect") return cmd_detect(p);
  if (name == "sweep") return cmd_sweep(p);
  if (name == "verify") return cmd_verify(p);
  throw ParameterError("unknown command '" + name + "'");
}

}  // namespace plab
