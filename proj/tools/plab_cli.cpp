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

// Command-line front end. Talks to the library only through plab.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plab/plab.h"

namespace {

// "64" -> 64, "32,45,64" -> [32, 45, 64].
nlohmann::json size_or_list(const std::string& text, const std::string& flag) {
  std::vector<uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--" + flag, "expected an integer or a comma-separated list, got '" + text + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError("--" + flag, "empty value");
  if (values.size() == 1) return values.front();
  return values;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "plab: cannot write " << path << "\n";
    return PLAB_ERR_IO;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planted-structure detection lab"};
  app.set_version_flag("--version", std::string(plab_version()));
  app.set_config("--config", "", "key=value file mirroring the flags");

  std::string command;
  app.add_option("command", command, "gen | detect | sweep | verify")
      ->required()
      ->check(CLI::IsMember({"gen", "detect", "sweep", "verify"}));

  std::string problem, model, adversary, target, design, out;
  std::string n, k, r, s;
  std::optional<uint64_t> t, trials, seed, threads;
  std::optional<double> sigma0, sigma1, theta;
  std::optional<int> hypothesis;
  bool as_json = false, as_csv = false, timing = false;
  std::vector<std::string> extra;

  app.add_option("--problem", problem, "pc, find-pc, bpc, find-bpc, srpc, ppc, hh, scdc");
  app.add_option("--model", model, "edge-probe, mv, utmv, sketch, f2-sketch");
  app.add_option("--n", n, "size (sweep: comma-separated list)");
  app.add_option("--k", k, "planted size (sweep: list)");
  app.add_option("--r", r, "biclique rows (sweep: list)");
  app.add_option("--s", s, "biclique columns (sweep: list)");
  app.add_option("--t", t, "samples for scdc");
  app.add_option("--sigma0", sigma0);
  app.add_option("--sigma1", sigma1);
  app.add_option("--theta", theta);
  app.add_option("--trials", trials);
  app.add_option("--seed", seed, "root seed; PLAB_SEED overrides it");
  app.add_option("--threads", threads);
  app.add_option("--hypothesis", hypothesis, "gen: 0 or 1")->check(CLI::Range(0, 1));
  app.add_option("--adversary", adversary, "identity, delete-all, half-thinning, degree-masking");
  app.add_option("--target", target, "verify: design, transform, reduction, oracle-hierarchy");
  app.add_option("--design", design, "verify: design JSON file");
  app.add_option("--out", out, "output path (gen: instance file)");
  auto* json_flag = app.add_flag("--json", as_json, "JSON output");
  app.add_flag("--csv", as_csv, "CSV output (default)")->excludes(json_flag);
  app.add_flag("--timing", timing, "fill wall_ms (breaks byte-identical reruns)");
  app.add_option("--param", extra, "detector constant, key=value (c1, c2, tau_factor, ...)");

  CLI11_PARSE(app, argc, argv);

  nlohmann::json params = nlohmann::json::object();
  try {
    if (!problem.empty()) params["problem"] = problem;
    if (!model.empty()) params["model"] = model;
    if (!n.empty()) params["n"] = size_or_list(n, "n");
    if (!k.empty()) params["k"] = size_or_list(k, "k");
    if (!r.empty()) params["r"] = size_or_list(r, "r");
    if (!s.empty()) params["s"] = size_or_list(s, "s");
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  if (t) params["t"] = *t;
  if (sigma0) params["sigma0"] = *sigma0;
  if (sigma1) params["sigma1"] = *sigma1;
  if (theta) params["theta"] = *theta;
  if (trials) params["trials"] = *trials;
  if (seed) params["seed"] = *seed;
  if (const char* env = std::getenv("PLAB_SEED"); env && *env) {
    try {
      params["seed"] = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "plab: PLAB_SEED must be an unsigned integer\n";
      return PLAB_ERR_PARAMETER;
    }
  }
  if (threads) params["threads"] = *threads;
  if (hypothesis) params["hypothesis"] = *hypothesis;
  if (!adversary.empty()) params["adversary"] = adversary;
  if (!target.empty()) params["target"] = target;
  if (!design.empty()) params["design"] = design;
  if (command == "gen" && !out.empty()) params["out"] = out;
  params["json"] = as_json;
  params["timing"] = timing;
  for (const auto& kv : extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "plab: --param expects key=value, got '" << kv << "'\n";
      return PLAB_ERR_PARAMETER;
    }
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    try {
      params[key] = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
      params[key] = value;
    }
  }

  char* output = nullptr;
  const int status = plab_command(command.c_str(), params.dump().c_str(), &output);
  int rc = status;
  if (output) {
    const int wrote = emit(output, command == "gen" ? "" : out);
    if (rc == PLAB_OK) rc = wrote;
    plab_string_free(output);
  }
  if (status != PLAB_OK) {
    std::cerr << "plab: " << plab_status_name(status) << " error: " << plab_last_error() << "\n";
  }
  return rc;
}
