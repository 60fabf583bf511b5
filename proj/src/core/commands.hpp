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

#ifndef PLAB_CORE_COMMANDS_HPP_
#define PLAB_CORE_COMMANDS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/detectors.hpp"
#include "core/instance_io.hpp"
#include "core/instances.hpp"
#include "core/oracle.hpp"
#include "core/stats.hpp"

namespace plab {

// Parameters shared by all commands; parsed from a JSON object whose keys
// mirror the CLI flags.
struct CommandParams {
  std::string problem;
  std::string model;  // empty: the problem's default model
  size_t n = 0, k = 0, r = 0, s = 0, t = 0;
  double sigma0 = 1.0, sigma1 = 2.0, theta = 5.0;
  uint64_t trials = 100;
  uint64_t seed = 1;
  unsigned threads = 0;  // 0: available parallelism
  bool json = false;
  bool timing = false;
  std::string adversary = "identity";
  int hypothesis = 1;
  std::string out;
  std::string target;       // verify
  std::string design_file;  // verify design
  // Sweep axes; a scalar n/k/r/s is a one-point axis.
  std::map<std::string, std::vector<size_t>> grid;
  DetectorConfig detector;
};

CommandParams params_from_json(const std::string& text);

// Default model name for a problem ("pc" -> "edge-probe", ...).
std::string default_model(const std::string& problem);

struct ResultRow {
  CommandParams params;
  SuccessReport report;
  bool has_h0 = true;
  double wall_ms = 0.0;
};

struct GeneratedInstance {
  StoredInstance instance;
  PlantedTruth truth;
};
// Instance for p.problem under p.hypothesis, seeded by p.seed.
GeneratedInstance generate_instance(const CommandParams& p);

std::unique_ptr<OracleSession> open_session(const StoredInstance& inst, int bound_exponent);

// Runs the detector for (p.problem, p.model) once against `o`.
DetectorReport detect_on(Oracle& o, const CommandParams& p);

ResultRow run_detect(const CommandParams& p);
std::string format_rows(const std::vector<ResultRow>& rows, bool json,
                        const std::optional<double>& slope = std::nullopt,
                        const std::string& axis = "");
extern const std::vector<std::string> kResultColumns;

struct CommandOutput {
  std::string text;
  bool pass = true;  // verify only
};

// Each returns the text the CLI prints (or writes to --out).
CommandOutput cmd_gen(const CommandParams& p);
CommandOutput cmd_detect(const CommandParams& p);
CommandOutput cmd_sweep(const CommandParams& p);
CommandOutput cmd_verify(const CommandParams& p);
CommandOutput run_command(const std::string& name, const CommandParams& p);

}  // namespace plab

#endif  // PLAB_CORE_COMMANDS_HPP_
