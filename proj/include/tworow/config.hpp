// Copyright 2026 The tworow Authors
//
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

// Run configuration shared by the command-line tool and experiment scripts.

#ifndef TWOROW_CONFIG_HPP_
#define TWOROW_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tworow/dive.hpp"

namespace tworow {

struct RunConfig {
  RowThresholds thresholds;
  double max_dynamism = 1e9;
  int dives = 20;
  std::vector<int> checkpoints{0, 4, 8, 12};
  std::uint64_t seed = 0;
  double time_limit_seconds = 3.0 * 3600.0;
  int max_depth = 100;
  std::vector<Generator> generators{Generator::kG, Generator::kG2Rounds,
                                    Generator::kGAllpairs, Generator::kGDeepest};
  bool lift = true;
  bool wedges = true;
  bool purge_cuts = false;
  int threads = 1;
  std::string output_dir = "out";

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;

  GeneratorSpec spec(Generator g) const;
  DiveOptions dive_options() const;
};

// Keys absent from `j` keep their defaults; unknown keys are an error.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

}  // namespace tworow

#endif  // TWOROW_CONFIG_HPP_
