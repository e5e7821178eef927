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

#include "tworow/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace tworow {

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (!(thresholds.fractional_min > 0.0 && thresholds.fractional_min < 0.5)) {
    fail("fractional_min must lie in (0, 0.5)");
  }
  if (!(thresholds.integer_max > 0.0 && thresholds.integer_max < thresholds.fractional_min)) {
    fail("integer_max must lie in (0, fractional_min)");
  }
  if (!(max_dynamism > 0.0)) fail("max_dynamism must be positive");
  if (dives <= 0) fail("dives must be positive");
  if (checkpoints.empty()) fail("checkpoints must not be empty");
  for (int d : checkpoints) {
    if (d < 0) fail("checkpoints must be nonnegative");
  }
  if (!(time_limit_seconds > 0.0)) fail("time_limit_seconds must be positive");
  if (max_depth < 0) fail("max_depth must be nonnegative");
  if (generators.empty()) fail("generators must not be empty");
  if (threads <= 0) fail("threads must be positive");
}

GeneratorSpec RunConfig::spec(Generator g) const {
  GeneratorSpec s;
  s.kind = g;
  s.opts.thresholds = thresholds;
  s.opts.max_dynamism = max_dynamism;
  s.opts.lift = lift;
  s.opts.gmi_lift = lift;
  s.opts.wedges = wedges;
  return s;
}

DiveOptions RunConfig::dive_options() const {
  DiveOptions o;
  o.max_depth = max_depth;
  o.time_limit_seconds = time_limit_seconds;
  o.cutting.purge_cuts = purge_cuts;
  return o;
}

RunConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{
      "fractional_min", "integer_max", "max_dynamism", "dives",  "checkpoints",
      "seed",           "time_limit_seconds", "max_depth", "generators",
      "lift",           "wedges",       "purge_cuts",   "threads", "output_dir"};
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  RunConfig c;
  c.thresholds.fractional_min = j.value("fractional_min", c.thresholds.fractional_min);
  c.thresholds.integer_max = j.value("integer_max", c.thresholds.integer_max);
  c.max_dynamism = j.value("max_dynamism", c.max_dynamism);
  c.dives = j.value("dives", c.dives);
  c.checkpoints = j.value("checkpoints", c.checkpoints);
  c.seed = j.value("seed", c.seed);
  c.time_limit_seconds = j.value("time_limit_seconds", c.time_limit_seconds);
  c.max_depth = j.value("max_depth", c.max_depth);
  if (j.contains("generators")) {
    c.generators.clear();
    for (const auto& g : j.at("generators")) c.generators.push_back(parse_generator(g.get<std::string>()));
  }
  c.lift = j.value("lift", c.lift);
  c.wedges = j.value("wedges", c.wedges);
  c.purge_cuts = j.value("purge_cuts", c.purge_cuts);
  c.threads = j.value("threads", c.threads);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  return config_from_json(j);
}

nlohmann::json to_json(const RunConfig& c) {
  std::vector<std::string> gens;
  for (Generator g : c.generators) gens.push_back(to_string(g));
  return {{"fractional_min", c.thresholds.fractional_min},
          {"integer_max", c.thresholds.integer_max},
          {"max_dynamism", c.max_dynamism},
          {"dives", c.dives},
          {"checkpoints", c.checkpoints},
          {"seed", c.seed},
          {"time_limit_seconds", c.time_limit_seconds},
          {"max_depth", c.max_depth},
          {"generators", gens},
          {"lift", c.lift},
          {"wedges", c.wedges},
          {"purge_cuts", c.purge_cuts},
          {"threads", c.threads},
          {"output_dir", c.output_dir}};
}

}  // namespace tworow
