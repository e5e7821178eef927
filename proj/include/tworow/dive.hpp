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

// Cut generators and the diving protocol that compares them.
//
// A dive alternates a cutting step (add the generator's cuts, re-solve) and a
// branching step (fix one fractional integer variable at its value in the
// known solution x*, re-solve) and records the fraction of the gap between
// the root LP bound and the objective of x* closed after every cutting step.
// Objectives are normalized to minimization throughout.

#ifndef TWOROW_DIVE_HPP_
#define TWOROW_DIVE_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tworow/cutgen.hpp"
#include "tworow/instance.hpp"
#include "tworow/simplex.hpp"
#include "tworow/tworow.hpp"

namespace tworow {

enum class Generator { kG, kG2Rounds, kGAllpairs, kGDeepest };

std::string to_string(Generator g);
// Accepts "g", "g2", "allpairs", "deepest" and the display names.
Generator parse_generator(const std::string& name);

struct GeneratorOptions {
  RowThresholds thresholds;
  double max_dynamism = 1e9;
  // Lift integer nonbasics in two-row cuts and in GMI cuts.
  bool lift = true;
  bool gmi_lift = true;
  // Wedge variants of triangle cuts where the bound allows them.
  bool wedges = true;
  int rounds_g2 = 2;
};

struct GeneratorSpec {
  Generator kind = Generator::kG;
  GeneratorOptions opts;
};

struct CandidateCut {
  CutFunction cut;
  StructuralCut structural;
  double depth = 0.0;
  bool accepted = false;
  std::string reject_reason;
};

struct SeparationResult {
  std::vector<CandidateCut> candidates;
  int num_fractional = 0;
  int num_integer = 0;
  // Accepted or not, counted before selection.
  int two_row_count = 0;  // triangles and splits
  int wedge_count = 0;
  // Per fractional row with both an accepted GMI cut and an accepted
  // two-row cut: 100 * (deepest two-row depth) / (GMI depth).
  std::vector<double> depth_ratios;
  // Indices into `candidates` of the cuts the generator adds.
  std::vector<std::size_t> chosen;

  // Accepted candidates the generator selects for addition.
  std::vector<const CandidateCut*> selected() const;
};

// One separation round on an optimal LP of `inst`.
SeparationResult separate(const MilpInstance& inst, const LpSolution& lp,
                          const GeneratorSpec& spec, int round = 0);

// All two-row cuts (triangles, splits, wedges) from one model, before
// safeguards. Exposed for tests.
std::vector<CutFunction> two_row_cuts(const TwoRowModel& model,
                                      const GeneratorOptions& opts);

double gap_closed(double z_lp, double z_now, double z_star);

// Minimization-normalized objective.
double normalized(const MilpInstance& inst, double objective);

struct StepStats {
  int cuts_added = 0;
  int cuts_rejected = 0;
  int two_row_added = 0;
  int validity_failures = 0;
  std::map<std::string, int> reject_reasons;
};

struct DiveState {
  MilpInstance inst;
  LpSolution lp;
  std::vector<double> x_star;
  double z_star = 0.0;  // normalized
  double z_root = 0.0;  // normalized root LP bound
  int depth = 0;
  int cut_rows = 0;
  // Number of rows of the original instance; rows after it are cuts.
  int base_rows = 0;
  std::vector<double> root_depth_ratios;
  bool root_done = false;
};

struct CuttingOptions {
  double validity_tol = 1e-6;
  // Test hook: add a copy of one accepted cut moved so that x* violates it.
  bool inject_invalid = false;
  // Drop earlier cut rows before adding new ones.
  bool purge_cuts = false;
  nlohmann::json* cut_log = nullptr;
};

DiveState start_dive(const MilpInstance& inst, const std::vector<double>& x_star);

StepStats cutting_step(DiveState& state, const GeneratorSpec& spec,
                       const CuttingOptions& opts = {});

// Structural integer columns with integer infeasibility above 1e-6 at the
// current LP point, ascending.
std::vector<int> fractional_integer_columns(const DiveState& state);

// Returns false when no integer variable is fractional.
bool branching_step(DiveState& state, std::mt19937_64& rng,
                    int* chosen = nullptr);

struct DepthSnapshot {
  int depth = 0;
  double objective = 0.0;  // instance sense
  double gap_closed = 0.0;
  StepStats stats;
  int branched_on = -1;
};

struct DiveRecord {
  std::string instance;
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<DepthSnapshot> snapshots;
  std::string termination;  // integer_feasible, max_depth, time_limit, lp_failure
  int validity_failures = 0;
  std::vector<double> root_depth_ratios;
};

struct DiveOptions {
  int max_depth = 100;
  double time_limit_seconds = 3.0 * 3600.0;
  CuttingOptions cutting;
};

DiveRecord run_dive(const MilpInstance& inst, const std::vector<double>& x_star,
                    const GeneratorSpec& spec, std::uint64_t seed,
                    const DiveOptions& opts = {});

// Dives with seeds base_seed, base_seed + 1, ... for each generator; the
// result is ordered by generator, then seed, whatever `threads` is.
std::vector<DiveRecord> run_experiment(const MilpInstance& inst,
                                       const std::vector<double>& x_star,
                                       const std::vector<GeneratorSpec>& gens,
                                       int num_dives, std::uint64_t base_seed,
                                       const DiveOptions& opts = {},
                                       int threads = 1);

nlohmann::json to_json(const DiveRecord& r);
DiveRecord dive_record_from_json(const nlohmann::json& j);

// Gap closed after the cutting step at `depth`; dives that ended earlier
// keep their last value.
double gap_at_depth(const DiveRecord& r, int depth);

struct SummaryRow {
  std::string generator;
  std::vector<double> mean_gap;  // one per checkpoint
  int dives = 0;
  long cuts_added = 0;
  long cuts_rejected = 0;
  long validity_failures = 0;
  std::map<std::string, long> reject_reasons;
  double mean_depth_ratio = 0.0;  // NaN-free: 0 with no ratios
  int depth_ratio_count = 0;
};

struct Summary {
  std::vector<int> checkpoints;
  std::vector<SummaryRow> rows;
};

// Rows in first-appearance order of generators.
Summary summarize(const std::vector<DiveRecord>& records,
                  const std::vector<int>& checkpoints = {0, 4, 8, 12});

std::string summary_csv(const Summary& s);
std::string summary_table(const Summary& s);

}  // namespace tworow

#endif  // TWOROW_DIVE_HPP_
