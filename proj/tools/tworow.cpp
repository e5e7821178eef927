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

// Command-line driver: solve, cuts, dive and report subcommands.
//
// Exit status is 0 on success, 1 on input, parse or solver errors and 2
// when a cut violating the known solution was detected.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tworow/config.hpp"
#include "tworow/cutgen.hpp"
#include "tworow/dive.hpp"
#include "tworow/instance.hpp"
#include "tworow/simplex.hpp"
#include "tworow/tworow.hpp"

namespace fs = std::filesystem;
using namespace tworow;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInvalidCut = 2;

// Numbers are printed exactly as the JSON output writes them.
std::string num(double v) { return nlohmann::json(v).dump(); }

MilpInstance load(const std::string& path) {
  MilpInstance inst = read_mps_file(path);
  if (inst.name.empty()) inst.name = fs::path(path).stem().string();
  return inst;
}

std::string column_name(const MilpInstance& inst, int col) {
  if (col < 0) return "-";
  if (col < inst.num_cols()) return inst.vars[col].name;
  const int r = col - inst.num_cols();
  return "slack(" + (r < inst.num_rows() ? inst.rows[r].name : std::to_string(r)) + ")";
}

std::string class_name(RowClass::Kind k) {
  switch (k) {
    case RowClass::Kind::kFractional: return "fractional";
    case RowClass::Kind::kInteger: return "integer";
    case RowClass::Kind::kSkipped: return "skipped";
  }
  return "?";
}

int cmd_solve(const std::string& file, const RunConfig& cfg) {
  MilpInstance inst = load(file);
  LpSolution lp = solve_lp(inst);
  std::cout << "instance " << inst.name << ": " << inst.num_cols() << " columns, "
            << inst.num_rows() << " rows\n";
  std::cout << "LP status " << to_string(lp.status) << "\n";
  if (lp.status != LpStatus::kOptimal) return kExitError;
  std::cout << "LP objective " << num(lp.objective) << "\n";
  TableauSnapshot snap = take_snapshot(inst, lp, cfg.thresholds);
  std::cout << "rows of basic integer columns:\n";
  for (std::size_t k = 0; k < snap.rows.size(); ++k) {
    std::cout << "  " << column_name(inst, snap.rows[k].basic) << " = "
              << num(snap.rows[k].value) << "  " << class_name(snap.classes[k].kind);
    if (!snap.classes[k].reason.empty()) std::cout << " (" << snap.classes[k].reason << ")";
    std::cout << "\n";
  }
  std::cout << "fractional rows " << snap.fractional_rows().size() << ", integer rows "
            << snap.integer_rows().size() << "\n";
  return 0;
}

struct RootResult {
  double objective = 0.0;
  std::optional<double> gap;
  int cuts_added = 0;
};

RootResult root_step(const MilpInstance& inst, const GeneratorSpec& spec,
                     const std::optional<std::vector<double>>& xs) {
  RootResult r;
  if (xs) {
    DiveState st = start_dive(inst, *xs);
    StepStats s = cutting_step(st, spec);
    r.cuts_added = s.cuts_added;
    r.objective = st.lp.objective;
    r.gap = gap_closed(st.z_root, normalized(inst, st.lp.objective), st.z_star);
    return r;
  }
  // Without a known solution there is nothing to check cuts against; add
  // every selected cut.
  MilpInstance work = inst;
  LpSolution lp = solve_lp(work);
  const int rounds = spec.kind == Generator::kG2Rounds ? spec.opts.rounds_g2 : 1;
  for (int round = 0; round < rounds && lp.status == LpStatus::kOptimal; ++round) {
    SeparationResult sep = separate(work, lp, spec, round);
    if (sep.chosen.empty()) break;
    for (const CandidateCut* c : sep.selected()) {
      Row row;
      row.name = "cut" + std::to_string(r.cuts_added++);
      row.sense = RowSense::kGreater;
      row.rhs = c->structural.rhs;
      row.coefs = c->structural.coef;
      work.add_row(std::move(row));
    }
    lp = solve_lp(work);
  }
  if (lp.status != LpStatus::kOptimal) throw LpError("LP after cuts is " + to_string(lp.status));
  r.objective = lp.objective;
  return r;
}

int cmd_cuts(const std::string& file, const std::string& gen_name,
             const std::string& solution, bool json_out, const RunConfig& cfg) {
  MilpInstance inst = load(file);
  const Generator g = parse_generator(gen_name);
  std::optional<std::vector<double>> xs;
  if (!solution.empty()) xs = solution_vector(inst, read_solution_file(solution));
  LpSolution lp = solve_lp(inst);
  if (lp.status != LpStatus::kOptimal) {
    std::cerr << "error: LP is " << to_string(lp.status) << "\n";
    return kExitError;
  }
  const GeneratorSpec spec = cfg.spec(g);
  SeparationResult sep = separate(inst, lp, spec);
  std::vector<bool> chosen(sep.candidates.size(), false);
  for (std::size_t k : sep.chosen) chosen[k] = true;

  int invalid = 0;
  nlohmann::json cuts = nlohmann::json::array();
  for (std::size_t k = 0; k < sep.candidates.size(); ++k) {
    const CandidateCut& c = sep.candidates[k];
    nlohmann::json rec = cut_record(c.cut.prov, c.structural, c.depth, c.accepted,
                                    c.reject_reason);
    rec["selected"] = static_cast<bool>(chosen[k]);
    if (xs && c.accepted) {
      const double v = c.structural.violation(*xs);
      rec["violation_at_solution"] = v;
      if (chosen[k] && v > 1e-6) ++invalid;
    }
    cuts.push_back(std::move(rec));
  }
  nlohmann::json root = nlohmann::json::array();
  for (Generator other : {Generator::kG, Generator::kG2Rounds, Generator::kGAllpairs,
                          Generator::kGDeepest}) {
    RootResult r = root_step(inst, cfg.spec(other), xs);
    nlohmann::json e{{"generator", to_string(other)},
                     {"objective", r.objective},
                     {"cuts_added", r.cuts_added}};
    if (r.gap) e["gap_closed"] = *r.gap;
    root.push_back(e);
  }
  nlohmann::json out{{"instance", inst.name},
                     {"generator", to_string(g)},
                     {"lp_objective", lp.objective},
                     {"fractional_rows", sep.num_fractional},
                     {"integer_rows", sep.num_integer},
                     {"two_row_cuts", sep.two_row_count},
                     {"wedge_cuts", sep.wedge_count},
                     {"depth_ratios", sep.depth_ratios},
                     {"cuts", cuts},
                     {"root", root}};
  if (json_out) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "instance " << inst.name << ", generator " << to_string(g) << "\n";
    std::cout << "LP objective " << num(lp.objective) << ", fractional rows "
              << sep.num_fractional << ", integer rows " << sep.num_integer
              << ", two-row cuts " << sep.two_row_count << ", wedge cuts "
              << sep.wedge_count << "\n";
    for (std::size_t k = 0; k < sep.candidates.size(); ++k) {
      const CandidateCut& c = sep.candidates[k];
      const Provenance& p = c.cut.prov;
      std::cout << "cut " << k << ": " << to_string(p.kind);
      if (p.kind == CutKind::kTriangle || p.kind == CutKind::kWedge) {
        std::cout << " " << to_string(p.type);
      }
      std::cout << " frac=" << column_name(inst, p.frac_basic);
      if (p.kind != CutKind::kGmi) {
        std::cout << " int=" << column_name(inst, p.int_basic) << " side=" << to_string(p.side)
                  << " case=" << p.lattice_case;
      }
      std::cout << (p.lifted ? " lifted" : "") << " depth=" << num(c.depth);
      if (!c.accepted) {
        std::cout << " rejected (" << c.reject_reason << ")\n";
        continue;
      }
      std::cout << (chosen[k] ? " selected" : " not selected") << "\n   ";
      for (std::size_t j = 0; j < c.structural.coef.size(); ++j) {
        if (c.structural.coef[j] == 0.0) continue;
        std::cout << " " << num(c.structural.coef[j]) << "*" << inst.vars[j].name;
      }
      std::cout << " >= " << num(c.structural.rhs) << "\n";
      if (cuts[k].contains("violation_at_solution")) {
        std::cout << "    violation at solution " << num(cuts[k]["violation_at_solution"]) << "\n";
      }
    }
    for (double q : sep.depth_ratios) {
      std::cout << "deepest two-row cut depth as % of GMI depth: " << num(q) << "\n";
    }
    std::cout << "root after one cutting step:\n";
    for (const auto& e : root) {
      std::cout << "  " << e["generator"].get<std::string>() << ": objective "
                << num(e["objective"]) << ", cuts " << e["cuts_added"];
      if (e.contains("gap_closed")) std::cout << ", gap closed " << num(e["gap_closed"]) << "%";
      std::cout << "\n";
    }
  }
  if (invalid > 0) {
    std::cerr << invalid << " selected cut(s) violate the known solution\n";
    return kExitInvalidCut;
  }
  return 0;
}

std::vector<DiveRecord> read_records(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<DiveRecord> out;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    try {
      out.push_back(dive_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ln, file.string() + ": " + e.what());
    }
  }
  return out;
}

void write_summary(const fs::path& dir, const Summary& s) {
  std::ofstream(dir / "summary.csv") << summary_csv(s);
  std::cout << summary_table(s);
}

int cmd_dive(const std::string& file, const std::string& solution, bool inject,
             const RunConfig& cfg) {
  MilpInstance inst = load(file);
  const std::vector<double> xs = solution_vector(inst, read_solution_file(solution));
  std::vector<GeneratorSpec> gens;
  for (Generator g : cfg.generators) gens.push_back(cfg.spec(g));
  DiveOptions opts = cfg.dive_options();
  opts.cutting.inject_invalid = inject;
  std::vector<DiveRecord> recs =
      run_experiment(inst, xs, gens, cfg.dives, cfg.seed, opts, cfg.threads);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  const fs::path out = dir / (inst.name + ".jsonl");
  {
    std::ofstream os(out);
    for (const DiveRecord& r : recs) os << to_json(r).dump() << "\n";
  }
  std::cout << "wrote " << recs.size() << " dive records to " << out.string() << "\n";
  const Summary s = summarize(recs, cfg.checkpoints);
  write_summary(dir, s);
  long failures = 0;
  for (const SummaryRow& r : s.rows) failures += r.validity_failures;
  if (failures > 0) {
    std::cerr << failures << " invalid cut(s) detected and quarantined\n";
    return kExitInvalidCut;
  }
  return 0;
}

int cmd_report(const std::string& dir_name, const RunConfig& cfg) {
  const fs::path dir(dir_name);
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir_name);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<DiveRecord> recs;
  for (const fs::path& f : files) {
    std::vector<DiveRecord> part = read_records(f);
    recs.insert(recs.end(), part.begin(), part.end());
  }
  if (recs.empty()) throw std::runtime_error("no dive records in " + dir_name);
  write_summary(dir, summarize(recs, cfg.checkpoints));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-row intersection cuts: LP solve, cut generation and dives"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration; flags override it");

  std::string file, solution, gen_name = "g", dir;
  bool json_out = false, no_lift = false, no_wedges = false, inject = false;
  bool purge = false;
  double frac_min = 0, int_max = 0, dynamism = 0, time_limit = 0;
  int dives = 0, max_depth = 0, threads = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::string> gens;
  std::vector<int> checkpoints;

  auto add_thresholds = [&](CLI::App* c) {
    c->add_option("--fractional-min", frac_min, "minimum integer infeasibility of a fractional row");
    c->add_option("--integer-max", int_max, "maximum integer infeasibility of an integer row");
    c->add_option("--max-dynamism", dynamism, "largest accepted |coef| ratio");
    c->add_flag("--no-lift", no_lift, "leave integer nonbasics unlifted");
    c->add_flag("--no-wedges", no_wedges, "skip wedge variants");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the LP relaxation and classify rows");
  solve->add_option("file", file, "MPS file")->required();
  add_thresholds(solve);

  CLI::App* cuts = app.add_subcommand("cuts", "generate cuts at the root");
  cuts->add_option("file", file, "MPS file")->required();
  cuts->add_option("--gen", gen_name, "g, g2, allpairs or deepest");
  cuts->add_option("--solution", solution, "known solution for gap and validity");
  cuts->add_flag("--json", json_out, "print JSON");
  add_thresholds(cuts);

  CLI::App* dive = app.add_subcommand("dive", "run dives toward a known solution");
  dive->add_option("file", file, "MPS file")->required();
  dive->add_option("--solution", solution, "known solution")->required();
  dive->add_option("--dives", dives, "dives per generator");
  dive->add_option("--seed", seed, "first seed");
  dive->add_option("--gen", gens, "generators (default: all four)");
  dive->add_option("--out", out_dir, "output directory");
  dive->add_option("--max-depth", max_depth, "maximum branching depth");
  dive->add_option("--time-limit", time_limit, "seconds per dive");
  dive->add_option("--threads", threads, "concurrent dives");
  dive->add_option("--checkpoints", checkpoints, "summary depths");
  dive->add_flag("--purge-cuts", purge, "drop earlier cuts at every cutting step");
  dive->add_flag("--inject-invalid", inject, "self-test: add one cut that x* violates");
  add_thresholds(dive);

  CLI::App* report = app.add_subcommand("report", "summarize dive records in a directory");
  report->add_option("dir", dir, "directory with .jsonl files")->required();
  report->add_option("--checkpoints", checkpoints, "summary depths");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    auto given = [&](const char* name) {
      for (CLI::App* c : app.get_subcommands()) {
        try {
          if (c->get_option(name)->count() > 0) return true;
        } catch (const CLI::OptionNotFound&) {
        }
      }
      return false;
    };
    if (given("--fractional-min")) cfg.thresholds.fractional_min = frac_min;
    if (given("--integer-max")) cfg.thresholds.integer_max = int_max;
    if (given("--max-dynamism")) cfg.max_dynamism = dynamism;
    if (given("--no-lift")) cfg.lift = !no_lift;
    if (given("--no-wedges")) cfg.wedges = !no_wedges;
    if (given("--dives")) cfg.dives = dives;
    if (given("--seed")) cfg.seed = seed;
    if (given("--out")) cfg.output_dir = out_dir;
    if (given("--max-depth")) cfg.max_depth = max_depth;
    if (given("--time-limit")) cfg.time_limit_seconds = time_limit;
    if (given("--threads")) cfg.threads = threads;
    if (given("--checkpoints")) cfg.checkpoints = checkpoints;
    if (given("--purge-cuts")) cfg.purge_cuts = purge;
    if (given("--gen") && !gens.empty()) {
      cfg.generators.clear();
      for (const std::string& g : gens) cfg.generators.push_back(parse_generator(g));
    }
    cfg.validate();

    if (*solve) return cmd_solve(file, cfg);
    if (*cuts) return cmd_cuts(file, gen_name, solution, json_out, cfg);
    if (*dive) return cmd_dive(file, solution, inject, cfg);
    if (*report) return cmd_report(dir, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
