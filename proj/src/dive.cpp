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

#include "tworow/dive.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tworow/latgeom.hpp"
#include "tworow/lifting.hpp"

namespace tworow {

std::string to_string(Generator g) {
  switch (g) {
    case Generator::kG: return "G";
    case Generator::kG2Rounds: return "G-2Rounds";
    case Generator::kGAllpairs: return "G+Allpairs";
    case Generator::kGDeepest: return "G+Deepest";
  }
  return "?";
}

Generator parse_generator(const std::string& name) {
  std::string n;
  for (char c : name) n.push_back(static_cast<char>(std::tolower(c)));
  if (n == "g") return Generator::kG;
  if (n == "g2" || n == "g-2rounds" || n == "g2rounds") return Generator::kG2Rounds;
  if (n == "allpairs" || n == "g+allpairs" || n == "gallpairs") return Generator::kGAllpairs;
  if (n == "deepest" || n == "g+deepest" || n == "gdeepest") return Generator::kGDeepest;
  throw std::invalid_argument("unknown generator: " + name);
}

std::vector<const CandidateCut*> SeparationResult::selected() const {
  std::vector<const CandidateCut*> out;
  out.reserve(chosen.size());
  for (std::size_t k : chosen) out.push_back(&candidates[k]);
  return out;
}

std::vector<CutFunction> two_row_cuts(const TwoRowModel& model,
                                      const GeneratorOptions& opts) {
  std::vector<CutFunction> out;
  for (Side side : {Side::kLeft, Side::kRight}) {
    BodyResult raw = construct_body(model, side);
    if (!raw.body) continue;
    const LatticeFreeBody& body = *raw.body;
    if (body.kind == BodyKind::kSplit) {
      CutFunction c = split_cut(model, body);
      out.push_back(opts.lift ? lift_cut(c, model, body) : c);
      continue;
    }
    BodyResult canon = canonicalize(body);
    if (!canon.body) continue;
    const LatticeFreeBody& tri = *canon.body;
    CutFunction c = triangle_cut(model, tri);
    out.push_back(opts.lift ? lift_cut(c, model, tri) : c);
    if (opts.wedges && wedge_bound_ok(model, side)) {
      const LatticeFreeBody w = make_wedge(tri);
      CutFunction wc = wedge_cut(model, w, true);
      out.push_back(opts.lift ? lift_cut(wc, model, w) : wc);
    }
  }
  return out;
}

namespace {

CandidateCut finalize(CutFunction cut, const TableauSnapshot& snap,
                      const LpSolution& lp, const MilpInstance& inst,
                      const GeneratorOptions& opts) {
  CandidateCut c;
  c.cut = std::move(cut);
  SafeguardResult sg = apply_safeguards(c.cut.coef, opts.max_dynamism);
  if (!sg.accepted) {
    c.reject_reason = sg.reason;
    return c;
  }
  c.depth = cut_depth(c.cut.coef);
  c.structural = to_structural_space(c.cut, snap.nonbasic, lp, inst);
  SafeguardResult ss = apply_safeguards(c.structural.coef, opts.max_dynamism);
  if (!ss.accepted || !std::isfinite(c.structural.rhs)) {
    c.reject_reason = "structural_" + (ss.accepted ? std::string("non_finite") : ss.reason);
    return c;
  }
  c.accepted = true;
  return c;
}

}  // namespace

SeparationResult separate(const MilpInstance& inst, const LpSolution& lp,
                          const GeneratorSpec& spec, int round) {
  if (lp.status != LpStatus::kOptimal) {
    throw std::invalid_argument("separate needs an optimal LP");
  }
  const GeneratorOptions& opts = spec.opts;
  const TableauSnapshot snap = take_snapshot(inst, lp, opts.thresholds);
  const std::vector<int> frac = snap.fractional_rows();
  const std::vector<int> ints = snap.integer_rows();
  SeparationResult res;
  res.num_fractional = static_cast<int>(frac.size());
  res.num_integer = static_cast<int>(ints.size());
  const bool pairs =
      spec.kind == Generator::kGAllpairs || spec.kind == Generator::kGDeepest;

  GmiOptions gopts;
  gopts.lift_integer = opts.gmi_lift;
  gopts.min_fraction = opts.thresholds.fractional_min;

  for (int fr : frac) {
    std::size_t gmi_index = res.candidates.size();
    bool have_gmi = false;
    try {
      CutFunction g = gmi_cut(snap.rows[fr], snap.nonbasic, gopts);
      g.prov.round = round;
      res.candidates.push_back(finalize(std::move(g), snap, lp, inst, opts));
      have_gmi = true;
      if (res.candidates.back().accepted) res.chosen.push_back(gmi_index);
    } catch (const CutError& e) {
      CandidateCut c;
      c.reject_reason = "gmi_error";
      c.cut.prov.frac_basic = snap.rows[fr].basic;
      res.candidates.push_back(std::move(c));
    }
    if (!pairs) continue;

    std::size_t best = res.candidates.size();
    double best_depth = -1.0;
    for (int ir : ints) {
      TwoRowModel model;
      try {
        model = build_two_row_model(snap, fr, ir);
      } catch (const std::invalid_argument&) {
        continue;
      }
      std::vector<CutFunction> cuts;
      try {
        cuts = two_row_cuts(model, opts);
      } catch (const CutError&) {
        continue;
      }
      for (CutFunction& c : cuts) {
        const bool wedge = c.prov.kind == CutKind::kWedge;
        (wedge ? res.wedge_count : res.two_row_count) += 1;
        c.prov.round = round;
        res.candidates.push_back(finalize(std::move(c), snap, lp, inst, opts));
        const CandidateCut& cc = res.candidates.back();
        if (!cc.accepted) continue;
        if (spec.kind == Generator::kGAllpairs) {
          res.chosen.push_back(res.candidates.size() - 1);
        }
        if (cc.depth > best_depth) {
          best_depth = cc.depth;
          best = res.candidates.size() - 1;
        }
      }
    }
    if (spec.kind == Generator::kGDeepest && best < res.candidates.size()) {
      res.chosen.push_back(best);
    }
    if (have_gmi && res.candidates[gmi_index].accepted && best_depth > 0.0) {
      res.depth_ratios.push_back(100.0 * best_depth / res.candidates[gmi_index].depth);
    }
  }
  return res;
}

double gap_closed(double z_lp, double z_now, double z_star) {
  const double gap = z_star - z_lp;
  if (std::fabs(gap) <= 1e-9 * std::max(1.0, std::fabs(z_star))) return 100.0;
  return std::clamp(100.0 * (z_now - z_lp) / gap, 0.0, 100.0);
}

double normalized(const MilpInstance& inst, double objective) {
  return inst.sense == ObjSense::kMinimize ? objective : -objective;
}

DiveState start_dive(const MilpInstance& inst, const std::vector<double>& x_star) {
  const ValidationReport rep = validate_point(inst, x_star);
  if (!rep.feasible()) {
    throw std::invalid_argument("known solution is infeasible: " +
                                to_string(rep.violations.front().kind) + " " +
                                rep.violations.front().name);
  }
  DiveState st;
  st.inst = inst;
  st.x_star = x_star;
  st.base_rows = inst.num_rows();
  st.z_star = normalized(inst, inst.objective_value(x_star));
  st.lp = solve_lp(st.inst);
  if (st.lp.status != LpStatus::kOptimal) {
    throw LpError("root LP is " + to_string(st.lp.status));
  }
  st.z_root = normalized(inst, st.lp.objective);
  return st;
}

StepStats cutting_step(DiveState& state, const GeneratorSpec& spec,
                       const CuttingOptions& opts) {
  StepStats stats;
  if (opts.purge_cuts && state.inst.num_rows() > state.base_rows) {
    state.inst.rows.resize(state.base_rows);
    state.lp = solve_lp(state.inst);
  }
  const int rounds = spec.kind == Generator::kG2Rounds ? spec.opts.rounds_g2 : 1;
  for (int round = 0; round < rounds; ++round) {
    if (state.lp.status != LpStatus::kOptimal) break;
    SeparationResult sep = separate(state.inst, state.lp, spec, round);
    if (!state.root_done) {
      state.root_depth_ratios = sep.depth_ratios;
      state.root_done = true;
    }
    for (const CandidateCut& c : sep.candidates) {
      if (!c.accepted) {
        ++stats.cuts_rejected;
        ++stats.reject_reasons[c.reject_reason];
      }
    }
    std::vector<StructuralCut> to_add;
    std::vector<const CandidateCut*> sel = sep.selected();
    for (const CandidateCut* c : sel) to_add.push_back(c->structural);
    if (opts.inject_invalid && !to_add.empty()) {
      StructuralCut bad = to_add.front();
      bad.rhs = bad.activity(state.x_star) + 1.0;
      to_add.push_back(bad);
    }
    bool added = false;
    for (std::size_t k = 0; k < to_add.size(); ++k) {
      const StructuralCut& sc = to_add[k];
      const bool injected = k >= sel.size();
      const bool valid = sc.violation(state.x_star) <= opts.validity_tol;
      if (opts.cut_log) {
        nlohmann::json rec =
            injected ? cut_record(Provenance{}, sc, 0.0, valid, "injected")
                     : cut_record(sel[k]->cut.prov, sc, sel[k]->depth, valid,
                                  valid ? "" : "invalid");
        rec["depth_index"] = state.depth;
        opts.cut_log->push_back(std::move(rec));
      }
      if (!valid) {
        ++stats.validity_failures;
        continue;
      }
      Row row;
      row.name = "cut" + std::to_string(state.cut_rows++);
      row.sense = RowSense::kGreater;
      row.rhs = sc.rhs;
      row.coefs = sc.coef;
      state.inst.add_row(std::move(row));
      ++stats.cuts_added;
      if (!injected && sel[k]->cut.prov.kind != CutKind::kGmi) ++stats.two_row_added;
      added = true;
    }
    if (!added) break;
    state.lp = solve_lp(state.inst);
  }
  return stats;
}

std::vector<int> fractional_integer_columns(const DiveState& state) {
  std::vector<int> out;
  if (state.lp.status != LpStatus::kOptimal) return out;
  for (int j = 0; j < state.inst.num_cols(); ++j) {
    if (state.inst.vars[j].integer && integer_infeasibility(state.lp.x[j]) > 1e-6) {
      out.push_back(j);
    }
  }
  return out;
}

bool branching_step(DiveState& state, std::mt19937_64& rng, int* chosen) {
  const std::vector<int> cand = fractional_integer_columns(state);
  if (cand.empty()) return false;
  const int j = cand[rng() % cand.size()];
  if (chosen) *chosen = j;
  state.inst = fix_variable(state.inst, j, state.x_star[j]);
  state.lp = solve_lp(state.inst);
  ++state.depth;
  return true;
}

DiveRecord run_dive(const MilpInstance& inst, const std::vector<double>& x_star,
                    const GeneratorSpec& spec, std::uint64_t seed,
                    const DiveOptions& opts) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  DiveRecord rec;
  rec.instance = inst.name;
  rec.generator = to_string(spec.kind);
  rec.seed = seed;
  DiveState st = start_dive(inst, x_star);
  std::mt19937_64 rng(seed);
  for (;;) {
    DepthSnapshot snap;
    snap.depth = st.depth;
    snap.stats = cutting_step(st, spec, opts.cutting);
    rec.validity_failures += snap.stats.validity_failures;
    if (st.lp.status != LpStatus::kOptimal) {
      rec.snapshots.push_back(snap);
      rec.termination = "failure";
      break;
    }
    snap.objective = st.lp.objective;
    snap.gap_closed = gap_closed(st.z_root, normalized(st.inst, st.lp.objective), st.z_star);
    if (st.depth >= opts.max_depth) {
      rec.snapshots.push_back(snap);
      rec.termination = "max_depth";
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > opts.time_limit_seconds) {
      rec.snapshots.push_back(snap);
      rec.termination = "time_limit";
      break;
    }
    int chosen = -1;
    const bool branched = branching_step(st, rng, &chosen);
    snap.branched_on = chosen;
    rec.snapshots.push_back(snap);
    if (!branched) {
      rec.termination = "integer_feasible";
      break;
    }
    if (st.lp.status != LpStatus::kOptimal) {
      rec.termination = "failure";
      break;
    }
  }
  rec.root_depth_ratios = st.root_depth_ratios;
  return rec;
}

std::vector<DiveRecord> run_experiment(const MilpInstance& inst,
                                       const std::vector<double>& x_star,
                                       const std::vector<GeneratorSpec>& gens,
                                       int num_dives, std::uint64_t base_seed,
                                       const DiveOptions& opts, int threads) {
  const std::size_t total = gens.size() * static_cast<std::size_t>(std::max(0, num_dives));
  std::vector<DiveRecord> out(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const GeneratorSpec& g = gens[k / num_dives];
      const std::uint64_t seed = base_seed + k % num_dives;
      try {
        out[k] = run_dive(inst, x_star, g, seed, opts);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

nlohmann::json to_json(const DiveRecord& r) {
  nlohmann::json snaps = nlohmann::json::array();
  for (const DepthSnapshot& s : r.snapshots) {
    snaps.push_back({{"depth", s.depth},
                     {"objective", s.objective},
                     {"gap_closed", s.gap_closed},
                     {"cuts_added", s.stats.cuts_added},
                     {"two_row_added", s.stats.two_row_added},
                     {"cuts_rejected", s.stats.cuts_rejected},
                     {"reject_reasons", s.stats.reject_reasons},
                     {"validity_failures", s.stats.validity_failures},
                     {"branched_on", s.branched_on}});
  }
  return {{"instance", r.instance},
          {"generator", r.generator},
          {"seed", r.seed},
          {"termination", r.termination},
          {"validity_failures", r.validity_failures},
          {"root_depth_ratios", r.root_depth_ratios},
          {"snapshots", snaps}};
}

DiveRecord dive_record_from_json(const nlohmann::json& j) {
  DiveRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.generator = j.at("generator").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.termination = j.at("termination").get<std::string>();
  r.validity_failures = j.at("validity_failures").get<int>();
  r.root_depth_ratios = j.at("root_depth_ratios").get<std::vector<double>>();
  for (const auto& s : j.at("snapshots")) {
    DepthSnapshot d;
    d.depth = s.at("depth").get<int>();
    d.objective = s.at("objective").get<double>();
    d.gap_closed = s.at("gap_closed").get<double>();
    d.stats.cuts_added = s.at("cuts_added").get<int>();
    d.stats.two_row_added = s.value("two_row_added", 0);
    d.stats.cuts_rejected = s.at("cuts_rejected").get<int>();
    d.stats.reject_reasons = s.at("reject_reasons").get<std::map<std::string, int>>();
    d.stats.validity_failures = s.at("validity_failures").get<int>();
    d.branched_on = s.value("branched_on", -1);
    r.snapshots.push_back(std::move(d));
  }
  return r;
}

double gap_at_depth(const DiveRecord& r, int depth) {
  double g = 0.0;
  for (const DepthSnapshot& s : r.snapshots) {
    if (s.depth > depth) break;
    g = s.gap_closed;
  }
  return g;
}

Summary summarize(const std::vector<DiveRecord>& records,
                  const std::vector<int>& checkpoints) {
  Summary s;
  s.checkpoints = checkpoints;
  std::vector<double> ratio_sum;
  for (const DiveRecord& r : records) {
    auto it = std::find_if(s.rows.begin(), s.rows.end(),
                           [&](const SummaryRow& row) { return row.generator == r.generator; });
    if (it == s.rows.end()) {
      SummaryRow row;
      row.generator = r.generator;
      row.mean_gap.assign(checkpoints.size(), 0.0);
      s.rows.push_back(row);
      ratio_sum.push_back(0.0);
      it = s.rows.end() - 1;
    }
    SummaryRow& row = *it;
    ++row.dives;
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      row.mean_gap[c] += gap_at_depth(r, checkpoints[c]);
    }
    for (const DepthSnapshot& d : r.snapshots) {
      row.cuts_added += d.stats.cuts_added;
      row.cuts_rejected += d.stats.cuts_rejected;
      for (const auto& [k, v] : d.stats.reject_reasons) row.reject_reasons[k] += v;
    }
    row.validity_failures += r.validity_failures;
    for (double q : r.root_depth_ratios) {
      ratio_sum[it - s.rows.begin()] += q;
      ++row.depth_ratio_count;
    }
  }
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    SummaryRow& row = s.rows[k];
    for (double& g : row.mean_gap) g /= row.dives;
    if (row.depth_ratio_count > 0) row.mean_depth_ratio = ratio_sum[k] / row.depth_ratio_count;
  }
  return s;
}

namespace {

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string summary_csv(const Summary& s) {
  std::ostringstream os;
  os << "generator";
  for (int d : s.checkpoints) os << ",depth_" << d;
  os << ",dives,cuts_added,cuts_rejected,validity_failures,mean_depth_ratio\n";
  for (const SummaryRow& r : s.rows) {
    os << r.generator;
    for (double g : r.mean_gap) os << ',' << fixed2(g);
    os << ',' << r.dives << ',' << r.cuts_added << ',' << r.cuts_rejected << ','
       << r.validity_failures << ',';
    if (r.depth_ratio_count > 0) os << fixed2(r.mean_depth_ratio);
    os << '\n';
  }
  return os.str();
}

std::string summary_table(const Summary& s) {
  std::ostringstream os;
  os << "Average percentage of gap closed at depth\n";
  os << std::left << std::setw(12) << "generator";
  for (int d : s.checkpoints) os << std::right << std::setw(9) << d;
  os << std::right << std::setw(8) << "dives" << std::setw(10) << "invalid"
     << std::setw(12) << "depth %" << '\n';
  for (const SummaryRow& r : s.rows) {
    os << std::left << std::setw(12) << r.generator << std::right;
    for (double g : r.mean_gap) os << std::setw(9) << fixed2(g);
    os << std::setw(8) << r.dives << std::setw(10) << r.validity_failures
       << std::setw(12) << (r.depth_ratio_count > 0 ? fixed2(r.mean_depth_ratio) : "-")
       << '\n';
  }
  return os.str();
}

}  // namespace tworow
