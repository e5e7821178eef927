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

#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tworow/dive.hpp"

using namespace tworow;
using testing::load_instance;
using testing::load_solution;

namespace {

GeneratorSpec gen(Generator g) { return GeneratorSpec{g, {}}; }

const Generator kAll[] = {Generator::kG, Generator::kG2Rounds, Generator::kGAllpairs,
                          Generator::kGDeepest};

}  // namespace

TEST_CASE("gap closed") {
  CHECK(gap_closed(10, 15, 20) == 50.0);
  CHECK(gap_closed(10, 10, 20) == 0.0);
  CHECK(gap_closed(7, 7, 7) == 100.0);
  CHECK(gap_closed(10, 25, 20) == 100.0);
  CHECK(gap_closed(10, 9, 20) == 0.0);
}

TEST_CASE("generator names") {
  for (Generator g : kAll) CHECK(parse_generator(to_string(g)) == g);
  CHECK(parse_generator("g2") == Generator::kG2Rounds);
  CHECK(parse_generator("allpairs") == Generator::kGAllpairs);
  CHECK(parse_generator("deepest") == Generator::kGDeepest);
  CHECK_THROWS_AS(parse_generator("gomory"), std::invalid_argument);
}

TEST_CASE("toy solution is optimal by enumeration over fixings") {
  MilpInstance inst = load_instance("toy");
  const auto xs = load_solution(inst, "toy");
  CHECK(inst.objective_value(xs) == doctest::Approx(1.0));
  double best = kInf;
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      MilpInstance fixed = fix_variable(fix_variable(inst, 0, a), 1, b);
      LpSolution lp = solve_lp(fixed);
      if (lp.status == LpStatus::kOptimal) best = std::min(best, lp.objective);
    }
  }
  CHECK(best == doctest::Approx(1.0));
  CHECK(solve_lp(inst).objective == doctest::Approx(0.0));
}

TEST_CASE("toy: one triangle closes the root gap, GMI does not") {
  MilpInstance inst = load_instance("toy");
  const auto xs = load_solution(inst, "toy");
  DiveRecord g = run_dive(inst, xs, gen(Generator::kG), 7);
  DiveRecord d = run_dive(inst, xs, gen(Generator::kGDeepest), 7);
  REQUIRE_FALSE(g.snapshots.empty());
  REQUIRE_FALSE(d.snapshots.empty());
  CHECK(g.snapshots[0].gap_closed == doctest::Approx(31.25));
  CHECK(g.snapshots[0].gap_closed < 100.0);
  CHECK(d.snapshots[0].gap_closed == doctest::Approx(100.0));
  CHECK(d.snapshots[0].stats.two_row_added == 1);
  CHECK(d.termination == "integer_feasible");
  CHECK(g.validity_failures == 0);
  CHECK(d.validity_failures == 0);
}

TEST_CASE("integral LP optimum gives a depth 0 dive with gap 100") {
  using testing::make_instance;
  MilpInstance inst = make_instance(ObjSense::kMaximize, {1, 1},
                                    {{{1, 0}, RowSense::kLess, 2}, {{0, 1}, RowSense::kLess, 3}});
  for (Variable& v : inst.vars) v.integer = true;
  DiveRecord r = run_dive(inst, {2, 3}, gen(Generator::kGAllpairs), 1);
  REQUIRE(r.snapshots.size() == 1);
  CHECK(r.snapshots[0].depth == 0);
  CHECK(r.snapshots[0].gap_closed == 100.0);
  CHECK(r.termination == "integer_feasible");
}

TEST_CASE("infeasible known solution is refused") {
  MilpInstance inst = load_instance("deg1");
  std::vector<double> x(inst.num_cols(), 100.0);
  CHECK_THROWS_AS(run_dive(inst, x, gen(Generator::kG), 1), std::invalid_argument);
}

TEST_CASE("no integer rows means only GMI cuts") {
  // max x s.t. 2x <= 3: one fractional row and nothing integral.
  using testing::make_instance;
  MilpInstance inst = make_instance(ObjSense::kMaximize, {1}, {{{2}, RowSense::kLess, 3}});
  inst.vars[0].integer = true;
  LpSolution lp = solve_lp(inst);
  SeparationResult s = separate(inst, lp, gen(Generator::kGAllpairs));
  CHECK(s.num_fractional == 1);
  CHECK(s.num_integer == 0);
  CHECK(s.two_row_count == 0);
  CHECK(s.wedge_count == 0);
  REQUIRE(s.selected().size() == 1);
  CHECK(s.selected()[0]->cut.prov.kind == CutKind::kGmi);
}

TEST_CASE("G and G2Rounds add only GMI cuts") {
  for (const std::string& name : testing::degenerate_instances()) {
    MilpInstance inst = load_instance(name);
    LpSolution lp = solve_lp(inst);
    SeparationResult s = separate(inst, lp, gen(Generator::kG));
    CHECK(s.two_row_count == 0);
    CHECK(static_cast<int>(s.selected().size()) <= s.num_fractional);
    for (const CandidateCut* c : s.selected()) CHECK(c->cut.prov.kind == CutKind::kGmi);
  }
}

TEST_CASE("two-row cut counts per separation round") {
  for (const std::string& name : testing::degenerate_instances()) {
    CAPTURE(name);
    MilpInstance inst = load_instance(name);
    LpSolution lp = solve_lp(inst);
    SeparationResult a = separate(inst, lp, gen(Generator::kGAllpairs));
    CHECK(a.two_row_count <= 2 * a.num_fractional * a.num_integer);
    CHECK(a.two_row_count > 0);
    CHECK(a.wedge_count <= a.two_row_count);

    SeparationResult d = separate(inst, lp, gen(Generator::kGDeepest));
    int gmi = 0, two = 0;
    for (const CandidateCut* c : d.selected()) {
      (c->cut.prov.kind == CutKind::kGmi ? gmi : two) += 1;
    }
    CHECK(gmi <= d.num_fractional);
    CHECK(two <= d.num_fractional);
    CHECK(two >= 1);

    // The deepest selection is the maximum over the Allpairs candidates.
    double deepest = 0.0;
    for (const CandidateCut* c : a.selected()) {
      if (c->cut.prov.kind != CutKind::kGmi) deepest = std::max(deepest, c->depth);
    }
    double chosen = 0.0;
    for (const CandidateCut* c : d.selected()) {
      if (c->cut.prov.kind != CutKind::kGmi) chosen = std::max(chosen, c->depth);
    }
    CHECK(chosen == doctest::Approx(deepest));
  }
}

TEST_CASE("turning wedges off removes wedge cuts") {
  MilpInstance inst = load_instance("deg1");
  LpSolution lp = solve_lp(inst);
  GeneratorSpec s = gen(Generator::kGAllpairs);
  s.opts.wedges = false;
  SeparationResult r = separate(inst, lp, s);
  CHECK(r.wedge_count == 0);
  for (const CandidateCut& c : r.candidates) CHECK(c.cut.prov.kind != CutKind::kWedge);
}

TEST_CASE("every cut is valid for the integer points of its node") {
  int checked = 0;
  for (const std::string& name : testing::degenerate_instances()) {
    MilpInstance inst = load_instance(name);
    const auto xs = load_solution(inst, name);
    for (Generator g : kAll) {
      for (int variant = 0; variant < 4; ++variant) {
        GeneratorSpec s = gen(g);
        s.opts.lift = s.opts.gmi_lift = (variant & 1) != 0;
        s.opts.wedges = (variant & 2) != 0;
        for (std::uint64_t seed : {1u, 2u, 3u}) {
          CAPTURE(name);
          CAPTURE(to_string(g));
          CAPTURE(variant);
          testing::DiveAudit a = testing::audit_dive(inst, xs, s, seed);
          CHECK(a.worst <= 1e-7);
          CHECK(a.validity_failures == 0);
          CHECK(a.x_star_feasible);
          checked += a.cuts_checked;
        }
      }
    }
  }
  MESSAGE("cuts checked: " << checked);
  CHECK(checked > 500);
}

TEST_CASE("cuts on the larger wedge instances are valid") {
  for (const std::string& name : testing::wedge_instances()) {
    MilpInstance inst = load_instance(name);
    const auto xs = load_solution(inst, name);
    for (Generator g : {Generator::kGAllpairs, Generator::kGDeepest}) {
      for (int lift = 0; lift < 2; ++lift) {
        GeneratorSpec s = gen(g);
        s.opts.lift = s.opts.gmi_lift = lift != 0;
        CAPTURE(name);
        testing::DiveAudit a = testing::audit_dive(inst, xs, s, 1);
        CHECK(a.worst <= 1e-7);
        CHECK(a.validity_failures == 0);
        CHECK(a.cuts_checked > 0);
      }
    }
  }
}

TEST_CASE("injected invalid cut is quarantined") {
  MilpInstance inst = load_instance("toy");
  const auto xs = load_solution(inst, "toy");
  DiveState st = start_dive(inst, xs);
  CuttingOptions opts;
  opts.inject_invalid = true;
  StepStats stats = cutting_step(st, gen(Generator::kG), opts);
  CHECK(stats.validity_failures == 1);
  CHECK(stats.cuts_added == 1);
  CHECK(validate_point(st.inst, xs, 1e-6).feasible());

  DiveOptions dopts;
  dopts.cutting.inject_invalid = true;
  DiveRecord r = run_dive(inst, xs, gen(Generator::kGAllpairs), 3, dopts);
  CHECK(r.validity_failures >= 1);
}

TEST_CASE("branching fixes a fractional variable at its known value") {
  MilpInstance inst = load_instance("deg2");
  const auto xs = load_solution(inst, "deg2");
  DiveState st = start_dive(inst, xs);
  std::mt19937_64 rng(11);
  std::vector<int> fixed;
  for (int step = 0; step < 10; ++step) {
    const std::vector<int> cand = fractional_integer_columns(st);
    int j = -1;
    const bool more = branching_step(st, rng, &j);
    CHECK(more == !cand.empty());
    if (!more) break;
    CHECK(std::find(cand.begin(), cand.end(), j) != cand.end());
    CHECK(st.inst.vars[j].lower == xs[j]);
    CHECK(st.inst.vars[j].upper == xs[j]);
    CHECK(st.depth == step + 1);
    fixed.push_back(j);
    REQUIRE(st.lp.status == LpStatus::kOptimal);
    for (int k : fixed) CHECK(integer_infeasibility(st.lp.x[k]) <= 1e-6);
  }
}

TEST_CASE("branching choice is reproducible") {
  MilpInstance inst = load_instance("deg3");
  const auto xs = load_solution(inst, "deg3");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DiveState a = start_dive(inst, xs), b = start_dive(inst, xs);
    std::mt19937_64 ra(seed), rb(seed);
    int ja = -1, jb = -1;
    branching_step(a, ra, &ja);
    branching_step(b, rb, &jb);
    CHECK(ja == jb);
  }
}

TEST_CASE("dives are deterministic and monotone") {
  for (const std::string& name : testing::degenerate_instances()) {
    MilpInstance inst = load_instance(name);
    const auto xs = load_solution(inst, name);
    for (Generator g : kAll) {
      DiveRecord a = run_dive(inst, xs, gen(g), 5);
      DiveRecord b = run_dive(inst, xs, gen(g), 5);
      CHECK(to_json(a).dump() == to_json(b).dump());
      const double zs = normalized(inst, inst.objective_value(xs));
      double prev = -kInf;
      for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        const DepthSnapshot& s = a.snapshots[k];
        CHECK(s.depth == static_cast<int>(k));
        const double z = normalized(inst, s.objective);
        CHECK(z >= prev - 1e-7);
        CHECK(z <= zs + 1e-7);
        prev = z;
      }
      CHECK(a.validity_failures == 0);
    }
  }
}

TEST_CASE("experiments do not depend on the thread count") {
  MilpInstance inst = load_instance("deg4");
  const auto xs = load_solution(inst, "deg4");
  std::vector<GeneratorSpec> gens{gen(Generator::kG), gen(Generator::kGDeepest)};
  auto one = run_experiment(inst, xs, gens, 5, 100, {}, 1);
  auto four = run_experiment(inst, xs, gens, 5, 100, {}, 4);
  REQUIRE(one.size() == 10);
  REQUIRE(four.size() == 10);
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(to_json(one[k]).dump() == to_json(four[k]).dump());
  }
  CHECK(one[0].generator == "G");
  CHECK(one[0].seed == 100);
  CHECK(one[9].generator == "G+Deepest");
  CHECK(one[9].seed == 104);
}

TEST_CASE("record round trip through JSON") {
  MilpInstance inst = load_instance("deg5");
  const auto xs = load_solution(inst, "deg5");
  DiveRecord r = run_dive(inst, xs, gen(Generator::kGAllpairs), 9);
  DiveRecord back = dive_record_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(to_json(back) == to_json(r));
}

TEST_CASE("summary of a single full-gap dive") {
  DiveRecord r;
  r.generator = "G";
  DepthSnapshot s;
  s.gap_closed = 100.0;
  r.snapshots.push_back(s);
  Summary sum = summarize({r});
  REQUIRE(sum.rows.size() == 1);
  CHECK(sum.rows[0].mean_gap == std::vector<double>{100, 100, 100, 100});
  const std::string csv = summary_csv(sum);
  CHECK(csv.rfind("generator,depth_0,depth_4,depth_8,depth_12,", 0) == 0);
  CHECK(csv.find("\nG,100.00,100.00,100.00,100.00,1,") != std::string::npos);
}

TEST_CASE("summary averages per generator and carries the last gap forward") {
  auto rec = [](const std::string& g, std::vector<double> gaps) {
    DiveRecord r;
    r.generator = g;
    for (std::size_t k = 0; k < gaps.size(); ++k) {
      DepthSnapshot s;
      s.depth = static_cast<int>(k);
      s.gap_closed = gaps[k];
      s.stats.cuts_added = 1;
      r.snapshots.push_back(s);
    }
    return r;
  };
  DiveRecord a = rec("G", {10, 20, 30, 40, 50});
  DiveRecord b = rec("G", {30});
  DiveRecord c = rec("G+Deepest", {50, 60});
  c.root_depth_ratios = {120, 80};
  Summary s = summarize({a, b, c}, {0, 4});
  REQUIRE(s.rows.size() == 2);
  CHECK(s.rows[0].generator == "G");
  CHECK(s.rows[0].mean_gap[0] == doctest::Approx(20));
  CHECK(s.rows[0].mean_gap[1] == doctest::Approx(40));
  CHECK(s.rows[0].cuts_added == 6);
  CHECK(s.rows[1].mean_gap[1] == doctest::Approx(60));
  CHECK(s.rows[1].mean_depth_ratio == doctest::Approx(100));
  CHECK(s.rows[1].depth_ratio_count == 2);
}

TEST_CASE("G never produces an invalid cut on the bundled instances") {
  std::vector<std::string> names = testing::degenerate_instances();
  names.push_back("toy");
  for (const std::string& name : names) {
    MilpInstance inst = load_instance(name);
    const auto xs = load_solution(inst, name);
    auto recs = run_experiment(inst, xs, {gen(Generator::kG)}, 5, 0);
    Summary s = summarize(recs);
    CHECK(s.rows[0].validity_failures == 0);
  }
}
