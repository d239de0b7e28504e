// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails or runs past its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../random_instances.hpp"
#include "scpa/aoi_sim.hpp"
#include "scpa/experiment.hpp"
#include "scpa/grouping.hpp"
#include "scpa/offsets.hpp"
#include "scpa/pipeline.hpp"
#include "scpa/scenario.hpp"

using namespace scpa;

namespace {

// Time limits in seconds, per criterion.
constexpr double kLimitGrid = 1.0;
constexpr double kLimitFiveRegion = 1.0;
constexpr double kLimitTwoSource = 1.0;
constexpr double kLimitAlignment = 10.0;
constexpr double kLimitSweep = 60.0;
constexpr double kLimitFeasibility = 120.0;
constexpr double kLimitActivation = 30.0;
constexpr double kLimitOffsets = 60.0;

// Regression fence on the measured coverage-2 mean gap, percent.
constexpr double kMaxGapCoverage2 = 60.0;

constexpr std::int64_t kRateScale = 2520;  // lcm(1..10)

struct Check {
  std::ostringstream failures;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) failures << what;
    ok = ok && cond;
  }
};

using Criterion = std::function<void(Check&, std::string& note)>;

template <typename T>
std::vector<T> values_of(const std::map<SourceId, T>& m) {
  std::vector<T> out;
  for (const auto& [k, v] : m) out.push_back(v);
  return out;
}

void grid_example(Check& c, std::string& note) {
  const Instance inst = fixture_3x3_grid();
  const SolveReport r = solve_scpa(inst);
  c.expect(r.activation.active_sources() == std::vector<SourceId>{1, 3, 4, 5, 6, 7, 9},
           "active sources differ; ");
  c.expect(values_of(r.activation.max_interval) == std::vector<Slot>{5, 2, 2, 5, 4, 3, 7},
           "max intervals differ; ");
  c.expect(values_of(r.grouping.intervals()) == std::vector<Slot>{4, 2, 2, 4, 4, 2, 4},
           "CD intervals differ; ");
  c.expect(r.channels == 3, "K != 3; ");

  const std::map<SourceId, Slot> printed{{1, 3}, {3, 2}, {4, 2}, {5, 3}, {6, 1}, {7, 1}, {9, 4}};
  const OffsetProblem p = make_offset_problem(inst, r.activation, r.grouping.intervals());
  c.expect(constraints_satisfied(printed, p), "printed offsets rejected; ");
  c.expect(peak_load(printed, p) == 3, "printed offsets peak != 3; ");

  const HomogeneousSchedule printed_schedule = make_schedule(p.intervals, printed);
  const Slot horizon = std::max<Slot>(2 * p.hyperperiod + 10, 100);
  c.expect(simulate(inst, printed_schedule, horizon).feasible(), "printed schedule violates; ");
  c.expect(simulate(inst, r.schedule, horizon).feasible(), "solved schedule violates; ");
  note = "K=" + std::to_string(r.channels) + " horizon=" + std::to_string(horizon);
}

void five_region_example(Check& c, std::string& note) {
  const Instance inst = fixture_five_regions();
  const SolveReport r = solve_scpa(inst);
  c.expect(r.grouping.bases == std::vector<Slot>{4, 5}, "bases differ; ");
  c.expect(values_of(r.grouping.intervals()) == std::vector<Slot>{4, 4, 8, 8, 8, 5, 5, 5, 5, 5},
           "intervals differ; ");
  const OffsetProblem p = make_offset_problem(inst, r.activation, r.grouping.intervals());
  const OffsetSolution sol = solve_offsets(p);
  c.expect(sol.channels == 2, "offset K != 2; ");
  const HomogeneousSchedule s = make_schedule(p.intervals, sol.offsets);
  c.expect(!render_table(s, inst.num_sources).empty(), "empty table; ");
  c.expect(simulate(inst, s, std::max<Slot>(default_horizon(inst, s), 120)).feasible(),
           "schedule violates; ");
  note = "bases {4,5}, K=" + std::to_string(sol.channels);
}

void two_source_example(Check& c, std::string& note) {
  const std::vector<oracle::OffsetRule> rule{{{1, 2}, 2}};
  const auto coprime = oracle::offsets_optimum({{1, 4}, {2, 3}}, rule);
  c.expect(coprime && *coprime == 2, "c_B=3: exhaustive min K != 2; ");
  // Without the fusion rule the load still collides somewhere.
  for (Slot oa = 1; oa <= 4; ++oa) {
    for (Slot ob = 1; ob <= 3; ++ob) {
      HomogeneousSchedule s;
      s.set(1, 4, oa);
      s.set(2, 3, ob);
      c.expect(required_channels(s) == 2, "c_B=3: some offsets fit one channel; ");
    }
  }

  const auto divisible = oracle::offsets_optimum({{1, 4}, {2, 2}}, rule);
  c.expect(divisible && *divisible == 1, "c_B=2: exhaustive min K != 1; ");
  const std::vector<RegionMembers> regions{{1, {1, 2}, 2}};
  const OffsetProblem p = make_offset_problem({{1, 4}, {2, 2}}, regions);
  c.expect(constraints_satisfied({{1, 2}, {2, 1}}, p) && peak_load({{1, 2}, {2, 1}}, p) == 1,
           "(o_A=2, o_B=1) not optimal; ");
  c.expect(solve_offsets(p).channels == 1, "search K != 1; ");
  note = "c_B=3 -> 2, c_B=2 -> 1";
}

void alignment_oracle(Check& c, std::string& note) {
  int mismatches = 0;
  int cases = 0;
  for (Slot cm = 1; cm <= 12; ++cm) {
    for (Slot cz = 1; cz <= 12; ++cz) {
      for (Slot t = 0; t <= 12; ++t) {
        ++cases;
        mismatches += alignment_feasible(cm, cz, t) != oracle::alignment_feasible(cm, cz, t);
      }
    }
  }
  int set_mismatches = 0;
  for (Slot cm = 1; cm <= 10; ++cm) {
    for (Slot cz = 1; cz <= 10; ++cz) {
      const Slot g = std::gcd(cm, cz);
      for (Slot om = 1; om <= 10; ++om) {
        for (Slot oz = 1; oz <= 10; ++oz) {
          std::set<Slot> seen;
          for (Slot i = 0; i < cm / g; ++i) seen.insert(staleness(om, cm, oz, cz, i));
          std::set<Slot> expected;
          for (Slot v = oracle::mod(oz - om, g); v < cm; v += g) expected.insert(v);
          set_mismatches += seen != expected;
        }
      }
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " feasibility mismatches; ");
  c.expect(set_mismatches == 0, std::to_string(set_mismatches) + " value-set mismatches; ");
  note = std::to_string(cases) + " triples, 10000 value sets";
}

void sweep(Check& c, std::string& note) {
  ExperimentConfig cfg;  // 6x6, 50 trials, coverages 1-3, cases 1-3
  const auto rows = run_experiment(cfg);
  std::map<std::pair<int, int>, std::vector<const ExperimentRow*>> per_trial;
  std::map<std::pair<int, ToleranceMode>, const ExperimentRow*> means;
  for (const auto& r : rows) {
    if (r.trial) {
      per_trial[{r.coverage, *r.trial}].push_back(&r);
      c.expect(r.error.empty(), "trial error: " + r.error + "; ");
      c.expect(r.channels >= r.lower_bound, "K below bound; ");
      c.expect(r.feasible, "infeasible trial; ");
    } else {
      means[{r.coverage, r.mode}] = &r;
    }
  }
  c.expect(per_trial.size() == 150, "missing trials; ");
  for (const auto& [key, tr] : per_trial) {
    if (key.first != 1 || tr.size() != 3) continue;
    c.expect(tr[0]->channels == tr[1]->channels && tr[1]->channels == tr[2]->channels,
             "coverage 1: K differs across cases; ");
    c.expect(tr[0]->lower_bound == tr[1]->lower_bound && tr[1]->lower_bound == tr[2]->lower_bound,
             "coverage 1: bound differs across cases; ");
  }
  std::ostringstream gaps;
  for (int coverage : {2, 3}) {
    const double k1 = means.at({coverage, ToleranceMode::Case1})->channels;
    const double k2 = means.at({coverage, ToleranceMode::Case2})->channels;
    const double k3 = means.at({coverage, ToleranceMode::Case3})->channels;
    c.expect(k1 <= k2 && k2 <= k3, "mean K ordering broken at coverage " +
                                       std::to_string(coverage) + "; ");
  }
  for (int coverage : {1, 2, 3}) {
    gaps << " cov" << coverage << ":";
    for (ToleranceMode mode : cfg.cases) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.2f%%", means.at({coverage, mode})->gap_pct);
      gaps << buf;
    }
  }
  const double gap2 = means.at({2, ToleranceMode::Case2})->gap_pct;
  const double gap2_loose = means.at({2, ToleranceMode::Case1})->gap_pct;
  c.expect(std::isfinite(gap2) && std::isfinite(gap2_loose), "gap not finite; ");
  c.expect(gap2 <= kMaxGapCoverage2 && gap2_loose <= kMaxGapCoverage2,
           "coverage-2 gap above fence; ");
  note = "mean gaps (case 1/2/3)" + gaps.str();
}

void feasibility(Check& c, std::string& note) {
  std::mt19937 rng(2718);
  int violations = 0;
  int solved = 0;
  for (int i = 0; i < 200; ++i) {
    GridScenario scn;
    scn.width = 1 + static_cast<int>(rng() % 4);
    scn.height = 1 + static_cast<int>(rng() % 4);
    scn.coverage = 1 + static_cast<int>(rng() % 3);
    scn.mode = static_cast<ToleranceMode>(i % 3);
    scn.seed = rng();
    const Instance inst = generate(scn);
    const SolveReport r = solve_scpa(inst);
    const AoITrace trace = simulate(inst, r.schedule, default_horizon(inst, r.schedule));
    violations += static_cast<int>(trace.violations.size());
    solved += r.feasible && trace.feasible();
  }
  c.expect(violations == 0, std::to_string(violations) + " violations; ");
  c.expect(solved == 200, "some schedules infeasible; ");
  note = std::to_string(solved) + "/200 feasible";
}

void activation_oracle(Check& c, std::string& note) {
  std::mt19937 rng(3141);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const int regions = 1 + i % 6;
    const Instance inst = testing_util::random_instance(rng, regions, regions + 2, 2);
    const ActivationResult act = solve_activation(inst);
    std::int64_t scaled = 0;
    for (const auto& [m, u] : act.max_interval) scaled += kRateScale / u;
    equal += scaled == oracle::activation_optimum(inst, kRateScale);
  }
  c.expect(equal == 100, std::to_string(100 - equal) + " objective mismatches; ");
  note = std::to_string(equal) + "/100 equal";
}

void offsets_oracle(Check& c, std::string& note) {
  std::mt19937 rng(1618);
  int equal = 0;
  for (int i = 0; i < 50; ++i) {
    const auto rp = testing_util::random_offset_problem(rng);
    const OffsetProblem p = make_offset_problem(rp.intervals, rp.regions);
    c.expect(p.intervals.size() <= 5 && p.hyperperiod <= 24, "problem out of range; ");
    std::vector<oracle::OffsetRule> rules;
    for (const auto& r : rp.regions) rules.push_back({r.members, r.tolerance});
    equal += solve_offsets(p).channels == oracle::offsets_optimum(rp.intervals, rules);
  }
  c.expect(equal == 50, std::to_string(50 - equal) + " K mismatches; ");
  note = std::to_string(equal) + "/50 equal";
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit;
    Criterion run;
  };
  const std::vector<Entry> entries{
      {1, "3x3 grid worked example", kLimitGrid, grid_example},
      {2, "five-region grouping example", kLimitFiveRegion, five_region_example},
      {3, "two-source channel example", kLimitTwoSource, two_source_example},
      {4, "alignment tolerance oracle", kLimitAlignment, alignment_oracle},
      {5, "lower-bound sandwich sweep", kLimitSweep, sweep},
      {6, "end-to-end feasibility", kLimitFeasibility, feasibility},
      {7, "activation oracle", kLimitActivation, activation_oracle},
      {8, "offset search oracle", kLimitOffsets, offsets_oracle},
  };
  int failed = 0;
  for (const Entry& e : entries) {
    Check check;
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(check, note);
    } catch (const std::exception& ex) {
      check.expect(false, std::string("exception: ") + ex.what() + "; ");
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(secs < e.limit, "over time limit; ");
    std::printf("%s [%d] %s (%.3f s, limit %.0f s) %s%s\n", check.ok ? "PASS" : "FAIL", e.id,
                e.name, secs, e.limit, note.c_str(),
                check.ok ? "" : (" -- " + check.failures.str()).c_str());
    failed += check.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
