// scpa: command-line front end for the scheduler.
//
//   scpa gen --width 3 --height 3 --coverage 2 --case 1 --seed 7 --out inst.json
//   scpa solve inst.json --format table
//   scpa experiment --trials 50 --out sweep.csv

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scpa/aoi_sim.hpp"
#include "scpa/experiment.hpp"
#include "scpa/io.hpp"
#include "scpa/pipeline.hpp"
#include "scpa/scenario.hpp"

using namespace scpa;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

DcConfig preset(const std::string& name) {
  if (name == "two-bases") return DcConfig::two_bases();
  return DcConfig{};
}

std::string csv_rates(const LowerBound& lb) {
  std::ostringstream os;
  os << "# sum_rates=" << lb.total << " K=" << lb.channels << "\n";
  os << "source,label,rate\n";
  for (std::size_t m = 0; m < lb.rates.size(); ++m) {
    os << m + 1 << "," << source_label(static_cast<SourceId>(m + 1)) << "," << lb.rates[m] << "\n";
  }
  return os.str();
}

std::string activation_table(const Instance& inst, const ActivationResult& act) {
  std::ostringstream os;
  os << "region,d,choice,active\n";
  for (std::size_t i = 0; i < act.chosen.size(); ++i) {
    const Option& o = act.chosen[i];
    os << i + 1 << "," << inst.regions[i].deadline << ","
       << (o.kind == Option::Kind::Direct ? "direct" : "combo") << "#" << o.index << ",";
    for (std::size_t k = 0; k < act.active_sets[i].size(); ++k) {
      os << (k ? " " : "") << source_label(act.active_sets[i][k]);
    }
    os << "\n";
  }
  os << "source,max_interval,rate\n";
  for (const auto& [m, u] : act.max_interval) {
    os << source_label(m) << "," << u << "," << act.rate(m) << "\n";
  }
  os << "# objective=" << act.objective << (act.certified ? "" : " (uncertified)") << "\n";
  return os.str();
}

std::string grouping_table(const CollaborationGraph& g, const GroupingPlan& plan) {
  std::ostringstream os;
  os << "components:";
  for (const auto& c : g.components) {
    os << " {";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << source_label(c[i]);
    os << "}";
  }
  os << "\nbases:";
  for (Slot b : plan.bases) os << " " << b;
  os << "\nobjective: " << plan.objective << "\n";
  for (const Group& grp : plan.groups) {
    os << "group base " << grp.base << ":";
    for (const auto& [m, c] : grp.intervals) os << " " << source_label(m) << "=" << c;
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-channel periodic schedules with hard AoI guarantees"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file (stdout when omitted)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a grid scenario instance");
  GridScenario scn;
  int case_no = 1;
  std::string shape = "straight";
  gen->add_option("--width", scn.width)->check(CLI::PositiveNumber);
  gen->add_option("--height", scn.height)->check(CLI::PositiveNumber);
  gen->add_option("--coverage", scn.coverage)->check(CLI::Range(1, 3));
  gen->add_option("--case", case_no)->check(CLI::Range(1, 3));
  gen->add_option("--dlo", scn.d_lo);
  gen->add_option("--dhi", scn.d_hi);
  gen->add_option("--shape", shape)->check(CLI::IsMember({"straight", "lshape"}));

  // commands that take an instance
  std::string instance_path;
  std::string dc_preset = "default";
  auto* lb = app.add_subcommand("lb", "Channel lower bound from the covering LP");
  lb->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* activate = app.add_subcommand("activate", "Choose active sources");
  activate->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  auto* group = app.add_subcommand("group", "Group components and derive CD intervals");
  group->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  group->add_option("--preset", dc_preset)->check(CLI::IsMember({"default", "two-bases"}));
  auto* solve = app.add_subcommand("solve", "Run the full pipeline");
  solve->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--preset", dc_preset)->check(CLI::IsMember({"default", "two-bases"}));
  Slot display = 0;
  solve->add_option("--slots", display, "Slots shown in the schedule table");

  std::string intervals_path;
  auto* offsets = app.add_subcommand("offsets", "Choose offsets for given intervals");
  offsets->add_option("intervals", intervals_path)->required()->check(CLI::ExistingFile);
  offsets->add_option("--slots", display, "Slots shown in the schedule table");

  std::string schedule_path;
  Slot horizon = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate region ages under a schedule");
  simulate_cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("schedule", schedule_path)->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--horizon", horizon, "Slots to simulate (default 2*lcm + max d)");

  ExperimentConfig exp;
  std::string exp_preset = "two-bases";
  auto* experiment = app.add_subcommand("experiment", "Three-case sweep over random grids");
  experiment->add_option("--width", exp.width)->check(CLI::PositiveNumber);
  experiment->add_option("--height", exp.height)->check(CLI::PositiveNumber);
  experiment->add_option("--coverage", exp.coverages)->delimiter(',');
  experiment->add_option("--trials", exp.trials)->check(CLI::PositiveNumber);
  experiment->add_option("--dlo", exp.d_lo);
  experiment->add_option("--dhi", exp.d_hi);
  experiment->add_option("--jobs", exp.jobs, "Worker threads (0 = all cores)");
  experiment->add_option("--preset", exp_preset)->check(CLI::IsMember({"default", "two-bases"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      scn.seed = g.seed;
      scn.mode = static_cast<ToleranceMode>(case_no - 1);
      scn.shape = shape == "lshape" ? CoverageShape::LShape : CoverageShape::Straight;
      write_text(g.out, to_json(generate(scn)).dump(2) + "\n");
      return 0;
    }
    if (*experiment) {
      exp.seed = g.seed;
      exp.dc = preset(exp_preset);
      write_text(g.out, experiment_csv(run_experiment(exp)));
      return 0;
    }
    if (*offsets) {
      const IntervalsFile f = intervals_from_json(read_json_file(intervals_path));
      const OffsetProblem problem = make_offset_problem(f.intervals, f.regions);
      const OffsetSolution sol = solve_offsets(problem);
      const HomogeneousSchedule s = make_schedule(f.intervals, sol.offsets);
      const SourceId width = s.empty() ? 0 : s.entries().rbegin()->first;
      if (g.format == "json") {
        json j = to_json(sol);
        j["table"] = render_table(s, width, display);
        write_text(g.out, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        for (const auto& [m, o] : sol.offsets) os << source_label(m) << "=" << o << " ";
        os << "\nK=" << sol.channels << "\n" << render_table(s, width, display);
        write_text(g.out, os.str());
      }
      return 0;
    }

    const Instance inst = instance_from_json(read_json_file(instance_path));
    ValidationOptions relaxed;
    relaxed.require_direct_source = false;
    if (auto rep = validate_instance(inst, relaxed); !rep.ok()) {
      std::cerr << "invalid instance:\n" << rep.to_string();
      return 2;
    }

    if (*lb) {
      const LowerBound bound = solve_lb(inst);
      write_text(g.out, g.format == "json" ? to_json(bound).dump(2) + "\n" : csv_rates(bound));
    } else if (*activate) {
      const ActivationResult act = solve_activation(inst);
      write_text(g.out, g.format == "json" ? to_json(act).dump(2) + "\n" : activation_table(inst, act));
    } else if (*group) {
      const ActivationResult act = solve_activation(inst);
      const CollaborationGraph graph = build_graph(act);
      const GroupingPlan plan = run_dc(act, graph, preset(dc_preset));
      if (g.format == "json") {
        write_text(g.out, json{{"graph", to_json(graph)}, {"grouping", to_json(plan)}}.dump(2) + "\n");
      } else {
        write_text(g.out, grouping_table(graph, plan));
      }
    } else if (*solve) {
      ScpaConfig cfg;
      cfg.dc = preset(dc_preset);
      const SolveReport report = solve_scpa(inst, cfg);
      if (g.format == "json") {
        json j = to_json(report);
        j["table"] = render_table(report, display);
        write_text(g.out, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "K=" << report.channels << " lower_bound=" << report.lower_bound.channels
           << " feasible=" << (report.feasible ? "yes" : "no") << "\n"
           << render_table(report, display);
        write_text(g.out, os.str());
      }
      return report.feasible ? 0 : 3;
    } else if (*simulate_cmd) {
      const HomogeneousSchedule s = schedule_from_json(read_json_file(schedule_path));
      const Slot h = horizon > 0 ? horizon : default_horizon(inst, s);
      const AoITrace trace = simulate(inst, s, h);
      write_text(g.out, g.format == "csv" ? trace_csv(trace) : to_json(trace).dump(2) + "\n");
      return trace.feasible() ? 0 : 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
