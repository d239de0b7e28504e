#include "scpa/pipeline.hpp"

#include "scpa/aoi_sim.hpp"

namespace scpa {

SolveReport solve_scpa(const Instance& inst, const ScpaConfig& cfg) {
  ValidationOptions relaxed;
  relaxed.require_direct_source = false;
  if (auto rep = validate_instance(inst, relaxed); !rep.ok()) {
    throw Error("solve_scpa: invalid instance\n" + rep.to_string());
  }

  SolveReport out;
  out.activation = solve_activation(inst, cfg.activation);
  out.graph = build_graph(out.activation);
  out.grouping = run_dc(out.activation, out.graph, cfg.dc);

  const auto intervals = out.grouping.intervals();
  const OffsetProblem problem = make_offset_problem(inst, out.activation, intervals);
  const OffsetSolution sol = solve_offsets(problem, cfg.offsets);
  out.offsets = sol.offsets;
  out.schedule = make_schedule(intervals, sol.offsets);
  out.channels = required_channels(out.schedule);
  if (out.channels != sol.channels) {
    throw Error("solve_scpa: offset search load disagrees with the assembled schedule");
  }
  out.lower_bound = solve_lb(inst);
  out.certified = out.activation.certified && sol.certified;

  const Slot horizon = cfg.horizon > 0 ? cfg.horizon : default_horizon(inst, out.schedule);
  const AoITrace trace = simulate(inst, out.schedule, horizon);
  out.trace.horizon = horizon;
  out.trace.violations = trace.violations.size();
  for (const RegionSpec& r : inst.regions) out.trace.max_age.push_back(trace.max_age(r.id));
  out.feasible = trace.feasible();
  return out;
}

}  // namespace scpa
