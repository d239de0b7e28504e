#pragma once

// JSON and text encodings used by the command-line tool.
//
// Instance:  {"label": str, "num_sources": int,
//             "regions": [{"id": int, "d": int, "T": int,
//                          "F": [int], "combos": [[int]]}]}
// Schedule:  {"schedule": [{"source": int, "label": str, "c": int, "o": int}]}
// Intervals: {"intervals": [{"source": int|str, "c": int}],
//             "regions": [{"id": int, "members": [int|str], "T": int}]}
//            ("regions" is optional; source labels "A".. are accepted.)

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scpa/activation.hpp"
#include "scpa/aoi_sim.hpp"
#include "scpa/core_model.hpp"
#include "scpa/experiment.hpp"
#include "scpa/grouping.hpp"
#include "scpa/lower_bound.hpp"
#include "scpa/offsets.hpp"
#include "scpa/pipeline.hpp"

namespace scpa {

using nlohmann::json;

json to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json to_json(const HomogeneousSchedule& s);
HomogeneousSchedule schedule_from_json(const json& j);

struct IntervalsFile {
  std::map<SourceId, Slot> intervals;
  std::vector<RegionMembers> regions;
};
IntervalsFile intervals_from_json(const json& j);

json to_json(const LowerBound& lb);
json to_json(const ActivationResult& act);
json to_json(const CollaborationGraph& g);
json to_json(const GroupingPlan& plan);
json to_json(const OffsetSolution& sol);
json to_json(const AoITrace& trace);
json to_json(const SolveReport& report);
json to_json(const Topology& topo);

json read_json_file(const std::filesystem::path& path);
/// Writes to `path`, or to stdout when the path is empty or "-".
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace scpa
