#include "scpa/io.hpp"

#include <fstream>
#include <iostream>

namespace scpa {

namespace {

SourceId source_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<SourceId>();
  if (j.is_string()) {
    if (auto id = parse_source_label(j.get<std::string>())) return *id;
  }
  throw Error("expected a source id or label, got " + j.dump());
}

std::vector<SourceId> sources_from_json(const json& j) {
  std::vector<SourceId> out;
  for (const auto& v : j) out.push_back(source_from_json(v));
  return out;
}

json labelled(const std::vector<SourceId>& ids) {
  json out = json::array();
  for (SourceId m : ids) out.push_back(source_label(m));
  return out;
}

}  // namespace

json to_json(const Instance& inst) {
  json regions = json::array();
  for (const RegionSpec& r : inst.regions) {
    regions.push_back({{"id", r.id},
                       {"d", r.deadline},
                       {"T", r.tolerance},
                       {"F", r.direct},
                       {"combos", r.combos}});
  }
  return {{"label", inst.label}, {"num_sources", inst.num_sources}, {"regions", regions}};
}

Instance instance_from_json(const json& j) {
  try {
    Instance inst;
    inst.label = j.value("label", std::string{});
    inst.num_sources = j.at("num_sources").get<SourceId>();
    for (const auto& rj : j.at("regions")) {
      RegionSpec r;
      r.id = rj.at("id").get<RegionId>();
      r.deadline = rj.at("d").get<Slot>();
      r.tolerance = rj.at("T").get<Slot>();
      r.direct = sources_from_json(rj.value("F", json::array()));
      std::sort(r.direct.begin(), r.direct.end());
      for (const auto& cj : rj.value("combos", json::array())) {
        auto combo = sources_from_json(cj);
        std::sort(combo.begin(), combo.end());
        r.combos.push_back(std::move(combo));
      }
      inst.regions.push_back(std::move(r));
    }
    std::sort(inst.regions.begin(), inst.regions.end(),
              [](const RegionSpec& a, const RegionSpec& b) { return a.id < b.id; });
    return inst;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
}

json to_json(const HomogeneousSchedule& s) {
  json entries = json::array();
  for (const auto& [m, t] : s.entries()) {
    entries.push_back({{"source", m}, {"label", source_label(m)}, {"c", t.interval}, {"o", t.offset}});
  }
  return {{"schedule", entries}};
}

HomogeneousSchedule schedule_from_json(const json& j) {
  try {
    HomogeneousSchedule s;
    for (const auto& e : j.at("schedule")) {
      s.set(source_from_json(e.at("source")), e.at("c").get<Slot>(), e.at("o").get<Slot>());
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed schedule JSON: ") + e.what());
  }
}

IntervalsFile intervals_from_json(const json& j) {
  try {
    IntervalsFile f;
    for (const auto& e : j.at("intervals")) {
      f.intervals[source_from_json(e.at("source"))] = e.at("c").get<Slot>();
    }
    for (const auto& r : j.value("regions", json::array())) {
      f.regions.push_back({r.value("id", RegionId{0}), sources_from_json(r.at("members")),
                           r.at("T").get<Slot>()});
    }
    return f;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed intervals JSON: ") + e.what());
  }
}

json to_json(const LowerBound& lb) {
  json rates = json::array();
  for (std::size_t m = 0; m < lb.rates.size(); ++m) {
    rates.push_back({{"source", m + 1}, {"label", source_label(static_cast<SourceId>(m + 1))},
                     {"rate", lb.rates[m]}});
  }
  return {{"sum_rates", lb.total}, {"K", lb.channels}, {"rates", rates}};
}

json to_json(const ActivationResult& act) {
  json regions = json::array();
  for (std::size_t i = 0; i < act.chosen.size(); ++i) {
    const Option& o = act.chosen[i];
    regions.push_back({{"region", i + 1},
                       {"kind", o.kind == Option::Kind::Direct ? "direct" : "combo"},
                       {"index", o.index},
                       {"active", labelled(act.active_sets[i])}});
  }
  json sources = json::array();
  for (const auto& [m, u] : act.max_interval) {
    sources.push_back({{"source", m},
                       {"label", source_label(m)},
                       {"max_interval", u},
                       {"regions", act.served.at(m)}});
  }
  return {{"objective", act.objective},
          {"certified", act.certified},
          {"nodes", act.nodes},
          {"regions", regions},
          {"sources", sources}};
}

json to_json(const CollaborationGraph& g) {
  json comps = json::array();
  for (const auto& c : g.components) comps.push_back(labelled(c));
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({source_label(a), source_label(b)});
  return {{"vertices", labelled(g.vertices)}, {"edges", edges}, {"components", comps}};
}

json to_json(const GroupingPlan& plan) {
  json groups = json::array();
  for (const Group& g : plan.groups) {
    json intervals = json::object();
    for (const auto& [m, c] : g.intervals) intervals[source_label(m)] = c;
    groups.push_back({{"base", g.base}, {"members", labelled(g.members)}, {"intervals", intervals}});
  }
  return {{"bases", plan.bases}, {"objective", plan.objective}, {"groups", groups}};
}

json to_json(const OffsetSolution& sol) {
  json offsets = json::object();
  for (const auto& [m, o] : sol.offsets) offsets[source_label(m)] = o;
  return {{"offsets", offsets}, {"K", sol.channels}, {"certified", sol.certified}, {"nodes", sol.nodes}};
}

json to_json(const AoITrace& trace) {
  json regions = json::array();
  for (std::size_t n = 0; n < trace.ages.size(); ++n) {
    regions.push_back({{"region", n + 1}, {"max_age", trace.max_age(static_cast<RegionId>(n + 1))}});
  }
  json violations = json::array();
  for (const auto& v : trace.violations) {
    violations.push_back({{"region", v.region}, {"slot", v.slot}, {"age", v.age}});
  }
  return {{"horizon", trace.horizon},
          {"feasible", trace.feasible()},
          {"regions", regions},
          {"violations", violations}};
}

json to_json(const SolveReport& r) {
  json offsets = json::object();
  for (const auto& [m, o] : r.offsets) offsets[source_label(m)] = o;
  return {{"activation", to_json(r.activation)},
          {"graph", to_json(r.graph)},
          {"grouping", to_json(r.grouping)},
          {"offsets", offsets},
          {"schedule", to_json(r.schedule).at("schedule")},
          {"K", r.channels},
          {"lower_bound", to_json(r.lower_bound)},
          {"trace", {{"horizon", r.trace.horizon},
                     {"max_age", r.trace.max_age},
                     {"violations", r.trace.violations}}},
          {"feasible", r.feasible},
          {"certified", r.certified}};
}

json to_json(const Topology& topo) {
  json orient = json::array();
  for (Orientation o : topo.orientation) orient.push_back(std::string(to_string(o)));
  return {{"width", topo.width},
          {"height", topo.height},
          {"coverage", topo.coverage},
          {"shape", std::string(to_string(topo.shape))},
          {"orientation", orient},
          {"deadlines", topo.deadlines}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace scpa
