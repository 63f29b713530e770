#pragma once

#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "ppc/cubelets/sim.hpp"
#include "ppc/sleptsov/explore.hpp"

namespace ppc::harness {

using nlohmann::json;

inline json pos_json(const cubelets::Vec3& p) { return json::array({p.x, p.y, p.z}); }

inline std::string pos_key(const cubelets::Vec3& p) {
  return std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z);
}

// "x,y,z" -> value
inline cubelets::Stimulus stimulus_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("stimulus must be an object of \"x,y,z\": value");
  cubelets::Stimulus s;
  for (const auto& [key, v] : j.items()) {
    cubelets::Vec3 p;
    char c1 = 0, c2 = 0;
    std::istringstream in(key);
    if (!(in >> p.x >> c1 >> p.y >> c2 >> p.z) || c1 != ',' || c2 != ',' || !in.eof()) {
      throw InvalidArgument("bad stimulus key '" + key + "'");
    }
    if (!v.is_number_integer()) throw InvalidArgument("stimulus value for '" + key + "' is not an integer");
    s[p] = v.get<int>();
  }
  return s;
}

inline json expr_json(const cubelets::Expr& e) {
  using namespace cubelets;
  json j = std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermNode>) {
          json t{{"node", "term"}, {"kind", std::string(code(n.kind))}};
          if (n.pos) t["pos"] = pos_json(*n.pos);
          if (n.orient) t["orient"] = to_string(*n.orient);
          return t;
        } else if constexpr (std::is_same_v<T, BlankNode>) {
          return json{{"node", "blank"}, {"count", n.count}};
        } else if constexpr (std::is_same_v<T, ConcatNode>) {
          json items = json::array();
          for (const auto& i : n.items) items.push_back(expr_json(*i));
          return json{{"node", "concat"}, {"items", items}};
        } else if constexpr (std::is_same_v<T, GroupNode>) {
          return json{{"node", "group"}, {"inner", expr_json(*n.inner)}};
        } else {
          return json{{"node", "star"}, {"count", n.count}, {"shift", pos_json(n.shift)},
                      {"body", expr_json(*n.body)}};
        }
      },
      e.node);
  j["line"] = e.loc.line;
  j["column"] = e.loc.column;
  return j;
}

inline json parse_report(const cubelets::RobotExpr& e) {
  return json{{"name", e.name}, {"terms", cubelets::term_count(*e.root)}, {"ast", expr_json(*e.root)}};
}

inline json validation_report(const std::string& name, const cubelets::ValidationReport& v) {
  json bad = json::array(), col = json::array(), unp = json::array();
  for (const auto& p : v.bad_orientations) bad.push_back(pos_json(p));
  for (const auto& p : v.collisions) col.push_back(pos_json(p));
  for (const auto& p : v.unpowered_components) unp.push_back(pos_json(p));
  return json{{"name", name},
              {"connected", v.connected},
              {"components", v.components},
              {"battery_count", v.battery_count},
              {"orientation_ok", v.orientation_ok},
              {"bad_orientations", bad},
              {"collisions", col},
              {"components_without_battery", unp},
              {"functional", v.functional}};
}

inline json census_report(const std::string& name, const cubelets::Census& c) {
  json counts = json::object();
  for (const auto& [k, n] : c.counts) counts[std::string(cubelets::code(k))] = n;
  return json{{"name", name}, {"mass", c.mass}, {"volume", c.volume}, {"counts", counts}};
}

inline json simulation_report(const std::string& name, const std::string& profile,
                              const cubelets::Stimulus& stim, const cubelets::SimState& s) {
  json inputs = json::object();
  for (const auto& [p, v] : stim) inputs[pos_key(p)] = v;
  json cubes = json::array();
  json binary = json::object();
  for (const auto& [p, c] : s.cubes) {
    cubes.push_back({{"pos", pos_json(p)},
                     {"kind", std::string(cubelets::code(c.kind))},
                     {"powered", c.powered},
                     {"value", c.value},
                     {"light", c.light},
                     {"sensed", c.sensed}});
    if (c.kind == cubelets::CubeKind::fl) {
      binary[pos_key(p)] = cubelets::read_binary(s, p) ? 1 : 0;
    }
  }
  return json{{"name", name},   {"profile", profile}, {"inputs", inputs},
              {"sweeps", s.sweeps}, {"cubes", cubes},  {"binary", binary}};
}

inline json marking_json(const sleptsov::SleptsovNet& net, const sleptsov::Marking& m) {
  json j = json::object();
  for (std::size_t p = 0; p < m.size(); ++p)
    if (m[p]) j[net.places()[p]] = m[p];
  return j;
}

inline json trace_report(const sleptsov::SleptsovNet& net, const sleptsov::Trace& t) {
  json steps = json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& f = t.steps[i];
    steps.push_back({{"step", i + 1},
                     {"transition", net.transitions()[f.transition].name},
                     {"k", f.k},
                     {"marking", marking_json(net, f.after)}});
  }
  return json{{"status", std::string(sleptsov::to_string(t.status))},
              {"initial", marking_json(net, t.initial)},
              {"steps", steps},
              {"final", marking_json(net, t.final_marking())}};
}

inline json explore_report(const sleptsov::SleptsovNet& net, const sleptsov::ReachabilityGraph& g) {
  json seqs = json::array();
  for (const auto& s : g.maximal_sequences) {
    json names = json::array();
    for (auto t : s) names.push_back(net.transitions()[t].name);
    seqs.push_back(names);
  }
  json deadlocks = json::array();
  for (auto d : g.deadlocks) deadlocks.push_back(marking_json(net, g.markings[d]));
  return json{{"states", g.markings.size()},
              {"edges", g.edges.size()},
              {"deadlocks", deadlocks},
              {"maximal_sequence_count", g.maximal_count},
              {"unique_maximal_sequence", g.unique_maximal_sequence()},
              {"partial", g.partial},
              {"depth_limited", g.depth_limited},
              {"sequences_truncated", g.sequences_truncated},
              {"maximal_sequences", seqs}};
}

}  // namespace ppc::harness
