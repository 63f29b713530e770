#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ppc/ca/circuits.hpp"

namespace ppc::ca {

using nlohmann::json;

inline json rect_json(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

inline Rect rect_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidArgument("rectangle must be [x,y,w,h]");
  return Rect{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

// Scene file. Walls are written as maximal horizontal runs of frozen cells.
inline json scene_to_json(const ChannelScene& s) {
  const Lattice& l = s.lattice;
  json walls = json::array();
  for (int y = 0; y < l.height(); ++y)
    for (int x = 0; x < l.width();) {
      if (!l.frozen(x, y)) {
        ++x;
        continue;
      }
      int x0 = x;
      while (x < l.width() && l.frozen(x, y)) ++x;
      walls.push_back(rect_json(Rect{x0, y, x - x0, 1}));
    }
  json seeds = json::array();
  std::vector<std::vector<bool>> seeded(static_cast<std::size_t>(l.height()),
                                        std::vector<bool>(static_cast<std::size_t>(l.width())));
  for (const auto& sd : s.seeds) {
    json cells = json::array();
    for (auto c : sd.cells) {
      cells.push_back({c.x, c.y});
      seeded[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = true;
    }
    seeds.push_back({{"cells", cells}});
  }
  // live cells that belong to no recorded seed
  json loose = json::array();
  for (int y = 0; y < l.height(); ++y)
    for (int x = 0; x < l.width(); ++x)
      if (l.alive(x, y) && !l.frozen(x, y) &&
          !seeded[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)])
        loose.push_back({x, y});
  if (!loose.empty()) seeds.push_back({{"cells", loose}});
  json probes = json::object();
  for (const auto& [name, p] : s.probes) probes[name] = rect_json(p.area);
  return json{{"width", l.width()}, {"height", l.height()}, {"walls", walls},
              {"seeds", seeds},     {"probes", probes}};
}

inline ChannelScene scene_from_json(const json& j) {
  try {
    ChannelScene s;
    s.lattice = Lattice(j.at("width").get<int>(), j.at("height").get<int>());
    for (const auto& w : j.value("walls", json::array())) {
      Rect r = rect_from_json(w);
      if (!s.lattice.in_bounds(r)) throw InvalidArgument("wall outside the lattice");
      s.lattice.add_wall(r);
    }
    for (const auto& sd : j.value("seeds", json::array())) {
      Seed seed;
      for (const auto& c : sd.at("cells")) {
        Cell cell{c.at(0).get<int>(), c.at(1).get<int>()};
        if (s.lattice.frozen(cell.x, cell.y)) throw InvalidArgument("seed cell inside a wall");
        s.lattice.set(cell.x, cell.y, true);
        seed.cells.push_back(cell);
      }
      s.seeds.push_back(std::move(seed));
    }
    const json probes = j.value("probes", json::object());
    for (const auto& [name, r] : probes.items()) {
      Rect area = rect_from_json(r);
      if (!s.lattice.in_bounds(area)) throw InvalidArgument("probe '" + name + "' outside the lattice");
      s.probes[name] = Probe{area, infer_probe_axis(s.lattice, area)};
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad scene file: ") + e.what());
  }
}

inline ChannelScene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open scene file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("bad scene file '" + path + "': " + e.what());
  }
  return scene_from_json(j);
}

// '.' dead, '#' alive, '%' wall; one text row per lattice row.
inline std::string frame_ascii(const Lattice& l) {
  std::string out;
  out.reserve(static_cast<std::size_t>((l.width() + 1) * l.height()));
  for (int y = 0; y < l.height(); ++y) {
    for (int x = 0; x < l.width(); ++x) out += l.frozen(x, y) ? '%' : l.alive(x, y) ? '#' : '.';
    out += '\n';
  }
  return out;
}

// Binary greymap: dead 0, alive 255, wall 128.
inline std::string frame_pgm(const Lattice& l) {
  std::string out = "P5\n" + std::to_string(l.width()) + " " + std::to_string(l.height()) + "\n255\n";
  for (int y = 0; y < l.height(); ++y)
    for (int x = 0; x < l.width(); ++x)
      out += static_cast<char>(l.frozen(x, y) ? 128 : l.alive(x, y) ? 255 : 0);
  return out;
}

inline json gate_config_to_json(const GateConfig& c) {
  return json{{"width", c.width},
              {"offset", c.offset},
              {"arm_north", c.arm_north},
              {"arm_west", c.arm_west},
              {"arm_south", c.arm_south},
              {"out_length", c.out_length},
              {"probe_distance", c.probe_distance},
              {"probe_depth", c.probe_depth},
              {"junction", to_string(c.junction)},
              {"shape", to_string(c.shape)},
              {"seed_depth", c.seed_depth},
              {"settle_window", c.settle_window},
              {"step_budget", c.step_budget}};
}

inline GateConfig gate_config_from_json(const json& j) {
  try {
    GateConfig c;
    c.width = j.at("width").get<int>();
    c.offset = j.at("offset").get<int>();
    c.arm_north = j.at("arm_north").get<int>();
    c.arm_west = j.at("arm_west").get<int>();
    c.arm_south = j.at("arm_south").get<int>();
    c.out_length = j.value("out_length", c.out_length);
    c.probe_distance = j.value("probe_distance", c.probe_distance);
    c.probe_depth = j.value("probe_depth", c.probe_depth);
    std::string junction = j.value("junction", std::string("cross"));
    if (junction != "cross" && junction != "tee") throw InvalidArgument("unknown junction '" + junction + "'");
    c.junction = junction == "cross" ? Junction::Cross : Junction::Tee;
    auto shape = particle_shape_from_string(j.value("shape", std::string("axial-pair")));
    if (!shape) throw InvalidArgument("unknown particle shape");
    c.shape = *shape;
    c.seed_depth = j.value("seed_depth", c.seed_depth);
    c.settle_window = j.value("settle_window", c.settle_window);
    c.step_budget = j.value("step_budget", c.step_budget);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad gate config: ") + e.what());
  }
}

inline json calibration_to_json(const CalibrationReport& r) {
  json outcomes = json::array();
  for (const auto& o : r.outcomes) {
    json rows = json::array();
    for (const auto& row : o.rows) {
      json jr{{"inputs", row.inputs}, {"expected", row.expected}, {"ok", row.ok()}};
      jr["observed"] = row.observed ? json(*row.observed) : json(nullptr);
      if (!row.error.empty()) jr["error"] = row.error;
      rows.push_back(jr);
    }
    outcomes.push_back({{"config", gate_config_to_json(o.config)}, {"correct", o.correct()}, {"rows", rows}});
  }
  json j{{"configs_tried", r.outcomes.size()}, {"outcomes", outcomes}};
  j["found"] = r.found ? gate_config_to_json(*r.found) : json(nullptr);
  int best = 0;
  for (const auto& o : r.outcomes) best = std::max(best, o.correct());
  j["best_correct"] = best;
  return j;
}

}  // namespace ppc::ca
