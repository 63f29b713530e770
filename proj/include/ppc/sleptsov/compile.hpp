#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppc/cubelets/sim.hpp"
#include "ppc/sleptsov/models.hpp"

namespace ppc::sleptsov {

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

struct CompiledNet {
  NetWithMarking net;
  // sensor cube -> place holding its real-world value
  std::map<cubelets::Vec3, std::string> inputs;
  std::vector<std::string> outputs;  // light (or final data) places
};

namespace detail {

using cubelets::CubeKind;
using cubelets::Vec3;

inline std::string kind_title(CubeKind k) {
  std::string s(cubelets::code(k));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

inline bool is_line_kind(CubeKind k) {
  return k == CubeKind::di || k == CubeKind::br || k == CubeKind::ba || k == CubeKind::fl ||
         k == CubeKind::in || k == CubeKind::pa;
}

// Cubes of a straight, gap-free line ordered from the sensor end.
inline std::vector<cubelets::Cube> line_order(const cubelets::Assembly& a) {
  std::vector<cubelets::Cube> cubes;
  for (const auto& [p, c] : a.cubes()) cubes.push_back(c);
  auto vol = a.volume();
  int long_axis = -1;
  for (int ax = 0; ax < 3; ++ax)
    if (vol[static_cast<std::size_t>(ax)] > 1) {
      if (long_axis >= 0) throw UnsupportedShape("cubes do not form a straight line");
      long_axis = ax;
    }
  auto coord = [](const Vec3& v, int ax) { return ax == 0 ? v.x : ax == 1 ? v.y : v.z; };
  if (long_axis < 0) long_axis = 0;
  if (static_cast<int>(cubes.size()) != vol[static_cast<std::size_t>(long_axis)]) {
    throw UnsupportedShape("line has gaps");
  }
  std::sort(cubes.begin(), cubes.end(), [&](const auto& x, const auto& y) {
    return coord(x.pos, long_axis) < coord(y.pos, long_axis);
  });
  auto is_sensor = [](CubeKind k) { return k == CubeKind::di || k == CubeKind::br; };
  if (!is_sensor(cubes.front().kind)) std::reverse(cubes.begin(), cubes.end());
  if (!is_sensor(cubes.front().kind)) throw UnsupportedShape("line must start with di or br");
  for (std::size_t i = 1; i < cubes.size(); ++i)
    if (is_sensor(cubes[i].kind)) throw UnsupportedShape("line has more than one sensor");
  return cubes;
}

inline CompiledNet compile_line(const cubelets::Assembly& a) {
  auto cubes = line_order(a);
  std::vector<cubelets::Cube> elems;
  std::size_t batteries = 0;
  for (std::size_t i = 1; i < cubes.size(); ++i) {
    if (cubes[i].kind == CubeKind::ba)
      ++batteries;
    else
      elems.push_back(cubes[i]);
  }
  if (batteries == 0) throw UnsupportedShape("line has no battery");
  std::size_t lights = 0;
  for (const auto& e : elems) lights += e.kind == CubeKind::fl;

  NetBuilder b;
  ControlChain chain(b, 2 + elems.size());
  CompiledNet out;
  const auto& sensor = cubes.front();
  std::string real = "real" + kind_title(sensor.kind);
  b.place(real);
  out.inputs[sensor.pos] = real;

  auto link = [](std::size_t j) { return j == 0 ? std::string("input") : "input_" + std::to_string(j + 1); };
  auto numbered = [](const std::string& base, std::size_t j, bool single) {
    return single ? base : base + "_" + std::to_string(j);
  };

  // stage 0: clear every light
  std::vector<std::string> light_places;
  for (std::size_t j = 0, f = 0; j < elems.size(); ++j)
    if (elems[j].kind == CubeKind::fl) light_places.push_back(numbered("light", ++f, lights == 1));
  for (std::size_t i = 0; i < light_places.size(); ++i) {
    std::string t = numbered("clean", i + 1, lights == 1);
    b.place(light_places[i]);
    b.transition(t);
    b.in(light_places[i], t);
    chain.gate(t, 0);
    chain.finish_when_below(0, light_places[i]);
  }

  // stage 1: sensor
  add_staged_sensor(b, chain, 1, std::string(cubelets::code(sensor.kind)), real, {link(0)});

  std::size_t fl_seen = 0;
  for (std::size_t j = 0; j < elems.size(); ++j) {
    std::size_t stage = 2 + j;
    const std::string in = link(j);
    const std::string next = link(j + 1);
    bool last = j + 1 == elems.size();
    std::string sfx = elems.size() == 1 ? "" : "_" + std::to_string(j + 1);
    switch (elems[j].kind) {
      case CubeKind::fl: {
        ++fl_seen;
        std::string light = numbered("light", fl_seen, lights == 1);
        std::string t = numbered("fl", fl_seen, lights == 1);
        if (last) {
          add_last_flashlight(b, t, in, light);
          chain.gate(t, stage);
        } else {
          std::string rem = numbered("clean-reminder", fl_seen, lights == 1);
          add_flashlight(b, t, rem, in, light, next, 1, 1);
          chain.gate(t, stage);
          chain.gate(rem, stage);
        }
        chain.finish_when_below(stage, in);
        break;
      }
      case CubeKind::in:
        add_staged_inverter(b, chain, stage, sfx, in, {next});
        break;
      case CubeKind::pa:
        add_passive(b, "pa" + sfx, in, next);
        chain.gate("pa" + sfx, stage);
        chain.finish_when_below(stage, in);
        break;
      default:
        throw UnsupportedShape("unsupported cube in line");
    }
    if (last && elems[j].kind != CubeKind::fl) out.outputs.push_back(next);
  }
  for (const auto& l : light_places) out.outputs.insert(out.outputs.begin(), l);
  out.net = b.take();
  return out;
}

// Walks from a flashlight back to the distance sensor that drives it.
inline Vec3 feeding_sensor(const cubelets::Assembly& a, const std::map<Vec3, int>& dist, Vec3 p) {
  auto it = dist.find(p);
  if (it == dist.end()) throw UnsupportedShape("light source " + cubelets::to_string(p) + " is not driven");
  while (it->second > 0) {
    bool moved = false;
    for (const auto& off : cubelets::kFaceOffsets) {
      auto up = dist.find(p + off);
      if (up != dist.end() && up->second == it->second - 1) {
        p = p + off;
        it = up;
        moved = true;
        break;
      }
    }
    if (!moved) throw UnsupportedShape("broken data path");
  }
  if (a.at(p).kind != CubeKind::di) throw UnsupportedShape("light branch does not start at di");
  return p;
}

inline CompiledNet compile_light_gate(const cubelets::Assembly& a,
                                      const cubelets::LightProfile& profile) {
  if (profile.sensors.size() != 1) {
    throw UnsupportedShape("planar gate compile handles exactly one brightness sensor");
  }
  const auto& [sensor, sources] = *profile.sensors.begin();
  if (!a.contains(sensor)) throw UnsupportedShape("profile sensor missing from assembly");
  auto powered = cubelets::power_propagate(a);
  auto dist = cubelets::detail::data_distances(a, powered);
  std::vector<LightBranch> branches;
  CompiledNet out;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::string label(1, static_cast<char>('A' + i));
    Vec3 di = feeding_sensor(a, dist, sources[i].source);
    if (out.inputs.count(di)) throw UnsupportedShape("two branches share one sensor");
    out.inputs[di] = "real" + label;
    branches.push_back({label, sources[i].weight});
  }
  out.net = build_light_gate_net(branches, "lightD2");
  out.outputs = {"lightD2"};
  return out;
}

}  // namespace detail

// Lines of {di, br, ba, fl, in, pa} and planar light gates (given a profile
// naming the brightness sensor and its sources).
inline CompiledNet compile(const cubelets::Assembly& a,
                           const std::optional<cubelets::LightProfile>& profile = std::nullopt) {
  if (a.empty()) throw UnsupportedShape("empty assembly");
  for (const auto& [p, c] : a.cubes())
    if (!detail::is_line_kind(c.kind)) {
      throw UnsupportedShape("cube " + std::string(cubelets::code(c.kind)) + " at " +
                             cubelets::to_string(p) + " has no net template");
    }
  if (profile && !profile->sensors.empty()) return detail::compile_light_gate(a, *profile);
  return detail::compile_line(a);
}

// Loads stimulus values into the compiled sensor places.
inline void apply_stimulus(CompiledNet& c, const cubelets::Stimulus& s) {
  for (const auto& [p, v] : s) {
    auto it = c.inputs.find(p);
    if (it == c.inputs.end()) {
      throw InvalidArgument("stimulus names " + cubelets::to_string(p) + ", which is not a compiled sensor");
    }
    check_level(v);
    c.net.set(it->second, v);
  }
}

}  // namespace ppc::sleptsov
