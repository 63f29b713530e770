#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ppc/cubelets/assembly.hpp"
#include "ppc/cubelets/corpus.hpp"

namespace ppc::cubelets {

using Stimulus = std::map<Vec3, int>;

// Replaces a cube's transfer with: x > cutoff -> 0, else 255.
struct CubeProgram {
  int cutoff = 127;
};
using Programs = std::map<Vec3, CubeProgram>;

struct Contribution {
  Vec3 source;  // a flashlight
  int weight;   // numerator over 255
};

struct LightProfile {
  std::string name;
  std::map<Vec3, std::vector<Contribution>> sensors;  // br position -> sources
  int threshold = 128;
};

struct CubeState {
  CubeKind kind = CubeKind::di;
  bool powered = false;
  int value = 0;
  int light = 0;
  int sensed = 0;
  friend bool operator==(const CubeState&, const CubeState&) = default;
};

struct SimState {
  std::map<Vec3, CubeState> cubes;
  int sweeps = 0;

  const CubeState& at(const Vec3& p) const {
    auto it = cubes.find(p);
    if (it == cubes.end()) throw InvalidArgument("no cube at " + to_string(p));
    return it->second;
  }
};

class DivergenceError : public Error {
 public:
  DivergenceError(int sweeps, std::vector<Vec3> cubes)
      : Error(message(sweeps, cubes)), cubes_(std::move(cubes)) {}
  const std::vector<Vec3>& cubes() const noexcept { return cubes_; }

 private:
  static std::string message(int sweeps, const std::vector<Vec3>& cubes) {
    std::string m = "no fixed point after " + std::to_string(sweeps) + " sweeps; oscillating:";
    for (const auto& p : cubes) m += " " + to_string(p);
    return m;
  }
  std::vector<Vec3> cubes_;
};

class UnsupportedKind : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMaxValue = 255;
inline constexpr int kDefaultSweepCap = 10000;

inline int saturate(long long v) { return static_cast<int>(std::clamp<long long>(v, 0, kMaxValue)); }

inline std::set<Vec3> power_propagate(const Assembly& a) {
  std::set<Vec3> powered;
  std::queue<Vec3> q;
  for (const auto& [p, c] : a.cubes())
    if (c.kind == CubeKind::ba) {
      powered.insert(p);
      q.push(p);
    }
  while (!q.empty()) {
    Vec3 p = q.front();
    q.pop();
    for (const auto& d : kFaceOffsets) {
      Vec3 n = p + d;
      if (a.contains(n) && powered.insert(n).second) q.push(n);
    }
  }
  return powered;
}

namespace detail {

inline bool simulated(CubeKind k) {
  switch (k) {
    case CubeKind::di:
    case CubeKind::br:
    case CubeKind::ba:
    case CubeKind::fl:
    case CubeKind::in:
    case CubeKind::bo:
    case CubeKind::pa:
      return true;
    default:
      return false;
  }
}

inline int threshold_invert(int x, const CubeProgram& p) { return x > p.cutoff ? 0 : kMaxValue; }

// Hop distance from the nearest sensor through powered, data-carrying
// cubes. A cube listens only to neighbours one hop closer.
inline std::map<Vec3, int> data_distances(const Assembly& a, const std::set<Vec3>& powered) {
  std::map<Vec3, int> dist;
  std::queue<Vec3> q;
  for (const auto& [p, c] : a.cubes())
    if (powered.count(p) && (c.kind == CubeKind::di || c.kind == CubeKind::br)) {
      dist[p] = 0;
      q.push(p);
    }
  while (!q.empty()) {
    Vec3 p = q.front();
    q.pop();
    for (const auto& d : kFaceOffsets) {
      Vec3 n = p + d;
      const Cube* c = a.find(n);
      if (!c || c->kind == CubeKind::bo || !powered.count(n) || dist.count(n)) continue;
      dist[n] = dist[p] + 1;
      q.push(n);
    }
  }
  return dist;
}

}  // namespace detail

inline SimState settle(const Assembly& a, const Stimulus& stimulus = {},
                       const Programs& programs = {},
                       const std::optional<LightProfile>& profile = std::nullopt,
                       int max_sweeps = kDefaultSweepCap) {
  for (const auto& [p, c] : a.cubes())
    if (!detail::simulated(c.kind)) {
      throw UnsupportedKind("cube " + std::string(code(c.kind)) + " at " + to_string(p) +
                            " has no simulated behaviour");
    }
  for (const auto& [p, v] : stimulus) {
    const Cube* c = a.find(p);
    if (!c || c->kind != CubeKind::di) {
      throw InvalidArgument("stimulus names " + to_string(p) + ", which is not a di cube");
    }
    if (v < 0 || v > kMaxValue) throw InvalidArgument("stimulus value out of 0..255");
  }
  for (const auto& [p, prog] : programs) {
    if (!a.contains(p)) throw InvalidArgument("program attached to empty cell " + to_string(p));
    if (prog.cutoff < 0 || prog.cutoff > kMaxValue) throw InvalidArgument("cutoff out of 0..255");
  }
  if (profile) {
    if (profile->threshold < 0 || profile->threshold > kMaxValue) {
      throw InvalidArgument("profile threshold out of 0..255");
    }
    for (const auto& [br, srcs] : profile->sensors) {
      const Cube* c = a.find(br);
      if (!c || c->kind != CubeKind::br) {
        throw InvalidArgument("profile sensor " + to_string(br) + " is not a br cube");
      }
      for (const auto& s : srcs) {
        const Cube* f = a.find(s.source);
        if (!f || f->kind != CubeKind::fl) {
          throw InvalidArgument("profile source " + to_string(s.source) + " is not a fl cube");
        }
        if (s.weight < 0) throw InvalidArgument("negative light weight");
      }
    }
  }
  if (max_sweeps < 1) throw InvalidArgument("sweep cap must be positive");

  auto powered = power_propagate(a);
  auto dist = detail::data_distances(a, powered);

  SimState st;
  for (const auto& [p, c] : a.cubes()) st.cubes[p] = CubeState{c.kind, powered.count(p) != 0};

  // Upstream neighbour lists, fixed for the whole settle.
  std::map<Vec3, std::vector<Vec3>> upstream;
  for (const auto& [p, d] : dist)
    for (const auto& off : kFaceOffsets) {
      auto it = dist.find(p + off);
      if (it != dist.end() && it->second == d - 1) upstream[p].push_back(p + off);
    }

  auto program_of = [&](const Vec3& p) -> const CubeProgram* {
    auto it = programs.find(p);
    return it == programs.end() ? nullptr : &it->second;
  };

  auto update = [&](const Vec3& p, CubeState& s) {
    if (!s.powered) return;
    const CubeProgram* prog = program_of(p);
    long long sum = 0;
    int max_in = 0;
    if (auto it = upstream.find(p); it != upstream.end())
      for (const auto& u : it->second) {
        int v = st.cubes.at(u).value;
        sum += v;
        max_in = std::max(max_in, v);
      }
    int in = saturate(sum);
    switch (s.kind) {
      case CubeKind::di: {
        auto it = stimulus.find(p);
        s.value = it == stimulus.end() ? 0 : it->second;
        break;
      }
      case CubeKind::br: {
        long long acc = 0;
        if (profile)
          if (auto it = profile->sensors.find(p); it != profile->sensors.end())
            for (const auto& c : it->second)
              acc += static_cast<long long>(c.weight) * st.cubes.at(c.source).light / kMaxValue;
        s.sensed = saturate(acc);
        if (prog)
          s.value = detail::threshold_invert(s.sensed, *prog);
        else if (profile)
          s.value = s.sensed >= profile->threshold ? kMaxValue : 0;
        else
          s.value = s.sensed;
        break;
      }
      case CubeKind::ba:
        s.value = prog ? detail::threshold_invert(max_in, *prog) : (max_in >= 128 ? kMaxValue : 0);
        break;
      case CubeKind::fl:
        s.light = prog ? detail::threshold_invert(in, *prog) : in;
        s.value = s.light * 7 / 10;
        break;
      case CubeKind::in:
        s.value = prog ? detail::threshold_invert(in, *prog) : kMaxValue - in;
        break;
      case CubeKind::pa:
        s.value = prog ? detail::threshold_invert(max_in, *prog) : max_in;
        break;
      case CubeKind::bo:
        s.value = 0;
        break;
      default:
        break;
    }
  };

  std::vector<Vec3> changed;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    changed.clear();
    for (auto& [p, s] : st.cubes) {
      CubeState before = s;
      update(p, s);
      if (!(before == s)) changed.push_back(p);
    }
    st.sweeps = sweep;
    if (changed.empty()) return st;
  }
  throw DivergenceError(max_sweeps, changed);
}

// 1 if the cube's reading exceeds the cutoff: light for fl, sensed for br,
// value otherwise.
inline bool read_binary(const SimState& s, const Vec3& p, int cutoff = 127) {
  const CubeState& c = s.at(p);
  int x = c.kind == CubeKind::fl ? c.light : c.kind == CubeKind::br ? c.sensed : c.value;
  return x > cutoff;
}

// Positions and profiles of the corpus gates.
namespace gate {

inline constexpr Vec3 kInA{4, 1, 0};
inline constexpr Vec3 kInB{1, 4, 0};
inline constexpr Vec3 kInC{4, 7, 0};
inline constexpr Vec3 kSensor{6, 4, 0};
inline constexpr Vec3 kMajLamp{7, 4, 0};   // first fl behind the sensor in w_MAJgateO
inline constexpr Vec3 kNotMajLamp{8, 4, 0};  // fl behind the inverse cube in w_NMAJgateO
inline constexpr int kMajThreshold = 78;

inline LightProfile maj_profile(int threshold = kMajThreshold) {
  LightProfile p{"maj-gate", {}, threshold};
  p.sensors[kSensor] = {{{4, 2, 0}, 47}, {{2, 4, 0}, 31}, {{4, 6, 0}, 47}};
  return p;
}

}  // namespace gate

namespace adder {

inline constexpr std::array<Vec3, 2> kInA{{{0, 3, 0}, {0, 8, 0}}};
inline constexpr std::array<Vec3, 2> kInB{{{3, 0, 0}, {3, 11, 0}}};
inline constexpr Vec3 kInCarry{3, 6, 0};
inline constexpr Vec3 kNm1{5, 8, 0};
inline constexpr Vec3 kNm2{6, 3, 0};
inline constexpr Vec3 kNm3{10, 5, 0};
inline constexpr Vec3 kCout{7, 8, 0};  // fl lit by the inverse cube after nm1
inline constexpr Vec3 kSum{12, 5, 0};
inline constexpr int kWeight = 85;
inline constexpr int kCutoff = 127;

inline LightProfile profile() {
  LightProfile p{"adder", {}, 128};
  p.sensors[kNm1] = {{{3, 7, 0}, kWeight}, {{2, 8, 0}, kWeight}, {{3, 9, 0}, kWeight}};
  p.sensors[kNm2] = {{{3, 2, 0}, kWeight}, {{2, 3, 0}, kWeight}, {{3, 4, 0}, kWeight}};
  p.sensors[kNm3] = {{{7, 3, 0}, kWeight}, {{4, 5, 0}, kWeight}, {{7, 8, 0}, kWeight}};
  return p;
}

inline Programs programs() {
  return {{kNm1, {kCutoff}}, {kNm2, {kCutoff}}, {kNm3, {kCutoff}}};
}

}  // namespace adder

inline std::optional<LightProfile> profile_by_name(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "maj-gate") return gate::maj_profile();
  if (name == "adder") return adder::profile();
  throw InvalidArgument("unknown profile '" + name + "'");
}

inline Programs programs_for(const std::string& profile_name) {
  return profile_name == "adder" ? adder::programs() : Programs{};
}

inline int level(bool bit) { return bit ? kMaxValue : 0; }

inline Stimulus maj_stimulus(bool a, bool b, bool c) {
  return {{gate::kInA, level(a)}, {gate::kInB, level(b)}, {gate::kInC, level(c)}};
}

inline int maj_sensed_cubelets(bool a, bool b, bool c) {
  static const Assembly maj = corpus::majority_gate();
  return settle(maj, maj_stimulus(a, b, c), {}, gate::maj_profile()).at(gate::kSensor).sensed;
}

inline bool eval_maj_cubelets(bool a, bool b, bool c, int threshold = gate::kMajThreshold) {
  return maj_sensed_cubelets(a, b, c) >= threshold;
}

enum class NotMajVariant { InverseCube, Programmed };

inline bool eval_not_maj_cubelets(bool a, bool b, bool c,
                                  NotMajVariant v = NotMajVariant::InverseCube,
                                  int threshold = gate::kMajThreshold) {
  if (v == NotMajVariant::InverseCube) {
    static const Assembly nmaj = corpus::not_majority_gate();
    auto s = settle(nmaj, maj_stimulus(a, b, c), {}, gate::maj_profile(threshold));
    return read_binary(s, gate::kNotMajLamp);
  }
  static const Assembly maj = corpus::majority_gate();
  Programs prog{{gate::kSensor, {threshold - 1}}};
  auto s = settle(maj, maj_stimulus(a, b, c), prog, gate::maj_profile(threshold));
  return read_binary(s, gate::kMajLamp);
}

inline bool eval_and_cubelets(bool a, bool b) { return eval_maj_cubelets(a, b, false); }
inline bool eval_or_cubelets(bool a, bool b) { return eval_maj_cubelets(a, b, true); }

struct AdderOutputs {
  bool nm1 = false, nm2 = false, nm3 = false, cout = false, sum = false;
  friend bool operator==(const AdderOutputs&, const AdderOutputs&) = default;
};

inline Stimulus adder_stimulus(bool a, bool b, bool cin) {
  Stimulus s;
  for (const auto& p : adder::kInA) s[p] = level(a);
  for (const auto& p : adder::kInB) s[p] = level(b);
  s[adder::kInCarry] = level(cin);
  return s;
}

inline AdderOutputs eval_adder_cubelets(bool a, bool b, bool cin) {
  static const Assembly ba = corpus::load(corpus::w_BA);
  auto s = settle(ba, adder_stimulus(a, b, cin), adder::programs(), adder::profile());
  auto bit = [&](const Vec3& p) { return s.at(p).value > adder::kCutoff; };
  return {bit(adder::kNm1), bit(adder::kNm2), bit(adder::kNm3), read_binary(s, adder::kCout),
          read_binary(s, adder::kSum)};
}

}  // namespace ppc::cubelets
