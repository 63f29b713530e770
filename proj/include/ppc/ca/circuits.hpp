#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppc/ca/engine.hpp"
#include "ppc/ca/lattice.hpp"
#include "ppc/ca/rule.hpp"
#include "ppc/error.hpp"

namespace ppc::ca {

// Direction in which a signal travels along a channel.
enum class Heading { East, West, North, South };

inline Axis axis_of(Heading h) {
  return (h == Heading::East || h == Heading::West) ? Axis::Horizontal : Axis::Vertical;
}

// Straight walled corridor. `interior` is the wall-free area; the channel
// runs along `heading`, so its transverse extent is the interior height for
// horizontal channels and the interior width for vertical ones.
struct Channel {
  std::string id;
  Rect interior;
  Heading heading = Heading::East;

  int length() const { return axis_of(heading) == Axis::Horizontal ? interior.w : interior.h; }
  int width() const { return axis_of(heading) == Axis::Horizontal ? interior.h : interior.w; }
};

struct Seed {
  std::string channel;
  int bit = 0;
  std::vector<Cell> cells;
};

// Output window; classification reflects its contents about the midline
// running along `axis`.
struct Probe {
  Rect area;
  Axis axis = Axis::Horizontal;
};

struct ChannelScene {
  Lattice lattice;
  std::vector<Channel> channels;
  std::vector<Seed> seeds;
  std::map<std::string, Probe> probes;

  const Channel& channel(const std::string& id) const {
    for (const auto& c : channels)
      if (c.id == id) return c;
    throw InvalidArgument("unknown channel '" + id + "'");
  }
};

enum class PatternClass { None, Zero, One };

inline const char* to_string(PatternClass c) {
  switch (c) {
    case PatternClass::None: return "none";
    case PatternClass::Zero: return "zero";
    case PatternClass::One: return "one";
  }
  return "?";
}

// Two-cell seeds, described in the channel frame: `along` grows with the
// heading, `across` grows towards the left-hand wall.
enum class ParticleShape {
  AxialPair,         // two single cells one empty cell apart along the channel
  AxialDomino,       // two adjacent cells along the channel
  TransverseDomino,  // two adjacent cells across the channel
  TransversePair,    // two single cells one empty cell apart across the channel
};

inline const char* to_string(ParticleShape s) {
  switch (s) {
    case ParticleShape::AxialPair: return "axial-pair";
    case ParticleShape::AxialDomino: return "axial-domino";
    case ParticleShape::TransverseDomino: return "transverse-domino";
    case ParticleShape::TransversePair: return "transverse-pair";
  }
  return "?";
}

inline std::optional<ParticleShape> particle_shape_from_string(const std::string& s) {
  for (auto p : {ParticleShape::AxialPair, ParticleShape::AxialDomino,
                 ParticleShape::TransverseDomino, ParticleShape::TransversePair})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

struct LocalCell {
  int along = 0;
  int across = 0;
};

inline std::vector<LocalCell> shape_cells(ParticleShape s) {
  switch (s) {
    case ParticleShape::AxialPair: return {{0, 0}, {2, 0}};
    case ParticleShape::AxialDomino: return {{0, 0}, {1, 0}};
    case ParticleShape::TransverseDomino: return {{0, 0}, {0, 1}};
    case ParticleShape::TransversePair: return {{0, 0}, {0, 2}};
  }
  return {};
}

// Transverse extent of a shape minus one; a shape can be centred exactly in
// a channel of width w iff (w - 1 - span) is even.
inline int shape_span(ParticleShape s) {
  int lo = 0, hi = 0;
  for (auto c : shape_cells(s)) {
    lo = std::min(lo, c.across);
    hi = std::max(hi, c.across);
  }
  return hi - lo;
}

struct SignalEncoding {
  ParticleShape shape = ParticleShape::AxialPair;
  int offset = 1;  // transverse shift, towards the left-hand wall, for bit 1
  int depth = 2;   // distance of the seed from the channel's upstream end
};

// Maps a channel-frame cell to lattice coordinates. across = 0 is the
// right-hand wall side of the interior.
inline Cell to_lattice(const Channel& ch, LocalCell lc) {
  const Rect& r = ch.interior;
  switch (ch.heading) {
    case Heading::East: return {r.x + lc.along, r.y + r.h - 1 - lc.across};
    case Heading::West: return {r.x + r.w - 1 - lc.along, r.y + lc.across};
    case Heading::South: return {r.x + lc.across, r.y + lc.along};
    case Heading::North: return {r.x + r.w - 1 - lc.across, r.y + r.h - 1 - lc.along};
  }
  return {};
}

inline std::vector<Cell> signal_cells(const Channel& ch, int bit, const SignalEncoding& enc) {
  if (bit != 0 && bit != 1) throw InvalidArgument("bit must be 0 or 1");
  if (enc.offset < 1) throw InvalidArgument("bit-1 offset must be at least 1");
  const int width = ch.width();
  const int span = shape_span(enc.shape);
  if ((width - 1 - span) % 2 != 0) {
    throw InvalidArgument(std::string("shape ") + to_string(enc.shape) +
                          " cannot be centred in a channel of width " + std::to_string(width));
  }
  const int base = (width - 1 - span) / 2 + (bit ? enc.offset : 0);
  std::vector<Cell> out;
  for (auto lc : shape_cells(enc.shape)) {
    LocalCell placed{enc.depth + lc.along, base + lc.across};
    if (placed.across < 0 || placed.across >= width || placed.along < 0 ||
        placed.along >= ch.length()) {
      throw InvalidArgument("seed does not fit inside channel '" + ch.id + "'");
    }
    out.push_back(to_lattice(ch, placed));
  }
  return out;
}

// Straight horizontal channel with one-cell frozen walls above and below and
// open ends. Interior is rows 1..width.
inline ChannelScene build_channel(int length, int width) {
  if (length < 10) throw InvalidArgument("channel length must be at least 10");
  if (width < 3) throw InvalidArgument("channel width must be at least 3");
  ChannelScene scene;
  scene.lattice = Lattice(length, width + 2);
  scene.lattice.add_wall(Rect{0, 0, length, 1});
  scene.lattice.add_wall(Rect{0, width + 1, length, 1});
  scene.channels.push_back(Channel{"main", Rect{0, 1, length, width}, Heading::East});
  return scene;
}

inline ChannelScene place_signal(ChannelScene scene, const std::string& channel, int bit,
                                 const SignalEncoding& enc = {}) {
  const Channel& ch = scene.channel(channel);
  auto cells = signal_cells(ch, bit, enc);
  // The whole bounding box of the seed must be free.
  for (const auto& seed : scene.seeds) {
    if (seed.channel != channel) continue;
    for (auto a : seed.cells)
      for (auto b : cells)
        if (std::abs(a.x - b.x) <= 2 && std::abs(a.y - b.y) <= 2) {
          throw InvalidArgument("seed region in channel '" + channel + "' is occupied");
        }
  }
  for (auto c : cells) {
    if (scene.lattice.alive(c.x, c.y)) {
      throw InvalidArgument("seed region in channel '" + channel + "' is occupied");
    }
  }
  for (auto c : cells) scene.lattice.set(c.x, c.y, true);
  scene.seeds.push_back(Seed{channel, bit, std::move(cells)});
  return scene;
}

// Probe spanning the full channel width, `distance` cells downstream of the
// channel's upstream end and `depth` cells long.
inline Probe probe_across(const Channel& ch, int distance, int depth) {
  if (distance < 0 || depth < 1 || distance + depth > ch.length()) {
    throw InvalidArgument("probe does not fit inside channel '" + ch.id + "'");
  }
  Cell a = to_lattice(ch, {distance, 0});
  Cell b = to_lattice(ch, {distance + depth - 1, ch.width() - 1});
  Rect r{std::min(a.x, b.x), std::min(a.y, b.y), std::abs(a.x - b.x) + 1, std::abs(a.y - b.y) + 1};
  return Probe{r, axis_of(ch.heading)};
}

// None when the window is empty; Zero when its live cells are mirror
// symmetric about the channel midline; One otherwise.
inline PatternClass classify_output(const Lattice& lattice, const Probe& probe) {
  const Rect& r = probe.area;
  if (!lattice.in_bounds(r)) throw InvalidArgument("probe lies outside the lattice");
  bool any = false;
  bool symmetric = true;
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x) {
      bool v = lattice.alive(x, y) && !lattice.frozen(x, y);
      any = any || v;
      int mx = probe.axis == Axis::Vertical ? r.x + r.w - 1 - (x - r.x) : x;
      int my = probe.axis == Axis::Horizontal ? r.y + r.h - 1 - (y - r.y) : y;
      bool m = lattice.alive(mx, my) && !lattice.frozen(mx, my);
      symmetric = symmetric && (v == m);
    }
  if (!any) return PatternClass::None;
  return symmetric ? PatternClass::Zero : PatternClass::One;
}

// Infers the channel direction a probe sits in from the walls around it:
// frozen rows above and below mean a horizontal channel.
inline Axis infer_probe_axis(const Lattice& lattice, const Rect& r) {
  auto blocked = [&](int x, int y) { return !lattice.in_bounds(x, y) || lattice.frozen(x, y); };
  bool rows = true, cols = true;
  for (int x = r.x; x < r.x + r.w; ++x) rows = rows && blocked(x, r.y - 1) && blocked(x, r.y + r.h);
  for (int y = r.y; y < r.y + r.h; ++y) cols = cols && blocked(r.x - 1, y) && blocked(r.x + r.w, y);
  if (cols && !rows) return Axis::Vertical;
  return Axis::Horizontal;
}

// ---------------------------------------------------------------------------
// Majority gate.

enum class Junction { Cross, Tee };

inline const char* to_string(Junction j) { return j == Junction::Cross ? "cross" : "tee"; }

struct GateConfig {
  int width = 5;
  int offset = 1;
  int arm_north = 40;
  int arm_west = 40;
  int arm_south = 40;
  int out_length = 30;
  int probe_distance = 20;  // from the junction into the output arm
  int probe_depth = 4;
  Junction junction = Junction::Cross;
  ParticleShape shape = ParticleShape::AxialPair;
  int seed_depth = 2;
  int settle_window = 5;
  int step_budget = 400;

  SignalEncoding encoding() const { return SignalEncoding{shape, offset, seed_depth}; }

  void validate() const {
    if (width < 3) throw InvalidArgument("gate width must be at least 3");
    if (offset < 1) throw InvalidArgument("gate offset must be at least 1");
    if (settle_window < 0 || step_budget < 1) throw InvalidArgument("readout window is empty");
    if (probe_depth < 1 || probe_distance < 0 || probe_distance + probe_depth > out_length) {
      throw InvalidArgument("probe does not fit inside the output arm");
    }
    if ((width - 1 - shape_span(shape)) % 2 != 0) {
      throw InvalidArgument(std::string("shape ") + to_string(shape) +
                            " cannot be centred in width " + std::to_string(width));
    }
    const int need = seed_depth + 3;
    if (arm_north < need || arm_west < need || arm_south < need) {
      throw InvalidArgument("arms too short for the configured particle placement");
    }
  }

  friend bool operator==(const GateConfig&, const GateConfig&) = default;
};

inline const std::string kProbeOut = "out";

// Inputs a, b, c enter through the North, West and South arms; the East arm
// carries the output. In a cross junction all four arms meet a square box;
// in a tee the box is twice as long along the output axis and the North and
// South arms attach to its eastern half, so the West signal meets their
// collision head-on as the stem of a T.
inline ChannelScene build_majority_scene(const GateConfig& cfg, int a, int b, int c) {
  cfg.validate();
  const int w = cfg.width;
  const int box_w = cfg.junction == Junction::Cross ? w : 2 * w;
  const int jx = cfg.arm_west;
  const int jy = cfg.arm_north;
  const int nx = jx + box_w - w;
  const int lw = cfg.arm_west + box_w + cfg.out_length;
  const int lh = cfg.arm_north + w + cfg.arm_south;

  ChannelScene scene;
  scene.lattice = Lattice(lw, lh);
  scene.lattice.add_wall(Rect{0, 0, lw, lh});
  auto carve = [&](const Rect& r) {
    for (int y = r.y; y < r.y + r.h; ++y)
      for (int x = r.x; x < r.x + r.w; ++x) scene.lattice.set_frozen(x, y, false);
  };
  Channel north{"north", Rect{nx, 0, w, cfg.arm_north}, Heading::South};
  Channel west{"west", Rect{0, jy, cfg.arm_west, w}, Heading::East};
  Channel south{"south", Rect{nx, jy + w, w, cfg.arm_south}, Heading::North};
  Channel east{"east", Rect{jx + box_w, jy, cfg.out_length, w}, Heading::East};
  for (const auto* ch : {&north, &west, &south, &east}) carve(ch->interior);
  carve(Rect{jx, jy, box_w, w});
  scene.channels = {north, west, south, east};

  auto enc = cfg.encoding();
  scene = place_signal(std::move(scene), "north", a, enc);
  scene = place_signal(std::move(scene), "west", b, enc);
  scene = place_signal(std::move(scene), "south", c, enc);
  scene.probes[kProbeOut] = probe_across(east, cfg.probe_distance, cfg.probe_depth);
  return scene;
}

class ReadoutError : public Error {
 public:
  using Error::Error;
};

struct Readout {
  PatternClass first = PatternClass::None;
  PatternClass settled = PatternClass::None;
  int arrival_step = -1;
};

// Runs until the probe first sees live cells, classifies, runs the settle
// window and classifies again.
inline Readout read_probe(Lattice lattice, const RuleBS& rule, const Probe& probe, int budget,
                          int settle) {
  Readout r;
  for (int t = 1; t <= budget; ++t) {
    lattice = step(lattice, rule);
    if (lattice.population(probe.area) == 0) continue;
    r.arrival_step = t;
    r.first = classify_output(lattice, probe);
    for (int k = 0; k < settle; ++k) lattice = step(lattice, rule);
    r.settled = classify_output(lattice, probe);
    return r;
  }
  return r;
}

inline int eval_majority_ca(const GateConfig& cfg, int a, int b, int c,
                            const RuleBS& rule = b2s2345()) {
  auto scene = build_majority_scene(cfg, a, b, c);
  auto r = read_probe(scene.lattice, rule, scene.probes.at(kProbeOut), cfg.step_budget,
                      cfg.settle_window);
  if (r.arrival_step < 0) {
    throw ReadoutError("no pattern reached the output probe within " +
                       std::to_string(cfg.step_budget) + " steps");
  }
  if (r.first != r.settled || r.settled == PatternClass::None) {
    throw ReadoutError(std::string("output pattern unstable across the settle window (") +
                       to_string(r.first) + " -> " + to_string(r.settled) + ")");
  }
  return r.settled == PatternClass::One ? 1 : 0;
}

inline int majority(int a, int b, int c) { return (a & b) | (a & c) | (b & c); }

// ---------------------------------------------------------------------------
// Calibration.

struct RowOutcome {
  std::array<int, 3> inputs{};
  int expected = 0;
  std::optional<int> observed;  // empty when the readout failed
  std::string error;
  bool ok() const { return observed && *observed == expected; }
};

struct ConfigOutcome {
  GateConfig config;
  std::vector<RowOutcome> rows;
  int correct() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.ok(); }));
  }
};

struct CalibrationReport {
  std::optional<GateConfig> found;
  std::vector<ConfigOutcome> outcomes;
};

// Table order of the eight input corteges: a is the most significant bit.
inline std::array<std::array<int, 3>, 8> majority_rows() {
  std::array<std::array<int, 3>, 8> rows{};
  for (int i = 0; i < 8; ++i) rows[static_cast<std::size_t>(i)] = {(i >> 2) & 1, (i >> 1) & 1, i & 1};
  return rows;
}

inline ConfigOutcome evaluate_config(const GateConfig& cfg, const RuleBS& rule = b2s2345()) {
  ConfigOutcome out{cfg, {}};
  for (auto in : majority_rows()) {
    RowOutcome row{in, majority(in[0], in[1], in[2]), std::nullopt, {}};
    try {
      row.observed = eval_majority_ca(cfg, in[0], in[1], in[2], rule);
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Documented default search grid: 5 widths x 2 offsets x 2 junctions x 5
// north/south arm lengths x 5 west arm lengths = 500 configurations.
inline std::vector<GateConfig> default_calibration_grid() {
  std::vector<GateConfig> grid;
  for (int width = 4; width <= 8; ++width)
    for (int offset : {1, 2})
      for (Junction j : {Junction::Cross, Junction::Tee})
        for (int ns : {20, 30, 40, 50, 60})
          for (int we : {20, 30, 40, 50, 60}) {
            GateConfig cfg;
            cfg.width = width;
            cfg.offset = offset;
            cfg.junction = j;
            cfg.arm_north = cfg.arm_south = ns;
            cfg.arm_west = we;
            cfg.shape = (width % 2 == 1) ? ParticleShape::AxialPair : ParticleShape::TransverseDomino;
            grid.push_back(cfg);
          }
  return grid;
}

// Evaluates configurations in order and stops at the first that reproduces
// all eight majority rows. Exhaustion is reported, not thrown.
inline CalibrationReport calibrate_gate(const std::vector<GateConfig>& grid,
                                        const RuleBS& rule = b2s2345()) {
  CalibrationReport report;
  for (const auto& cfg : grid) {
    try {
      cfg.validate();
    } catch (const InvalidArgument& e) {
      ConfigOutcome skipped{cfg, {}};
      for (auto in : majority_rows())
        skipped.rows.push_back(RowOutcome{in, majority(in[0], in[1], in[2]), std::nullopt, e.what()});
      report.outcomes.push_back(std::move(skipped));
      continue;
    }
    auto outcome = evaluate_config(cfg, rule);
    bool all = outcome.correct() == 8;
    report.outcomes.push_back(std::move(outcome));
    if (all) {
      report.found = cfg;
      break;
    }
  }
  return report;
}

}  // namespace ppc::ca
