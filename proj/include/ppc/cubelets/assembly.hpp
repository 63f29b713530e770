#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ppc/cubelets/expr.hpp"
#include "ppc/cubelets/kinds.hpp"
#include "ppc/error.hpp"

namespace ppc::cubelets {

class ExpandError : public Error {
 public:
  ExpandError(const std::string& what, SourceLoc at)
      : Error(what + " at " + std::to_string(at.line) + ":" + std::to_string(at.column)),
        loc_(at) {}
  SourceLoc loc() const noexcept { return loc_; }

 private:
  SourceLoc loc_;
};

class Assembly {
 public:
  std::string name;

  const std::map<Vec3, Cube>& cubes() const noexcept { return cubes_; }
  bool contains(const Vec3& p) const { return cubes_.count(p) != 0; }
  const Cube* find(const Vec3& p) const {
    auto it = cubes_.find(p);
    return it == cubes_.end() ? nullptr : &it->second;
  }
  const Cube& at(const Vec3& p) const {
    auto* c = find(p);
    if (!c) throw InvalidArgument("no cube at " + to_string(p));
    return *c;
  }

  // Symmetric kinds lose any orientation; other kinds default to (F,N,W).
  void add(Cube c) {
    if (is_symmetric(c.kind)) {
      c.orient.reset();
    } else if (!c.orient) {
      c.orient = kIdentity;
    }
    if (!cubes_.emplace(c.pos, c).second) {
      throw InvalidArgument("coordinate collision at " + to_string(c.pos));
    }
  }

  std::size_t mass() const noexcept { return cubes_.size(); }
  bool empty() const noexcept { return cubes_.empty(); }

  Vec3 min_corner() const {
    if (cubes_.empty()) return {};
    Vec3 lo = cubes_.begin()->first;
    for (const auto& [p, c] : cubes_) {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      lo.z = std::min(lo.z, p.z);
    }
    return lo;
  }
  Vec3 max_corner() const {
    if (cubes_.empty()) return {-1, -1, -1};
    Vec3 hi = cubes_.begin()->first;
    for (const auto& [p, c] : cubes_) {
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
      hi.z = std::max(hi.z, p.z);
    }
    return hi;
  }
  // Bounding-box extents; all zero when empty.
  std::array<int, 3> volume() const {
    if (cubes_.empty()) return {0, 0, 0};
    Vec3 lo = min_corner(), hi = max_corner();
    return {hi.x - lo.x + 1, hi.y - lo.y + 1, hi.z - lo.z + 1};
  }

  friend bool operator==(const Assembly&, const Assembly&) = default;

 private:
  std::map<Vec3, Cube> cubes_;
};

// Union of two assemblies; they must not overlap.
inline Assembly merge(const Assembly& a, const Assembly& b, std::string name = {}) {
  Assembly out = a;
  out.name = std::move(name);
  for (const auto& [p, c] : b.cubes()) out.add(c);
  return out;
}

namespace detail {

struct Collision {
  Vec3 pos;
  SourceLoc loc;
};

class Expander {
 public:
  Assembly out;
  std::vector<Collision> collisions;

  void run(const RobotExpr& e) {
    out.name = e.name;
    if (!e.root) return;
    const Expr* bare = nullptr;
    const Expr* coord = nullptr;
    scan(*e.root, bare, coord);
    if (bare && coord) {
      throw ExpandError("bare term mixed with coordinated terms", bare->loc);
    }
    bare_mode_ = bare != nullptr;
    walk(*e.root, Vec3{});
  }

 private:
  static void scan(const Expr& e, const Expr*& bare, const Expr*& coord) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TermNode>) {
            const Expr*& slot = n.pos ? coord : bare;
            if (!slot) slot = &e;
          } else if constexpr (std::is_same_v<T, ConcatNode>) {
            for (const auto& i : n.items) scan(*i, bare, coord);
          } else if constexpr (std::is_same_v<T, GroupNode>) {
            scan(*n.inner, bare, coord);
          } else if constexpr (std::is_same_v<T, StarNode>) {
            scan(*n.body, bare, coord);
          }
        },
        e.node);
  }

  void place(const Cube& c, SourceLoc loc) {
    if (out.contains(c.pos)) {
      collisions.push_back({c.pos, loc});
      return;
    }
    out.add(c);
  }

  void walk(const Expr& e, Vec3 shift) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TermNode>) {
            Vec3 p = bare_mode_ ? Vec3{cursor_++, 0, 0} : *n.pos;
            place(Cube{n.kind, p + shift, n.orient}, e.loc);
          } else if constexpr (std::is_same_v<T, BlankNode>) {
            if (bare_mode_) cursor_ += n.count;
          } else if constexpr (std::is_same_v<T, ConcatNode>) {
            for (const auto& i : n.items) walk(*i, shift);
          } else if constexpr (std::is_same_v<T, GroupNode>) {
            walk(*n.inner, shift);
          } else {
            for (int i = 0; i < n.count; ++i) walk(*n.body, shift + n.shift * i);
          }
        },
        e.node);
  }

  bool bare_mode_ = false;
  int cursor_ = 0;
};

}  // namespace detail

inline Assembly expand(const RobotExpr& e) {
  detail::Expander x;
  x.run(e);
  if (!x.collisions.empty()) {
    const auto& c = x.collisions.front();
    throw ExpandError("coordinate collision at " + to_string(c.pos), c.loc);
  }
  return std::move(x.out);
}

inline Assembly parse_assembly(std::string_view text) { return expand(parse(text)); }

struct ValidationReport {
  bool connected = true;
  std::size_t components = 0;
  std::size_t battery_count = 0;
  bool orientation_ok = true;
  std::vector<Vec3> bad_orientations;
  std::vector<Vec3> collisions;
  std::vector<Vec3> unpowered_components;  // one representative per battery-less component
  bool functional = false;
};

// Connected components over face adjacency, each as a sorted position list.
inline std::vector<std::vector<Vec3>> components(const Assembly& a) {
  std::vector<std::vector<Vec3>> out;
  std::set<Vec3> seen;
  for (const auto& [start, c] : a.cubes()) {
    if (seen.count(start)) continue;
    std::vector<Vec3> comp;
    std::queue<Vec3> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      Vec3 p = q.front();
      q.pop();
      comp.push_back(p);
      for (const auto& d : kFaceOffsets) {
        Vec3 n = p + d;
        if (a.contains(n) && seen.insert(n).second) q.push(n);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Functional: no collisions, valid orientations, and every component
// carries at least one battery (so at least one overall).
inline ValidationReport validate(const Assembly& a, bool strict_handedness = false) {
  ValidationReport r;
  for (const auto& [p, c] : a.cubes()) {
    if (c.kind == CubeKind::ba) ++r.battery_count;
    if (c.orient) {
      bool ok = strict_handedness ? right_handed(*c.orient) : orthogonal(*c.orient);
      if (!ok) r.bad_orientations.push_back(p);
    }
  }
  r.orientation_ok = r.bad_orientations.empty();
  auto comps = components(a);
  r.components = comps.size();
  r.connected = comps.size() <= 1;
  for (const auto& comp : comps) {
    bool has_battery = false;
    for (const auto& p : comp) has_battery |= a.at(p).kind == CubeKind::ba;
    if (!has_battery) r.unpowered_components.push_back(comp.front());
  }
  r.functional = r.battery_count >= 1 && r.unpowered_components.empty() && r.orientation_ok &&
                 r.collisions.empty();
  return r;
}

// Like validate(expand(e)) but reports collisions instead of throwing.
inline ValidationReport validate(const RobotExpr& e, bool strict_handedness = false) {
  detail::Expander x;
  x.run(e);
  ValidationReport r = validate(x.out, strict_handedness);
  for (const auto& c : x.collisions) r.collisions.push_back(c.pos);
  if (!r.collisions.empty()) r.functional = false;
  return r;
}

struct Census {
  std::size_t mass = 0;
  std::array<int, 3> volume{0, 0, 0};
  std::map<CubeKind, std::size_t> counts;
};

inline Census census(const Assembly& a) {
  Census c;
  c.mass = a.mass();
  c.volume = a.volume();
  for (const auto& [p, cube] : a.cubes()) ++c.counts[cube.kind];
  return c;
}

inline std::string format_term(const Cube& c) {
  std::string s(code(c.kind));
  s += "_" + to_string(c.pos);
  if (c.orient) s += "^" + to_string(*c.orient);
  return s;
}

// Canonical text: row-major term order, one parenthesised group per row
// when there is more than one row, blank runs for gaps inside a row.
inline std::string format(const Assembly& a) {
  if (a.empty()) return a.name.empty() ? "" : a.name + " =";
  int x0 = a.min_corner().x;
  std::vector<std::string> rows;
  std::string row;
  int last_x = 0;
  std::optional<std::pair<int, int>> key;
  auto blanks = [](int k) { return k == 1 ? std::string("B") : "B^" + std::to_string(k); };
  for (const auto& [p, c] : a.cubes()) {
    std::pair<int, int> k{p.z, p.y};
    if (!key || *key != k) {
      if (key) rows.push_back(row);
      row.clear();
      key = k;
      if (p.x > x0) row = blanks(p.x - x0) + " . ";
    } else {
      row += " . ";
      if (p.x - last_x > 1) row += blanks(p.x - last_x - 1) + " . ";
    }
    row += format_term(c);
    last_x = p.x;
  }
  rows.push_back(row);
  std::string out = a.name.empty() ? "" : a.name + " = ";
  if (rows.size() == 1) return out + rows.front();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += " .\n";
    out += "(" + rows[i] + ")";
  }
  return out;
}

}  // namespace ppc::cubelets
