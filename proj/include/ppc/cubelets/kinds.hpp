#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "ppc/error.hpp"

namespace ppc::cubelets {

enum class Role { Sense, Think, Action };

enum class CubeKind { di, br, kn, te, ba, bl, pa, bo, in, mi, ma, th, ro, dr, bg, sp, fl };

struct KindInfo {
  CubeKind kind;
  std::string_view code;
  Role role;
  bool symmetric;  // no face needs a label
};

inline constexpr std::array<KindInfo, 17> kKinds{{
    {CubeKind::di, "di", Role::Sense, false},  {CubeKind::br, "br", Role::Sense, false},
    {CubeKind::kn, "kn", Role::Sense, false},  {CubeKind::te, "te", Role::Sense, false},
    {CubeKind::ba, "ba", Role::Think, false},  {CubeKind::bl, "bl", Role::Think, false},
    {CubeKind::pa, "pa", Role::Think, true},   {CubeKind::bo, "bo", Role::Think, true},
    {CubeKind::in, "in", Role::Think, true},   {CubeKind::mi, "mi", Role::Think, false},
    {CubeKind::ma, "ma", Role::Think, false},  {CubeKind::th, "th", Role::Think, false},
    {CubeKind::ro, "ro", Role::Action, false}, {CubeKind::dr, "dr", Role::Action, false},
    {CubeKind::bg, "bg", Role::Action, false}, {CubeKind::sp, "sp", Role::Action, false},
    {CubeKind::fl, "fl", Role::Action, false},
}};

inline const KindInfo& info(CubeKind k) { return kKinds[static_cast<std::size_t>(k)]; }
inline std::string_view code(CubeKind k) { return info(k).code; }
inline Role role(CubeKind k) { return info(k).role; }
inline bool is_symmetric(CubeKind k) { return info(k).symmetric; }

inline std::optional<CubeKind> kind_from_code(std::string_view s) {
  for (const auto& i : kKinds)
    if (i.code == s) return i.kind;
  return std::nullopt;
}

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::Sense: return "sense";
    case Role::Think: return "think";
    case Role::Action: return "action";
  }
  return "?";
}

// Global directions. E/W run along x, N/S along y, F/B along z.
enum class Dir { N, S, E, W, F, B };

inline char dir_char(Dir d) { return "NSEWFB"[static_cast<int>(d)]; }

inline std::optional<Dir> dir_from_char(char c) {
  switch (c) {
    case 'N': return Dir::N;
    case 'S': return Dir::S;
    case 'E': return Dir::E;
    case 'W': return Dir::W;
    case 'F': return Dir::F;
    case 'B': return Dir::B;
    default: return std::nullopt;
  }
}

struct Vec3 {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
  // Row-major: x fastest, then y, then z.
  friend std::strong_ordering operator<=>(const Vec3& a, const Vec3& b) {
    if (auto c = a.z <=> b.z; c != 0) return c;
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(int k) const { return {x * k, y * k, z * k}; }
};

inline Vec3 unit(Dir d) {
  switch (d) {
    case Dir::E: return {1, 0, 0};
    case Dir::W: return {-1, 0, 0};
    case Dir::N: return {0, 1, 0};
    case Dir::S: return {0, -1, 0};
    case Dir::F: return {0, 0, 1};
    case Dir::B: return {0, 0, -1};
  }
  return {};
}

inline std::string to_string(const Vec3& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z) + ")";
}

inline constexpr std::array<Vec3, 6> kFaceOffsets{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};

// Global directions faced by the cube's local front, north and west faces.
struct Orientation {
  Dir f = Dir::F;
  Dir n = Dir::N;
  Dir w = Dir::W;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

inline constexpr Orientation kIdentity{};

inline int axis_of(Dir d) { return static_cast<int>(d) / 2; }

inline bool orthogonal(const Orientation& o) {
  return axis_of(o.f) != axis_of(o.n) && axis_of(o.f) != axis_of(o.w) &&
         axis_of(o.n) != axis_of(o.w);
}

inline int determinant(const Orientation& o) {
  Vec3 a = unit(o.f), b = unit(o.n), c = unit(o.w);
  return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
         a.z * (b.x * c.y - b.y * c.x);
}

// Same chirality as (F,N,W).
inline bool right_handed(const Orientation& o) {
  return orthogonal(o) && determinant(o) == determinant(kIdentity);
}

inline std::string to_string(const Orientation& o) {
  return std::string("(") + dir_char(o.f) + "," + dir_char(o.n) + "," + dir_char(o.w) + ")";
}

struct Cube {
  CubeKind kind = CubeKind::di;
  Vec3 pos;
  std::optional<Orientation> orient;
  friend bool operator==(const Cube&, const Cube&) = default;
};

}  // namespace ppc::cubelets
