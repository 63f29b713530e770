#pragma once

#include <cstdint>
#include <vector>

#include "ppc/error.hpp"

namespace ppc::ca {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Axis-aligned rectangle of cells, [x, x+w) x [y, y+h).
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool contains(Cell c) const { return c.x >= x && c.x < x + w && c.y >= y && c.y < y + h; }
  bool empty() const { return w <= 0 || h <= 0; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Bounded binary lattice. Cells outside the lattice read as permanently
// dead; frozen cells (walls) keep their state forever.
class Lattice {
 public:
  Lattice() = default;
  Lattice(int width, int height)
      : width_(width),
        height_(height),
        state_(checked_area(width, height), 0),
        frozen_(state_.size(), 0) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return state_.size(); }

  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool in_bounds(const Rect& r) const noexcept {
    return !r.empty() && in_bounds(r.x, r.y) && in_bounds(r.x + r.w - 1, r.y + r.h - 1);
  }

  bool alive(int x, int y) const noexcept { return in_bounds(x, y) && state_[index(x, y)] != 0; }
  bool frozen(int x, int y) const noexcept { return in_bounds(x, y) && frozen_[index(x, y)] != 0; }

  void set(int x, int y, bool alive) { state_.at(checked_index(x, y)) = alive ? 1 : 0; }
  void set_frozen(int x, int y, bool frozen) { frozen_.at(checked_index(x, y)) = frozen ? 1 : 0; }

  // Marks every cell of `r` as a wall with the given fixed state.
  void add_wall(const Rect& r, bool alive = false) {
    for (int y = r.y; y < r.y + r.h; ++y)
      for (int x = r.x; x < r.x + r.w; ++x) {
        if (!in_bounds(x, y)) continue;
        set(x, y, alive);
        set_frozen(x, y, true);
      }
  }

  std::size_t population() const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < state_.size(); ++i) n += (state_[i] != 0 && frozen_[i] == 0);
    return n;
  }

  std::size_t population(const Rect& r) const noexcept {
    std::size_t n = 0;
    for (int y = r.y; y < r.y + r.h; ++y)
      for (int x = r.x; x < r.x + r.w; ++x) n += alive(x, y) && !frozen(x, y);
    return n;
  }

  const std::vector<std::uint8_t>& states() const noexcept { return state_; }
  const std::vector<std::uint8_t>& frozen_mask() const noexcept { return frozen_; }
  std::vector<std::uint8_t>& mutable_states() noexcept { return state_; }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  static std::size_t checked_area(int w, int h) {
    if (w <= 0 || h <= 0) throw InvalidArgument("lattice dimensions must be positive");
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  }
  std::size_t checked_index(int x, int y) const {
    if (!in_bounds(x, y)) {
      throw InvalidArgument("cell (" + std::to_string(x) + "," + std::to_string(y) +
                            ") outside lattice");
    }
    return index(x, y);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint8_t> frozen_;
};

enum class Axis { Horizontal, Vertical };

inline Lattice reflect(const Lattice& in, Axis axis) {
  Lattice out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      int tx = axis == Axis::Horizontal ? in.width() - 1 - x : x;
      int ty = axis == Axis::Vertical ? in.height() - 1 - y : y;
      out.set(tx, ty, in.alive(x, y));
      out.set_frozen(tx, ty, in.frozen(x, y));
    }
  return out;
}

}  // namespace ppc::ca
