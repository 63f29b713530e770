#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "ppc/ca/lattice.hpp"
#include "ppc/ca/rule.hpp"

namespace ppc::ca {

namespace detail {

// Bounding box of all live cells (frozen or not), grown by one cell and
// clamped to the lattice. Cells outside it have zero live neighbours.
inline Rect active_region(const Lattice& l) {
  int x0 = l.width(), y0 = l.height(), x1 = -1, y1 = -1;
  const auto& s = l.states();
  for (int y = 0; y < l.height(); ++y) {
    const std::uint8_t* row = s.data() + l.index(0, y);
    for (int x = 0; x < l.width(); ++x) {
      if (row[x]) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) return Rect{0, 0, 0, 0};
  x0 = std::max(0, x0 - 1);
  y0 = std::max(0, y0 - 1);
  x1 = std::min(l.width() - 1, x1 + 1);
  y1 = std::min(l.height() - 1, y1 + 1);
  return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

}  // namespace detail

// One synchronous update. Frozen cells keep their state and still count as
// neighbours with that state; cells beyond the border count as dead.
inline Lattice step(const Lattice& in, const RuleBS& rule) {
  Lattice out = in;
  const int w = in.width();
  const int h = in.height();
  const auto& src = in.states();
  const auto& frozen = in.frozen_mask();
  auto& dst = out.mutable_states();

  Rect region = rule.birth.test(0) ? Rect{0, 0, w, h} : detail::active_region(in);
  if (region.empty()) return out;

  auto at = [&](int x, int y) -> int {
    return (x >= 0 && y >= 0 && x < w && y < h) ? src[in.index(x, y)] : 0;
  };

  // Column sums over three rows, recomputed per output row.
  std::vector<int> col(static_cast<std::size_t>(region.w) + 2);
  for (int y = region.y; y < region.y + region.h; ++y) {
    for (int i = 0; i < region.w + 2; ++i) {
      int x = region.x - 1 + i;
      col[static_cast<std::size_t>(i)] = at(x, y - 1) + at(x, y) + at(x, y + 1);
    }
    for (int i = 0; i < region.w; ++i) {
      int x = region.x + i;
      std::size_t idx = in.index(x, y);
      if (frozen[idx]) continue;
      int self = src[idx];
      int n = col[static_cast<std::size_t>(i)] + col[static_cast<std::size_t>(i) + 1] +
              col[static_cast<std::size_t>(i) + 2] - self;
      dst[idx] = rule.next(self != 0, n) ? 1 : 0;
    }
  }
  return out;
}

using StepObserver = std::function<void(int step, const Lattice&)>;

// Applies `step` `steps` times. The observer, if any, sees the lattice at
// t = 0 and after every step.
inline Lattice run(Lattice lattice, const RuleBS& rule, int steps,
                   const StepObserver& observer = {}) {
  if (steps < 0) throw InvalidArgument("step count must be non-negative");
  if (observer) observer(0, lattice);
  for (int t = 1; t <= steps; ++t) {
    lattice = step(lattice, rule);
    if (observer) observer(t, lattice);
  }
  return lattice;
}

}  // namespace ppc::ca
