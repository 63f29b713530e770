#pragma once

#include <string>
#include <vector>

#include "ppc/sleptsov/net.hpp"

namespace ppc::sleptsov {

inline constexpr Tokens kFull = 255;

// Places are created on first mention, so fragments that name the same
// place share it (port fusion).
class NetBuilder {
 public:
  std::size_t place(const std::string& name, Tokens init = 0) {
    if (auto p = nm_.net.find_place(name)) {
      if (init) nm_.marking[*p] = init;
      return *p;
    }
    std::size_t p = nm_.net.add_place(name);
    nm_.marking.push_back(init);
    return p;
  }
  std::size_t transition(const std::string& name) { return nm_.net.add_transition(name); }
  std::size_t transition_index(const std::string& name) const { return nm_.net.transition(name); }

  void in(const std::string& p, const std::string& t, Tokens w = 1) {
    nm_.net.add_input(place(p), nm_.net.transition(t), w);
  }
  void out(const std::string& t, const std::string& p, Tokens w = 1) {
    nm_.net.add_output(nm_.net.transition(t), place(p), w);
  }
  void inhib(const std::string& p, const std::string& t, Tokens w = 1) {
    nm_.net.add_inhibitor(place(p), nm_.net.transition(t), w);
  }

  const NetWithMarking& get() const { return nm_; }
  NetWithMarking take() { return std::move(nm_); }

 private:
  NetWithMarking nm_;
};

// Reverse control flow: control_i start at 1 and are drained in order by
// next_i, each of which waits for control_{i-1} to be empty. Stage i runs
// between next_i and next_{i+1}; its transitions are gated on control_i
// being empty and done_i not yet set.
class ControlChain {
 public:
  ControlChain(NetBuilder& b, std::size_t stages, std::string prefix = "")
      : b_(b), stages_(stages), prefix_(std::move(prefix)) {
    for (std::size_t i = 0; i <= stages_; ++i) b_.place(control(i), 1);
    for (std::size_t i = 0; i <= stages_; ++i) {
      b_.transition(next(i));
      b_.in(control(i), next(i));
      if (i > 0) {
        b_.inhib(control(i - 1), next(i));
        b_.out(next(i), done(i - 1));
      }
    }
  }

  std::string control(std::size_t i) const { return prefix_ + "control" + std::to_string(i); }
  std::string done(std::size_t i) const { return prefix_ + "done" + std::to_string(i); }
  std::string next(std::size_t i) const { return prefix_ + "next" + std::to_string(i); }
  std::size_t stages() const { return stages_; }

  void gate(const std::string& t, std::size_t stage) {
    check(stage);
    b_.inhib(control(stage), t);
    b_.inhib(done(stage), t);
  }
  // Stage may close only once `p` holds fewer than w tokens.
  void finish_when_below(std::size_t stage, const std::string& p, Tokens w = 1) {
    check(stage);
    b_.inhib(p, next(stage + 1), w);
  }
  // Closing the stage consumes one token from `p` (used as a "has run" flag).
  void finish_consuming(std::size_t stage, const std::string& p) {
    check(stage);
    b_.in(p, next(stage + 1));
  }

 private:
  void check(std::size_t stage) const {
    if (stage >= stages_) throw InvalidArgument("stage index out of range");
  }
  NetBuilder& b_;
  std::size_t stages_;
  std::string prefix_;
};

// ---- cube templates ---------------------------------------------------------

// di / br: the sensed value moves from the real-world place in one step.
inline void add_sensor(NetBuilder& b, const std::string& t, const std::string& real,
                       const std::vector<std::string>& sensed) {
  b.transition(t);
  b.in(real, t);
  for (const auto& s : sensed) b.out(t, s);
}

// fl(x,y): of every x+y input tokens, x become light and y move on. The
// reminder transition clears what is left over (fewer than x+y tokens).
inline void add_flashlight(NetBuilder& b, const std::string& t, const std::string& reminder,
                           const std::string& input, const std::string& light,
                           const std::string& output, Tokens x, Tokens y) {
  if (x < 1 || y < 1) throw InvalidArgument("flashlight split proportions must be >= 1");
  b.transition(t);
  b.in(input, t, x + y);
  b.out(t, light, x);
  b.out(t, output, y);
  b.transition(reminder);
  b.in(input, reminder, 1);
  b.inhib(input, reminder, x + y);
}

// Last flashlight of a line: all energy becomes light.
inline void add_last_flashlight(NetBuilder& b, const std::string& t, const std::string& input,
                                const std::string& light) {
  b.transition(t);
  b.in(input, t);
  b.out(t, light);
}

struct InverterNames {
  std::string init_upper = "initUpper";
  std::string subtract = "subtract";
  std::string move = "move";
  std::string upper = "upper";
  std::string armed = "armed";
};

// in: upper is loaded with 255 once, the input is subtracted from it, and
// what remains moves to every inverse output.
inline void add_inverter(NetBuilder& b, const InverterNames& n, const std::string& input,
                         const std::vector<std::string>& inverse) {
  b.transition(n.init_upper);
  b.inhib(n.armed, n.init_upper);
  b.out(n.init_upper, n.upper, kFull);
  b.out(n.init_upper, n.armed);
  b.transition(n.subtract);
  b.in(input, n.subtract);
  b.in(n.upper, n.subtract);
  b.transition(n.move);
  b.in(n.upper, n.move);
  b.inhib(input, n.move);
  for (const auto& o : inverse) b.out(n.move, o);
}

inline void add_passive(NetBuilder& b, const std::string& t, const std::string& input,
                        const std::string& output) {
  b.transition(t);
  b.in(input, t);
  b.out(t, output);
}

// Standalone fragments with conventional port names.
enum class TemplateKind { ba, di, br, fl, in };

struct TemplateParams {
  std::size_t chain = 1;  // ba: number of control places
  Tokens x = 1, y = 1;    // fl
};

inline NetWithMarking make_template(TemplateKind kind, const TemplateParams& p = {}) {
  NetBuilder b;
  switch (kind) {
    case TemplateKind::ba:
      if (p.chain < 1) throw InvalidArgument("battery chain needs at least one control place");
      ControlChain(b, p.chain - 1);
      break;
    case TemplateKind::di:
      add_sensor(b, "di", "realValue", {"sensed"});
      break;
    case TemplateKind::br:
      add_sensor(b, "br", "realValue", {"sensed"});
      break;
    case TemplateKind::fl:
      add_flashlight(b, "fl", "clean-reminder", "input", "light", "output", p.x, p.y);
      break;
    case TemplateKind::in:
      b.place("input");
      add_inverter(b, InverterNames{}, "input", {"inverse"});
      break;
  }
  return b.take();
}

}  // namespace ppc::sleptsov
