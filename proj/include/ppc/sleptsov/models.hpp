#pragma once

#include <array>
#include <string>
#include <vector>

#include "ppc/sleptsov/templates.hpp"

namespace ppc::sleptsov {

inline constexpr std::size_t kRunCap = 100000;

inline void check_level(Tokens v) {
  if (v < 0 || v > kFull) throw InvalidArgument("input value out of 0..255");
}

// ---- lamp: br . ba . fl ------------------------------------------------------

inline NetWithMarking build_lamp_net(Tokens light = 22, Tokens real_br = 135) {
  check_level(light);
  check_level(real_br);
  NetBuilder b;
  ControlChain chain(b, 3);
  b.place("realBr", real_br);
  b.place("input");
  b.place("light", light);

  b.transition("clean");  // stage 0: forget the previous output
  b.in("light", "clean");
  chain.gate("clean", 0);
  chain.finish_when_below(0, "light");

  add_sensor(b, "br", "realBr", {"input"});
  chain.gate("br", 1);
  chain.finish_when_below(1, "realBr");

  add_last_flashlight(b, "fl", "input", "light");
  chain.gate("fl", 2);
  chain.finish_when_below(2, "input");
  return b.take();
}

inline const std::vector<std::string>& lamp_sigma() {
  static const std::vector<std::string> s{"next0", "clean", "next1", "br",
                                          "next2", "fl",    "next3"};
  return s;
}

// ---- light gates: branches add weighted light into one place --------------

struct LightBranch {
  std::string label;  // A, B, C ...
  Tokens weight;      // tokens added per full (255) input
};

inline const std::vector<LightBranch>& maj_branches() {
  static const std::vector<LightBranch> b{{"A", 47}, {"B", 31}, {"C", 47}};
  return b;
}

inline constexpr Tokens kMajThreshold = 78;

// Control splits into one subflow per branch and is joined again. With
// `with_clean`, the output is emptied before the split.
inline NetWithMarking build_light_gate_net(const std::vector<LightBranch>& branches,
                                           const std::string& output = "lightD2",
                                           bool with_clean = false) {
  if (branches.empty()) throw InvalidArgument("light gate needs at least one branch");
  NetBuilder b;
  b.place("start", with_clean ? 0 : 1);
  if (with_clean) {
    b.place("reset", 1);
    b.transition("beginClean");
    b.in("reset", "beginClean");
    b.out("beginClean", "cleaning");
    b.transition("clean");
    b.in(output, "clean");
    b.inhib("reset", "clean");
    b.inhib("cleaned", "clean");
    b.transition("endClean");
    b.in("cleaning", "endClean");
    b.inhib(output, "endClean");
    b.out("endClean", "start");
    b.out("endClean", "cleaned");
  }
  b.transition("splitControlFlow");
  b.in("start", "splitControlFlow");
  b.transition("syncControlFlow");
  b.out("syncControlFlow", "sync");
  for (const auto& br : branches) {
    const std::string& x = br.label;
    b.place("real" + x);
    b.out("splitControlFlow", "ctl" + x);
    add_sensor(b, "di" + x, "real" + x, {"sensed" + x});
    b.inhib("start", "di" + x);
    b.transition("l" + x);
    b.in("sensed" + x, "l" + x, kFull);
    b.out("l" + x, output, br.weight);
    b.inhib("real" + x, "l" + x);
    b.transition("finish" + x);
    b.in("ctl" + x, "finish" + x);
    b.inhib("real" + x, "finish" + x);
    b.inhib("sensed" + x, "finish" + x, kFull);
    b.out("finish" + x, "done" + x);
    b.in("done" + x, "syncControlFlow");
  }
  b.place(output);
  return b.take();
}

inline NetWithMarking build_maj_net(bool with_clean = false) {
  return build_light_gate_net(maj_branches(), "lightD2", with_clean);
}

inline Tokens light_gate_eval(NetWithMarking net, const std::vector<LightBranch>& branches,
                              const std::vector<Tokens>& real, const std::string& output) {
  if (real.size() != branches.size()) throw InvalidArgument("one value per branch expected");
  for (std::size_t i = 0; i < real.size(); ++i) {
    check_level(real[i]);
    net.set("real" + branches[i].label, real[i]);
  }
  auto tr = run(net.net, net.marking, kRunCap);
  if (tr.status != RunStatus::Deadlock) throw Error("light gate net did not terminate");
  return tr.final_marking()[net.net.place(output)];
}

inline Tokens maj_net_eval(Tokens a, Tokens b, Tokens c) {
  static const NetWithMarking net = build_maj_net();
  return light_gate_eval(net, maj_branches(), {a, b, c}, "lightD2");
}

inline bool threshold_classify(Tokens light, Tokens threshold = kMajThreshold) {
  return light >= threshold;
}

// ---- staged gates for NOT-MAJ and the adder --------------------------------

// Threshold-invert on a 0..255 light sum: the outputs start at 255 and one
// firing empties all of them when the sum reaches 128.
inline void add_threshold_invert(NetBuilder& b, ControlChain& chain, std::size_t stage,
                                 const std::string& t, const std::string& sum,
                                 const std::vector<std::string>& outputs, Tokens cutoff) {
  for (const auto& o : outputs) b.place(o, kFull);
  b.transition(t);
  b.in(sum, t, cutoff + 1);
  for (const auto& o : outputs) b.in(o, t, kFull);
  chain.gate(t, stage);
  chain.finish_when_below(stage, sum, cutoff + 1);
}

// Contribution of a full input to a light sum.
inline void add_contribution(NetBuilder& b, ControlChain& chain, std::size_t stage,
                             const std::string& t, const std::string& from,
                             const std::string& sum, Tokens weight) {
  b.transition(t);
  b.in(from, t, kFull);
  b.out(t, sum, weight);
  chain.gate(t, stage);
  chain.finish_when_below(stage, from, kFull);
}

inline void add_staged_inverter(NetBuilder& b, ControlChain& chain, std::size_t stage,
                                const std::string& suffix, const std::string& input,
                                const std::vector<std::string>& outputs) {
  InverterNames n{"initUpper" + suffix, "subtract" + suffix, "move" + suffix, "upper" + suffix,
                  "armed" + suffix};
  add_inverter(b, n, input, outputs);
  for (const auto& t : {n.init_upper, n.subtract, n.move}) chain.gate(t, stage);
  chain.finish_when_below(stage, input);
  chain.finish_when_below(stage, n.upper);
  chain.finish_consuming(stage, n.armed);
}

inline void add_staged_sensor(NetBuilder& b, ControlChain& chain, std::size_t stage,
                              const std::string& t, const std::string& real,
                              const std::vector<std::string>& sensed) {
  add_sensor(b, t, real, sensed);
  chain.gate(t, stage);
  chain.finish_when_below(stage, real);
}

// NOT-MAJ: sensors, weighted light sum, threshold-invert into `out`.
inline NetWithMarking build_not_maj_net(Tokens threshold = kMajThreshold) {
  if (threshold < 1 || threshold > kFull) throw InvalidArgument("threshold out of 1..255");
  NetBuilder b;
  ControlChain chain(b, 3);
  for (const auto& br : maj_branches()) {
    add_staged_sensor(b, chain, 0, "di" + br.label, "real" + br.label, {"sensed" + br.label});
    add_contribution(b, chain, 1, "l" + br.label, "sensed" + br.label, "lightD2", br.weight);
  }
  add_threshold_invert(b, chain, 2, "threshold", "lightD2", {"out"}, threshold - 1);
  return b.take();
}

inline Tokens not_maj_net_eval(Tokens a, Tokens b, Tokens c, Tokens threshold = kMajThreshold) {
  NetWithMarking net = build_not_maj_net(threshold);
  net.set("realA", a);
  net.set("realB", b);
  net.set("realC", c);
  for (Tokens v : {a, b, c}) check_level(v);
  auto tr = run(net.net, net.marking, kRunCap);
  if (tr.status != RunStatus::Deadlock) throw Error("not-majority net did not terminate");
  return tr.final_marking()[net.net.place("out")];
}

// Full adder from three NOT-MAJ stages and two inverters:
//   nm1 = ~MAJ(a, b, cin), nm2 = ~MAJ(a, b, ~cin), cout = ~nm1,
//   sum = nm3 = ~MAJ(cout, ~cin, nm2).
inline NetWithMarking build_adder_net() {
  constexpr Tokens w = 85;
  constexpr Tokens cutoff = 127;
  NetBuilder b;
  ControlChain chain(b, 6);
  add_staged_sensor(b, chain, 0, "diA", "realA", {"a1", "a2"});
  add_staged_sensor(b, chain, 0, "diB", "realB", {"b1", "b2"});
  add_staged_sensor(b, chain, 0, "diC", "realC", {"c1", "c2"});

  add_contribution(b, chain, 1, "la1", "a1", "sum1", w);
  add_contribution(b, chain, 1, "lb1", "b1", "sum1", w);
  add_contribution(b, chain, 1, "lc1", "c1", "sum1", w);
  add_staged_inverter(b, chain, 1, "C", "c2", {"nc1", "nc2"});

  add_threshold_invert(b, chain, 2, "th1", "sum1", {"nm1", "nm1x"}, cutoff);
  add_contribution(b, chain, 2, "la2", "a2", "sum2", w);
  add_contribution(b, chain, 2, "lb2", "b2", "sum2", w);
  add_contribution(b, chain, 2, "lnc2", "nc1", "sum2", w);

  add_threshold_invert(b, chain, 3, "th2", "sum2", {"nm2", "nm2x"}, cutoff);
  add_staged_inverter(b, chain, 3, "Cout", "nm1x", {"cout", "coutx"});

  add_contribution(b, chain, 4, "lcout", "coutx", "sum3", w);
  add_contribution(b, chain, 4, "lnc3", "nc2", "sum3", w);
  add_contribution(b, chain, 4, "lnm2", "nm2x", "sum3", w);

  add_threshold_invert(b, chain, 5, "th3", "sum3", {"nm3"}, cutoff);
  return b.take();
}

struct AdderTokens {
  Tokens nm1, nm2, nm3, cout, sum;
};

inline AdderTokens adder_net_eval(Tokens a, Tokens b, Tokens cin) {
  static const NetWithMarking proto = build_adder_net();
  NetWithMarking net = proto;
  for (Tokens v : {a, b, cin}) check_level(v);
  net.set("realA", a);
  net.set("realB", b);
  net.set("realC", cin);
  auto tr = run(net.net, net.marking, kRunCap);
  if (tr.status != RunStatus::Deadlock) throw Error("adder net did not terminate");
  const auto& m = tr.final_marking();
  auto at = [&](const char* p) { return m[net.net.place(p)]; };
  return {at("nm1"), at("nm2"), at("nm3"), at("cout"), at("nm3")};
}

}  // namespace ppc::sleptsov
