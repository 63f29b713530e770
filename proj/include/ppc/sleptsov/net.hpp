#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ppc/error.hpp"

namespace ppc::sleptsov {

using Tokens = std::int64_t;
using Marking = std::vector<Tokens>;

struct Arc {
  std::size_t place;
  Tokens weight;
};

struct Transition {
  std::string name;
  std::vector<Arc> inputs;
  std::vector<Arc> outputs;
  std::vector<Arc> inhibitors;
};

class SleptsovNet {
 public:
  std::size_t add_place(const std::string& name) {
    check_name(name);
    if (place_index_.count(name)) throw InvalidArgument("duplicate place '" + name + "'");
    place_index_[name] = places_.size();
    places_.push_back(name);
    return places_.size() - 1;
  }

  std::size_t add_transition(const std::string& name) {
    check_name(name);
    if (trans_index_.count(name)) throw InvalidArgument("duplicate transition '" + name + "'");
    trans_index_[name] = transitions_.size();
    transitions_.push_back(Transition{name, {}, {}, {}});
    order_dirty_ = true;
    return transitions_.size() - 1;
  }

  // Repeated regular arcs add up; a repeated inhibitor keeps the stricter weight.
  void add_input(std::size_t p, std::size_t t, Tokens w) { add(transitions_.at(t).inputs, p, w, false); }
  void add_output(std::size_t t, std::size_t p, Tokens w) { add(transitions_.at(t).outputs, p, w, false); }
  void add_inhibitor(std::size_t p, std::size_t t, Tokens w) {
    add(transitions_.at(t).inhibitors, p, w, true);
  }

  std::optional<std::size_t> find_place(std::string_view name) const {
    auto it = place_index_.find(std::string(name));
    if (it == place_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_transition(std::string_view name) const {
    auto it = trans_index_.find(std::string(name));
    if (it == trans_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t place(std::string_view name) const {
    if (auto p = find_place(name)) return *p;
    throw InvalidArgument("unknown place '" + std::string(name) + "'");
  }
  std::size_t transition(std::string_view name) const {
    if (auto t = find_transition(name)) return *t;
    throw InvalidArgument("unknown transition '" + std::string(name) + "'");
  }

  const std::vector<std::string>& places() const noexcept { return places_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }

  // Transition indices sorted by name.
  const std::vector<std::size_t>& lexicographic_order() const {
    if (order_dirty_) {
      order_.resize(transitions_.size());
      for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
      std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        return transitions_[a].name < transitions_[b].name;
      });
      order_dirty_ = false;
    }
    return order_;
  }

  Marking empty_marking() const { return Marking(places_.size(), 0); }

 private:
  static void check_name(const std::string& name) {
    if (name.empty()) throw InvalidArgument("empty name");
    for (char c : name)
      if (c <= ' ' || c == '#') throw InvalidArgument("bad character in name '" + name + "'");
  }

  void add(std::vector<Arc>& arcs, std::size_t p, Tokens w, bool inhibitor) {
    if (p >= places_.size()) throw InvalidArgument("arc names a missing place");
    if (w < 1) throw InvalidArgument("arc weight must be positive");
    for (auto& a : arcs)
      if (a.place == p) {
        a.weight = inhibitor ? std::min(a.weight, w) : a.weight + w;
        return;
      }
    arcs.push_back({p, w});
  }

  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, std::size_t> place_index_;
  std::unordered_map<std::string, std::size_t> trans_index_;
  mutable std::vector<std::size_t> order_;
  mutable bool order_dirty_ = true;
};

struct NetWithMarking {
  SleptsovNet net;
  Marking marking;

  Tokens tokens(std::string_view place) const { return marking.at(net.place(place)); }
  void set(std::string_view place, Tokens v) {
    if (v < 0) throw InvalidArgument("negative marking");
    marking.at(net.place(place)) = v;
  }
};

// Multiplicity at which t may fire, 0 if disabled. A transition without
// input arcs fires once.
inline Tokens multiplicity(const SleptsovNet& net, const Marking& m, std::size_t t) {
  const Transition& tr = net.transitions().at(t);
  for (const auto& a : tr.inhibitors)
    if (m[a.place] >= a.weight) return 0;
  if (tr.inputs.empty()) return 1;
  Tokens k = std::numeric_limits<Tokens>::max();
  for (const auto& a : tr.inputs) k = std::min(k, m[a.place] / a.weight);
  return k;
}

struct Enabled {
  std::size_t transition;
  Tokens k;
  friend bool operator==(const Enabled&, const Enabled&) = default;
};

// Enabled transitions in lexicographic name order.
inline std::vector<Enabled> enabled(const SleptsovNet& net, const Marking& m) {
  if (m.size() != net.place_count()) throw InvalidArgument("marking size does not match net");
  std::vector<Enabled> out;
  for (std::size_t t : net.lexicographic_order())
    if (Tokens k = multiplicity(net, m, t); k > 0) out.push_back({t, k});
  return out;
}

class DisabledTransition : public Error {
 public:
  using Error::Error;
};

// Fires t at multiplicity k (1 <= k <= maximal).
inline Marking fire(const SleptsovNet& net, const Marking& m, std::size_t t, Tokens k) {
  if (m.size() != net.place_count()) throw InvalidArgument("marking size does not match net");
  Tokens max_k = multiplicity(net, m, t);
  const std::string& name = net.transitions().at(t).name;
  if (max_k == 0) throw DisabledTransition("transition '" + name + "' is not enabled");
  if (k < 1 || k > max_k) {
    throw InvalidArgument("multiplicity " + std::to_string(k) + " outside 1.." +
                          std::to_string(max_k) + " for '" + name + "'");
  }
  Marking out = m;
  const Transition& tr = net.transitions()[t];
  for (const auto& a : tr.inputs) out[a.place] -= k * a.weight;
  for (const auto& a : tr.outputs) {
    if (a.weight > 0 && k > (std::numeric_limits<Tokens>::max() - out[a.place]) / a.weight) {
      throw Error("token count overflow in place '" + net.places()[a.place] + "'");
    }
    out[a.place] += k * a.weight;
  }
  return out;
}

// Fires t at its maximal multiplicity.
inline Marking fire(const SleptsovNet& net, const Marking& m, std::size_t t) {
  Tokens k = multiplicity(net, m, t);
  if (k == 0) {
    throw DisabledTransition("transition '" + net.transitions().at(t).name + "' is not enabled");
  }
  return fire(net, m, t, k);
}

inline Marking fire(const SleptsovNet& net, const Marking& m, std::string_view t) {
  return fire(net, m, net.transition(t));
}

enum class FiringPolicy { Deterministic, Exhaustive };
enum class RunStatus { Deadlock, StepCap };

inline std::string_view to_string(RunStatus s) {
  return s == RunStatus::Deadlock ? "deadlock" : "step-cap";
}

struct Firing {
  std::size_t transition;
  Tokens k;
  Marking after;
};

struct Trace {
  Marking initial;
  std::vector<Firing> steps;
  RunStatus status = RunStatus::Deadlock;

  const Marking& final_marking() const { return steps.empty() ? initial : steps.back().after; }
};

// Deterministic runner: always fires the lexicographically lowest enabled
// transition at maximal multiplicity.
inline Trace run(const SleptsovNet& net, const Marking& m, std::size_t max_steps) {
  Trace tr;
  tr.initial = m;
  Marking cur = m;
  for (std::size_t step = 0;; ++step) {
    auto en = enabled(net, cur);
    if (en.empty()) {
      tr.status = RunStatus::Deadlock;
      return tr;
    }
    if (step == max_steps) {
      tr.status = RunStatus::StepCap;
      return tr;
    }
    cur = fire(net, cur, en.front().transition, en.front().k);
    tr.steps.push_back({en.front().transition, en.front().k, cur});
  }
}

inline std::vector<std::string> transition_names(const SleptsovNet& net, const Trace& t) {
  std::vector<std::string> out;
  for (const auto& f : t.steps) out.push_back(net.transitions()[f.transition].name);
  return out;
}

inline std::string format_marking(const SleptsovNet& net, const Marking& m) {
  std::string out;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p] == 0) continue;
    if (!out.empty()) out += ' ';
    out += net.places()[p] + "=" + std::to_string(m[p]);
  }
  return out;
}

// One line per firing: "<step> <trans> x<k> | <nonzero marking>".
inline std::string format_trace(const SleptsovNet& net, const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& f = t.steps[i];
    std::string mk = format_marking(net, f.after);
    out += std::to_string(i + 1) + " " + net.transitions()[f.transition].name + " x" +
           std::to_string(f.k) + " |" + (mk.empty() ? "" : " " + mk) + "\n";
  }
  return out;
}

// ---- text format ----------------------------------------------------------

inline NetWithMarking parse_net(std::string_view text) {
  NetWithMarking out;
  std::vector<Tokens> init;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> tok;
    std::vector<std::size_t> col;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tok.push_back(line.substr(i, j - i));
      col.push_back(i + 1);
      i = j;
    }
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg, std::size_t i) {
      return ParseError(msg, line_no, col[std::min(i, tok.size() - 1)]);
    };
    auto number = [&](std::size_t i, bool positive) -> Tokens {
      if (i >= tok.size()) throw fail("missing number", i);
      const std::string& s = tok[i];
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 15) {
        throw fail("expected non-negative integer, got '" + s + "'", i);
      }
      Tokens v = std::stoll(s);
      if (positive && v == 0) throw fail("weight must be positive", i);
      return v;
    };
    auto wrap = [&](auto&& f, std::size_t i) {
      try {
        f();
      } catch (const InvalidArgument& e) {
        throw fail(e.what(), i);
      }
    };
    const std::string& kw = tok[0];
    if (kw == "place") {
      if (tok.size() != 3) throw fail("expected: place <name> <init>", 0);
      Tokens v = number(2, false);
      wrap([&] { out.net.add_place(tok[1]); }, 1);
      init.push_back(v);
    } else if (kw == "trans") {
      if (tok.size() != 2) throw fail("expected: trans <name>", 0);
      wrap([&] { out.net.add_transition(tok[1]); }, 1);
    } else if (kw == "arc") {
      if (tok.size() != 5 || tok[2] != "->") throw fail("expected: arc <from> -> <to> <w>", 0);
      Tokens w = number(4, true);
      auto p_from = out.net.find_place(tok[1]);
      auto t_to = out.net.find_transition(tok[3]);
      auto t_from = out.net.find_transition(tok[1]);
      auto p_to = out.net.find_place(tok[3]);
      bool as_input = p_from && t_to;
      bool as_output = t_from && p_to;
      if (as_input && as_output) throw fail("ambiguous arc: names are both places and transitions", 1);
      if (as_input) {
        out.net.add_input(*p_from, *t_to, w);
      } else if (as_output) {
        out.net.add_output(*t_from, *p_to, w);
      } else if (!p_from && !t_from) {
        throw fail("unknown node '" + tok[1] + "'", 1);
      } else {
        throw fail("unknown or mismatched node '" + tok[3] + "'", 3);
      }
    } else if (kw == "inhib") {
      if (tok.size() != 5 || tok[2] != "-o") throw fail("expected: inhib <place> -o <trans> <w>", 0);
      Tokens w = number(4, true);
      auto p = out.net.find_place(tok[1]);
      if (!p) throw fail("unknown place '" + tok[1] + "'", 1);
      auto t = out.net.find_transition(tok[3]);
      if (!t) throw fail("unknown transition '" + tok[3] + "'", 3);
      out.net.add_inhibitor(*p, *t, w);
    } else {
      throw fail("unknown directive '" + kw + "'", 0);
    }
  }
  out.marking = init;
  return out;
}

inline std::string format_net(const SleptsovNet& net, const Marking& m) {
  std::string out;
  for (std::size_t p = 0; p < net.place_count(); ++p)
    out += "place " + net.places()[p] + " " + std::to_string(m.at(p)) + "\n";
  for (const auto& t : net.transitions()) out += "trans " + t.name + "\n";
  for (const auto& t : net.transitions()) {
    for (const auto& a : t.inputs)
      out += "arc " + net.places()[a.place] + " -> " + t.name + " " + std::to_string(a.weight) + "\n";
    for (const auto& a : t.outputs)
      out += "arc " + t.name + " -> " + net.places()[a.place] + " " + std::to_string(a.weight) + "\n";
    for (const auto& a : t.inhibitors)
      out += "inhib " + net.places()[a.place] + " -o " + t.name + " " + std::to_string(a.weight) + "\n";
  }
  return out;
}

inline std::string format_net(const NetWithMarking& n) { return format_net(n.net, n.marking); }

}  // namespace ppc::sleptsov
