#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppc/ca/io.hpp"
#include "ppc/cubelets/sim.hpp"
#include "ppc/sleptsov/models.hpp"

namespace ppc::harness {

using nlohmann::json;

enum class Circuit { Maj, NotMaj, And, Or, Adder };
enum class Backend { Ca, Cubelets, Sleptsov };

inline std::string to_string(Circuit c) {
  switch (c) {
    case Circuit::Maj: return "maj";
    case Circuit::NotMaj: return "notmaj";
    case Circuit::And: return "and";
    case Circuit::Or: return "or";
    case Circuit::Adder: return "adder";
  }
  return "?";
}

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::Ca: return "ca";
    case Backend::Cubelets: return "cubelets";
    case Backend::Sleptsov: return "sleptsov";
  }
  return "?";
}

inline Circuit circuit_from_string(const std::string& s) {
  for (auto c : {Circuit::Maj, Circuit::NotMaj, Circuit::And, Circuit::Or, Circuit::Adder})
    if (to_string(c) == s) return c;
  throw InvalidArgument("unknown circuit '" + s + "'");
}

inline Backend backend_from_string(const std::string& s) {
  for (auto b : {Backend::Ca, Backend::Cubelets, Backend::Sleptsov})
    if (to_string(b) == s) return b;
  throw InvalidArgument("unknown backend '" + s + "'");
}

inline std::vector<std::string> input_names(Circuit c) {
  if (c == Circuit::And || c == Circuit::Or) return {"a", "b"};
  if (c == Circuit::Adder) return {"a", "b", "cin"};
  return {"a", "b", "c"};
}

inline std::vector<std::string> output_names(Circuit c) {
  if (c == Circuit::Adder) return {"nm1", "nm2", "nm3", "cout", "sum"};
  return {"out"};
}

using Bits = std::map<std::string, int>;

inline int maj3(int a, int b, int c) { return (a & b) | (a & c) | (b & c); }

// Expected outputs for one input row (inputs in table order, MSB first).
inline Bits golden_row(Circuit c, const std::vector<int>& in) {
  switch (c) {
    case Circuit::Maj: return {{"out", maj3(in[0], in[1], in[2])}};
    case Circuit::NotMaj: return {{"out", 1 - maj3(in[0], in[1], in[2])}};
    case Circuit::And: return {{"out", in[0] & in[1]}};
    case Circuit::Or: return {{"out", in[0] | in[1]}};
    case Circuit::Adder: {
      int a = in[0], b = in[1], ci = in[2];
      int nm1 = 1 - maj3(a, b, ci);
      int nm2 = 1 - maj3(a, b, 1 - ci);
      int cout = 1 - nm1;
      int nm3 = 1 - maj3(cout, 1 - ci, nm2);
      return {{"nm1", nm1}, {"nm2", nm2}, {"nm3", nm3}, {"cout", cout}, {"sum", nm3}};
    }
  }
  return {};
}

struct RowResult {
  std::vector<int> inputs;
  Bits observed;
  Bits expected;
  std::map<std::string, long long> analog;  // backend-specific readings
  std::string error;
  bool pass = false;
};

struct TruthTableReport {
  Circuit circuit = Circuit::Maj;
  Backend backend = Backend::Cubelets;
  bool skipped = false;
  std::string reason;
  std::vector<RowResult> rows;

  bool pass() const {
    if (skipped) return true;
    for (const auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
  std::string status() const { return skipped ? "skipped" : pass() ? "pass" : "fail"; }
};

inline constexpr const char* kGoldenEnv = "PPC_GOLDEN_DIR";
inline constexpr const char* kCaFixture = "ca_majority.json";

struct VerifyOptions {
  std::string golden_dir;      // where the CA fixture lives
  int threshold = cubelets::gate::kMajThreshold;
};

// --golden beats the environment, which beats the built-in default.
inline std::string resolve_golden_dir(const std::string& flag, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kGoldenEnv); env && *env) return env;
  return fallback;
}

inline std::optional<ca::GateConfig> load_ca_fixture(const std::string& dir) {
  if (dir.empty()) return std::nullopt;
  std::filesystem::path p = std::filesystem::path(dir) / kCaFixture;
  std::ifstream in(p);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("bad CA fixture '" + p.string() + "': " + e.what());
  }
  return ca::gate_config_from_json(j.contains("config") ? j.at("config") : j);
}

namespace detail {

inline sleptsov::Tokens level(int bit) { return bit ? sleptsov::kFull : 0; }

inline void eval_row(Circuit c, Backend b, const VerifyOptions& opt,
                     const std::optional<ca::GateConfig>& ca_cfg, RowResult& r) {
  const auto& in = r.inputs;
  const int th = opt.threshold;
  auto third = [&]() -> int {
    if (c == Circuit::And) return 0;
    if (c == Circuit::Or) return 1;
    return in[2];
  };
  switch (b) {
    case Backend::Ca:
      r.observed["out"] = ca::eval_majority_ca(*ca_cfg, in[0], in[1], in[2]);
      break;
    case Backend::Cubelets:
      if (c == Circuit::Adder) {
        auto o = cubelets::eval_adder_cubelets(in[0], in[1], in[2]);
        r.observed = {{"nm1", o.nm1}, {"nm2", o.nm2}, {"nm3", o.nm3}, {"cout", o.cout}, {"sum", o.sum}};
      } else {
        int sensed = cubelets::maj_sensed_cubelets(in[0], in[1], third());
        r.analog["sensed"] = sensed;
        if (c == Circuit::NotMaj) {
          r.observed["out"] = cubelets::eval_not_maj_cubelets(
              in[0], in[1], in[2], cubelets::NotMajVariant::InverseCube, th);
        } else {
          r.observed["out"] = sensed >= th ? 1 : 0;
        }
      }
      break;
    case Backend::Sleptsov:
      if (c == Circuit::Adder) {
        auto o = sleptsov::adder_net_eval(level(in[0]), level(in[1]), level(in[2]));
        auto bit = [](sleptsov::Tokens v) { return v > 127 ? 1 : 0; };
        r.observed = {{"nm1", bit(o.nm1)}, {"nm2", bit(o.nm2)}, {"nm3", bit(o.nm3)},
                      {"cout", bit(o.cout)}, {"sum", bit(o.sum)}};
      } else if (c == Circuit::NotMaj) {
        auto v = sleptsov::not_maj_net_eval(level(in[0]), level(in[1]), level(in[2]), th);
        r.analog["out"] = v;
        r.observed["out"] = v > 127 ? 1 : 0;
      } else {
        auto light = sleptsov::maj_net_eval(level(in[0]), level(in[1]), level(third()));
        r.analog["lightD2"] = light;
        r.observed["out"] = sleptsov::threshold_classify(light, th) ? 1 : 0;
      }
      break;
  }
}

}  // namespace detail

inline TruthTableReport verify(Circuit c, Backend b, const VerifyOptions& opt = {}) {
  TruthTableReport rep;
  rep.circuit = c;
  rep.backend = b;
  std::optional<ca::GateConfig> ca_cfg;
  if (b == Backend::Ca) {
    if (c != Circuit::Maj) {
      rep.skipped = true;
      rep.reason = "the CA backend only builds the majority gate";
      return rep;
    }
    ca_cfg = load_ca_fixture(opt.golden_dir);
    if (!ca_cfg) {
      rep.skipped = true;
      rep.reason = "no calibrated CA gate fixture in '" + opt.golden_dir + "'";
      return rep;
    }
  }
  const std::size_t arity = input_names(c).size();
  for (std::size_t row = 0; row < (1u << arity); ++row) {
    RowResult r;
    for (std::size_t i = 0; i < arity; ++i) r.inputs.push_back(static_cast<int>((row >> (arity - 1 - i)) & 1));
    r.expected = golden_row(c, r.inputs);
    try {
      detail::eval_row(c, b, opt, ca_cfg, r);
      r.pass = r.observed == r.expected;
    } catch (const Error& e) {
      r.error = e.what();
      r.pass = false;
    }
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

inline json to_json(const TruthTableReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr{{"inputs", row.inputs},
            {"observed", row.observed},
            {"expected", row.expected},
            {"verdict", row.pass ? "pass" : "fail"}};
    if (!row.analog.empty()) jr["analog"] = row.analog;
    if (!row.error.empty()) jr["error"] = row.error;
    rows.push_back(jr);
  }
  json j{{"circuit", to_string(r.circuit)},
         {"backend", to_string(r.backend)},
         {"status", r.status()},
         {"input_names", input_names(r.circuit)},
         {"output_names", output_names(r.circuit)},
         {"rows", rows},
         {"pass", r.pass()}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

}  // namespace ppc::harness
