#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppc/ca/io.hpp"
#include "ppc/cubelets/sim.hpp"
#include "ppc/harness/report.hpp"
#include "ppc/harness/verify.hpp"
#include "ppc/sleptsov/compile.hpp"
#include "ppc/sleptsov/explore.hpp"

#ifndef PPC_DEFAULT_GOLDEN_DIR
#define PPC_DEFAULT_GOLDEN_DIR ""
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ppc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

// ---- rule-test ---------------------------------------------------------------

int cmd_rule_test(const std::string& text) {
  auto rule = ca::parse_rule(text);
  json birth = json::array(), survival = json::array();
  for (int i = 0; i < 9; ++i) {
    if (rule.birth.test(static_cast<std::size_t>(i))) birth.push_back(i);
    if (rule.survival.test(static_cast<std::size_t>(i))) survival.push_back(i);
  }
  // centre first, then the eight neighbours
  const std::array<std::array<int, 9>, 4> cases{{{0, 0, 0, 0, 0, 0, 1, 0, 0},
                                                 {0, 0, 0, 1, 0, 0, 0, 1, 0},
                                                 {1, 0, 0, 0, 1, 1, 0, 1, 0},
                                                 {1, 0, 1, 1, 1, 0, 1, 1, 1}}};
  json jc = json::array();
  for (const auto& c : cases) {
    int n = 0;
    for (int i = 1; i < 9; ++i) n += c[static_cast<std::size_t>(i)];
    jc.push_back({{"cells", c}, {"next", rule.next(c[0] != 0, n) ? 1 : 0}});
  }
  emit({{"rule", ca::format_rule(rule)}, {"birth", birth}, {"survival", survival}, {"cases", jc}});
  return 0;
}

// ---- ca ------------------------------------------------------------------------

struct CaRunArgs {
  std::string scene, rule = "B2/S2345", frames, format = "ascii";
  int steps = 0, every = 1;
};

int cmd_ca_run(const CaRunArgs& a) {
  auto scene = ca::load_scene(a.scene);
  auto rule = ca::parse_rule(a.rule);
  if (a.every < 1) throw InvalidArgument("--every must be positive");
  if (!a.frames.empty()) fs::create_directories(a.frames);
  json frames = json::array(), population = json::array();
  auto observer = [&](int t, const ca::Lattice& l) {
    population.push_back(l.population());
    if (a.frames.empty() || (t % a.every != 0 && t != a.steps)) return;
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.%s", t, a.format == "pgm" ? "pgm" : "txt");
    fs::path p = fs::path(a.frames) / name;
    std::ofstream out(p, std::ios::binary);
    out << (a.format == "pgm" ? ca::frame_pgm(l) : ca::frame_ascii(l));
    frames.push_back(p.string());
  };
  auto final = ca::run(scene.lattice, rule, a.steps, observer);
  json probes = json::object();
  for (const auto& [name, p] : scene.probes) probes[name] = ca::to_string(ca::classify_output(final, p));
  emit({{"scene", a.scene}, {"rule", ca::format_rule(rule)}, {"steps", a.steps},
        {"population", population}, {"frames", frames}, {"probes", probes}});
  return 0;
}

struct CaSceneArgs {
  std::string kind = "channel", bits = "0", golden;
  int length = 60, width = 5, probe = 40;
};

int cmd_ca_scene(const CaSceneArgs& a) {
  ca::ChannelScene scene;
  if (a.kind == "channel") {
    if (a.bits != "0" && a.bits != "1") throw InvalidArgument("--bits must be 0 or 1 for a channel");
    scene = ca::place_signal(ca::build_channel(a.length, a.width), "main", a.bits == "1");
    scene.probes["out"] = ca::probe_across(scene.channel("main"), a.probe, 4);
  } else if (a.kind == "majority") {
    if (a.bits.size() != 3 || a.bits.find_first_not_of("01") != std::string::npos) {
      throw InvalidArgument("--bits must be three binary digits for a majority scene");
    }
    ca::GateConfig cfg;
    std::string dir = harness::resolve_golden_dir(a.golden, PPC_DEFAULT_GOLDEN_DIR);
    if (auto fixture = harness::load_ca_fixture(dir)) cfg = *fixture;
    scene = ca::build_majority_scene(cfg, a.bits[0] - '0', a.bits[1] - '0', a.bits[2] - '0');
  } else {
    throw InvalidArgument("unknown scene kind '" + a.kind + "'");
  }
  emit(ca::scene_to_json(scene));
  return 0;
}

int cmd_ca_calibrate(const std::string& out, int limit) {
  auto grid = ca::default_calibration_grid();
  if (limit >= 0 && static_cast<std::size_t>(limit) < grid.size()) grid.resize(static_cast<std::size_t>(limit));
  auto report = ca::calibrate_gate(grid);
  json j = ca::calibration_to_json(report);
  if (report.found && !out.empty()) {
    std::ofstream f(out);
    f << json{{"config", ca::gate_config_to_json(*report.found)}}.dump(2) << "\n";
  }
  emit(j);
  return 0;
}

// ---- robot ---------------------------------------------------------------------

struct RobotArgs {
  std::string file, stimulus, profile;
  bool strict = false;
};

int cmd_robot(const std::string& sub, const RobotArgs& a) {
  auto expr = cubelets::parse(slurp(a.file));
  std::string name = expr.name.empty() ? stem(a.file) : expr.name;
  if (sub == "parse") {
    emit(harness::parse_report(expr));
    return 0;
  }
  if (sub == "validate") {
    emit(harness::validation_report(name, cubelets::validate(expr, a.strict)));
    return 0;
  }
  auto assembly = cubelets::expand(expr);
  cubelets::Stimulus stim;
  if (!a.stimulus.empty()) stim = harness::stimulus_from_json(json::parse(slurp(a.stimulus)));
  if (sub == "census") {
    emit(harness::census_report(name, cubelets::census(assembly)));
    return 0;
  }
  auto profile = cubelets::profile_by_name(a.profile);
  if (sub == "simulate") {
    auto state = cubelets::settle(assembly, stim, cubelets::programs_for(a.profile), profile);
    emit(harness::simulation_report(name, a.profile, stim, state));
    return 0;
  }
  if (sub == "compile") {
    auto compiled = sleptsov::compile(assembly, profile);
    sleptsov::apply_stimulus(compiled, stim);
    std::cout << "# compiled from " << name << "\n" << sleptsov::format_net(compiled.net);
    return 0;
  }
  throw InvalidArgument("unknown robot subcommand '" + sub + "'");
}

// ---- net -----------------------------------------------------------------------

int cmd_net(const std::string& sub, const std::string& file, std::size_t max_steps,
            std::size_t depth, std::size_t cap, bool as_text) {
  auto n = sleptsov::parse_net(slurp(file));
  if (sub == "run") {
    auto tr = sleptsov::run(n.net, n.marking, max_steps);
    if (as_text) {
      std::cout << sleptsov::format_trace(n.net, tr) << "# " << sleptsov::to_string(tr.status)
                << " after " << tr.steps.size() << " steps\n";
    } else {
      emit(harness::trace_report(n.net, tr));
    }
    return 0;
  }
  sleptsov::ExploreLimits lim;
  lim.depth = depth;
  lim.state_cap = cap;
  emit(harness::explore_report(n.net, sleptsov::explore(n.net, n.marking, lim)));
  return 0;
}

// ---- verify --------------------------------------------------------------------

int cmd_verify(const std::string& circuit, const std::string& backends, const std::string& golden,
               int threshold) {
  auto c = harness::circuit_from_string(circuit);
  harness::VerifyOptions opt;
  opt.golden_dir = harness::resolve_golden_dir(golden, PPC_DEFAULT_GOLDEN_DIR);
  opt.threshold = threshold;
  json reports = json::array();
  bool ok = true;
  std::stringstream ss(backends);
  for (std::string b; std::getline(ss, b, ',');) {
    if (b.empty()) continue;
    auto rep = harness::verify(c, harness::backend_from_string(b), opt);
    ok = ok && rep.pass();
    reports.push_back(harness::to_json(rep));
    if (!rep.pass())
      for (const auto& r : rep.rows)
        if (!r.pass) {
          std::cerr << b << " row";
          for (int i : r.inputs) std::cerr << ' ' << i;
          std::cerr << (r.error.empty() ? ": output mismatch" : ": " + r.error) << "\n";
        }
  }
  if (reports.empty()) throw InvalidArgument("no backends given");
  emit({{"circuit", circuit}, {"reports", reports}, {"pass", ok}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propagating-pattern workbench"};
  app.require_subcommand(1);

  std::string rule_text;
  auto* rule_test = app.add_subcommand("rule-test", "parse a B/S rule and evaluate sample cells");
  rule_test->add_option("rule", rule_text)->required();

  auto* ca_cmd = app.add_subcommand("ca", "cellular automaton");
  ca_cmd->require_subcommand(1);
  CaRunArgs run_args;
  auto* ca_run = ca_cmd->add_subcommand("run", "run a scene and dump frames");
  ca_run->add_option("--scene", run_args.scene)->required();
  ca_run->add_option("--rule", run_args.rule);
  ca_run->add_option("--steps", run_args.steps)->required()->check(CLI::NonNegativeNumber);
  ca_run->add_option("--frames", run_args.frames);
  ca_run->add_option("--format", run_args.format)->check(CLI::IsMember({"ascii", "pgm"}));
  ca_run->add_option("--every", run_args.every);
  CaSceneArgs scene_args;
  auto* ca_scene = ca_cmd->add_subcommand("scene", "write a scene file to stdout");
  ca_scene->add_option("--kind", scene_args.kind)->check(CLI::IsMember({"channel", "majority"}));
  ca_scene->add_option("--bits", scene_args.bits);
  ca_scene->add_option("--length", scene_args.length);
  ca_scene->add_option("--width", scene_args.width);
  ca_scene->add_option("--probe", scene_args.probe);
  ca_scene->add_option("--golden", scene_args.golden);
  std::string calib_out;
  int calib_limit = -1;
  auto* ca_cal = ca_cmd->add_subcommand("calibrate", "search the majority gate grid");
  ca_cal->add_option("--out", calib_out, "fixture file written when a config is found");
  ca_cal->add_option("--limit", calib_limit, "only the first N grid points");

  RobotArgs robot_args;
  std::string robot_sub;
  auto* robot = app.add_subcommand("robot", "Cubelets robot strings");
  robot->add_option("action", robot_sub)
      ->required()
      ->check(CLI::IsMember({"parse", "validate", "census", "simulate", "compile"}));
  robot->add_option("file", robot_args.file)->required();
  robot->add_option("--stimulus", robot_args.stimulus);
  robot->add_option("--profile", robot_args.profile)->check(CLI::IsMember({"maj-gate", "adder"}));
  robot->add_flag("--strict", robot_args.strict, "also require right-handed orientations");

  std::string net_sub, net_file;
  std::size_t max_steps = 10000, depth = 1000, cap = 1000000;
  bool net_text = false;
  auto* net = app.add_subcommand("net", "Sleptsov nets");
  net->add_option("action", net_sub)->required()->check(CLI::IsMember({"run", "explore"}));
  net->add_option("file", net_file)->required();
  net->add_option("--max-steps", max_steps);
  net->add_option("--depth", depth);
  net->add_option("--state-cap", cap);
  net->add_flag("--text", net_text, "one trace line per firing instead of JSON");

  std::string circuit, backends, golden;
  int threshold = cubelets::gate::kMajThreshold;
  auto* verify = app.add_subcommand("verify", "truth tables across backends");
  verify->add_option("--circuit", circuit)
      ->required()
      ->check(CLI::IsMember({"maj", "notmaj", "and", "or", "adder"}));
  verify->add_option("--backends", backends)->required();
  verify->add_option("--golden", golden);
  verify->add_option("--threshold", threshold, "majority decision threshold")->check(CLI::Range(1, 255));

  // exit codes: 0 ok, 1 a verification row failed, 2 usage or input error
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*rule_test) return cmd_rule_test(rule_text);
    if (*ca_run) return cmd_ca_run(run_args);
    if (*ca_scene) return cmd_ca_scene(scene_args);
    if (*ca_cal) return cmd_ca_calibrate(calib_out, calib_limit);
    if (*robot) return cmd_robot(robot_sub, robot_args);
    if (*net) return cmd_net(net_sub, net_file, max_steps, depth, cap, net_text);
    if (*verify) return cmd_verify(circuit, backends, golden, threshold);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
