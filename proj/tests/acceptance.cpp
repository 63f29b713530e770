// Acceptance runner: one PASS/FAIL line per criterion, exit code 1 if any fail.
//   acceptance [path-to-ppc-cli]
// The calibration report is written to ./ca_calibration.json.

#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "ppc/ca/engine.hpp"
#include "ppc/ca/io.hpp"
#include "ppc/cubelets/corpus.hpp"
#include "ppc/cubelets/sim.hpp"
#include "ppc/harness/verify.hpp"
#include "ppc/sleptsov/compile.hpp"
#include "ppc/sleptsov/explore.hpp"
#include "ppc/sleptsov/models.hpp"
#include "tables.hpp"

namespace fs = std::filesystem;
namespace ca = ppc::ca;
namespace cb = ppc::cubelets;
namespace sp = ppc::sleptsov;
namespace hn = ppc::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failed check, keeps going so the detail is useful.
class Check {
 public:
  void operator()(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  Outcome& outcome() { return out_; }

 private:
  Outcome out_;
};

std::string cli_path;
bool channel_ok = false;  // criteria 1 and 2 gate the CA fallback
bool rule_ok = false;

int f(std::array<int, 9> v) {
  int n = 0;
  for (std::size_t i = 1; i < 9; ++i) n += v[i];
  return ca::b2s2345().next(v[0] != 0, n) ? 1 : 0;
}

Outcome rule_correctness() {
  Check ck;
  ck(f({0, 0, 0, 0, 0, 0, 1, 0, 0}) == 0, "reference case 1");
  ck(f({0, 0, 0, 1, 0, 0, 0, 1, 0}) == 1, "reference case 2");
  ck(f({1, 0, 0, 0, 1, 1, 0, 1, 0}) == 1, "reference case 3");
  ck(f({1, 0, 1, 1, 1, 0, 1, 1, 1}) == 0, "reference case 4");
  std::mt19937 rng(20240601);
  std::bernoulli_distribution bit(0.5);
  for (int i = 0; i < 10000; ++i) {
    std::array<int, 9> v{};
    int live = 0;
    for (std::size_t k = 0; k < 9; ++k) {
      v[k] = bit(rng) ? 1 : 0;
      if (k) live += v[k];
    }
    ck(f(v) == gen::rule_oracle(v[0], live), "random neighbourhood " + std::to_string(i));
  }
  ck(ca::format_rule(ca::parse_rule("B2/S2345")) == "B2/S2345", "rule text round trip");
  if (ck.outcome().pass) ck.outcome().detail = "4 reference cases, 10000 random neighbourhoods";
  rule_ok = ck.outcome().pass;
  return ck.outcome();
}

Outcome signal_encoding() {
  Check ck;
  std::ostringstream d;
  for (int bit : {0, 1}) {
    auto s = ca::place_signal(ca::build_channel(60, 5), "main", bit);
    auto probe = ca::probe_across(s.channel("main"), 40, 4);
    auto want = bit ? ca::PatternClass::One : ca::PatternClass::Zero;
    ca::Lattice l = s.lattice;
    int arrival = -1, stable = 0;
    for (int t = 1; t <= 200; ++t) {
      l = ca::step(l, ca::b2s2345());
      auto c = ca::classify_output(l, probe);
      if (arrival < 0 && c != ca::PatternClass::None) arrival = t;
      if (arrival >= 0) {
        ck(c == want, "bit " + std::to_string(bit) + " misread at step " + std::to_string(t));
        ++stable;
      }
    }
    ck(arrival > 0, "bit " + std::to_string(bit) + " never reached the probe");
    ck(stable >= 100, "bit " + std::to_string(bit) + " only " + std::to_string(stable) + " stable steps");
    auto r = ca::read_probe(s.lattice, ca::b2s2345(), probe, 400, 10);
    ck(r.first == want && r.settled == want, "bit " + std::to_string(bit) + " settle-window recheck");
    d << "bit" << bit << " arrives t=" << arrival << " stable " << stable << " steps; ";
  }
  if (ck.outcome().pass) ck.outcome().detail = d.str() + "width 5, length 60, probe at 40";
  channel_ok = ck.outcome().pass;
  return ck.outcome();
}

Outcome ca_majority() {
  Check ck;
  fs::path golden = fs::path(PPC_DATA_DIR) / "golden";
  if (auto cfg = hn::load_ca_fixture(golden.string())) {
    auto o = ca::evaluate_config(*cfg);
    ck(o.correct() == 8, "frozen config replays " + std::to_string(o.correct()) + "/8");
    if (ck.outcome().pass) ck.outcome().detail = "frozen config replays 8/8";
    return ck.outcome();
  }
  // No frozen config: search the grid and take the documented fallback.
  auto grid = ca::default_calibration_grid();
  ck(grid.size() <= 500, "grid larger than 500");
  auto rep = ca::calibrate_gate(grid);
  auto j = ca::calibration_to_json(rep);
  std::ofstream("ca_calibration.json") << j.dump(2) << '\n';
  if (rep.found) {
    ck(false, "grid found a config but none is frozen; run `ppc ca calibrate --out data/golden/ca_majority.json`");
    return ck.outcome();
  }
  hn::VerifyOptions opt;
  opt.golden_dir = golden.string();
  auto v = hn::verify(hn::Circuit::Maj, hn::Backend::Ca, opt);
  ck(v.status() == "skipped", "verify maj --backends ca did not report SKIPPED");
  ck(rule_ok && channel_ok, "fallback requires criteria 1-2");
  ck(fs::exists("ca_calibration.json"), "calibration report not written");
  if (ck.outcome().pass)
    ck.outcome().detail = "fallback: grid exhausted (" + std::to_string(rep.outcomes.size()) +
                          " configs, best " + std::to_string(j["best_correct"].get<int>()) +
                          "/8), report in ca_calibration.json, verify ca SKIPPED";
  return ck.outcome();
}

Outcome corpus_parsing() {
  Check ck;
  using A = std::array<int, 3>;
  for (const auto& e : cb::corpus::kAll) {
    try {
      auto expr = cb::parse(e.text);
      ck(cb::validate(expr).collisions.empty(), std::string(e.name) + " collides");
      cb::expand(expr);
    } catch (const ppc::Error& err) {
      ck(false, std::string(e.name) + ": " + err.what());
    }
  }
  auto census = [](std::string_view t) { return cb::census(cb::corpus::load(t)); };
  auto scar = census(cb::corpus::w_scar);
  ck(scar.mass == 3 && scar.volume == A{3, 1, 1}, "w_scar");
  ck(census(cb::corpus::w_fire).mass == 3, "w_fire");
  auto acar = census(cb::corpus::w_acar);
  ck(acar.mass == 8 && acar.volume == A{3, 2, 3}, "w_acar");
  auto lg = census(cb::corpus::w_lg);
  ck(lg.mass == 9 && lg.volume == A{3, 3, 3}, "w_lg");
  auto tape = census(cb::corpus::w_lg_tape);
  ck(tape.mass == 10 && tape.volume == A{10, 1, 1}, "w_lg_tape");
  auto ba = census(cb::corpus::w_BA);
  auto n = [&](cb::CubeKind k) { return ba.counts.count(k) ? ba.counts.at(k) : 0; };
  ck(ba.mass == 39, "w_BA mass");
  ck(n(cb::CubeKind::fl) == 17 && n(cb::CubeKind::ba) == 10 && n(cb::CubeKind::di) == 5 &&
         n(cb::CubeKind::br) == 3 && n(cb::CubeKind::in) == 2 && n(cb::CubeKind::bo) == 2,
     "w_BA kind counts");
  if (ck.outcome().pass)
    ck.outcome().detail = std::to_string(cb::corpus::kAll.size()) + " strings, census matches";
  return ck.outcome();
}

Outcome cubelets_tables() {
  Check ck;
  std::size_t i = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c, ++i) ck(cb::eval_maj_cubelets(a, b, c) == (tables::kMaj[i] == 1), "maj row " + std::to_string(i));
  for (std::size_t r = 0; r < 4; ++r) {
    int a = static_cast<int>(r >> 1), b = static_cast<int>(r & 1);
    ck(cb::eval_and_cubelets(a, b) == (tables::kAnd[r] == 1), "and row " + std::to_string(r));
    ck(cb::eval_or_cubelets(a, b) == (tables::kOr[r] == 1), "or row " + std::to_string(r));
  }
  for (const auto& r : tables::kAdder) {
    auto o = cb::eval_adder_cubelets(r.a, r.b, r.cin);
    std::string row = std::to_string(r.a) + std::to_string(r.b) + std::to_string(r.cin);
    ck(o.nm1 == (r.nm1 == 1) && o.nm2 == (r.nm2 == 1) && o.nm3 == (r.nm3 == 1), "adder intermediates " + row);
    ck(o.cout == (r.cout == 1) && o.sum == (r.sum == 1), "adder outputs " + row);
  }
  if (ck.outcome().pass) ck.outcome().detail = "maj 8/8, and 4/4, or 4/4, adder 8/8 with intermediates";
  return ck.outcome();
}

Outcome sleptsov_semantics() {
  Check ck;
  // (a) one step drains 135 tokens
  sp::SleptsovNet one;
  auto p = one.add_place("p"), q = one.add_place("q");
  auto t = one.add_transition("t");
  one.add_input(p, t, 1);
  one.add_output(t, q, 1);
  auto m = one.empty_marking();
  m[p] = 135;
  auto tr = sp::run(one, m, 10);
  ck(tr.steps.size() == 1 && tr.steps[0].k == 135, "135 tokens did not move in one step");
  ck(tr.final_marking()[q] == 135 && tr.final_marking()[p] == 0, "135-token final marking");
  // (b) lamp net
  auto lamp = sp::build_lamp_net();
  auto g = sp::explore(lamp.net, lamp.marking);
  ck(g.unique_maximal_sequence(), "lamp has more than one maximal sequence");
  if (!g.maximal_sequences.empty()) {
    std::vector<std::string> names;
    for (auto i : g.maximal_sequences[0]) names.push_back(lamp.net.transitions()[i].name);
    ck(names == sp::lamp_sigma(), "lamp sequence differs from sigma");
  }
  // (c) multiplicity collapse
  std::mt19937 rng(1234);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto net = gen::random_net(rng, false);
    auto m0 = gen::random_marking(rng, net);
    for (std::size_t ti = 0; ti < net.transition_count(); ++ti) {
      auto k = sp::multiplicity(net, m0, ti);
      if (k == 0 || net.transitions()[ti].inputs.empty()) continue;
      auto once = sp::fire(net, m0, ti, k);
      auto stepwise = m0;
      for (sp::Tokens r = 0; r < k; ++r) stepwise = sp::fire(net, stepwise, ti, 1);
      ck(once == stepwise, "collapse fails on net " + std::to_string(trial));
      ++checked;
    }
  }
  if (ck.outcome().pass)
    ck.outcome().detail = "k=135 single step; lamp sigma unique; collapse on 1000 nets (" +
                          std::to_string(checked) + " firings)";
  return ck.outcome();
}

Outcome table_six() {
  Check ck;
  std::size_t i = 0;
  std::ostringstream d;
  for (sp::Tokens a : {0, 255})
    for (sp::Tokens b : {0, 255})
      for (sp::Tokens c : {0, 255}) {
        auto light = sp::maj_net_eval(a, b, c);
        d << (i ? "," : "(") << light;
        ck(light == tables::kMajLight[i], "cortege " + std::to_string(i) + " gives " + std::to_string(light));
        ck(sp::threshold_classify(light, 78) == (tables::kMaj[i] == 1), "threshold row " + std::to_string(i));
        ++i;
      }
  if (ck.outcome().pass) ck.outcome().detail = d.str() + "), threshold 78 gives MAJ";
  return ck.outcome();
}

Outcome cross_backend() {
  Check ck;
  for (auto b : {hn::Backend::Cubelets, hn::Backend::Sleptsov}) {
    auto r = hn::verify(hn::Circuit::Adder, b);
    ck(r.status() == "pass" && r.rows.size() == 8, "adder on " + hn::to_string(b));
  }
  if (!cli_path.empty()) {
    std::string cmd = "\"" + cli_path + "\" verify --circuit adder --backends cubelets,sleptsov > /dev/null";
    int rc = std::system(cmd.c_str());
    ck(rc == 0, "ppc verify exit status " + std::to_string(rc));
  }
  // lamp: compiled trace has the hand-built shape
  auto c = sp::compile(cb::parse_assembly("br . ba . fl"));
  sp::apply_stimulus(c, {{{0, 0, 0}, 135}});
  c.net.set("light", 22);
  auto names = sp::transition_names(c.net.net, sp::run(c.net.net, c.net.marking, 1000));
  auto hand = sp::build_lamp_net();
  ck(names == sp::transition_names(hand.net, sp::run(hand.net, hand.marking, 1000)), "lamp trace shape");
  // MAJ: every cortege
  auto proto = sp::compile(cb::corpus::majority_gate(), cb::gate::maj_profile());
  std::size_t i = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int cc = 0; cc < 2; ++cc, ++i) {
        auto n = proto;
        sp::apply_stimulus(n, cb::maj_stimulus(a, b, cc));
        auto fm = sp::run(n.net.net, n.net.marking, 1000).final_marking();
        ck(fm[n.net.net.place("lightD2")] == sp::maj_net_eval(a * 255, b * 255, cc * 255),
           "compiled maj cortege " + std::to_string(i));
      }
  if (ck.outcome().pass)
    ck.outcome().detail = std::string("adder 8/8 on both backends") + (cli_path.empty() ? "" : ", cli exit 0") +
                          "; compiled lamp and maj agree with hand-built nets";
  return ck.outcome();
}

Outcome round_trip() {
  Check ck;
  for (const auto& e : cb::corpus::kAll) {
    auto a = cb::corpus::load(e.text);
    ck(cb::expand(cb::parse(cb::format(a))) == a, std::string(e.name));
  }
  std::mt19937 rng(424242);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen::random_assembly(rng);
    try {
      ck(cb::expand(cb::parse(cb::format(a))) == a, "random assembly " + std::to_string(i));
    } catch (const ppc::Error& err) {
      ck(false, "random assembly " + std::to_string(i) + ": " + err.what());
    }
  }
  if (ck.outcome().pass) ck.outcome().detail = "11 corpus + 1000 random assemblies";
  return ck.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const Criterion all[] = {
      {1, "rule correctness", 1, rule_correctness},
      {2, "signal encoding", 5, signal_encoding},
      {3, "CA majority gate", 600, ca_majority},
      {4, "corpus parsing", 1, corpus_parsing},
      {5, "cubelets gate tables", 5, cubelets_tables},
      {6, "sleptsov semantics", 30, sleptsov_semantics},
      {7, "maj net light table", 1, table_six},
      {8, "cross-backend equivalence", 30, cross_backend},
      {9, "round trip", 10, round_trip},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over time budget)";
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s [%.2fs / %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
