#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ppc/harness/report.hpp"
#include "ppc/harness/verify.hpp"
#include "tables.hpp"

using namespace ppc::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("ppc_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Golden, RowsMatchHandTables) {
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& r = tables::kAdder[i];
    auto g = golden_row(Circuit::Adder, {r.a, r.b, r.cin});
    EXPECT_EQ(g, (Bits{{"nm1", r.nm1}, {"nm2", r.nm2}, {"nm3", r.nm3}, {"cout", r.cout}, {"sum", r.sum}}));
    int a = static_cast<int>(i >> 2) & 1, b = static_cast<int>(i >> 1) & 1, c = static_cast<int>(i) & 1;
    EXPECT_EQ(golden_row(Circuit::Maj, {a, b, c}).at("out"), tables::kMaj[i]);
    EXPECT_EQ(golden_row(Circuit::NotMaj, {a, b, c}).at("out"), 1 - tables::kMaj[i]);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    int a = static_cast<int>(i >> 1), b = static_cast<int>(i) & 1;
    EXPECT_EQ(golden_row(Circuit::And, {a, b}).at("out"), tables::kAnd[i]);
    EXPECT_EQ(golden_row(Circuit::Or, {a, b}).at("out"), tables::kOr[i]);
  }
}

TEST(Verify, CubeletsAndNetsPassEveryCircuit) {
  for (auto c : {Circuit::Maj, Circuit::NotMaj, Circuit::And, Circuit::Or, Circuit::Adder})
    for (auto b : {Backend::Cubelets, Backend::Sleptsov}) {
      auto rep = verify(c, b);
      EXPECT_EQ(rep.status(), "pass") << to_string(c) << "/" << to_string(b);
      EXPECT_EQ(rep.rows.size(), c == Circuit::And || c == Circuit::Or ? 4u : 8u);
    }
}

TEST(Verify, RowsAreInTableOrderWithAnalogReadings) {
  auto rep = verify(Circuit::Maj, Backend::Sleptsov);
  ASSERT_EQ(rep.rows.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(rep.rows[i].inputs, (std::vector<int>{static_cast<int>(i >> 2) & 1,
                                                    static_cast<int>(i >> 1) & 1,
                                                    static_cast<int>(i) & 1}));
    EXPECT_EQ(rep.rows[i].analog.at("lightD2"), tables::kMajLight[i]);
  }
}

TEST(Verify, HighThresholdFailsWithDiagnostics) {
  VerifyOptions opt;
  opt.threshold = 200;
  auto rep = verify(Circuit::Maj, Backend::Cubelets, opt);
  EXPECT_EQ(rep.status(), "fail");
  int failing = 0;
  for (const auto& r : rep.rows) failing += !r.pass;
  EXPECT_EQ(failing, 4);  // every row whose majority is 1
  auto j = to_json(rep);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["rows"][7]["verdict"], "fail");
  EXPECT_EQ(j["rows"][7]["analog"]["sensed"], 125);
}

TEST(Verify, CaSkipsWithoutFixture) {
  VerifyOptions opt;
  opt.golden_dir = scratch_dir("empty").string();
  auto rep = verify(Circuit::Maj, Backend::Ca, opt);
  EXPECT_TRUE(rep.skipped);
  EXPECT_EQ(rep.status(), "skipped");
  EXPECT_TRUE(rep.pass());
  EXPECT_NE(rep.reason.find("fixture"), std::string::npos);
  EXPECT_EQ(verify(Circuit::Adder, Backend::Ca, opt).status(), "skipped");
  EXPECT_EQ(to_json(rep)["status"], "skipped");
}

TEST(Verify, CaRunsWhenFixturePresent) {
  auto dir = scratch_dir("fixture");
  ppc::ca::GateConfig cfg = ppc::ca::default_calibration_grid().front();
  std::ofstream(dir / kCaFixture) << json{{"config", ppc::ca::gate_config_to_json(cfg)}}.dump();
  VerifyOptions opt;
  opt.golden_dir = dir.string();
  auto loaded = load_ca_fixture(opt.golden_dir);
  ASSERT_TRUE(loaded);
  EXPECT_EQ(*loaded, cfg);
  auto rep = verify(Circuit::Maj, Backend::Ca, opt);
  EXPECT_FALSE(rep.skipped);
  EXPECT_EQ(rep.rows.size(), 8u);
  // whatever the gate does, each row is either observed or carries an error
  for (const auto& r : rep.rows) EXPECT_TRUE(r.observed.count("out") || !r.error.empty());

  std::ofstream(dir / kCaFixture) << "{ not json";
  EXPECT_THROW(load_ca_fixture(opt.golden_dir), ppc::InvalidArgument);
}

TEST(Verify, GoldenDirPrecedence) {
  ::unsetenv(kGoldenEnv);
  EXPECT_EQ(resolve_golden_dir("", "/default"), "/default");
  ::setenv(kGoldenEnv, "/from-env", 1);
  EXPECT_EQ(resolve_golden_dir("", "/default"), "/from-env");
  EXPECT_EQ(resolve_golden_dir("/flag", "/default"), "/flag");
  ::unsetenv(kGoldenEnv);
}

TEST(Names, RoundTrip) {
  for (auto c : {Circuit::Maj, Circuit::NotMaj, Circuit::And, Circuit::Or, Circuit::Adder})
    EXPECT_EQ(circuit_from_string(to_string(c)), c);
  for (auto b : {Backend::Ca, Backend::Cubelets, Backend::Sleptsov})
    EXPECT_EQ(backend_from_string(to_string(b)), b);
  EXPECT_THROW(circuit_from_string("xor"), ppc::InvalidArgument);
  EXPECT_THROW(backend_from_string("fpga"), ppc::InvalidArgument);
}

TEST(Reports, StimulusKeys) {
  auto s = stimulus_from_json(json{{"4,1,0", 255}, {"-1,2,3", 0}});
  EXPECT_EQ(s.at({4, 1, 0}), 255);
  EXPECT_EQ(s.at({-1, 2, 3}), 0);
  EXPECT_THROW(stimulus_from_json(json{{"4,1", 255}}), ppc::InvalidArgument);
  EXPECT_THROW(stimulus_from_json(json{{"4,1,0", "x"}}), ppc::InvalidArgument);
  EXPECT_THROW(stimulus_from_json(json::array()), ppc::InvalidArgument);
}

TEST(Reports, TraceAndExploreJson) {
  auto n = ppc::sleptsov::build_lamp_net();
  auto tr = ppc::sleptsov::run(n.net, n.marking, 100);
  auto j = trace_report(n.net, tr);
  EXPECT_EQ(j["status"], "deadlock");
  EXPECT_EQ(j["steps"].size(), 7u);
  EXPECT_EQ(j["steps"][3]["transition"], "br");
  EXPECT_EQ(j["steps"][3]["k"], 135);
  EXPECT_EQ(j["final"]["light"], 135);
  auto g = explore_report(n.net, ppc::sleptsov::explore(n.net, n.marking));
  EXPECT_EQ(g["unique_maximal_sequence"], true);
  EXPECT_EQ(g["maximal_sequences"][0].size(), 7u);
}

TEST(Reports, CensusAndValidation) {
  auto a = ppc::cubelets::corpus::load(ppc::cubelets::corpus::w_BA);
  auto c = census_report("w_BA", ppc::cubelets::census(a));
  EXPECT_EQ(c["mass"], 39);
  EXPECT_EQ(c["counts"]["fl"], 17);
  auto v = validation_report("w_BA", ppc::cubelets::validate(a));
  EXPECT_EQ(v["functional"], true);
  EXPECT_EQ(v["battery_count"], 10);
}
