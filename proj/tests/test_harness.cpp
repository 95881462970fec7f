#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace uplab;

namespace {

const Grid kGrid(256, 1.0 / 16.0);

json base_scenario() {
  return json::parse(R"({
    "name": "unit",
    "grid": {"n": 256, "dx": 0.0625},
    "signal": {"kind": "hermite", "order": 1},
    "sets": {"T": {"epsilon": 0.1}, "Omega": {"epsilon": 0.1}},
    "checks": ["all"]
  })");
}

struct Captured {
  int code;
  std::string out;
};

Captured run_cli(const std::string& args) {
  const std::string cmd = std::string(UPLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t r = fread(buf, 1, sizeof buf, p)) out.append(buf, r);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scenario_path(const std::string& name) { return std::string(UPLAB_SCENARIO_DIR) + "/" + name + ".json"; }

}  // namespace

TEST(Signals, GaussianSharesWindowConstructor) {
  SignalSpec s;
  s.kind = SignalKind::gaussian;
  s.lambda = 1.0;
  EXPECT_EQ(generate_signal(s, kGrid).samples(), gaussian_window(1.0, kGrid).signal.samples());
}

TEST(Signals, RandomIsDeterministic) {
  SignalSpec s;
  s.kind = SignalKind::random_bandlimited;
  s.seed = 7;
  EXPECT_EQ(generate_signal(s, kGrid).samples(), generate_signal(s, kGrid).samples());
  s.seed = 8;
  const Signal other = generate_signal(s, kGrid);
  s.seed = 7;
  EXPECT_NE(generate_signal(s, kGrid).samples(), other.samples());
  const Signal fh = fourier(generate_signal(s, kGrid));
  EXPECT_LT(edge_energy_fraction(fh), 1e-12);
}

TEST(Signals, HermiteFunctionsAreOrthonormal) {
  std::vector<Signal> h;
  for (int k = 0; k < 8; ++k) {
    SignalSpec s;
    s.kind = SignalKind::hermite;
    s.order = k;
    h.push_back(generate_signal(s, kGrid));
  }
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) EXPECT_NEAR(std::abs(inner(h[a], h[b])), a == b ? 1.0 : 0.0, 1e-10) << a << b;
  for (int j = 1; j < kGrid.size(); ++j) EXPECT_NEAR(h[1][j].real(), -h[1][kGrid.size() - j].real(), 1e-15);
  EXPECT_LT(std::abs(inner(h[1], gaussian_window(1.0, kGrid).signal)), 1e-10);
}

TEST(Signals, ErrorsAndKinds) {
  EXPECT_THROW(signal_kind_from_string("sawtooth"), std::invalid_argument);
  for (auto k : {SignalKind::gaussian, SignalKind::hermite, SignalKind::chirp, SignalKind::indicator,
                 SignalKind::modulated_gaussian, SignalKind::random_bandlimited, SignalKind::csv})
    EXPECT_EQ(signal_kind_from_string(to_string(k)), k);
  SignalSpec s;
  s.kind = SignalKind::indicator;
  s.half_width = 100.0;
  EXPECT_THROW(generate_signal(s, kGrid), std::invalid_argument);
  s.kind = SignalKind::csv;
  s.path = "/nonexistent/signal.csv";
  EXPECT_THROW(generate_signal(s, kGrid), FormatError);
}

TEST(Csv, RoundTripWithHeaderAndSidecar) {
  const Signal f = random_smooth_signal(kGrid, 4);
  std::stringstream ss;
  write_signal_csv(ss, f);
  const Signal back = read_signal_csv(ss);
  EXPECT_EQ(back.grid(), kGrid);
  EXPECT_EQ(back.samples(), f.samples());

  std::stringstream body;
  write_signal_csv(body, f);
  std::string text = body.str();
  text = text.substr(text.find('\n') + 1);
  std::istringstream no_header(text);
  EXPECT_THROW(read_signal_csv(no_header), FormatError);
  std::istringstream again(text);
  EXPECT_EQ(read_signal_csv(again, kGrid).samples(), f.samples());

  const auto dir = std::filesystem::temp_directory_path() / "uplab_csv_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "sig.csv") << text;
  std::ofstream(dir / "sig.json") << grid_to_json(kGrid).dump();
  EXPECT_EQ(load_signal_csv(dir / "sig.csv").samples(), f.samples());

  std::istringstream bad("# n=4 dx=1\n0,0,1\n");
  EXPECT_THROW(read_signal_csv(bad), FormatError);
  std::istringstream short_rows("# n=4 dx=1\n0,0,1,0\n");
  EXPECT_THROW(read_signal_csv(short_rows), FormatError);
}

TEST(Scenario, ParsesDefaultsAndAll) {
  const Scenario s = parse_scenario(base_scenario());
  EXPECT_EQ(s.checks, known_checks());
  EXPECT_EQ(s.n, 256);
  EXPECT_DOUBLE_EQ(*s.set_t.auto_epsilon, 0.1);
  json j = base_scenario();
  j["parameters"] = {{"price", {{{"q", "inf"}, {"alpha", 2}}}}, {"lambda1", 2.0}};
  j["tolerances"] = {{"lieb", 1e-4}};
  const Scenario t = parse_scenario(j);
  EXPECT_TRUE(std::isinf(t.price.at(0).q));
  EXPECT_DOUBLE_EQ(t.lambda1, 2.0);
  EXPECT_DOUBLE_EQ(t.tolerance_for("lieb"), 1e-4);
  EXPECT_DOUBLE_EQ(t.tolerance_for("heisenberg"), 1e-6);
}

TEST(Scenario, RejectsMalformedInput) {
  json j = base_scenario();
  j["bogus"] = 1;
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  j = base_scenario();
  j["checks"] = {"no_such_check"};
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  j = base_scenario();
  j["sets"]["T"] = {{"epsilon", 1.5}};
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  j = base_scenario();
  j["parameters"] = {{"d", 2}};
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  j = base_scenario();
  j["grid"]["n"] = 7;
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  j = base_scenario();
  j.erase("signal");
  EXPECT_THROW(parse_scenario(j), ScenarioError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST(Run, EmptyCheckListGivesEmptyReport) {
  json j = base_scenario();
  j["checks"] = json::array();
  const Report r = run_scenario(parse_scenario(j));
  EXPECT_TRUE(r.verdicts.empty());
  EXPECT_TRUE(r.ok());
}

TEST(Run, ViolatedHypothesisIsSkipped) {
  json j = base_scenario();
  j["sets"] = {{"T", {{"epsilon", 0.6}}}, {"Omega", {{"epsilon", 0.6}}}};
  j["checks"] = {"ds_classical", "ds_improved_sup"};
  const Report r = run_scenario(parse_scenario(j));
  ASSERT_EQ(r.verdicts.size(), 2u);
  for (const auto& v : r.verdicts) {
    EXPECT_EQ(v.status, Status::skipped) << v.id;
    EXPECT_NE(v.notes.find("hypothesis violated"), std::string::npos);
  }
}

TEST(Run, ReportIsCompleteSortedAndDeterministic) {
  json j = base_scenario();
  j["checks"] = {"lieb", "heisenberg", "ds_classical", "lieb", "approx_identity_time"};
  const Report a = run_scenario(parse_scenario(j));
  std::vector<std::string> ids;
  for (const auto& v : a.verdicts) ids.push_back(v.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"approx_identity_time", "ds_classical", "heisenberg", "lieb"}));
  const Report b = run_scenario(parse_scenario(j));
  EXPECT_EQ(report_to_json(a).dump(), report_to_json(b).dump());
  const json rep = report_to_json(a);
  EXPECT_EQ(rep.at("summary").at("total"), 4);
  for (const auto& v : rep.at("verdicts"))
    for (const char* key : {"id", "lhs", "rhs", "margin", "status", "notes"}) EXPECT_TRUE(v.contains(key)) << key;
  const std::string csv = report_to_csv(a);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Run, ExplicitSetsUseMeasuredDefect) {
  json j = base_scenario();
  j["sets"] = {{"T", {{"intervals", {{100, 156}}}}}, {"Omega", {{"intervals", {{96, 160}}}}}};
  j["checks"] = {"ds_classical"};
  const Report r = run_scenario(parse_scenario(j));
  ASSERT_EQ(r.verdicts.size(), 1u);
  EXPECT_EQ(r.verdicts[0].status, Status::pass);
  EXPECT_GT(r.context.at("epsilon_T").get<double>(), 0.0);
  EXPECT_LT(r.context.at("epsilon_T").get<double>(), 0.1);
}

TEST(Run, SetupErrorsBecomeFailedVerdicts) {
  json j = base_scenario();
  j["signal"] = {{"kind", "gaussian"}, {"lambda", 1e-9}};
  j["checks"] = {"lieb", "heisenberg"};
  const Report r = run_scenario(parse_scenario(j));
  ASSERT_EQ(r.verdicts.size(), 2u);
  for (const auto& v : r.verdicts) EXPECT_EQ(v.status, Status::fail);
}

TEST(Run, SelftestPasses) {
  const Report r = run_selftest();
  for (const auto& v : r.verdicts) EXPECT_EQ(v.status, Status::pass) << v.id << " " << v.notes;
}

class Bundled : public ::testing::TestWithParam<std::string> {};

TEST_P(Bundled, EveryVerdictPasses) {
  const Report r = run_scenario(load_scenario(scenario_path(GetParam())));
  EXPECT_EQ(r.verdicts.size(), known_checks().size());
  for (const auto& v : r.verdicts) EXPECT_EQ(v.status, Status::pass) << v.id << " lhs=" << v.lhs << " rhs=" << v.rhs;
}

INSTANTIATE_TEST_SUITE_P(Scenarios, Bundled,
                         ::testing::Values("hermite1", "chirp", "indicator", "random-bandlimited-1",
                                           "random-bandlimited-2", "random-bandlimited-3"),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Bundled, GaussianBasic) {
  const Report r = run_scenario(load_scenario(scenario_path("gaussian-basic")));
  for (const auto& v : r.verdicts) EXPECT_EQ(v.status, Status::pass) << v.id << " lhs=" << v.lhs << " rhs=" << v.rhs;
}

TEST(Cli, BoundsPrintsImprovedConstant) {
  const auto r = run_cli("bounds --eps-t 0 --eps-omega 0 --dim 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "7.3890561");
}

TEST(Cli, ConstantsPrintsJson) {
  const auto r = run_cli("constants --which k1 --d 1 --alpha 1");
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("name"), "k1");
  EXPECT_NEAR(j.at("value").get<double>(), 6.2831853, 1e-7);
  const auto inf = run_cli("constants --which ktilde --d 1 --alpha 2 --q inf");
  EXPECT_NEAR(json::parse(inf.out).at("value").get<double>(), 4.0, 1e-12);
  EXPECT_EQ(run_cli("constants --which nope").code, 2);
}

TEST(Cli, RunExitCodes) {
  EXPECT_EQ(run_cli("run missing.json").code, 2);
  const auto dir = std::filesystem::temp_directory_path() / "uplab_cli_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "broken.json") << "{ \"name\": ";
  EXPECT_EQ(run_cli("run " + (dir / "broken.json").string()).code, 2);
  const auto ok = run_cli("run " + scenario_path("hermite1") + " --out " + (dir / "r.json").string() + " --csv " +
                          (dir / "r.csv").string());
  EXPECT_EQ(ok.code, 0);
  std::ifstream rep(dir / "r.json");
  EXPECT_EQ(json::parse(rep).at("summary").at("fail"), 0);
  const auto stdout_run = run_cli("run " + scenario_path("hermite1"));
  EXPECT_EQ(json::parse(stdout_run.out).at("scenario"), "hermite1");
  json fails = base_scenario();
  fails["signal"] = {{"kind", "gaussian"}, {"lambda", 1e-9}};
  fails["checks"] = {"lieb"};
  std::ofstream(dir / "fails.json") << fails.dump();
  EXPECT_EQ(run_cli("run " + (dir / "fails.json").string()).code, 1);
}

TEST(Cli, SelftestExitsCleanly) { EXPECT_EQ(run_cli("selftest --n 128 --seed 3").code, 0); }
