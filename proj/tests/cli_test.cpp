#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "scenario.hpp"

namespace rch::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("rchtool_test_" + name);
  fs::remove_all(p);
  return p;
}

std::map<std::string, std::string> read_report(const fs::path& p) {
  std::map<std::string, std::string> kv;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find('=');
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

int run_tool(const std::string& args) {
  std::string cmd = std::string(RCHTOOL_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string(CONFIG_DIR) + "/" + name; }

TEST(CliTest, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1e-8}) {
    std::string s = format_number(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(10.0), "10");
}

TEST(CliTest, CanonicalFormIsStable) {
  for (const char* name : {"free_rigid_body.json", "heavy_top_rotors.json", "hj_trivial.json",
                           "hj_rotor_wobble.json", "hj_not_closed.json", "equivalence.json",
                           "equivalence_uncontrolled.json", "bracket_injected.json"}) {
    std::string once = canonical_text(load_config(config(name)));
    std::string twice = canonical_text(parse_config_text(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(CliTest, DefaultsAreFilledIn) {
  ScenarioConfig c = parse_config_text(R"({"system": "heavy_top_rotors"})");
  EXPECT_EQ(c.run.dt, 1e-3);
  EXPECT_EQ(c.run.duration, 10.0);
  EXPECT_EQ(c.params.rotor.size(), 2);
  EXPECT_EQ(c.initial.theta.size(), 2);
  EXPECT_EQ(c.gamma.kind, "zero");
  EXPECT_EQ(c.control.kind, "none");
}

TEST(CliTest, RawInertiasAreReduced) {
  ScenarioConfig c = parse_config_text(R"({"system": "rigid_body_rotors",
    "params": {"body_inertia": [2, 3, 4],
               "rotor_inertia": [[0.5, 0.1, 0.2], [0.3, 0.6, 0.4], [0.7, 0.8, 0.9]]}})");
  EXPECT_DOUBLE_EQ(c.params.ibar[0], 3.0);
  EXPECT_DOUBLE_EQ(c.params.ibar[1], 3.9);
  EXPECT_DOUBLE_EQ(c.params.ibar[2], 4.6);
  EXPECT_EQ(c.params.rotor, VecX(Vec3(0.5, 0.6, 0.9)));
}

void expect_error_naming(const std::string& text, const std::string& field) {
  try {
    parse_config_text(text);
    FAIL() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
  }
}

TEST(CliTest, ErrorsNameTheField) {
  expect_error_naming(R"({"params": {}})", "system");
  expect_error_naming(R"({"system": "pendulum"})", "system");
  expect_error_naming(R"({"system": "rigid_body_free", "run": {"dt": -1}})", "run.dt");
  expect_error_naming(R"({"system": "rigid_body_free", "run": {"T": "ten"}})", "run.T");
  expect_error_naming(R"({"system": "rigid_body_free", "initial": {"pi": [1, 2]}})", "initial.pi");
  expect_error_naming(R"({"system": "rigid_body_free", "initial": {"gamma": [1, 2, 3]}})",
                      "initial.gamma");
  expect_error_naming(R"({"system": "rigid_body_free", "tolerances": {"drift": 0}})",
                      "tolerances.drift");
  expect_error_naming(R"({"system": "rigid_body_rotors", "gamma": {"kind": "spiral"}})",
                      "gamma.kind");
  expect_error_naming(R"({"system": "rigid_body_rotors",
                         "gamma": {"kind": "exact_dW", "potential": {"name": "height"}}})",
                      "gamma.potential");
  expect_error_naming(R"({"system": "rigid_body_rotors", "control": {"kind": "matching"}})",
                      "control.target");
  expect_error_naming(R"({"system": "rigid_body_free", "extra": 1})", "extra");
  expect_error_naming("{not json", "JSON");
}

TEST(CliTest, BadParametersAreConfigErrors) {
  ScenarioConfig c = parse_config_text(R"({"system": "heavy_top_free",
    "params": {"chi": [1, 1, 0]}})");
  EXPECT_THROW(build_system(c.system, c.params), ConfigError);
  ScenarioConfig d = parse_config_text(R"({"system": "rigid_body_rotors",
    "control": {"kind": "constant", "components": [0, 0, 0, 1, 0, 0, 0, 0, 0]}})");
  EXPECT_THROW(assemble(d), ConfigError);
}

TEST(CliTest, WriteIsAtomic) {
  fs::path dir = scratch("atomic");
  write_atomic(dir / "a.txt", "first");
  write_atomic(dir / "a.txt", "second");
  EXPECT_EQ(slurp(dir / "a.txt"), "second");
  EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
}

using Command = int (*)(const ScenarioConfig&, const Options&, std::ostream&);

void expect_reproducible(Command cmd, const std::string& name, std::uint64_t seed) {
  ScenarioConfig c = load_config(config(name));
  Options a{scratch(name + "_a"), seed, true}, b{scratch(name + "_b"), seed, true};
  std::ostringstream log;
  EXPECT_EQ(cmd(c, a, log), cmd(c, b, log));
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a.out)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b.out / entry.path().filename())) << entry.path();
  }
  EXPECT_GT(files, 0);
}

TEST(CliTest, CommandsAreDeterministic) {
  expect_reproducible(cmd_simulate, "heavy_top_rotors.json", 0);
  expect_reproducible(cmd_hj_check, "hj_rotor_wobble.json", 7);
  expect_reproducible(cmd_equivalence_demo, "equivalence.json", 0);
  expect_reproducible(cmd_bracket_verify, "bracket_injected.json", 3);
}

TEST(CliTest, SeedChangesSamples) {
  ScenarioConfig c = load_config(config("hj_rotor_wobble.json"));
  Options a{scratch("seed_a"), 1, true}, b{scratch("seed_b"), 2, true};
  std::ostringstream log;
  cmd_hj_check(c, a, log);
  cmd_hj_check(c, b, log);
  EXPECT_NE(slurp(a.out / "hj_report.txt"), slurp(b.out / "hj_report.txt"));
}

TEST(CliTest, ExitCodes) {
  fs::path out = scratch("exit");
  std::string o = " --quiet --out " + out.string();
  EXPECT_EQ(run_tool("simulate --config " + config("free_rigid_body.json") + o), 0);
  EXPECT_EQ(run_tool("simulate --config " + config("blow_up.json") + o), 5);
  EXPECT_EQ(read_report(out / "simulate_report.txt")["failure_time"], "20");
  EXPECT_EQ(run_tool("hj-check --config " + config("hj_trivial.json") + o), 0);
  EXPECT_EQ(read_report(out / "hj_report.txt")["pass_count"], "100");
  EXPECT_EQ(run_tool("hj-check --config " + config("hj_heavy_top_zero.json") + o), 0);
  EXPECT_EQ(read_report(out / "hj_report.txt")["fail_count"], "100");
  EXPECT_EQ(run_tool("hj-check --config " + config("hj_not_closed.json") + o), 3);
  EXPECT_EQ(read_report(out / "hj_report.txt")["status"], "closedness_gate_rejected");
  EXPECT_EQ(run_tool("equivalence-demo --config " + config("equivalence.json") + o), 0);
  EXPECT_EQ(run_tool("equivalence-demo --config " + config("equivalence_uncontrolled.json") + o), 1);
  EXPECT_GT(std::stod(read_report(out / "equivalence_report.txt")["deviation_max"]), 1e-2);
  EXPECT_EQ(run_tool("equivalence-demo --config " + config("equivalence_identity.json") + o), 0);
  EXPECT_EQ(run_tool("bracket-verify --config " + config("bracket_injected.json") + o), 1);
  EXPECT_EQ(read_report(out / "bracket_report.txt")["bracket.se3_rotors.jacobi.pass"], "false");
  EXPECT_EQ(run_tool("simulate --config /nonexistent.json" + o), 2);
  EXPECT_EQ(run_tool("simulate" + o), 2);
  EXPECT_EQ(run_tool("--help"), 0);
}

TEST(CliTest, MembershipViolationExitCode) {
  fs::path dir = scratch("membership");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"system": "rigid_body_rotors",
    "gamma": {"kind": "exact_dW", "potential": {"name": "tilt"}, "mu": [0, 0, 0]}})";
  EXPECT_EQ(run_tool("hj-check --quiet --config " + (dir / "c.json").string() + " --out " + dir.string()), 4);
  auto kv = read_report(dir / "hj_report.txt");
  EXPECT_EQ(kv["status"], "membership_violation");
  EXPECT_GT(std::stod(kv["membership_defect"]), 1e-8);
}

}  // namespace
}  // namespace rch::cli
