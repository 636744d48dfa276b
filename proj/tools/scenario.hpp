#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rch/hj.hpp"
#include "rch/systems.hpp"

namespace rch::cli {

// Bad or missing config field; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Union of the parameters used by the built-in systems. Only the fields of
// the selected system are read and emitted.
struct ParamsSpec {
  Vec3 inertia = Vec3(1.0, 2.0, 3.0);  // rigid_body_free, heavy_top_free
  Vec3 ibar = Vec3(1.5, 2.0, 2.5);     // rotor systems
  VecX rotor;                          // 3 or 2 rotor spin inertias
  double mass = 1.0;
  double gravity = 9.81;
  double height = 0.2;
  Vec3 chi = Vec3::UnitZ();
};

struct InitialSpec {
  Vec3 pi = Vec3(0.6, -0.4, 0.9);
  Vec3 gamma = Vec3(0.2, 0.3, 0.9);
  VecX theta;
  VecX l;
};

struct RunSpec {
  double dt = 1e-3;
  double duration = 10.0;  // "T"
  int samples = 100;
  int instances = 1000;
  std::optional<std::uint64_t> seed;
  bool inject_sign_error = false;
};

struct GammaSpec {
  std::string kind = "zero";  // zero | exact_dW | constant_body | explicit
  PotentialSpec potential;
  Vec3 nu0_pi = Vec3::Zero();
  Vec3 nu0_gamma = Vec3::Zero();
  VecX l0;
  VecX components;
  std::optional<VecX> mu;
};

struct TargetSpec {
  std::string system;
  ParamsSpec params;
};

struct ControlSpec {
  std::string kind = "none";  // none | constant | matching
  VecX components;
  TargetSpec target;
  bool enabled = true;
};

struct Tolerances {
  double drift = 1e-8;
  double deviation = 1e-6;
  double pass = 1e-6;
  double fail = 1e-3;
  double closedness = 1e-5;
  double membership = 1e-8;
  double antisymmetry = 1e-12;
  double leibniz = 1e-8;
  double jacobi = 2e-5;
  double casimir = 1e-8;
};

struct ScenarioConfig {
  std::string system = "rigid_body_rotors";
  ParamsSpec params;
  InitialSpec initial;
  RunSpec run;
  GammaSpec gamma;
  ControlSpec control;
  Tolerances tolerances;
};

// Names accepted by "system": rigid_body_rotors, heavy_top_rotors,
// heavy_top_free, rigid_body_free.
const std::vector<std::string>& system_names();

ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);
// Canonical form: every field of the selected system, gamma and control
// kinds written out with defaults filled in.
nlohmann::json emit_config(const ScenarioConfig& c);
std::string canonical_text(const ScenarioConfig& c);

RCHSystem build_system(const std::string& name, const ParamsSpec& params);
ReducedPoint initial_point(const ScenarioConfig& c, const Layout& layout);
OneFormSection build_section(const ScenarioConfig& c, const RCHSystem& sys);
std::optional<CoalgebraVector> level(const ScenarioConfig& c, GroupKind kind);

// System A of the config with its control attached, and when the control
// is "matching" also the target B and the transport between them.
struct Assembly {
  RCHSystem a;
  std::optional<RCHSystem> b;
  Transport transport;
};
Assembly assemble(const ScenarioConfig& c);

}  // namespace rch::cli
