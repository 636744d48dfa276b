#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rch::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSystems = {"rigid_body_rotors", "heavy_top_rotors",
                                           "heavy_top_free", "rigid_body_free"};

int rotor_count_of(const std::string& system) {
  if (system == "rigid_body_rotors") return 3;
  if (system == "heavy_top_rotors") return 2;
  return 0;
}

GroupKind kind_of(const std::string& system) {
  return system.rfind("heavy_top", 0) == 0 ? GroupKind::SE3 : GroupKind::SO3;
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + "." + key + ": unknown field");
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + ": must be finite");
  return v;
}

double positive(const json& j, const std::string& field) {
  double v = number(j, field);
  if (v <= 0.0) throw ConfigError(field + ": must be positive");
  return v;
}

VecX vector(const json& j, const std::string& field, int expected = -1) {
  if (!j.is_array()) throw ConfigError(field + ": expected an array of numbers");
  VecX v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = number(j[i], field + "[" + std::to_string(i) + "]");
  if (expected >= 0 && v.size() != expected)
    throw ConfigError(field + ": expected " + std::to_string(expected) + " entries");
  return v;
}

Vec3 vec3(const json& j, const std::string& field) { return vector(j, field, 3); }

json array(const VecX& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field + ": expected a string");
  return j.get<std::string>();
}

std::string system_name(const json& j, const std::string& field) {
  std::string s = text(j, field);
  if (std::find(kSystems.begin(), kSystems.end(), s) == kSystems.end())
    throw ConfigError(field + ": unknown system '" + s + "'");
  return s;
}

VecX default_rotor(const std::string& system) {
  if (system == "rigid_body_rotors") return Vec3(0.3, 0.4, 0.5);
  if (system == "heavy_top_rotors") return Eigen::Vector2d(0.2, 0.3);
  return VecX();
}

ParamsSpec parse_params(const json& j, const std::string& system, const std::string& where) {
  ParamsSpec p;
  p.rotor = default_rotor(system);
  if (j.is_null()) return p;
  int k = rotor_count_of(system);
  bool top = kind_of(system) == GroupKind::SE3;
  std::set<std::string> allowed;
  if (k == 0) allowed.insert("inertia");
  else allowed.insert({"ibar", "rotor", "body_inertia", "rotor_inertia"});
  if (top) allowed.insert({"mass", "gravity", "height", "chi"});
  check_keys(j, where, allowed);

  if (j.contains("inertia")) p.inertia = vec3(j["inertia"], where + ".inertia");
  if (j.contains("ibar")) p.ibar = vec3(j["ibar"], where + ".ibar");
  if (j.contains("rotor")) p.rotor = vector(j["rotor"], where + ".rotor", k);
  if (j.contains("body_inertia") != j.contains("rotor_inertia"))
    throw ConfigError(where + ": body_inertia and rotor_inertia go together");
  if (j.contains("body_inertia")) {
    if (j.contains("ibar") || j.contains("rotor"))
      throw ConfigError(where + ": give either ibar/rotor or body_inertia/rotor_inertia");
    Vec3 body = vec3(j["body_inertia"], where + ".body_inertia");
    const json& rows = j["rotor_inertia"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != k)
      throw ConfigError(where + ".rotor_inertia: expected " + std::to_string(k) + " rows");
    Eigen::MatrixXd axes(k, 3);
    for (int r = 0; r < k; ++r)
      axes.row(r) = vec3(rows[r], where + ".rotor_inertia[" + std::to_string(r) + "]");
    if (k == 3) {
      RigidBodyRotorParams raw = RigidBodyRotorParams::from_raw(body, axes);
      p.ibar = raw.ibar;
      p.rotor = raw.rotor;
    } else {
      Eigen::Matrix<double, 2, 3> two = axes;
      HeavyTopRotorParams raw = HeavyTopRotorParams::from_raw(body, two, 1, 1, 1, Vec3::UnitZ());
      p.ibar = raw.ibar;
      p.rotor = raw.rotor;
    }
  }
  if (j.contains("mass")) p.mass = positive(j["mass"], where + ".mass");
  if (j.contains("gravity")) p.gravity = positive(j["gravity"], where + ".gravity");
  if (j.contains("height")) p.height = positive(j["height"], where + ".height");
  if (j.contains("chi")) p.chi = vec3(j["chi"], where + ".chi");
  return p;
}

json emit_params(const ParamsSpec& p, const std::string& system) {
  json j = json::object();
  if (rotor_count_of(system) == 0) {
    j["inertia"] = array(p.inertia);
  } else {
    j["ibar"] = array(p.ibar);
    j["rotor"] = array(p.rotor);
  }
  if (kind_of(system) == GroupKind::SE3) {
    j["mass"] = p.mass;
    j["gravity"] = p.gravity;
    j["height"] = p.height;
    j["chi"] = array(p.chi);
  }
  return j;
}

bool keeps_theta(const std::string& system) { return rotor_count_of(system) > 0; }

}  // namespace

const std::vector<std::string>& system_names() { return kSystems; }

ScenarioConfig parse_config(const json& j) {
  check_keys(j, "config", {"system", "params", "initial", "run", "gamma", "control", "tolerances"});
  ScenarioConfig c;
  if (!j.contains("system")) throw ConfigError("system: missing");
  c.system = system_name(j["system"], "system");
  const int k = rotor_count_of(c.system);
  const bool se3 = kind_of(c.system) == GroupKind::SE3;

  c.params = parse_params(j.value("params", json()), c.system, "params");

  c.initial.theta = VecX::Zero(keeps_theta(c.system) ? k : 0);
  c.initial.l = VecX::Zero(k);
  if (j.contains("initial")) {
    const json& s = j["initial"];
    std::set<std::string> allowed = {"pi"};
    if (se3) allowed.insert("gamma");
    if (k) allowed.insert({"theta", "l"});
    check_keys(s, "initial", allowed);
    if (s.contains("pi")) c.initial.pi = vec3(s["pi"], "initial.pi");
    if (s.contains("gamma")) c.initial.gamma = vec3(s["gamma"], "initial.gamma");
    if (s.contains("theta")) c.initial.theta = vector(s["theta"], "initial.theta", k);
    if (s.contains("l")) c.initial.l = vector(s["l"], "initial.l", k);
  }

  if (j.contains("run")) {
    const json& s = j["run"];
    check_keys(s, "run", {"dt", "T", "samples", "instances", "seed", "inject_sign_error"});
    if (s.contains("dt")) c.run.dt = positive(s["dt"], "run.dt");
    if (s.contains("T")) c.run.duration = positive(s["T"], "run.T");
    auto count = [&](const char* key) {
      const json& v = s[key];
      if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ConfigError(std::string("run.") + key + ": expected a positive integer");
      return static_cast<int>(v.get<long long>());
    };
    if (s.contains("samples")) c.run.samples = count("samples");
    if (s.contains("instances")) c.run.instances = count("instances");
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) throw ConfigError("run.seed: expected a non-negative integer");
      c.run.seed = s["seed"].get<std::uint64_t>();
    }
    if (s.contains("inject_sign_error")) {
      if (!s["inject_sign_error"].is_boolean()) throw ConfigError("run.inject_sign_error: expected true or false");
      c.run.inject_sign_error = s["inject_sign_error"].get<bool>();
    }
  }

  c.gamma.l0 = VecX::Zero(k);
  if (j.contains("gamma")) {
    const json& s = j["gamma"];
    if (!s.is_object() || !s.contains("kind")) throw ConfigError("gamma.kind: missing");
    c.gamma.kind = text(s["kind"], "gamma.kind");
    std::set<std::string> allowed = {"kind", "mu"};
    if (c.gamma.kind == "exact_dW") {
      allowed.insert("potential");
    } else if (c.gamma.kind == "constant_body") {
      allowed.insert({"pi", "l"});
      if (se3) allowed.insert("gamma");
    } else if (c.gamma.kind == "explicit") {
      allowed.insert("components");
    } else if (c.gamma.kind != "zero") {
      throw ConfigError("gamma.kind: unknown kind '" + c.gamma.kind + "'");
    }
    check_keys(s, "gamma", allowed);
    if (c.gamma.kind == "exact_dW") {
      if (!s.contains("potential")) throw ConfigError("gamma.potential: missing");
      const json& w = s["potential"];
      check_keys(w, "gamma.potential", {"name", "coeffs", "amplitude", "axis", "body_axis"});
      if (!w.contains("name")) throw ConfigError("gamma.potential.name: missing");
      c.gamma.potential.name = text(w["name"], "gamma.potential.name");
      const auto& names = builtin_potential_names();
      if (std::find(names.begin(), names.end(), c.gamma.potential.name) == names.end())
        throw ConfigError("gamma.potential.name: unknown potential '" + c.gamma.potential.name + "'");
      c.gamma.potential.coeffs = VecX::Ones(k);
      if (w.contains("coeffs")) c.gamma.potential.coeffs = vector(w["coeffs"], "gamma.potential.coeffs", k);
      if (w.contains("amplitude"))
        c.gamma.potential.amplitude = number(w["amplitude"], "gamma.potential.amplitude");
      if (w.contains("axis")) c.gamma.potential.axis = vec3(w["axis"], "gamma.potential.axis");
      if (w.contains("body_axis"))
        c.gamma.potential.body_axis = vec3(w["body_axis"], "gamma.potential.body_axis");
      try {
        builtin_potential(c.gamma.potential, kind_of(c.system), k);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("gamma.potential: ") + e.what());
      }
    }
    if (s.contains("pi")) c.gamma.nu0_pi = vec3(s["pi"], "gamma.pi");
    if (s.contains("gamma")) c.gamma.nu0_gamma = vec3(s["gamma"], "gamma.gamma");
    if (s.contains("l")) c.gamma.l0 = vector(s["l"], "gamma.l", k);
    if (c.gamma.kind == "explicit") {
      if (!s.contains("components")) throw ConfigError("gamma.components: missing");
      c.gamma.components = vector(s["components"], "gamma.components", algebra_dim(kind_of(c.system)) + k);
    }
    if (s.contains("mu")) c.gamma.mu = vector(s["mu"], "gamma.mu", algebra_dim(kind_of(c.system)));
  }

  if (j.contains("control")) {
    const json& s = j["control"];
    if (!s.is_object() || !s.contains("kind")) throw ConfigError("control.kind: missing");
    c.control.kind = text(s["kind"], "control.kind");
    if (c.control.kind == "none") {
      check_keys(s, "control", {"kind"});
    } else if (c.control.kind == "constant") {
      check_keys(s, "control", {"kind", "components"});
      if (!s.contains("components")) throw ConfigError("control.components: missing");
      int n = algebra_dim(kind_of(c.system)) + (keeps_theta(c.system) ? 2 * k : k);
      c.control.components = vector(s["components"], "control.components", n);
    } else if (c.control.kind == "matching") {
      check_keys(s, "control", {"kind", "target", "enabled"});
      if (!s.contains("target")) throw ConfigError("control.target: missing");
      const json& t = s["target"];
      check_keys(t, "control.target", {"system", "params"});
      if (!t.contains("system")) throw ConfigError("control.target.system: missing");
      c.control.target.system = system_name(t["system"], "control.target.system");
      c.control.target.params =
          parse_params(t.value("params", json()), c.control.target.system, "control.target.params");
      if (s.contains("enabled")) {
        if (!s["enabled"].is_boolean()) throw ConfigError("control.enabled: expected true or false");
        c.control.enabled = s["enabled"].get<bool>();
      }
    } else {
      throw ConfigError("control.kind: unknown kind '" + c.control.kind + "'");
    }
  }

  if (j.contains("tolerances")) {
    const json& s = j["tolerances"];
    Tolerances& t = c.tolerances;
    std::vector<std::pair<const char*, double*>> fields = {
        {"drift", &t.drift},         {"deviation", &t.deviation}, {"pass", &t.pass},
        {"fail", &t.fail},           {"closedness", &t.closedness}, {"membership", &t.membership},
        {"antisymmetry", &t.antisymmetry}, {"leibniz", &t.leibniz}, {"jacobi", &t.jacobi},
        {"casimir", &t.casimir}};
    std::set<std::string> allowed;
    for (const auto& f : fields) allowed.insert(f.first);
    check_keys(s, "tolerances", allowed);
    for (const auto& [key, target] : fields) {
      if (s.contains(key)) *target = positive(s[key], std::string("tolerances.") + key);
    }
    if (t.fail < t.pass) throw ConfigError("tolerances.fail: must not be below tolerances.pass");
  }
  return c;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json emit_config(const ScenarioConfig& c) {
  const int k = rotor_count_of(c.system);
  const bool se3 = kind_of(c.system) == GroupKind::SE3;
  json j;
  j["system"] = c.system;
  j["params"] = emit_params(c.params, c.system);

  json initial;
  initial["pi"] = array(c.initial.pi);
  if (se3) initial["gamma"] = array(c.initial.gamma);
  if (k) {
    initial["theta"] = array(c.initial.theta);
    initial["l"] = array(c.initial.l);
  }
  j["initial"] = initial;

  json run;
  run["dt"] = c.run.dt;
  run["T"] = c.run.duration;
  run["samples"] = c.run.samples;
  run["instances"] = c.run.instances;
  if (c.run.seed) run["seed"] = *c.run.seed;
  run["inject_sign_error"] = c.run.inject_sign_error;
  j["run"] = run;

  json gamma;
  gamma["kind"] = c.gamma.kind;
  if (c.gamma.kind == "exact_dW") {
    json w;
    w["name"] = c.gamma.potential.name;
    w["coeffs"] = array(c.gamma.potential.coeffs);
    w["amplitude"] = c.gamma.potential.amplitude;
    w["axis"] = array(c.gamma.potential.axis);
    w["body_axis"] = array(c.gamma.potential.body_axis);
    gamma["potential"] = w;
  } else if (c.gamma.kind == "constant_body") {
    gamma["pi"] = array(c.gamma.nu0_pi);
    if (se3) gamma["gamma"] = array(c.gamma.nu0_gamma);
    gamma["l"] = array(c.gamma.l0);
  } else if (c.gamma.kind == "explicit") {
    gamma["components"] = array(c.gamma.components);
  }
  if (c.gamma.mu) gamma["mu"] = array(*c.gamma.mu);
  j["gamma"] = gamma;

  json control;
  control["kind"] = c.control.kind;
  if (c.control.kind == "constant") control["components"] = array(c.control.components);
  if (c.control.kind == "matching") {
    control["target"] = {{"system", c.control.target.system},
                         {"params", emit_params(c.control.target.params, c.control.target.system)}};
    control["enabled"] = c.control.enabled;
  }
  j["control"] = control;

  const Tolerances& t = c.tolerances;
  j["tolerances"] = {{"drift", t.drift},         {"deviation", t.deviation},
                     {"pass", t.pass},           {"fail", t.fail},
                     {"closedness", t.closedness}, {"membership", t.membership},
                     {"antisymmetry", t.antisymmetry}, {"leibniz", t.leibniz},
                     {"jacobi", t.jacobi},       {"casimir", t.casimir}};
  return j;
}

std::string canonical_text(const ScenarioConfig& c) { return emit_config(c).dump(2) + "\n"; }

RCHSystem build_system(const std::string& name, const ParamsSpec& p) {
  try {
    if (name == "rigid_body_free") return free_rigid_body_system(p.inertia);
    if (name == "rigid_body_rotors") return rigid_body_rotor_system({p.ibar, p.rotor});
    if (name == "heavy_top_rotors") {
      HeavyTopRotorParams h;
      h.ibar = p.ibar;
      h.rotor = p.rotor;
      h.mass = p.mass;
      h.gravity = p.gravity;
      h.height = p.height;
      h.chi = p.chi;
      return heavy_top_rotor_system(h);
    }
    if (name == "heavy_top_free")
      return heavy_top_system({p.inertia, p.mass, p.gravity, p.height, p.chi});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  throw ConfigError("system: unknown system '" + name + "'");
}

ReducedPoint initial_point(const ScenarioConfig& c, const Layout& layout) {
  ReducedPoint p;
  p.nu = layout.kind == GroupKind::SO3 ? CoalgebraVector::so3(c.initial.pi)
                                       : CoalgebraVector::se3(c.initial.pi, c.initial.gamma);
  p.theta = layout.theta_dim ? c.initial.theta : VecX();
  p.l = c.initial.l;
  return p;
}

OneFormSection build_section(const ScenarioConfig& c, const RCHSystem& sys) {
  const GammaSpec& g = c.gamma;
  try {
    if (g.kind == "zero") return zero_section(sys.kind, sys.rotor_count);
    if (g.kind == "exact_dW")
      return exact_dW(g.potential.name, sys.kind, sys.rotor_count,
                      builtin_potential(g.potential, sys.kind, sys.rotor_count));
    CoalgebraVector nu0;
    VecX l0;
    if (g.kind == "constant_body") {
      nu0 = sys.kind == GroupKind::SO3 ? CoalgebraVector::so3(g.nu0_pi)
                                       : CoalgebraVector::se3(g.nu0_pi, g.nu0_gamma);
      l0 = g.l0;
    } else {
      int n = algebra_dim(sys.kind);
      nu0 = CoalgebraVector::from_flat(sys.kind, g.components.head(n));
      l0 = g.components.tail(g.components.size() - n);
    }
    return constant_body(nu0, l0);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("gamma: ") + e.what());
  }
}

std::optional<CoalgebraVector> level(const ScenarioConfig& c, GroupKind kind) {
  if (!c.gamma.mu) return std::nullopt;
  return CoalgebraVector::from_flat(kind, *c.gamma.mu);
}

Assembly assemble(const ScenarioConfig& c) {
  Assembly out;
  out.a = build_system(c.system, c.params);
  out.transport = identity_transport();
  if (c.control.kind == "constant") {
    Tangent u = Tangent::from_flat(out.a.layout(), c.control.components);
    if (u.d_theta.size() && u.d_theta.cwiseAbs().maxCoeff() != 0.0)
      throw ConfigError("control.components: rotor-angle entries must be zero");
    out.a.control = FiberTerm::vertical_field([u](const ReducedPoint&) { return u; });
  } else if (c.control.kind == "matching") {
    RCHSystem b = build_system(c.control.target.system, c.control.target.params);
    if (c.system == "rigid_body_rotors" && c.control.target.system == "heavy_top_free") {
      // Rotor angles are cyclic; the heavy top carries no counterpart.
      out.a = rigid_body_rotor_variant({c.params.ibar, c.params.rotor});
      out.transport = heavy_top_to_rotor_transport();
    } else if (out.a.layout() != b.layout()) {
      throw ConfigError("control.target.system: no transport from " + c.control.target.system +
                        " to " + c.system);
    }
    if (c.control.enabled) out.a.control = FiberTerm::vertical_field(matching_control(out.a, b, out.transport));
    out.b = b;
  }
  return out;
}

}  // namespace rch::cli
