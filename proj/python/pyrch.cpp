#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rch/bracket_suite.hpp"
#include "rch/errors.hpp"
#include "scenario.hpp"

namespace py = pybind11;
using namespace rch;

namespace {

// Configs arrive as Python dicts; round-trip them through json text.
cli::ScenarioConfig to_config(const py::dict& config) {
  py::object dumps = py::module_::import("json").attr("dumps");
  return cli::parse_config_text(dumps(config).cast<std::string>());
}

py::dict simulate(const py::dict& config) {
  cli::ScenarioConfig c = to_config(config);
  cli::Assembly as = cli::assemble(c);
  std::vector<Invariant> invariants = standard_invariants(as.a);
  Trajectory t = run(field_of(as.a), cli::initial_point(c, as.a.layout()), c.run.dt,
                     c.run.duration, invariants);
  MatX states(t.states.size(), as.a.layout().size());
  for (size_t i = 0; i < t.states.size(); ++i) states.row(i) = t.states[i].flat();
  py::dict values, drift;
  std::vector<double> worst = t.max_drift();
  for (size_t i = 0; i < t.invariant_names.size(); ++i) {
    values[py::str(t.invariant_names[i])] = t.invariant_values[i];
    drift[py::str(t.invariant_names[i])] = worst[i];
  }
  py::dict out;
  out["system"] = as.a.name;
  out["labels"] = state_labels(as.a.layout());
  out["times"] = VecX(Eigen::Map<const VecX>(t.times.data(), t.times.size()));
  out["states"] = states;
  out["invariants"] = values;
  out["drift"] = drift;
  return out;
}

py::dict hj_check(const py::dict& config, std::uint64_t seed) {
  cli::ScenarioConfig c = to_config(config);
  cli::Assembly as = cli::assemble(c);
  OneFormSection section = cli::build_section(c, as.a);
  Rng rng(seed);
  auto samples = sample_configurations(as.a.kind, as.a.rotor_count, c.run.samples, rng);
  ProbeThresholds th{c.tolerances.pass, c.tolerances.fail, c.tolerances.closedness,
                     c.tolerances.membership};
  ResidualReport r =
      theorem_equivalence_probe(as.a, section, samples, cli::level(c, as.a.kind), th, seed);
  py::list rows;
  for (const SampleResidual& s : r.samples) {
    py::dict row;
    row["relatedness"] = s.relatedness;
    row["hj"] = s.hj;
    row["x_gamma_norm"] = s.x_gamma_norm;
    row["verdict"] = to_string(s.verdict);
    rows.append(row);
  }
  py::dict out;
  out["section"] = r.section;
  out["closedness_gate_passed"] = r.closedness_gate_passed;
  out["closedness_defect"] = r.closedness_defect;
  out["relatedness_residual"] = r.relatedness_residual;
  out["hj_residual"] = r.hj_residual;
  out["sample_count"] = r.sample_count;
  out["pass_count"] = r.pass_count;
  out["fail_count"] = r.fail_count;
  out["band_count"] = r.band_count;
  out["inconsistent_count"] = r.inconsistent_count;
  out["samples"] = rows;
  return out;
}

py::dict equivalence_demo(const py::dict& config) {
  cli::ScenarioConfig c = to_config(config);
  if (c.control.kind != "matching") throw cli::ConfigError("control.kind: needs a matching control");
  cli::Assembly as = cli::assemble(c);
  ReducedPoint a0 = cli::initial_point(c, as.a.layout());
  Trajectory tb = run(field_of(*as.b), as.transport.to_b(a0), c.run.dt, c.run.duration);
  Trajectory ta = run(field_of(as.a), a0, c.run.dt, c.run.duration);
  VecX deviation(ta.times.size());
  for (size_t i = 0; i < ta.times.size(); ++i)
    deviation[i] = (ta.states[i].flat() - as.transport.to_a(tb.states[i]).flat()).norm();
  py::dict out;
  out["times"] = VecX(Eigen::Map<const VecX>(ta.times.data(), ta.times.size()));
  out["deviation"] = deviation;
  out["max_deviation"] = deviation.size() ? deviation.maxCoeff() : 0.0;
  return out;
}

py::dict bracket_verify(int instances, std::uint64_t seed, bool inject_sign_error) {
  SuiteOptions opts;
  opts.instances = instances;
  opts.seed = seed;
  opts.inject_sign_error = inject_sign_error;
  py::dict out;
  for (BracketCase bc : {BracketCase::SO3LiePoisson, BracketCase::SO3Rotors, BracketCase::SE3Rotors}) {
    py::dict axioms;
    for (const AxiomResult& a : run_bracket_suite(bc, opts).axioms) {
      py::dict entry;
      entry["worst"] = a.worst;
      entry["worst_instance"] = a.worst_instance;
      entry["tolerance"] = a.tolerance;
      entry["pass"] = a.pass;
      axioms[py::str(a.axiom)] = entry;
    }
    out[py::str(to_string(bc))] = axioms;
  }
  return out;
}

GroupKind kind_of(const std::string& name) {
  if (name == "so3") return GroupKind::SO3;
  if (name == "se3") return GroupKind::SE3;
  throw std::invalid_argument("group must be 'so3' or 'se3'");
}

}  // namespace

PYBIND11_MODULE(pyrch, m) {
  m.doc() = "Controlled Hamiltonian systems on SO(3) and SE(3)";

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<MembershipError>(m, "MembershipError", PyExc_ValueError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_ArithmeticError);

  m.def("simulate", &simulate, py::arg("config"),
        "Integrate the reduced dynamics; returns times, states, invariants and drift.");
  m.def("hj_check", &hj_check, py::arg("config"), py::arg("seed") = 0,
        "Closedness gate and paired Hamilton-Jacobi residuals on sampled configurations.");
  m.def("equivalence_demo", &equivalence_demo, py::arg("config"),
        "Deviation between the matched system and its transported target.");
  m.def("bracket_verify", &bracket_verify, py::arg("instances") = 1000, py::arg("seed") = 0,
        py::arg("inject_sign_error") = false);
  m.def("canonical_config", [](const py::dict& config) { return cli::canonical_text(to_config(config)); });
  m.def("systems", &cli::system_names);

  m.def("rotation_exp", &rotation_exp, py::arg("omega"));
  m.def("hat", [](const Vec3& w) { return skew(w); }, py::arg("omega"));
  m.def("lie_bracket", [](const std::string& group, const VecX& a, const VecX& b) {
          GroupKind k = kind_of(group);
          return bracket(AlgebraVector::from_flat(k, a), AlgebraVector::from_flat(k, b)).flat();
        }, py::arg("group"), py::arg("a"), py::arg("b"));
  m.def("coadjoint", [](const std::string& group, const VecX& xi, const VecX& mu) {
          GroupKind k = kind_of(group);
          return coadjoint_ad_star(AlgebraVector::from_flat(k, xi), CoalgebraVector::from_flat(k, mu)).flat();
        }, py::arg("group"), py::arg("xi"), py::arg("mu"));
  m.def("momentum_map", [](const Mat3& rotation, const Vec3& pi) {
          PhasePoint z{GroupElement::so3(rotation), CoalgebraVector::so3(pi), VecX(), VecX()};
          return momentum_map(z).pi;
        }, py::arg("rotation"), py::arg("pi"), "Spatial angular momentum of a rigid body.");
}
