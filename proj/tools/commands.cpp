#include "commands.hpp"

#include <ostream>

#include "output.hpp"
#include "rch/bracket_suite.hpp"
#include "rch/errors.hpp"

namespace rch::cli {

namespace {

void append_row(std::string& csv, double t, const VecX& values, const std::vector<double>& extra) {
  csv += format_number(t);
  for (int i = 0; i < values.size(); ++i) csv += "," + format_number(values[i]);
  for (double v : extra) csv += "," + format_number(v);
  csv += "\n";
}

void finish(const KeyValueReport& rep, const std::filesystem::path& path, const Options& o,
            std::ostream& log) {
  write_atomic(path, rep.text());
  if (!o.quiet) log << "report written to " << path.string() << "\n";
}

}  // namespace

int cmd_simulate(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  Assembly as = assemble(c);
  const RCHSystem& sys = as.a;
  ReducedPoint p0 = initial_point(c, sys.layout());
  std::vector<Invariant> invariants = standard_invariants(sys);

  KeyValueReport rep;
  rep.add("command", "simulate");
  rep.add("system", sys.name);
  rep.add("dt", c.run.dt);
  rep.add("T", c.run.duration);
  const std::filesystem::path report_path = o.out / "simulate_report.txt";

  Trajectory traj;
  try {
    traj = run(field_of(sys), p0, c.run.dt, c.run.duration, invariants);
  } catch (const BlowUpError& e) {
    rep.add("status", "blow_up");
    rep.add("failure_time", e.time());
    finish(rep, report_path, o, log);
    log << "simulate: blow-up at t=" << format_number(e.time()) << "\n";
    return kNumericalFailure;
  } catch (const std::domain_error& e) {
    rep.add("status", "transport_failure");
    finish(rep, report_path, o, log);
    log << "simulate: " << e.what() << "\n";
    return kNumericalFailure;
  }

  std::string csv = "t";
  for (const std::string& label : state_labels(sys.layout())) csv += "," + label;
  for (const std::string& name : traj.invariant_names) csv += "," + name;
  csv += "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<double> inv;
    for (const auto& series : traj.invariant_values) inv.push_back(series[i]);
    append_row(csv, traj.times[i], traj.states[i].flat(), inv);
  }
  write_atomic(o.out / "trajectory.csv", csv);

  std::vector<double> drift = traj.max_drift();
  double worst = 0.0;
  for (size_t i = 0; i < drift.size(); ++i) {
    rep.add("drift." + traj.invariant_names[i], drift[i]);
    worst = std::max(worst, drift[i]);
  }
  bool ok = worst <= c.tolerances.drift;
  rep.add("steps", static_cast<int>(traj.times.size()) - 1);
  rep.add("max_drift", worst);
  rep.add("drift_tolerance", c.tolerances.drift);
  rep.add("status", ok ? "ok" : "drift_exceeded");
  if (!o.quiet) {
    log << "simulated " << sys.name << " for T=" << format_number(c.run.duration)
        << " (" << traj.times.size() - 1 << " steps)\n";
    for (size_t i = 0; i < drift.size(); ++i)
      log << "  drift " << traj.invariant_names[i] << ": " << format_number(drift[i]) << "\n";
  }
  finish(rep, report_path, o, log);
  return ok ? kOk : kCheckFailed;
}

int cmd_hj_check(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  Assembly as = assemble(c);
  const RCHSystem& sys = as.a;
  OneFormSection section = build_section(c, sys);
  std::optional<CoalgebraVector> mu = level(c, sys.kind);
  Rng rng(o.seed);
  std::vector<Configuration> samples =
      sample_configurations(sys.kind, sys.rotor_count, c.run.samples, rng);
  ProbeThresholds th{c.tolerances.pass, c.tolerances.fail, c.tolerances.closedness,
                     c.tolerances.membership};

  KeyValueReport rep;
  rep.add("command", "hj-check");
  rep.add("system", sys.name);
  rep.add("section", section.name());
  rep.add("section_family", to_string(section.family()));
  rep.add("pullback_symplectic_known", section.pullback_symplectic_known());
  const std::filesystem::path report_path = o.out / "hj_report.txt";

  ResidualReport r;
  try {
    r = theorem_equivalence_probe(sys, section, samples, mu, th, o.seed);
  } catch (const MembershipError& e) {
    rep.add("status", "membership_violation");
    rep.add("membership_defect", e.defect());
    finish(rep, report_path, o, log);
    log << "hj-check: " << e.what() << " (defect " << format_number(e.defect()) << ")\n";
    return kMembership;
  }

  rep.add("closedness_gate_passed", r.closedness_gate_passed);
  rep.add("closedness_defect", r.closedness_defect);
  if (!r.closedness_gate_passed) {
    rep.add("status", "closedness_gate_rejected");
    finish(rep, report_path, o, log);
    log << "hj-check: section " << section.name() << " is not closed (defect "
        << format_number(r.closedness_defect) << "), residuals not evaluated\n";
    return kGateRejected;
  }
  rep.add("relatedness_residual", r.relatedness_residual);
  rep.add("hj_residual", r.hj_residual);
  rep.add("sample_count", r.sample_count);
  rep.add("worst_relatedness_sample", r.worst_relatedness_sample);
  rep.add("worst_hj_sample", r.worst_hj_sample);
  rep.add("pass_count", r.pass_count);
  rep.add("fail_count", r.fail_count);
  rep.add("band_count", r.band_count);
  rep.add("inconsistent_count", r.inconsistent_count);
  rep.add("status", r.inconsistent_count ? "inconsistent" : "consistent");
  for (const SampleResidual& s : r.samples) {
    std::string key = "sample." + std::to_string(s.index) + ".";
    rep.add(key + "relatedness", s.relatedness);
    rep.add(key + "hj", s.hj);
    rep.add(key + "x_gamma_norm", s.x_gamma_norm);
    rep.add(key + "verdict", to_string(s.verdict));
  }
  if (!o.quiet) {
    log << "section " << section.name() << " on " << sys.name << ": closedness defect "
        << format_number(r.closedness_defect) << "\n";
    log << "sample  relatedness  hj  verdict\n";
    for (const SampleResidual& s : r.samples)
      log << s.index << "  " << format_number(s.relatedness) << "  " << format_number(s.hj)
          << "  " << to_string(s.verdict) << "\n";
    log << "PASS " << r.pass_count << ", FAIL " << r.fail_count << ", BAND " << r.band_count
        << ", INCONSISTENT " << r.inconsistent_count << "\n";
  }
  finish(rep, report_path, o, log);
  return r.inconsistent_count ? kCheckFailed : kOk;
}

int cmd_equivalence_demo(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  if (c.control.kind != "matching")
    throw ConfigError("control.kind: equivalence-demo needs a matching control");
  Assembly as = assemble(c);
  const RCHSystem& a = as.a;
  const RCHSystem& b = *as.b;

  KeyValueReport rep;
  rep.add("command", "equivalence-demo");
  rep.add("system_a", a.name);
  rep.add("system_b", b.name);
  rep.add("control_enabled", c.control.enabled);
  rep.add("dt", c.run.dt);
  rep.add("T", c.run.duration);
  const std::filesystem::path report_path = o.out / "equivalence_report.txt";

  ReducedPoint a0 = initial_point(c, a.layout());
  Trajectory ta, tb;
  try {
    ReducedPoint b0 = as.transport.to_b(a0);
    tb = run(field_of(b), b0, c.run.dt, c.run.duration);
    ta = run(field_of(a), a0, c.run.dt, c.run.duration);
  } catch (const BlowUpError& e) {
    rep.add("status", "blow_up");
    rep.add("failure_time", e.time());
    finish(rep, report_path, o, log);
    log << "equivalence-demo: blow-up at t=" << format_number(e.time()) << "\n";
    return kNumericalFailure;
  } catch (const std::domain_error& e) {
    rep.add("status", "transport_failure");
    finish(rep, report_path, o, log);
    log << "equivalence-demo: " << e.what() << "\n";
    return kNumericalFailure;
  }

  std::string csv = "t,deviation\n";
  double worst = 0.0;
  for (size_t i = 0; i < ta.times.size(); ++i) {
    double d = (ta.states[i].flat() - as.transport.to_a(tb.states[i]).flat()).norm();
    worst = std::max(worst, d);
    csv += format_number(ta.times[i]) + "," + format_number(d) + "\n";
  }
  write_atomic(o.out / "equivalence.csv", csv);
  bool ok = worst <= c.tolerances.deviation;
  rep.add("deviation_max", worst);
  rep.add("deviation_final", ta.times.empty() ? 0.0
          : (ta.states.back().flat() - as.transport.to_a(tb.states.back()).flat()).norm());
  rep.add("deviation_tolerance", c.tolerances.deviation);
  rep.add("status", ok ? "ok" : "deviation_exceeded");
  if (!o.quiet)
    log << a.name << " vs transported " << b.name << ": max deviation "
        << format_number(worst) << (c.control.enabled ? "" : " (control disabled)") << "\n";
  finish(rep, report_path, o, log);
  return ok ? kOk : kCheckFailed;
}

int cmd_bracket_verify(const ScenarioConfig& c, const Options& o, std::ostream& log) {
  SuiteOptions opts;
  opts.instances = c.run.instances;
  opts.seed = o.seed;
  opts.inject_sign_error = c.run.inject_sign_error;
  opts.tol = {c.tolerances.antisymmetry, c.tolerances.leibniz, c.tolerances.jacobi,
              c.tolerances.casimir};

  KeyValueReport rep;
  rep.add("command", "bracket-verify");
  rep.add("instances", opts.instances);
  rep.add("inject_sign_error", opts.inject_sign_error);
  bool all = true;
  for (BracketCase bc : {BracketCase::SO3LiePoisson, BracketCase::SO3Rotors, BracketCase::SE3Rotors}) {
    SuiteReport r = run_bracket_suite(bc, opts);
    all = all && r.pass();
    for (const AxiomResult& a : r.axioms) {
      std::string key = "bracket." + to_string(bc) + "." + a.axiom + ".";
      rep.add(key + "worst", a.worst);
      rep.add(key + "worst_instance", a.worst_instance);
      rep.add(key + "tolerance", a.tolerance);
      rep.add(key + "pass", a.pass);
      if (!o.quiet)
        log << (a.pass ? "PASS " : "FAIL ") << to_string(bc) << " " << a.axiom << " worst "
            << format_number(a.worst) << " (instance " << a.worst_instance << ")\n";
    }
  }
  rep.add("status", all ? "all_pass" : "axiom_failed");
  finish(rep, o.out / "bracket_report.txt", o, log);
  return all ? kOk : kCheckFailed;
}

}  // namespace rch::cli
