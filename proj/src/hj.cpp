#include "rch/hj.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rch {

BaseTangent BaseTangent::from_flat(GroupKind kind, const VecX& x) {
  int n = algebra_dim(kind);
  if (x.size() < n) throw std::invalid_argument("BaseTangent::from_flat: too few components");
  return {AlgebraVector::from_flat(kind, x.head(n)), x.tail(x.size() - n)};
}

VecX BaseTangent::flat() const {
  VecX x(eta.dim() + dtheta.size());
  x << eta.flat(), dtheta;
  return x;
}

VecX FiberValue::flat() const {
  VecX x(p.dim() + l.size());
  x << p.flat(), l;
  return x;
}

Configuration flow(const Configuration& q, const BaseTangent& x, double s) {
  return {q.g * exp_group(x.eta * s), q.theta + s * x.dtheta};
}

std::string to_string(SectionFamily family) {
  switch (family) {
    case SectionFamily::ExactDifferential: return "exact_dW";
    case SectionFamily::ConstantBody: return "constant_body";
    case SectionFamily::Custom: return "custom";
  }
  return "unknown";
}

OneFormSection::OneFormSection(std::string name, GroupKind kind, int rotor_count,
                               SectionFamily family, Fiber fiber, Jacobian jacobian)
    : name_(std::move(name)),
      kind_(kind),
      rotor_count_(rotor_count),
      family_(family),
      fiber_(std::move(fiber)),
      jacobian_(std::move(jacobian)) {
  if (rotor_count < 0) throw std::invalid_argument("rotor_count must be non-negative");
}

FiberValue OneFormSection::fiber(const Configuration& q) const {
  if (q.g.kind != kind_ || q.theta.size() != rotor_count_)
    throw std::invalid_argument("section " + name_ + ": configuration has the wrong shape");
  FiberValue f = fiber_(q);
  if (f.p.kind != kind_ || f.l.size() != rotor_count_)
    throw std::invalid_argument("section " + name_ + ": fiber value has the wrong shape");
  if (!f.flat().allFinite()) throw NonFiniteError("section " + name_ + " is non-finite");
  return f;
}

PhasePoint OneFormSection::at(const Configuration& q) const {
  FiberValue f = fiber(q);
  return {q.g, f.p, q.theta, f.l};
}

FiberValue OneFormSection::derivative(const Configuration& q, const BaseTangent& x) const {
  if (jacobian_) return jacobian_(q, x);
  double s = 1e-6 / std::max(1.0, x.flat().norm());
  FiberValue fp = fiber(flow(q, x, s));
  FiberValue fm = fiber(flow(q, x, -s));
  return {(fp.p - fm.p) * (1.0 / (2.0 * s)), (fp.l - fm.l) / (2.0 * s)};
}

std::vector<BaseTangent> base_frame(GroupKind kind, int rotor_count) {
  int n = algebra_dim(kind) + rotor_count;
  std::vector<BaseTangent> out;
  for (int i = 0; i < n; ++i) out.push_back(BaseTangent::from_flat(kind, VecX::Unit(n, i)));
  return out;
}

namespace {

// Fourth-order central difference of W along x (step 1e-3) so that the
// section built from it can itself be differentiated.
double directional(const Potential& w, const Configuration& q, const BaseTangent& x) {
  const double s = 1e-3;
  auto at = [&](double t) { return w.value(flow(q, x, t)); };
  return (8.0 * (at(s) - at(-s)) - (at(2 * s) - at(-2 * s))) / (12.0 * s);
}

}  // namespace

OneFormSection exact_dW(const std::string& name, GroupKind kind, int rotor_count,
                        const Potential& w) {
  OneFormSection::Fiber fiber;
  if (w.differential) {
    fiber = w.differential;
  } else {
    if (!w.value) throw std::invalid_argument("exact_dW: potential has no value");
    fiber = [w, kind, rotor_count](const Configuration& q) {
      std::vector<BaseTangent> frame = base_frame(kind, rotor_count);
      int n = algebra_dim(kind);
      VecX d(frame.size());
      for (size_t i = 0; i < frame.size(); ++i) d[i] = directional(w, q, frame[i]);
      return FiberValue{CoalgebraVector::from_flat(kind, d.head(n)), d.tail(rotor_count)};
    };
  }
  return OneFormSection(name, kind, rotor_count, SectionFamily::ExactDifferential, fiber);
}

OneFormSection constant_body(const CoalgebraVector& nu0, const VecX& l0) {
  GroupKind kind = nu0.kind;
  int k = static_cast<int>(l0.size());
  return OneFormSection(
      "constant_body", kind, k, SectionFamily::ConstantBody,
      [nu0, l0](const Configuration&) { return FiberValue{nu0, l0}; },
      [kind, k](const Configuration&, const BaseTangent&) {
        return FiberValue{CoalgebraVector::zero(kind), VecX::Zero(k)};
      });
}

OneFormSection zero_section(GroupKind kind, int rotor_count, const Vec3& a) {
  PotentialSpec spec;
  spec.name = kind == GroupKind::SE3 ? "height" : "zero";
  spec.axis = a;
  OneFormSection s = exact_dW("zero", kind, rotor_count, builtin_potential(spec, kind, rotor_count));
  return s;
}

OneFormSection planted_non_closed(GroupKind kind, int rotor_count) {
  if (rotor_count < 2)
    throw std::invalid_argument("planted_non_closed needs at least two rotor angles");
  return OneFormSection("planted_non_closed", kind, rotor_count, SectionFamily::Custom,
                        [kind, rotor_count](const Configuration& q) {
                          VecX l = VecX::Zero(rotor_count);
                          l[1] = q.theta[0];
                          return FiberValue{CoalgebraVector::zero(kind), l};
                        });
}

std::vector<std::string> builtin_potential_names() {
  return {"zero", "rotor_spin", "rotor_wobble", "height", "tilt"};
}

Potential builtin_potential(const PotentialSpec& spec, GroupKind kind, int rotor_count) {
  const int k = rotor_count;
  VecX c = spec.coeffs.size() ? spec.coeffs : VecX::Ones(k);
  if (c.size() != k)
    throw std::invalid_argument("potential " + spec.name + ": expected " + std::to_string(k) +
                                " coefficients");
  const double amp = spec.amplitude;
  const Vec3 axis = spec.axis;
  const Vec3 body_axis = spec.body_axis;
  auto zero_fiber = [kind, k]() {
    return FiberValue{CoalgebraVector::zero(kind), VecX::Zero(k)};
  };

  if (spec.name == "zero") {
    return {[](const Configuration&) { return 0.0; },
            [zero_fiber](const Configuration&) { return zero_fiber(); }};
  }
  if (spec.name == "rotor_spin" || spec.name == "rotor_wobble") {
    bool wobble = spec.name == "rotor_wobble";
    if (wobble && k < 1) throw std::invalid_argument("rotor_wobble needs a rotor");
    return {[c, amp, wobble](const Configuration& q) {
              return c.dot(q.theta) + (wobble ? amp * std::sin(q.theta[0]) : 0.0);
            },
            [c, amp, wobble, kind](const Configuration& q) {
              VecX l = c;
              if (wobble) l[0] += amp * std::cos(q.theta[0]);
              return FiberValue{CoalgebraVector::zero(kind), l};
            }};
  }
  if (spec.name == "height") {
    if (kind != GroupKind::SE3) throw std::invalid_argument("height potential needs SE3");
    return {[axis](const Configuration& q) { return axis.dot(q.g.trans); },
            [axis, k](const Configuration& q) {
              return FiberValue{CoalgebraVector::se3(Vec3::Zero(), q.g.rot.transpose() * axis),
                                VecX::Zero(k)};
            }};
  }
  if (spec.name == "tilt") {
    // d/ds axis . (R exp(s e) b) = e . (b x R^T axis).
    return {[axis, body_axis](const Configuration& q) { return axis.dot(q.g.rot * body_axis); },
            [axis, body_axis, kind, k](const Configuration& q) {
              Vec3 pi = body_axis.cross(q.g.rot.transpose() * axis);
              CoalgebraVector p = kind == GroupKind::SO3 ? CoalgebraVector::so3(pi)
                                                         : CoalgebraVector::se3(pi, Vec3::Zero());
              return FiberValue{p, VecX::Zero(k)};
            }};
  }
  throw std::invalid_argument("unknown potential '" + spec.name + "'");
}

std::vector<Configuration> sample_configurations(GroupKind kind, int rotor_count, int n,
                                                 Rng& rng, std::optional<Vec3> translation_axis) {
  std::vector<Configuration> out;
  for (int i = 0; i < n; ++i) {
    Mat3 r = rng.rotation();
    Vec3 t = Vec3::Zero();
    if (kind == GroupKind::SE3)
      t = translation_axis ? Vec3(rng.uniform(-1, 1) * *translation_axis)
                           : rng.uniform_vec3(-1, 1);
    VecX theta = rng.uniform_vec(rotor_count, -std::numbers::pi, std::numbers::pi);
    out.push_back({GroupElement{kind, r, t}, theta});
  }
  return out;
}

namespace {

double pairing_with(const FiberValue& f, const BaseTangent& x) {
  return pairing(f.p, x.eta) + f.l.dot(x.dtheta);
}

void require_compatible(const RCHSystem& sys, const OneFormSection& gamma) {
  if (sys.kind != gamma.kind() || sys.rotor_count != gamma.rotor_count())
    throw std::invalid_argument("section " + gamma.name() + " does not fit system " + sys.name);
  if (!sys.keeps_angles && sys.rotor_count > 0)
    throw std::invalid_argument("system " + sys.name +
                                " drops rotor angles; sections need the full configuration");
}

void check_membership(const PhasePoint& z, const std::optional<CoalgebraVector>& mu,
                      double tol) {
  if (!mu) throw std::invalid_argument("reduced check requires a momentum level mu");
  project_reduced(z, *mu, tol);
}

BaseTangent random_unit_tangent(GroupKind kind, int k, Rng& rng) {
  return BaseTangent::from_flat(kind, rng.unit_vec(algebra_dim(kind) + k));
}

}  // namespace

double exterior_derivative(const OneFormSection& gamma, const Configuration& q,
                           const BaseTangent& x, const BaseTangent& y) {
  auto d = [&](const BaseTangent& along, const BaseTangent& paired) {
    double s = 1e-6 / std::max(1.0, along.flat().norm());
    return (pairing_with(gamma.fiber(flow(q, along, s)), paired) -
            pairing_with(gamma.fiber(flow(q, along, -s)), paired)) /
           (2.0 * s);
  };
  FiberValue f = gamma.fiber(q);
  return d(x, y) - d(y, x) - pairing(f.p, bracket(x.eta, y.eta));
}

double canonical_form(const PhasePoint& z, const BaseTangent& base1, const FiberValue& fiber1,
                      const BaseTangent& base2, const FiberValue& fiber2) {
  return pairing(fiber2.p, base1.eta) - pairing(fiber1.p, base2.eta) +
         pairing(z.p, bracket(base1.eta, base2.eta)) + base1.dtheta.dot(fiber2.l) -
         base2.dtheta.dot(fiber1.l);
}

double closedness_defect(const OneFormSection& gamma, const std::vector<Configuration>& samples,
                         int pairs_per_sample, Rng& rng) {
  std::vector<BaseTangent> frame = base_frame(gamma.kind(), gamma.rotor_count());
  double worst = 0.0;
  for (const Configuration& q : samples) {
    for (size_t i = 0; i < frame.size(); ++i)
      for (size_t j = i + 1; j < frame.size(); ++j)
        worst = std::max(worst, std::abs(exterior_derivative(gamma, q, frame[i], frame[j])));
    for (int r = 0; r < pairs_per_sample; ++r) {
      BaseTangent x = random_unit_tangent(gamma.kind(), gamma.rotor_count(), rng);
      BaseTangent y = random_unit_tangent(gamma.kind(), gamma.rotor_count(), rng);
      worst = std::max(worst, std::abs(exterior_derivative(gamma, q, x, y)));
    }
  }
  return worst;
}

double closedness_defect(const OneFormSection& gamma, int n_samples, std::uint64_t seed) {
  Rng rng(seed);
  auto samples = sample_configurations(gamma.kind(), gamma.rotor_count(), n_samples, rng);
  return closedness_defect(gamma, samples, 4, rng);
}

PullbackReport pullback_identity(const OneFormSection& gamma,
                                 const std::vector<Configuration>& samples, int n_pairs,
                                 Rng& rng) {
  if (samples.empty()) throw std::invalid_argument("pullback_identity: no samples");
  PullbackReport rep;
  for (int i = 0; i < n_pairs; ++i) {
    const Configuration& q = samples[i % samples.size()];
    BaseTangent x = random_unit_tangent(gamma.kind(), gamma.rotor_count(), rng);
    BaseTangent y = random_unit_tangent(gamma.kind(), gamma.rotor_count(), rng);
    double lhs = canonical_form(gamma.at(q), x, gamma.derivative(q, x), y, gamma.derivative(q, y));
    double rhs = exterior_derivative(gamma, q, x, y);
    rep.defect = std::max(rep.defect, std::abs(lhs + rhs));
    rep.max_lhs = std::max(rep.max_lhs, std::abs(lhs));
    rep.max_rhs = std::max(rep.max_rhs, std::abs(rhs));
    ++rep.pairs;
  }
  return rep;
}

double pullback_identity_defect(const OneFormSection& gamma, int n_pairs, std::uint64_t seed) {
  Rng rng(seed);
  auto samples = sample_configurations(gamma.kind(), gamma.rotor_count(), 20, rng);
  return pullback_identity(gamma, samples, n_pairs, rng).defect;
}

BaseTangent x_gamma(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q) {
  require_compatible(sys, gamma);
  ReducedPoint r = gamma.body_at(q);
  Tangent field = dynamical_field(sys, r);
  return {body_velocity(sys.hamiltonian, r), field.d_theta};
}

double relatedness_residual(const RCHSystem& sys, const OneFormSection& gamma,
                            const Configuration& q, bool reduced,
                            const std::optional<CoalgebraVector>& mu) {
  require_compatible(sys, gamma);
  PhasePoint z = gamma.at(q);
  if (reduced) check_membership(z, mu, 1e-8);
  ReducedPoint r = z.body();
  Tangent field = dynamical_field(sys, r);
  BaseTangent xg{body_velocity(sys.hamiltonian, r), field.d_theta};
  FiberValue moved = gamma.derivative(q, xg);
  VecX diff(moved.p.dim() + moved.l.size());
  diff << (moved.p - field.d_nu).flat(), moved.l - field.d_l;
  return diff.norm();
}

FiberValue hj_vector(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q) {
  require_compatible(sys, gamma);
  ReducedPoint r = gamma.body_at(q);
  Tangent lifted = external_part(sys, r);
  std::vector<BaseTangent> frame = base_frame(sys.kind, sys.rotor_count);
  int n = algebra_dim(sys.kind);
  VecX out(frame.size());
  for (size_t i = 0; i < frame.size(); ++i) {
    const double s = 1e-6;
    double d = (sys.hamiltonian(gamma.body_at(flow(q, frame[i], s))) -
                sys.hamiltonian(gamma.body_at(flow(q, frame[i], -s)))) /
               (2.0 * s);
    out[i] = -d;
  }
  FiberValue v{CoalgebraVector::from_flat(sys.kind, out.head(n)), out.tail(sys.rotor_count)};
  v.p = v.p + lifted.d_nu;
  v.l += lifted.d_l;
  return v;
}

double hj_residual(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q,
                   bool reduced, const std::optional<CoalgebraVector>& mu) {
  if (reduced) check_membership(gamma.at(q), mu, 1e-8);
  return hj_vector(sys, gamma, q).flat().norm();
}

Tangent hj_components(const RCHSystem& sys, const ReducedPoint& state,
                      const ReducedPoint& gamma_bar, const Tangent& control) {
  Layout layout = state.layout();
  if (gamma_bar.layout() != layout || layout != sys.layout())
    throw std::invalid_argument("hj_components: state, candidate and system shapes differ");
  Gradient frozen = sys.hamiltonian.gradient(gamma_bar);
  double base_value = sys.hamiltonian(gamma_bar);
  VecX g = frozen.flat();
  VecX anchor = gamma_bar.flat();
  ScalarField linearized([=](const ReducedPoint& p) { return base_value + g.dot(p.flat() - anchor); },
                         [frozen](const ReducedPoint&) { return frozen; });
  VecX v(layout.size());
  for (int i = 0; i < layout.size(); ++i)
    v[i] = product_bracket(coordinate_field(layout, i), linearized, state, sys.sign);
  return Tangent::from_flat(layout, v) + control;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Band: return "BAND";
    case Verdict::Inconsistent: return "INCONSISTENT";
  }
  return "UNKNOWN";
}

Verdict classify(double relatedness, double hj, const ProbeThresholds& t) {
  bool rel_zero = relatedness <= t.pass;
  bool hj_zero = hj <= t.pass;
  if (rel_zero && hj_zero) return Verdict::Pass;
  if (rel_zero != hj_zero) return Verdict::Inconsistent;
  if (relatedness >= t.fail && hj >= t.fail) return Verdict::Fail;
  return Verdict::Band;
}

ResidualReport theorem_equivalence_probe(const RCHSystem& sys, const OneFormSection& gamma,
                                         const std::vector<Configuration>& samples,
                                         const std::optional<CoalgebraVector>& mu,
                                         const ProbeThresholds& thresholds, std::uint64_t seed) {
  require_compatible(sys, gamma);
  ResidualReport rep;
  rep.section = gamma.name();
  rep.sample_count = static_cast<int>(samples.size());
  Rng rng(seed);
  rep.closedness_defect = closedness_defect(gamma, samples, 4, rng);
  rep.closedness_gate_passed = rep.closedness_defect <= thresholds.closedness;
  if (!rep.closedness_gate_passed) return rep;

  for (int i = 0; i < rep.sample_count; ++i) {
    const Configuration& q = samples[i];
    if (mu) check_membership(gamma.at(q), mu, thresholds.membership);
    SampleResidual s;
    s.index = i;
    s.relatedness = relatedness_residual(sys, gamma, q);
    s.hj = hj_residual(sys, gamma, q);
    s.x_gamma_norm = x_gamma(sys, gamma, q).flat().norm();
    s.verdict = classify(s.relatedness, s.hj, thresholds);
    if (rep.worst_relatedness_sample < 0 || s.relatedness > rep.relatedness_residual) {
      rep.relatedness_residual = s.relatedness;
      rep.worst_relatedness_sample = i;
    }
    if (rep.worst_hj_sample < 0 || s.hj > rep.hj_residual) {
      rep.hj_residual = s.hj;
      rep.worst_hj_sample = i;
    }
    switch (s.verdict) {
      case Verdict::Pass: ++rep.pass_count; break;
      case Verdict::Fail: ++rep.fail_count; break;
      case Verdict::Band: ++rep.band_count; break;
      case Verdict::Inconsistent: ++rep.inconsistent_count; break;
    }
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace rch
