#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rch/reduction.hpp"
#include "rch/sampling.hpp"

namespace rch {

// Point of Q = G x R^k.
struct Configuration {
  GroupElement g;
  VecX theta;
};

// Tangent to Q in left-trivialized form: eta = g^-1 dg.
struct BaseTangent {
  AlgebraVector eta;
  VecX dtheta;

  static BaseTangent from_flat(GroupKind kind, const VecX& x);
  VecX flat() const;
};

// Fiber coordinates of a covector at q (body momentum and rotor momenta),
// also used for their directional derivatives.
struct FiberValue {
  CoalgebraVector p;
  VecX l;

  VecX flat() const;
};

// q . exp(s x): left-invariant flow on G, straight line on R^k.
Configuration flow(const Configuration& q, const BaseTangent& x, double s);

enum class SectionFamily { ExactDifferential, ConstantBody, Custom };
std::string to_string(SectionFamily family);

class OneFormSection {
 public:
  using Fiber = std::function<FiberValue(const Configuration&)>;
  using Jacobian = std::function<FiberValue(const Configuration&, const BaseTangent&)>;

  OneFormSection(std::string name, GroupKind kind, int rotor_count,
                 SectionFamily family, Fiber fiber, Jacobian jacobian = nullptr);

  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  int rotor_count() const { return rotor_count_; }
  SectionFamily family() const { return family_; }
  // Pullback of the canonical form by the section, as a map, is symplectic
  // for exact differentials; unverified for the other families.
  bool pullback_symplectic_known() const { return family_ == SectionFamily::ExactDifferential; }

  FiberValue fiber(const Configuration& q) const;
  PhasePoint at(const Configuration& q) const;
  ReducedPoint body_at(const Configuration& q) const { return at(q).body(); }
  // Derivative of the fiber along q . exp(s x) at s = 0: the supplied
  // jacobian, or central differences with step 1e-6.
  FiberValue derivative(const Configuration& q, const BaseTangent& x) const;

 private:
  std::string name_;
  GroupKind kind_;
  int rotor_count_;
  SectionFamily family_;
  Fiber fiber_;
  Jacobian jacobian_;
};

// Generating function on Q with an optional exact differential.
struct Potential {
  std::function<double(const Configuration&)> value;
  std::function<FiberValue(const Configuration&)> differential;
};

// gamma = dW: p_a = d/ds W(q . exp(s e_a)), l_i = dW/dtheta_i.
OneFormSection exact_dW(const std::string& name, GroupKind kind, int rotor_count,
                        const Potential& w);
// Constant body-coordinate values (nu0, l0).
OneFormSection constant_body(const CoalgebraVector& nu0, const VecX& l0);
// SO3: zero. SE3: p = (0, R^T a), l = 0, i.e. dW for W = a.t.
OneFormSection zero_section(GroupKind kind, int rotor_count, const Vec3& a = Vec3::UnitZ());
// p = 0, l_2 = theta_1: behaves like x dy, so d gamma = dtheta1 ^ dtheta2.
OneFormSection planted_non_closed(GroupKind kind, int rotor_count);

// Built-in generating functions (all with exact differentials):
//   zero          W = 0
//   rotor_spin    W = c . theta
//   rotor_wobble  W = c . theta + amplitude sin(theta_1)
//   height        W = axis . t                      (SE3)
//   tilt          W = axis . (R body_axis)
struct PotentialSpec {
  std::string name = "zero";
  VecX coeffs;
  double amplitude = 0.0;
  Vec3 axis = Vec3::UnitZ();
  Vec3 body_axis = Vec3::UnitX();
};
Potential builtin_potential(const PotentialSpec& spec, GroupKind kind, int rotor_count);
std::vector<std::string> builtin_potential_names();

// Orthonormal frame of the base tangent space.
std::vector<BaseTangent> base_frame(GroupKind kind, int rotor_count);

// Random rotations, angles in [-pi, pi]; for SE3 the translation is
// s * translation_axis (s in [-1, 1]) when given, else uniform in [-1, 1]^3.
std::vector<Configuration> sample_configurations(GroupKind kind, int rotor_count, int n,
                                                 Rng& rng,
                                                 std::optional<Vec3> translation_axis = {});

// d gamma(x, y) = D_x<gamma, y> - D_y<gamma, x> - <p, [eta_x, eta_y]>, with
// the pairings differentiated as scalars (central differences, step 1e-6).
double exterior_derivative(const OneFormSection& gamma, const Configuration& q,
                           const BaseTangent& x, const BaseTangent& y);

// Left-trivialized canonical two-form on T*Q at z.
double canonical_form(const PhasePoint& z, const BaseTangent& base1, const FiberValue& fiber1,
                      const BaseTangent& base2, const FiberValue& fiber2);

// Max |d gamma| over frame pairs and pairs_per_sample random unit pairs.
double closedness_defect(const OneFormSection& gamma, const std::vector<Configuration>& samples,
                         int pairs_per_sample, Rng& rng);
double closedness_defect(const OneFormSection& gamma, int n_samples, std::uint64_t seed = 0);

struct PullbackReport {
  double defect = 0.0;     // max |omega(T gamma x, T gamma y) + d gamma(x, y)|
  double max_lhs = 0.0;    // max |omega(T gamma x, T gamma y)|
  double max_rhs = 0.0;    // max |d gamma(x, y)|
  int pairs = 0;
};
// Evaluates n_pairs random unit base-tangent pairs, cycling through samples.
PullbackReport pullback_identity(const OneFormSection& gamma,
                                 const std::vector<Configuration>& samples, int n_pairs,
                                 Rng& rng);
double pullback_identity_defect(const OneFormSection& gamma, int n_pairs, std::uint64_t seed = 0);

// Base projection of the dynamical field at gamma(q).
BaseTangent x_gamma(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q);

// With reduced = true, gamma(q) must lie on mu within 1e-8 (MembershipError).
double relatedness_residual(const RCHSystem& sys, const OneFormSection& gamma,
                            const Configuration& q, bool reduced = false,
                            const std::optional<CoalgebraVector>& mu = {});
// |X_{H.gamma} + lifted force + lifted control| at q; X_{H.gamma} is the
// vertical field -d(H.gamma) of the pulled-back function.
double hj_residual(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q,
                   bool reduced = false, const std::optional<CoalgebraVector>& mu = {});
// The vector whose norm is hj_residual, in (p, l) order.
FiberValue hj_vector(const RCHSystem& sys, const OneFormSection& gamma, const Configuration& q);

// Pointwise form used by the explicit equations: X_{h.gamma_bar}(state) +
// control, where the Hamiltonian is linearized at gamma_bar. Components
// follow the flat state order.
Tangent hj_components(const RCHSystem& sys, const ReducedPoint& state,
                      const ReducedPoint& gamma_bar, const Tangent& control);

enum class Verdict { Pass, Fail, Band, Inconsistent };
std::string to_string(Verdict v);

struct ProbeThresholds {
  double pass = 1e-6;
  double fail = 1e-3;
  double closedness = 1e-5;
  double membership = 1e-8;
};

// Pass: both <= pass. Fail: both >= fail. Inconsistent: exactly one <= pass.
// Band: neither vanishes but they are not both past fail.
Verdict classify(double relatedness, double hj, const ProbeThresholds& t);

struct SampleResidual {
  int index = 0;
  double relatedness = 0.0;
  double hj = 0.0;
  double x_gamma_norm = 0.0;
  Verdict verdict = Verdict::Pass;
};

struct ResidualReport {
  std::string section;
  bool closedness_gate_passed = true;
  double closedness_defect = 0.0;
  double relatedness_residual = 0.0;  // max over samples
  double hj_residual = 0.0;           // max over samples
  int sample_count = 0;
  int worst_relatedness_sample = -1;
  int worst_hj_sample = -1;
  int pass_count = 0;
  int fail_count = 0;
  int band_count = 0;
  int inconsistent_count = 0;
  std::vector<SampleResidual> samples;
};

// Gate on closedness first; if the gate rejects, no residuals are
// evaluated. With mu given every sample must lie on the level (reduced
// check); a violation throws MembershipError.
ResidualReport theorem_equivalence_probe(const RCHSystem& sys, const OneFormSection& gamma,
                                         const std::vector<Configuration>& samples,
                                         const std::optional<CoalgebraVector>& mu = {},
                                         const ProbeThresholds& thresholds = {},
                                         std::uint64_t seed = 0);

}  // namespace rch
