#include "rch/systems.hpp"

#include <cmath>

namespace rch {

namespace {

void require_positive(const VecX& v, const char* what) {
  for (int i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) + "[" + std::to_string(i) +
                                  "] must be strictly positive");
    }
  }
}

void require_unit(const Vec3& chi) {
  if (!chi.allFinite() || std::abs(chi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("chi must be a unit vector");
}

void require_layout(const ReducedPoint& p, GroupKind kind, int rotors, const char* who) {
  Layout l = p.layout();
  if (l.kind != kind || l.l_dim != rotors || (l.theta_dim != 0 && l.theta_dim != rotors))
    throw std::invalid_argument(std::string(who) + ": state has the wrong shape");
}

Gradient make_gradient(const ReducedPoint& p, const AlgebraVector& d_nu, const VecX& d_l) {
  return {d_nu, VecX::Zero(p.theta.size()), d_l};
}

// Body angular velocity with rotors on the axes listed in l.
Vec3 rotor_body_rate(const Vec3& pi, const VecX& l, const Vec3& ibar) {
  Vec3 rel = pi;
  for (int i = 0; i < l.size(); ++i) rel[i] -= l[i];
  return rel.cwiseQuotient(ibar);
}

Tangent rotor_tangent(const ReducedPoint& p, const CoalgebraVector& d_nu,
                      const VecX& spin_rate) {
  Tangent t;
  t.d_nu = d_nu;
  t.d_theta = p.theta.size() ? spin_rate : VecX();
  t.d_l = VecX::Zero(p.l.size());
  return t;
}

}  // namespace

RigidBodyRotorParams RigidBodyRotorParams::from_raw(const Vec3& body,
                                                    const Mat3& rotor_axes) {
  RigidBodyRotorParams out;
  for (int i = 0; i < 3; ++i) {
    out.ibar[i] = body[i] + rotor_axes.col(i).sum() - rotor_axes(i, i);
    out.rotor[i] = rotor_axes(i, i);
  }
  out.validate();
  return out;
}

void RigidBodyRotorParams::validate() const {
  require_positive(ibar, "ibar");
  require_positive(rotor, "rotor");
}

HeavyTopRotorParams HeavyTopRotorParams::from_raw(
    const Vec3& body, const Eigen::Matrix<double, 2, 3>& rotor_axes, double mass,
    double gravity, double height, const Vec3& chi) {
  HeavyTopRotorParams out;
  for (int i = 0; i < 3; ++i) out.ibar[i] = body[i] + rotor_axes.col(i).sum();
  for (int k = 0; k < 2; ++k) {
    out.ibar[k] -= rotor_axes(k, k);
    out.rotor[k] = rotor_axes(k, k);
  }
  out.mass = mass;
  out.gravity = gravity;
  out.height = height;
  out.chi = chi;
  out.validate();
  return out;
}

void HeavyTopRotorParams::validate() const {
  require_positive(ibar, "ibar");
  require_positive(rotor, "rotor");
  if (!std::isfinite(mgh())) throw std::invalid_argument("m, g, h must be finite");
  require_unit(chi);
}

void HeavyTopParams::validate() const {
  require_positive(inertia, "inertia");
  if (!std::isfinite(mgh())) throw std::invalid_argument("m, g, h must be finite");
  require_unit(chi);
}

ScalarField free_rigid_body_hamiltonian(const Vec3& inertia) {
  require_positive(inertia, "inertia");
  return ScalarField(
      [inertia](const ReducedPoint& p) {
        return 0.5 * p.nu.pi.cwiseAbs2().cwiseQuotient(inertia).sum();
      },
      [inertia](const ReducedPoint& p) {
        return make_gradient(p, AlgebraVector::so3(p.nu.pi.cwiseQuotient(inertia)),
                             VecX::Zero(p.l.size()));
      });
}

ScalarField rigid_body_rotor_hamiltonian(const RigidBodyRotorParams& params) {
  params.validate();
  return ScalarField(
      [params](const ReducedPoint& p) {
        require_layout(p, GroupKind::SO3, 3, "rigid_body_rotor_hamiltonian");
        Vec3 rel = p.nu.pi - Vec3(p.l);
        return 0.5 * (rel.cwiseAbs2().cwiseQuotient(params.ibar).sum() +
                      Vec3(p.l).cwiseAbs2().cwiseQuotient(params.rotor).sum());
      },
      [params](const ReducedPoint& p) {
        require_layout(p, GroupKind::SO3, 3, "rigid_body_rotor_hamiltonian");
        Vec3 w = rotor_body_rate(p.nu.pi, p.l, params.ibar);
        VecX dl = -w + Vec3(p.l).cwiseQuotient(params.rotor);
        return make_gradient(p, AlgebraVector::so3(w), dl);
      });
}

ScalarField heavy_top_rotor_hamiltonian(const HeavyTopRotorParams& params) {
  params.validate();
  return ScalarField(
      [params](const ReducedPoint& p) {
        require_layout(p, GroupKind::SE3, 2, "heavy_top_rotor_hamiltonian");
        const Vec3& pi = p.nu.pi;
        const Vec3& ib = params.ibar;
        double t = (pi[0] - p.l[0]) * (pi[0] - p.l[0]) / ib[0] +
                   (pi[1] - p.l[1]) * (pi[1] - p.l[1]) / ib[1] + pi[2] * pi[2] / ib[2] +
                   p.l[0] * p.l[0] / params.rotor[0] + p.l[1] * p.l[1] / params.rotor[1];
        return 0.5 * t + params.mgh() * p.nu.gamma.dot(params.chi);
      },
      [params](const ReducedPoint& p) {
        require_layout(p, GroupKind::SE3, 2, "heavy_top_rotor_hamiltonian");
        Vec3 w = rotor_body_rate(p.nu.pi, p.l, params.ibar);
        VecX dl(2);
        for (int i = 0; i < 2; ++i) dl[i] = -w[i] + p.l[i] / params.rotor[i];
        return make_gradient(p, AlgebraVector::se3(w, params.mgh() * params.chi), dl);
      });
}

ScalarField heavy_top_hamiltonian(const HeavyTopParams& params) {
  params.validate();
  return ScalarField(
      [params](const ReducedPoint& p) {
        return 0.5 * p.nu.pi.cwiseAbs2().cwiseQuotient(params.inertia).sum() +
               params.mgh() * p.nu.gamma.dot(params.chi);
      },
      [params](const ReducedPoint& p) {
        return make_gradient(p,
                             AlgebraVector::se3(p.nu.pi.cwiseQuotient(params.inertia),
                                                params.mgh() * params.chi),
                             VecX::Zero(p.l.size()));
      });
}

Tangent free_rigid_body_field(const Vec3& inertia, const ReducedPoint& p) {
  Vec3 w = p.nu.pi.cwiseQuotient(inertia);
  return rotor_tangent(p, CoalgebraVector::so3(p.nu.pi.cross(w)), VecX());
}

Tangent rigid_body_rotor_field(const RigidBodyRotorParams& params, const ReducedPoint& p) {
  require_layout(p, GroupKind::SO3, 3, "rigid_body_rotor_field");
  Vec3 w = rotor_body_rate(p.nu.pi, p.l, params.ibar);
  VecX spin = -w + Vec3(p.l).cwiseQuotient(params.rotor);
  return rotor_tangent(p, CoalgebraVector::so3(p.nu.pi.cross(w)), spin);
}

Tangent heavy_top_rotor_field(const HeavyTopRotorParams& params, const ReducedPoint& p) {
  require_layout(p, GroupKind::SE3, 2, "heavy_top_rotor_field");
  Vec3 w = rotor_body_rate(p.nu.pi, p.l, params.ibar);
  const Vec3& gamma = p.nu.gamma;
  VecX spin(2);
  for (int i = 0; i < 2; ++i) spin[i] = -w[i] + p.l[i] / params.rotor[i];
  return rotor_tangent(
      p,
      CoalgebraVector::se3(p.nu.pi.cross(w) + params.mgh() * gamma.cross(params.chi),
                           gamma.cross(w)),
      spin);
}

Tangent heavy_top_field(const HeavyTopParams& params, const ReducedPoint& p) {
  Vec3 w = p.nu.pi.cwiseQuotient(params.inertia);
  const Vec3& gamma = p.nu.gamma;
  return rotor_tangent(
      p,
      CoalgebraVector::se3(p.nu.pi.cross(w) + params.mgh() * gamma.cross(params.chi),
                           gamma.cross(w)),
      VecX());
}

RCHSystem free_rigid_body_system(const Vec3& inertia) {
  RCHSystem s;
  s.name = "rigid_body_free";
  s.kind = GroupKind::SO3;
  s.rotor_count = 0;
  s.hamiltonian = free_rigid_body_hamiltonian(inertia);
  return s;
}

RCHSystem rigid_body_rotor_system(const RigidBodyRotorParams& params) {
  RCHSystem s;
  s.name = "rigid_body_rotors";
  s.kind = GroupKind::SO3;
  s.rotor_count = 3;
  s.hamiltonian = rigid_body_rotor_hamiltonian(params);
  return s;
}

RCHSystem rigid_body_rotor_variant(const RigidBodyRotorParams& params) {
  RCHSystem s = rigid_body_rotor_system(params);
  s.name = "rigid_body_rotors_reduced";
  s.keeps_angles = false;
  return s;
}

RCHSystem heavy_top_rotor_system(const HeavyTopRotorParams& params) {
  RCHSystem s;
  s.name = "heavy_top_rotors";
  s.kind = GroupKind::SE3;
  s.rotor_count = 2;
  s.hamiltonian = heavy_top_rotor_hamiltonian(params);
  return s;
}

RCHSystem heavy_top_system(const HeavyTopParams& params) {
  RCHSystem s;
  s.name = "heavy_top_free";
  s.kind = GroupKind::SE3;
  s.rotor_count = 0;
  s.hamiltonian = heavy_top_hamiltonian(params);
  return s;
}

// Legendre transform: with body rate w and rotor rates a (relative to the
// body), L = 1/2 sum ibar_i w_i^2 + 1/2 sum J_i (w_i + a_i)^2 - V, and
// H = Pi.w + l.a - L.

FullHamiltonian free_rigid_body_full_hamiltonian(const Vec3& inertia) {
  return [inertia](const PhasePoint& z) {
    Vec3 w = z.p.pi.cwiseQuotient(inertia);
    double lagrangian = 0.5 * w.dot(inertia.cwiseProduct(w));
    return z.p.pi.dot(w) - lagrangian;
  };
}

FullHamiltonian rigid_body_rotor_full_hamiltonian(const RigidBodyRotorParams& params) {
  return [params](const PhasePoint& z) {
    Vec3 l = z.l;
    Vec3 w = (z.p.pi - l).cwiseQuotient(params.ibar);
    Vec3 a = l.cwiseQuotient(params.rotor) - w;
    Vec3 spin = w + a;
    double lagrangian = 0.5 * (w.dot(params.ibar.cwiseProduct(w)) +
                               spin.dot(params.rotor.cwiseProduct(spin)));
    return z.p.pi.dot(w) + l.dot(a) - lagrangian;
  };
}

FullHamiltonian heavy_top_rotor_full_hamiltonian(const HeavyTopRotorParams& params) {
  return [params](const PhasePoint& z) {
    Vec3 l3(z.l[0], z.l[1], 0.0);
    Vec3 w = (z.p.pi - l3).cwiseQuotient(params.ibar);
    double lagrangian = 0.5 * w.dot(params.ibar.cwiseProduct(w));
    double pairing_term = z.p.pi.dot(w);
    for (int k = 0; k < 2; ++k) {
      double a = z.l[k] / params.rotor[k] - w[k];
      lagrangian += 0.5 * params.rotor[k] * (w[k] + a) * (w[k] + a);
      pairing_term += z.l[k] * a;
    }
    lagrangian -= params.mgh() * z.p.gamma.dot(params.chi);
    return pairing_term - lagrangian;
  };
}

FullHamiltonian heavy_top_full_hamiltonian(const HeavyTopParams& params) {
  return [params](const PhasePoint& z) {
    Vec3 w = z.p.pi.cwiseQuotient(params.inertia);
    double lagrangian = 0.5 * w.dot(params.inertia.cwiseProduct(w)) -
                        params.mgh() * z.p.gamma.dot(params.chi);
    return z.p.pi.dot(w) - lagrangian;
  };
}

std::vector<Invariant> standard_invariants(const RCHSystem& sys) {
  std::vector<Invariant> out;
  ScalarField h = sys.hamiltonian;
  out.push_back({"energy", [h](const ReducedPoint& p) { return h(p); }});
  for (const Casimir& c : casimirs(sys.kind)) {
    ScalarField f = c.field;
    out.push_back({c.name, [f](const ReducedPoint& p) { return f(p); }});
  }
  return out;
}

std::vector<std::string> state_labels(const Layout& layout) {
  std::vector<std::string> out;
  for (int i = 1; i <= 3; ++i) out.push_back("pi" + std::to_string(i));
  if (layout.kind == GroupKind::SE3)
    for (int i = 1; i <= 3; ++i) out.push_back("gamma" + std::to_string(i));
  for (int i = 1; i <= layout.theta_dim; ++i) out.push_back("theta" + std::to_string(i));
  for (int i = 1; i <= layout.l_dim; ++i) out.push_back("l" + std::to_string(i));
  return out;
}

namespace {

void require_candidate(const HJCandidate& c, int gamma_bar, int control, const char* who) {
  if (c.gamma_bar.size() != gamma_bar || c.control.size() != control) {
    throw std::invalid_argument(std::string(who) + ": expected " +
                                std::to_string(gamma_bar) + " gamma_bar and " +
                                std::to_string(control) + " control components, got " +
                                std::to_string(c.gamma_bar.size()) + " and " +
                                std::to_string(c.control.size()));
  }
}

}  // namespace

VecX rigid_body_rotor_hj_rows(const RigidBodyRotorParams& params, const Vec3& pi,
                              const HJCandidate& c) {
  require_candidate(c, 9, 9, "rigid_body_rotor_hj_rows");
  const Vec3& I = params.ibar;
  const Vec3& J = params.rotor;
  const VecX& g = c.gamma_bar;
  const VecX& U = c.control;
  // Relative body rate numerators gamma_i - gamma_{i+6}.
  double d1 = g[0] - g[6], d2 = g[1] - g[7], d3 = g[2] - g[8];
  VecX r(9);
  r[0] = I[1] * pi[1] * d3 - I[2] * pi[2] * d2 + I[1] * I[2] * U[0];
  r[1] = I[2] * pi[2] * d1 - I[0] * pi[0] * d3 + I[2] * I[0] * U[1];
  r[2] = I[0] * pi[0] * d2 - I[1] * pi[1] * d1 + I[0] * I[1] * U[2];
  r[3] = -J[0] * d1 + I[0] * g[6] + I[0] * J[0] * U[3];
  r[4] = -J[1] * d2 + I[1] * g[7] + I[1] * J[1] * U[4];
  r[5] = -J[2] * d3 + I[2] * g[8] + I[2] * J[2] * U[5];
  r[6] = U[6];
  r[7] = U[7];
  r[8] = U[8];
  return r;
}

VecX rigid_body_rotor_hj_scales(const RigidBodyRotorParams& params) {
  const Vec3& I = params.ibar;
  const Vec3& J = params.rotor;
  VecX s(9);
  s << I[1] * I[2], I[2] * I[0], I[0] * I[1], I[0] * J[0], I[1] * J[1], I[2] * J[2], 1, 1, 1;
  return s;
}

VecX rigid_body_variant_hj_rows(const RigidBodyRotorParams& params, const Vec3& pi,
                                const HJCandidate& c) {
  require_candidate(c, 6, 6, "rigid_body_variant_hj_rows");
  const Vec3& I = params.ibar;
  const VecX& g = c.gamma_bar;
  const VecX& U = c.control;
  double d1 = g[0] - g[3], d2 = g[1] - g[4], d3 = g[2] - g[5];
  VecX r(6);
  r[0] = I[1] * pi[1] * d3 - I[2] * pi[2] * d2 + I[1] * I[2] * U[0];
  r[1] = I[2] * pi[2] * d1 - I[0] * pi[0] * d3 + I[2] * I[0] * U[1];
  r[2] = I[0] * pi[0] * d2 - I[1] * pi[1] * d1 + I[0] * I[1] * U[2];
  r[3] = U[3];
  r[4] = U[4];
  r[5] = U[5];
  return r;
}

VecX rigid_body_variant_hj_scales(const RigidBodyRotorParams& params) {
  const Vec3& I = params.ibar;
  VecX s(6);
  s << I[1] * I[2], I[2] * I[0], I[0] * I[1], 1, 1, 1;
  return s;
}

VecX heavy_top_rotor_hj_rows(const HeavyTopRotorParams& params, const Vec3& pi,
                             const Vec3& gamma, const HJCandidate& c) {
  require_candidate(c, 7, 10, "heavy_top_rotor_hj_rows");
  const Vec3& I = params.ibar;
  const auto& J = params.rotor;
  const Vec3& chi = params.chi;
  const double mgh = params.mgh();
  const VecX& g = c.gamma_bar;
  const VecX& U = c.control;
  double d1 = g[0] - g[5], d2 = g[1] - g[6], d3 = g[2];
  VecX r(10);
  r[0] = I[1] * pi[1] * d3 - I[2] * pi[2] * d2 +
         mgh * I[1] * I[2] * (gamma[1] * chi[2] - gamma[2] * chi[1]) + I[1] * I[2] * U[0];
  r[1] = I[2] * pi[2] * d1 - I[0] * pi[0] * d3 +
         mgh * I[2] * I[0] * (gamma[2] * chi[0] - gamma[0] * chi[2]) + I[2] * I[0] * U[1];
  r[2] = I[0] * pi[0] * d2 - I[1] * pi[1] * d1 +
         mgh * I[0] * I[1] * (gamma[0] * chi[1] - gamma[1] * chi[0]) + I[0] * I[1] * U[2];
  r[3] = I[1] * gamma[1] * d3 - I[2] * gamma[2] * d2 + I[1] * I[2] * U[3];
  r[4] = I[2] * gamma[2] * d1 - I[0] * gamma[0] * d3 + I[2] * I[0] * U[4];
  r[5] = I[0] * gamma[0] * d2 - I[1] * gamma[1] * d1 + I[0] * I[1] * U[5];
  r[6] = -J[0] * d1 + I[0] * g[5] + I[0] * J[0] * U[6];
  r[7] = -J[1] * d2 + I[1] * g[6] + I[1] * J[1] * U[7];
  r[8] = U[8];
  r[9] = U[9];
  return r;
}

VecX heavy_top_rotor_hj_scales(const HeavyTopRotorParams& params) {
  const Vec3& I = params.ibar;
  const auto& J = params.rotor;
  VecX s(10);
  s << I[1] * I[2], I[2] * I[0], I[0] * I[1], I[1] * I[2], I[2] * I[0], I[0] * I[1],
      I[0] * J[0], I[1] * J[1], 1, 1;
  return s;
}

VecX heavy_top_hj_rows(const HeavyTopParams& params, const Vec3& pi, const Vec3& gamma,
                       const HJCandidate& c) {
  require_candidate(c, 3, 6, "heavy_top_hj_rows");
  const Vec3& I = params.inertia;
  const Vec3& chi = params.chi;
  const double mgh = params.mgh();
  const VecX& g = c.gamma_bar;
  const VecX& U = c.control;
  VecX r(6);
  r[0] = I[1] * pi[1] * g[2] - I[2] * pi[2] * g[1] +
         mgh * I[1] * I[2] * (gamma[1] * chi[2] - gamma[2] * chi[1]) + I[1] * I[2] * U[0];
  r[1] = I[2] * pi[2] * g[0] - I[0] * pi[0] * g[2] +
         mgh * I[2] * I[0] * (gamma[2] * chi[0] - gamma[0] * chi[2]) + I[2] * I[0] * U[1];
  r[2] = I[0] * pi[0] * g[1] - I[1] * pi[1] * g[0] +
         mgh * I[0] * I[1] * (gamma[0] * chi[1] - gamma[1] * chi[0]) + I[0] * I[1] * U[2];
  r[3] = I[1] * gamma[1] * g[2] - I[2] * gamma[2] * g[1] + I[1] * I[2] * U[3];
  r[4] = I[2] * gamma[2] * g[0] - I[0] * gamma[0] * g[2] + I[2] * I[0] * U[4];
  r[5] = I[0] * gamma[0] * g[1] - I[1] * gamma[1] * g[0] + I[0] * I[1] * U[5];
  return r;
}

VecX heavy_top_hj_scales(const HeavyTopParams& params) {
  const Vec3& I = params.inertia;
  VecX s(6);
  s << I[1] * I[2], I[2] * I[0], I[0] * I[1], I[1] * I[2], I[2] * I[0], I[0] * I[1];
  return s;
}

ReducedPoint candidate_point(const Layout& layout, const VecX& gamma_bar,
                             const Vec3& gamma) {
  int expected = 3 + layout.theta_dim + layout.l_dim;
  if (gamma_bar.size() != expected)
    throw std::invalid_argument("candidate_point: expected " + std::to_string(expected) +
                                " components, got " + std::to_string(gamma_bar.size()));
  ReducedPoint p;
  p.nu = layout.kind == GroupKind::SO3
             ? CoalgebraVector::so3(gamma_bar.head<3>())
             : CoalgebraVector::se3(gamma_bar.head<3>(), gamma);
  p.theta = gamma_bar.segment(3, layout.theta_dim);
  p.l = gamma_bar.tail(layout.l_dim);
  return p;
}

Transport heavy_top_to_rotor_transport() {
  Transport t;
  t.to_a = [](const ReducedPoint& b) {
    if (b.nu.kind != GroupKind::SE3 || b.l.size() != 0)
      throw std::invalid_argument("transport expects a heavy-top state (Pi, Gamma)");
    return ReducedPoint{CoalgebraVector::so3(b.nu.pi), VecX(), VecX(b.nu.gamma)};
  };
  t.to_b = [](const ReducedPoint& a) {
    if (a.nu.kind != GroupKind::SO3 || a.l.size() != 3 || a.theta.size() != 0)
      throw std::invalid_argument("transport expects a rotor-body state (Pi, l)");
    return ReducedPoint{CoalgebraVector::se3(a.nu.pi, Vec3(a.l)), VecX(), VecX()};
  };
  t.push = [](const ReducedPoint&, const Tangent& v) {
    return Tangent{CoalgebraVector::so3(v.d_nu.pi), VecX(), VecX(v.d_nu.gamma)};
  };
  return t;
}

}  // namespace rch
