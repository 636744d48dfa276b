#include "rch/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rch {

CoalgebraVector momentum_map(const PhasePoint& z) {
  return Ad_star(z.g.inverse(), z.p);
}

PhasePoint point_on_level(const GroupElement& g, const CoalgebraVector& mu,
                          const VecX& theta, const VecX& l) {
  return {g, Ad_star(g, mu), theta, l};
}

ReducedPoint project_reduced(const PhasePoint& z, const CoalgebraVector& mu,
                             double tol) {
  double defect = (momentum_map(z) - mu).flat().norm();
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "point is off the momentum level (|J - mu| = " << defect << ")";
    throw MembershipError(msg.str(), defect);
  }
  return z.body();
}

double reduced_hamiltonian_check(const FullHamiltonian& full, const ScalarField& h,
                                 const std::vector<PhasePoint>& samples) {
  double worst = 0.0;
  for (const PhasePoint& z : samples)
    worst = std::max(worst, std::abs(full(z) - h(z.body())));
  return worst;
}

namespace {

double step_for(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

double eval(const FullHamiltonian& h, const PhasePoint& z) {
  double v = h(z);
  if (!std::isfinite(v)) throw NonFiniteError("full Hamiltonian is non-finite");
  return v;
}

}  // namespace

PhaseTangent full_field(const FullSystem& sys, const PhasePoint& z) {
  const GroupKind kind = z.g.kind;
  const int n = algebra_dim(kind);
  const FullHamiltonian& h = sys.hamiltonian;

  VecX p = z.p.flat();
  VecX dh_dp(n);
  for (int a = 0; a < n; ++a) {
    double s = step_for(p[a]);
    PhasePoint zp = z, zm = z;
    VecX pp = p, pm = p;
    pp[a] += s;
    pm[a] -= s;
    zp.p = CoalgebraVector::from_flat(kind, pp);
    zm.p = CoalgebraVector::from_flat(kind, pm);
    dh_dp[a] = (eval(h, zp) - eval(h, zm)) / (2.0 * s);
  }

  VecX dh_dg(n);
  for (int a = 0; a < n; ++a) {
    const double s = 1e-6;
    VecX e = VecX::Zero(n);
    e[a] = s;
    PhasePoint zp = z, zm = z;
    zp.g = z.g * exp_group(AlgebraVector::from_flat(kind, e));
    zm.g = z.g * exp_group(AlgebraVector::from_flat(kind, -e));
    dh_dg[a] = (eval(h, zp) - eval(h, zm)) / (2.0 * s);
  }

  auto partial = [&](VecX PhasePoint::*member, int i) {
    PhasePoint zp = z, zm = z;
    double s = step_for((z.*member)[i]);
    (zp.*member)[i] += s;
    (zm.*member)[i] -= s;
    return (eval(h, zp) - eval(h, zm)) / (2.0 * s);
  };
  const int k = static_cast<int>(z.l.size());
  VecX dh_dtheta = VecX::Zero(k), dh_dl(k);
  for (int i = 0; i < k; ++i) {
    if (z.theta.size() == k) dh_dtheta[i] = partial(&PhasePoint::theta, i);
    dh_dl[i] = partial(&PhasePoint::l, i);
  }

  PhaseTangent out;
  out.eta = AlgebraVector::from_flat(kind, dh_dp);
  out.dp = coadjoint_ad_star(out.eta, z.p) - CoalgebraVector::from_flat(kind, dh_dg);
  out.dtheta = z.theta.size() == k ? dh_dl : VecX();
  out.dl = -dh_dtheta;
  if (sys.external) {
    Tangent u = sys.external(z);
    out.dp = out.dp + u.d_nu;
    out.dl += u.d_l;
  }
  return out;
}

double commutation_residual(const FullSystem& full, const RCHSystem& reduced,
                            const PhasePoint& z, const CoalgebraVector& mu) {
  ReducedPoint r = project_reduced(z, mu);
  if (full.angles_cyclic) r.theta = VecX();
  Tangent reduced_rate = dynamical_field(reduced, r);
  PhaseTangent f = full_field(full, z);
  Tangent projected{f.dp, full.angles_cyclic ? VecX() : f.dtheta, f.dl};
  return (projected - reduced_rate).norm();
}

AlgebraVector body_velocity(const ScalarField& h, const ReducedPoint& p) {
  return h.gradient(p).d_nu;
}

namespace {

// Lagrange interpolation of samples[first..first+m) (unit spacing) at x.
VecX interpolate(const std::vector<VecX>& samples, int first, int m, double x) {
  VecX out = VecX::Zero(samples[first].size());
  for (int j = 0; j < m; ++j) {
    double w = 1.0;
    for (int i = 0; i < m; ++i)
      if (i != j) w *= (x - (first + i)) / static_cast<double>(j - i);
    out += w * samples[first + j];
  }
  return out;
}

}  // namespace

std::vector<GroupElement> reconstruct(
    const std::vector<ReducedPoint>& states, const GroupElement& g0, double dt,
    const std::function<AlgebraVector(const ReducedPoint&)>& xi_of,
    ReconstructionScheme scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("reconstruct: dt must be positive");
  std::vector<GroupElement> out;
  if (states.empty()) return out;
  const GroupKind kind = g0.kind;
  std::vector<VecX> xi;
  xi.reserve(states.size());
  for (const ReducedPoint& s : states) {
    AlgebraVector v = xi_of(s);
    require_same_kind(v.kind, kind, "reconstruct");
    xi.push_back(v.flat());
  }

  out.reserve(states.size());
  out.push_back(g0);
  const int count = static_cast<int>(states.size());
  const int m = std::min(4, count);
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  for (int n = 0; n + 1 < count; ++n) {
    AlgebraVector omega;
    if (scheme == ReconstructionScheme::FirstOrder) {
      omega = AlgebraVector::from_flat(kind, xi[n]) * dt;
    } else {
      int first = std::clamp(n - 1, 0, count - m);
      AlgebraVector a1 = AlgebraVector::from_flat(kind, interpolate(xi, first, m, n + c1));
      AlgebraVector a2 = AlgebraVector::from_flat(kind, interpolate(xi, first, m, n + c2));
      omega = (a1 + a2) * (0.5 * dt) + bracket(a1, a2) * (std::sqrt(3.0) / 12.0 * dt * dt);
    }
    out.push_back(out.back() * exp_group(omega));
  }
  return out;
}

}  // namespace rch
