#pragma once

#include <functional>
#include <vector>

#include "rch/rch_system.hpp"

namespace rch {

// Point of T*G x T*V in body coordinates: p is the left-trivialized
// momentum, so the momentum map is J = Ad*_{g^-1} p.
struct PhasePoint {
  GroupElement g;
  CoalgebraVector p;
  VecX theta;
  VecX l;

  ReducedPoint body() const { return {p, theta, l}; }
};

// Phase velocity: eta = g^-1 dg/dt plus momentum and rotor rates.
struct PhaseTangent {
  AlgebraVector eta;
  CoalgebraVector dp;
  VecX dtheta;
  VecX dl;
};

CoalgebraVector momentum_map(const PhasePoint& z);

// Point with body momentum Ad*_g mu, so that J = mu.
PhasePoint point_on_level(const GroupElement& g, const CoalgebraVector& mu,
                          const VecX& theta, const VecX& l);

// Reduced coordinates of z. Throws MembershipError (carrying |J - mu|)
// when z is off the level by more than tol.
ReducedPoint project_reduced(const PhasePoint& z, const CoalgebraVector& mu,
                             double tol = 1e-8);

using FullHamiltonian = std::function<double(const PhasePoint&)>;

// max over samples of |H(z) - h(body(z))|.
double reduced_hamiltonian_check(const FullHamiltonian& full, const ScalarField& h,
                                 const std::vector<PhasePoint>& samples);

struct FullSystem {
  FullHamiltonian hamiltonian;
  // Vertical (momentum-space) external term; null means none.
  std::function<Tangent(const PhasePoint&)> external;
  // Set when the reduced model drops rotor angles.
  bool angles_cyclic = false;
};

// Hamilton's equations in body coordinates, derived from H by central
// differences: eta = dH/dp, dp = ad*_eta p - d_g H, dtheta = dH/dl,
// dl = -dH/dtheta, plus the external term.
PhaseTangent full_field(const FullSystem& sys, const PhasePoint& z);

// |projected full field - reduced field| at z (which must lie on mu).
double commutation_residual(const FullSystem& full, const RCHSystem& reduced,
                            const PhasePoint& z, const CoalgebraVector& mu);

enum class ReconstructionScheme {
  FirstOrder,  // g_{n+1} = g_n exp(dt xi_n)
  Magnus4,     // two-point Gauss Magnus on an interpolated xi
};

// Attitude along a sampled reduced trajectory (uniform spacing dt),
// solving dg/dt = g xi(t).
std::vector<GroupElement> reconstruct(
    const std::vector<ReducedPoint>& states, const GroupElement& g0, double dt,
    const std::function<AlgebraVector(const ReducedPoint&)>& xi_of,
    ReconstructionScheme scheme = ReconstructionScheme::Magnus4);

// dh/dnu, the body velocity used for reconstruction.
AlgebraVector body_velocity(const ScalarField& h, const ReducedPoint& p);

}  // namespace rch
