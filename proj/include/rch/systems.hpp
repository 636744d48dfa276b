#pragma once

#include <string>
#include <vector>

#include "rch/integrate.hpp"
#include "rch/reduction.hpp"

namespace rch {

// Rigid body carrying three rotors aligned with the principal axes.
// ibar: body inertia plus transverse rotor inertia; rotor: spin inertia.
struct RigidBodyRotorParams {
  Vec3 ibar = Vec3::Ones();
  Vec3 rotor = Vec3::Ones();

  // body[i] are the principal moments without rotors; rotor_axes(k, i) is
  // rotor k's inertia about body axis i (diagonal entries are spin inertia).
  static RigidBodyRotorParams from_raw(const Vec3& body, const Mat3& rotor_axes);
  void validate() const;
};

// Heavy top carrying two rotors on the first two principal axes.
struct HeavyTopRotorParams {
  Vec3 ibar = Vec3::Ones();
  Eigen::Vector2d rotor = Eigen::Vector2d::Ones();
  double mass = 1.0;
  double gravity = 1.0;
  double height = 1.0;
  Vec3 chi = Vec3::UnitZ();  // unit vector to the centre of mass

  // rotor_axes(k, i): rotor k's inertia about body axis i.
  static HeavyTopRotorParams from_raw(const Vec3& body,
                                      const Eigen::Matrix<double, 2, 3>& rotor_axes,
                                      double mass, double gravity, double height,
                                      const Vec3& chi);
  double mgh() const { return mass * gravity * height; }
  void validate() const;
};

struct HeavyTopParams {
  Vec3 inertia = Vec3::Ones();
  double mass = 1.0;
  double gravity = 1.0;
  double height = 1.0;
  Vec3 chi = Vec3::UnitZ();

  double mgh() const { return mass * gravity * height; }
  void validate() const;
};

// Reduced Hamiltonians with exact gradients.
ScalarField free_rigid_body_hamiltonian(const Vec3& inertia);
ScalarField rigid_body_rotor_hamiltonian(const RigidBodyRotorParams& params);
ScalarField heavy_top_rotor_hamiltonian(const HeavyTopRotorParams& params);
ScalarField heavy_top_hamiltonian(const HeavyTopParams& params);

// Equations of motion written out by hand.
Tangent free_rigid_body_field(const Vec3& inertia, const ReducedPoint& p);
Tangent rigid_body_rotor_field(const RigidBodyRotorParams& params, const ReducedPoint& p);
Tangent heavy_top_rotor_field(const HeavyTopRotorParams& params, const ReducedPoint& p);
Tangent heavy_top_field(const HeavyTopParams& params, const ReducedPoint& p);

RCHSystem free_rigid_body_system(const Vec3& inertia);
RCHSystem rigid_body_rotor_system(const RigidBodyRotorParams& params);
// Rotor angles reduced out: state (Pi, l).
RCHSystem rigid_body_rotor_variant(const RigidBodyRotorParams& params);
RCHSystem heavy_top_rotor_system(const HeavyTopRotorParams& params);
RCHSystem heavy_top_system(const HeavyTopParams& params);

// Unreduced Hamiltonians, assembled from the Lagrangian by a Legendre
// transform in body coordinates.
FullHamiltonian free_rigid_body_full_hamiltonian(const Vec3& inertia);
FullHamiltonian rigid_body_rotor_full_hamiltonian(const RigidBodyRotorParams& params);
FullHamiltonian heavy_top_rotor_full_hamiltonian(const HeavyTopRotorParams& params);
FullHamiltonian heavy_top_full_hamiltonian(const HeavyTopParams& params);

// Energy followed by the Casimirs of the system's coalgebra.
std::vector<Invariant> standard_invariants(const RCHSystem& sys);

// Column names for the flat state: pi1.., gamma1.., theta1.., l1..
std::vector<std::string> state_labels(const Layout& layout);

// Candidate reduced one-form values in the coordinates of the explicit HJ
// equations: gamma_bar lists (Pi, theta, l) values (no Gamma); the state's
// Gamma enters separately for the heavy tops, and control holds the
// components of the lifted control composed with gamma_bar.
struct HJCandidate {
  VecX gamma_bar;
  VecX control;
};

// Explicit HJ equations, one entry per row. Each row equals the matching
// component of X_{h.gamma_bar} + control multiplied by the row scale.
VecX rigid_body_rotor_hj_rows(const RigidBodyRotorParams& params, const Vec3& pi,
                              const HJCandidate& c);
VecX rigid_body_rotor_hj_scales(const RigidBodyRotorParams& params);
VecX rigid_body_variant_hj_rows(const RigidBodyRotorParams& params, const Vec3& pi,
                                const HJCandidate& c);
VecX rigid_body_variant_hj_scales(const RigidBodyRotorParams& params);
VecX heavy_top_rotor_hj_rows(const HeavyTopRotorParams& params, const Vec3& pi,
                             const Vec3& gamma, const HJCandidate& c);
VecX heavy_top_rotor_hj_scales(const HeavyTopRotorParams& params);
VecX heavy_top_hj_rows(const HeavyTopParams& params, const Vec3& pi,
                       const Vec3& gamma, const HJCandidate& c);
VecX heavy_top_hj_scales(const HeavyTopParams& params);

// gamma_bar as a reduced point of the given layout; gamma supplies the
// Gamma part on se(3)*.
ReducedPoint candidate_point(const Layout& layout, const VecX& gamma_bar,
                             const Vec3& gamma = Vec3::Zero());

// Rotor-body variant (A) and heavy top (B): (Pi, Gamma) <-> (Pi, l = Gamma).
Transport heavy_top_to_rotor_transport();

}  // namespace rch
