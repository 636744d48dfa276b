#pragma once

#include <functional>
#include <string>
#include <variant>

#include "rch/poisson.hpp"

namespace rch {

using FiberMap = std::function<ReducedPoint(const ReducedPoint&)>;
using VectorField = std::function<Tangent(const ReducedPoint&)>;

// External force or control: absent, a fiber-preserving map (lifted along
// the Hamiltonian flow), or an explicit vertical field.
class FiberTerm {
 public:
  static FiberTerm none();
  static FiberTerm fiber_map(FiberMap map);
  static FiberTerm vertical_field(VectorField field);

  bool is_none() const { return std::holds_alternative<std::monostate>(term_); }
  bool is_fiber_map() const { return std::holds_alternative<FiberMap>(term_); }
  bool is_vertical_field() const { return std::holds_alternative<VectorField>(term_); }

  // Vertical vector contributed at p; base_field is the flow the map is
  // lifted along. Absent terms contribute zero.
  Tangent lift(const VectorField& base_field, const ReducedPoint& p) const;

 private:
  std::variant<std::monostate, FiberMap, VectorField> term_;
};

struct RCHSystem {
  std::string name;
  GroupKind kind = GroupKind::SO3;
  int rotor_count = 0;
  // False when rotor angles are reduced out and only l is carried.
  bool keeps_angles = true;
  ScalarField hamiltonian;
  FiberTerm force = FiberTerm::none();
  FiberTerm control = FiberTerm::none();
  BracketSign sign = BracketSign::Minus;

  Layout layout() const;
};

// Drops the base (theta) component.
Tangent vertical_part(const Tangent& v);

// Vertical part of TF . X(p), by central differences along X(p).
Tangent vlift_fiber_map(const FiberMap& map, const VectorField& field,
                        const ReducedPoint& p);

Tangent hamiltonian_part(const RCHSystem& sys, const ReducedPoint& p);
// Lifted force plus lifted control.
Tangent external_part(const RCHSystem& sys, const ReducedPoint& p);
Tangent dynamical_field(const RCHSystem& sys, const ReducedPoint& p);
VectorField field_of(const RCHSystem& sys);

// Maps between the reduced spaces of two systems A and B.
struct Transport {
  std::function<ReducedPoint(const ReducedPoint&)> to_a;  // B -> A
  std::function<ReducedPoint(const ReducedPoint&)> to_b;  // A -> B
  // Pushes a tangent at a B-point to the corresponding A-point.
  std::function<Tangent(const ReducedPoint&, const Tangent&)> push;
};

Transport identity_transport();

// Control for A whose closed loop is the transport of B's flow:
// u(p) = -(X_hA + lift(force_A))(p) + push(X_B(to_b(p))).
// Evaluation throws when the transport fails to invert at p (1e-10) or
// when the result is not vertical.
VectorField matching_control(const RCHSystem& a, const RCHSystem& b,
                             const Transport& transport);

}  // namespace rch
