#include "rch/rch_system.hpp"

#include <algorithm>
#include <cmath>

namespace rch {

FiberTerm FiberTerm::none() { return FiberTerm(); }

FiberTerm FiberTerm::fiber_map(FiberMap map) {
  FiberTerm t;
  t.term_ = std::move(map);
  return t;
}

FiberTerm FiberTerm::vertical_field(VectorField field) {
  FiberTerm t;
  t.term_ = std::move(field);
  return t;
}

Tangent FiberTerm::lift(const VectorField& base_field, const ReducedPoint& p) const {
  if (const auto* map = std::get_if<FiberMap>(&term_))
    return vlift_fiber_map(*map, base_field, p);
  if (const auto* field = std::get_if<VectorField>(&term_)) {
    Tangent v = (*field)(p);
    double base = v.d_theta.size() ? v.d_theta.cwiseAbs().maxCoeff() : 0.0;
    if (base > 1e-12 * std::max(1.0, v.norm()))
      throw std::invalid_argument("vertical field has a nonzero rotor-angle component");
    return vertical_part(v);
  }
  return Tangent::zero(p.layout());
}

Layout RCHSystem::layout() const {
  return {kind, keeps_angles ? rotor_count : 0, rotor_count};
}

Tangent vertical_part(const Tangent& v) {
  Tangent out = v;
  out.d_theta.setZero();
  return out;
}

Tangent vlift_fiber_map(const FiberMap& map, const VectorField& field,
                        const ReducedPoint& p) {
  Layout layout = p.layout();
  Tangent x = field(p);
  double speed = x.norm();
  if (speed == 0.0) return Tangent::zero(layout);
  double s = 1e-6 * std::max(1.0, p.flat().norm()) / speed;
  VecX fp = map(advance(p, x, s)).flat();
  VecX fm = map(advance(p, x, -s)).flat();
  if (fp.size() != layout.size() || fm.size() != layout.size())
    throw std::invalid_argument("fiber map changed the state shape");
  return vertical_part(Tangent::from_flat(layout, (fp - fm) / (2.0 * s)));
}

Tangent hamiltonian_part(const RCHSystem& sys, const ReducedPoint& p) {
  return hamiltonian_field(sys.hamiltonian, p, sys.sign);
}

Tangent external_part(const RCHSystem& sys, const ReducedPoint& p) {
  VectorField base = [&sys](const ReducedPoint& q) { return hamiltonian_part(sys, q); };
  return sys.force.lift(base, p) + sys.control.lift(base, p);
}

Tangent dynamical_field(const RCHSystem& sys, const ReducedPoint& p) {
  if (p.layout() != sys.layout())
    throw std::invalid_argument("state shape does not match system " + sys.name);
  return hamiltonian_part(sys, p) + external_part(sys, p);
}

VectorField field_of(const RCHSystem& sys) {
  return [sys](const ReducedPoint& p) { return dynamical_field(sys, p); };
}

Transport identity_transport() {
  return {[](const ReducedPoint& p) { return p; },
          [](const ReducedPoint& p) { return p; },
          [](const ReducedPoint&, const Tangent& v) { return v; }};
}

VectorField matching_control(const RCHSystem& a, const RCHSystem& b,
                             const Transport& transport) {
  RCHSystem open_loop = a;
  open_loop.control = FiberTerm::none();
  return [open_loop, b, transport](const ReducedPoint& p) {
    ReducedPoint pb = transport.to_b(p);
    VecX back = transport.to_a(pb).flat();
    VecX here = p.flat();
    if (back.size() != here.size() ||
        (back - here).norm() > 1e-10 * std::max(1.0, here.norm())) {
      throw std::domain_error("transport is not invertible at this state");
    }
    Tangent target = transport.push(pb, dynamical_field(b, pb));
    Tangent u = target - dynamical_field(open_loop, p);
    double base = u.d_theta.size() ? u.d_theta.cwiseAbs().maxCoeff() : 0.0;
    if (base > 1e-9 * std::max(1.0, u.norm()))
      throw std::domain_error("matching control would need a base component");
    return vertical_part(u);
  };
}

}  // namespace rch
