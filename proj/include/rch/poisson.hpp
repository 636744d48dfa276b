#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rch/lie.hpp"

namespace rch {

// Shape of a reduced state: group kind, rotor angle count, rotor momentum
// count. theta_dim is either l_dim or 0 (angles reduced out, l kept as
// conserved parameters).
struct Layout {
  GroupKind kind = GroupKind::SO3;
  int theta_dim = 0;
  int l_dim = 0;

  int size() const { return algebra_dim(kind) + theta_dim + l_dim; }
  bool operator==(const Layout&) const = default;
};

// Point of g* x V x V* (flat order: nu, theta, l).
struct ReducedPoint {
  CoalgebraVector nu;
  VecX theta;
  VecX l;

  static ReducedPoint from_flat(const Layout& layout, const VecX& x);
  VecX flat() const;
  Layout layout() const;
  // Throws on inconsistent sizes or non-finite entries.
  void validate() const;
};

// Tangent vector at a reduced point, same flat order as ReducedPoint.
struct Tangent {
  CoalgebraVector d_nu;
  VecX d_theta;
  VecX d_l;

  static Tangent zero(const Layout& layout);
  static Tangent from_flat(const Layout& layout, const VecX& x);
  VecX flat() const;
  double norm() const { return flat().norm(); }

  Tangent operator+(const Tangent& o) const;
  Tangent operator-(const Tangent& o) const;
  Tangent operator*(double s) const;
};

// Differential of a scalar function: the nu part lives in the algebra.
struct Gradient {
  AlgebraVector d_nu;
  VecX d_theta;
  VecX d_l;

  static Gradient from_flat(const Layout& layout, const VecX& x);
  VecX flat() const;
};

ReducedPoint advance(const ReducedPoint& p, const Tangent& v, double s);

class ScalarField {
 public:
  using Eval = std::function<double(const ReducedPoint&)>;
  using Grad = std::function<Gradient(const ReducedPoint&)>;

  ScalarField() = default;
  explicit ScalarField(Eval eval, Grad grad = nullptr);

  double operator()(const ReducedPoint& p) const;
  // Analytic gradient when one was supplied, central differences otherwise.
  Gradient gradient(const ReducedPoint& p) const;
  Gradient fd_gradient(const ReducedPoint& p) const;
  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }

 private:
  Eval eval_;
  Grad grad_;
};

// Relative disagreement between the analytic and finite-difference
// gradients; callers compare against 1e-5.
double gradient_mismatch(const ScalarField& f, const ReducedPoint& p);

enum class BracketSign { Minus, Plus };
double sign_value(BracketSign s);

// +-<nu, [dF/dnu, dK/dnu]>.
double lie_poisson_bracket(const ScalarField& f, const ScalarField& k,
                           const ReducedPoint& p,
                           BracketSign sign = BracketSign::Minus);
double lie_poisson_bracket(const ScalarField& f, const ScalarField& k,
                           const CoalgebraVector& nu,
                           BracketSign sign = BracketSign::Minus);

// Lie-Poisson part plus the canonical pairing between theta and l.
double product_bracket(const ScalarField& f, const ScalarField& k,
                       const ReducedPoint& p,
                       BracketSign sign = BracketSign::Minus);
double bracket_from_gradients(const Gradient& df, const Gradient& dk,
                              const ReducedPoint& p, BracketSign sign);

// Closed form: nu' = -+ad*_{dh/dnu} nu, theta' = dh/dl, l' = -dh/dtheta.
Tangent hamiltonian_field(const ScalarField& h, const ReducedPoint& p,
                          BracketSign sign = BracketSign::Minus);
// Same field assembled one coordinate at a time as {c_i, h}.
Tangent bracket_field(const ScalarField& h, const ReducedPoint& p,
                      BracketSign sign = BracketSign::Minus);

// The i-th flat coordinate as a field with exact gradient.
ScalarField coordinate_field(const Layout& layout, int index);

// Symplectic form on the coadjoint orbit through nu.
double kks_form(const CoalgebraVector& nu, const AlgebraVector& xi,
                const AlgebraVector& eta, BracketSign sign = BracketSign::Minus);

struct Casimir {
  std::string name;
  ScalarField field;
};

// so(3)*: |Pi|^2.  se(3)*: Pi.Gamma and |Gamma|^2.
std::vector<Casimir> casimirs(GroupKind kind);
std::vector<double> casimir_values(const CoalgebraVector& nu);

}  // namespace rch
