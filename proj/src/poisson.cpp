#include "rch/poisson.hpp"

#include <algorithm>
#include <cmath>

namespace rch {

namespace {

void require_size(const VecX& x, int n, const char* what) {
  if (x.size() != n) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(n) + " components, got " +
                                std::to_string(x.size()));
  }
}

void require_finite(const VecX& x, const char* what) {
  if (!x.allFinite())
    throw NonFiniteError(std::string(what) + ": non-finite value");
}

}  // namespace

ReducedPoint ReducedPoint::from_flat(const Layout& layout, const VecX& x) {
  require_size(x, layout.size(), "ReducedPoint::from_flat");
  int n = algebra_dim(layout.kind);
  ReducedPoint p;
  p.nu = CoalgebraVector::from_flat(layout.kind, x.head(n));
  p.theta = x.segment(n, layout.theta_dim);
  p.l = x.tail(layout.l_dim);
  return p;
}

VecX ReducedPoint::flat() const {
  int n = nu.dim();
  VecX x(n + theta.size() + l.size());
  x << nu.flat(), theta, l;
  return x;
}

Layout ReducedPoint::layout() const {
  return {nu.kind, static_cast<int>(theta.size()), static_cast<int>(l.size())};
}

void ReducedPoint::validate() const {
  if (theta.size() != 0 && theta.size() != l.size()) {
    throw std::invalid_argument("ReducedPoint: theta has " +
                                std::to_string(theta.size()) +
                                " entries but l has " + std::to_string(l.size()));
  }
  if (nu.kind == GroupKind::SO3 && !nu.gamma.isZero(0.0))
    throw std::invalid_argument("ReducedPoint: so(3)* value carries a gamma part");
  require_finite(flat(), "ReducedPoint");
}

Tangent Tangent::zero(const Layout& layout) {
  return {CoalgebraVector::zero(layout.kind), VecX::Zero(layout.theta_dim),
          VecX::Zero(layout.l_dim)};
}

Tangent Tangent::from_flat(const Layout& layout, const VecX& x) {
  ReducedPoint p = ReducedPoint::from_flat(layout, x);
  return {p.nu, p.theta, p.l};
}

VecX Tangent::flat() const {
  VecX x(d_nu.dim() + d_theta.size() + d_l.size());
  x << d_nu.flat(), d_theta, d_l;
  return x;
}

Tangent Tangent::operator+(const Tangent& o) const {
  return {d_nu + o.d_nu, d_theta + o.d_theta, d_l + o.d_l};
}
Tangent Tangent::operator-(const Tangent& o) const {
  return {d_nu - o.d_nu, d_theta - o.d_theta, d_l - o.d_l};
}
Tangent Tangent::operator*(double s) const {
  return {d_nu * s, d_theta * s, d_l * s};
}

Gradient Gradient::from_flat(const Layout& layout, const VecX& x) {
  require_size(x, layout.size(), "Gradient::from_flat");
  int n = algebra_dim(layout.kind);
  return {AlgebraVector::from_flat(layout.kind, x.head(n)),
          x.segment(n, layout.theta_dim), x.tail(layout.l_dim)};
}

VecX Gradient::flat() const {
  VecX x(d_nu.dim() + d_theta.size() + d_l.size());
  x << d_nu.flat(), d_theta, d_l;
  return x;
}

ReducedPoint advance(const ReducedPoint& p, const Tangent& v, double s) {
  return {p.nu + v.d_nu * s, p.theta + v.d_theta * s, p.l + v.d_l * s};
}

ScalarField::ScalarField(Eval eval, Grad grad)
    : eval_(std::move(eval)), grad_(std::move(grad)) {}

double ScalarField::operator()(const ReducedPoint& p) const {
  double v = eval_(p);
  if (!std::isfinite(v)) throw NonFiniteError("scalar field returned non-finite value");
  return v;
}

Gradient ScalarField::fd_gradient(const ReducedPoint& p) const {
  Layout layout = p.layout();
  VecX x = p.flat();
  VecX g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    double step = 1e-6 * std::max(1.0, std::abs(x[i]));
    VecX xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    g[i] = ((*this)(ReducedPoint::from_flat(layout, xp)) -
            (*this)(ReducedPoint::from_flat(layout, xm))) /
           (2.0 * step);
  }
  return Gradient::from_flat(layout, g);
}

Gradient ScalarField::gradient(const ReducedPoint& p) const {
  if (!grad_) return fd_gradient(p);
  Gradient g = grad_(p);
  Layout layout = p.layout();
  if (g.d_nu.kind != layout.kind || g.d_theta.size() != layout.theta_dim ||
      g.d_l.size() != layout.l_dim) {
    throw std::invalid_argument("analytic gradient has the wrong shape");
  }
  require_finite(g.flat(), "gradient");
  return g;
}

double gradient_mismatch(const ScalarField& f, const ReducedPoint& p) {
  VecX a = f.gradient(p).flat();
  VecX n = f.fd_gradient(p).flat();
  return (a - n).norm() / std::max(1.0, a.norm());
}

double sign_value(BracketSign s) { return s == BracketSign::Minus ? -1.0 : 1.0; }

double bracket_from_gradients(const Gradient& df, const Gradient& dk,
                              const ReducedPoint& p, BracketSign sign) {
  double out = sign_value(sign) * pairing(p.nu, bracket(df.d_nu, dk.d_nu));
  for (int i = 0; i < p.theta.size(); ++i)
    out += df.d_theta[i] * dk.d_l[i] - dk.d_theta[i] * df.d_l[i];
  return out;
}

double lie_poisson_bracket(const ScalarField& f, const ScalarField& k,
                           const ReducedPoint& p, BracketSign sign) {
  Gradient df = f.gradient(p);
  Gradient dk = k.gradient(p);
  return sign_value(sign) * pairing(p.nu, bracket(df.d_nu, dk.d_nu));
}

double lie_poisson_bracket(const ScalarField& f, const ScalarField& k,
                           const CoalgebraVector& nu, BracketSign sign) {
  return lie_poisson_bracket(f, k, ReducedPoint{nu, VecX(), VecX()}, sign);
}

double product_bracket(const ScalarField& f, const ScalarField& k,
                       const ReducedPoint& p, BracketSign sign) {
  return bracket_from_gradients(f.gradient(p), k.gradient(p), p, sign);
}

Tangent hamiltonian_field(const ScalarField& h, const ReducedPoint& p,
                          BracketSign sign) {
  Gradient dh = h.gradient(p);
  Tangent out;
  out.d_nu = coadjoint_ad_star(dh.d_nu, p.nu) * (-sign_value(sign));
  if (p.theta.size() == 0) {
    out.d_theta = VecX();
    out.d_l = VecX::Zero(p.l.size());
  } else {
    out.d_theta = dh.d_l;
    out.d_l = -dh.d_theta;
  }
  return out;
}

ScalarField coordinate_field(const Layout& layout, int index) {
  if (index < 0 || index >= layout.size())
    throw std::out_of_range("coordinate_field: index out of range");
  return ScalarField(
      [index](const ReducedPoint& p) { return p.flat()[index]; },
      [layout, index](const ReducedPoint&) {
        VecX e = VecX::Zero(layout.size());
        e[index] = 1.0;
        return Gradient::from_flat(layout, e);
      });
}

Tangent bracket_field(const ScalarField& h, const ReducedPoint& p,
                      BracketSign sign) {
  Layout layout = p.layout();
  Gradient dh = h.gradient(p);
  VecX v(layout.size());
  for (int i = 0; i < layout.size(); ++i) {
    Gradient dc = coordinate_field(layout, i).gradient(p);
    v[i] = bracket_from_gradients(dc, dh, p, sign);
  }
  return Tangent::from_flat(layout, v);
}

double kks_form(const CoalgebraVector& nu, const AlgebraVector& xi,
                const AlgebraVector& eta, BracketSign sign) {
  return sign_value(sign) * pairing(nu, bracket(xi, eta));
}

namespace {

Gradient nu_only_gradient(const ReducedPoint& p, const AlgebraVector& d_nu) {
  return {d_nu, VecX::Zero(p.theta.size()), VecX::Zero(p.l.size())};
}

}  // namespace

std::vector<Casimir> casimirs(GroupKind kind) {
  if (kind == GroupKind::SO3) {
    return {{"pi_norm_sq",
             ScalarField([](const ReducedPoint& p) { return p.nu.pi.squaredNorm(); },
                         [](const ReducedPoint& p) {
                           return nu_only_gradient(p, AlgebraVector::so3(2.0 * p.nu.pi));
                         })}};
  }
  return {
      {"pi_dot_gamma",
       ScalarField([](const ReducedPoint& p) { return p.nu.pi.dot(p.nu.gamma); },
                   [](const ReducedPoint& p) {
                     return nu_only_gradient(p, AlgebraVector::se3(p.nu.gamma, p.nu.pi));
                   })},
      {"gamma_norm_sq",
       ScalarField([](const ReducedPoint& p) { return p.nu.gamma.squaredNorm(); },
                   [](const ReducedPoint& p) {
                     return nu_only_gradient(
                         p, AlgebraVector::se3(Vec3::Zero(), 2.0 * p.nu.gamma));
                   })},
  };
}

std::vector<double> casimir_values(const CoalgebraVector& nu) {
  if (nu.kind == GroupKind::SO3) return {nu.pi.squaredNorm()};
  return {nu.pi.dot(nu.gamma), nu.gamma.squaredNorm()};
}

}  // namespace rch
