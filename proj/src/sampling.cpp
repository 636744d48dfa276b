#include "rch/sampling.hpp"

#include <cmath>
#include <numbers>

namespace rch {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 Rng::uniform_vec3(double lo, double hi) {
  double a = uniform(lo, hi);
  double b = uniform(lo, hi);
  double c = uniform(lo, hi);
  return {a, b, c};
}

VecX Rng::uniform_vec(int n, double lo, double hi) {
  VecX v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Vec3 Rng::unit_vec3() { return unit_vec(3); }

VecX Rng::unit_vec(int n) {
  VecX v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = normal();
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Mat3 Rng::rotation() {
  // Shoemake's uniform quaternion.
  double u1 = uniform(), u2 = uniform(), u3 = uniform();
  double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  double t2 = 2.0 * std::numbers::pi * u2, t3 = 2.0 * std::numbers::pi * u3;
  Eigen::Quaterniond q(b * std::cos(t3), a * std::sin(t2), a * std::cos(t2),
                       b * std::sin(t3));
  return q.normalized().toRotationMatrix();
}

ReducedPoint random_reduced_point(const Layout& layout, Rng& rng, double scale) {
  return ReducedPoint::from_flat(layout, rng.uniform_vec(layout.size(), -scale, scale));
}

}  // namespace rch
