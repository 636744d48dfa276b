#include "rch/lie.hpp"

#include <cmath>

namespace rch {

namespace {

constexpr double kSmallAngle = 1e-2;

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

std::string to_string(GroupKind kind) {
  return kind == GroupKind::SO3 ? "SO3" : "SE3";
}

int algebra_dim(GroupKind kind) { return kind == GroupKind::SO3 ? 3 : 6; }

void require_same_kind(GroupKind a, GroupKind b, const char* where) {
  if (a != b) {
    throw KindMismatch(std::string(where) + ": kind mismatch (" +
                       to_string(a) + " vs " + to_string(b) + ")");
  }
}

AlgebraVector AlgebraVector::so3(const Vec3& w) {
  return {GroupKind::SO3, w, Vec3::Zero()};
}
AlgebraVector AlgebraVector::se3(const Vec3& w, const Vec3& v) {
  return {GroupKind::SE3, w, v};
}
AlgebraVector AlgebraVector::zero(GroupKind kind) { return {kind, Vec3::Zero(), Vec3::Zero()}; }

AlgebraVector AlgebraVector::from_flat(GroupKind kind, const VecX& x) {
  if (x.size() != algebra_dim(kind)) {
    throw std::invalid_argument("AlgebraVector::from_flat: expected " +
                                std::to_string(algebra_dim(kind)) +
                                " components, got " + std::to_string(x.size()));
  }
  AlgebraVector out = zero(kind);
  out.omega = x.head<3>();
  if (kind == GroupKind::SE3) out.vel = x.tail<3>();
  return out;
}

VecX AlgebraVector::flat() const {
  VecX x(dim());
  x.head<3>() = omega;
  if (kind == GroupKind::SE3) x.tail<3>() = vel;
  return x;
}

AlgebraVector AlgebraVector::operator+(const AlgebraVector& o) const {
  require_same_kind(kind, o.kind, "AlgebraVector +");
  return {kind, omega + o.omega, vel + o.vel};
}
AlgebraVector AlgebraVector::operator-(const AlgebraVector& o) const {
  require_same_kind(kind, o.kind, "AlgebraVector -");
  return {kind, omega - o.omega, vel - o.vel};
}
AlgebraVector AlgebraVector::operator*(double s) const {
  return {kind, omega * s, vel * s};
}

CoalgebraVector CoalgebraVector::so3(const Vec3& pi) {
  return {GroupKind::SO3, pi, Vec3::Zero()};
}
CoalgebraVector CoalgebraVector::se3(const Vec3& pi, const Vec3& gamma) {
  return {GroupKind::SE3, pi, gamma};
}
CoalgebraVector CoalgebraVector::zero(GroupKind kind) {
  return {kind, Vec3::Zero(), Vec3::Zero()};
}

CoalgebraVector CoalgebraVector::from_flat(GroupKind kind, const VecX& x) {
  if (x.size() != algebra_dim(kind)) {
    throw std::invalid_argument("CoalgebraVector::from_flat: expected " +
                                std::to_string(algebra_dim(kind)) +
                                " components, got " + std::to_string(x.size()));
  }
  CoalgebraVector out = zero(kind);
  out.pi = x.head<3>();
  if (kind == GroupKind::SE3) out.gamma = x.tail<3>();
  return out;
}

VecX CoalgebraVector::flat() const {
  VecX x(dim());
  x.head<3>() = pi;
  if (kind == GroupKind::SE3) x.tail<3>() = gamma;
  return x;
}

CoalgebraVector CoalgebraVector::operator+(const CoalgebraVector& o) const {
  require_same_kind(kind, o.kind, "CoalgebraVector +");
  return {kind, pi + o.pi, gamma + o.gamma};
}
CoalgebraVector CoalgebraVector::operator-(const CoalgebraVector& o) const {
  require_same_kind(kind, o.kind, "CoalgebraVector -");
  return {kind, pi - o.pi, gamma - o.gamma};
}
CoalgebraVector CoalgebraVector::operator*(double s) const {
  return {kind, pi * s, gamma * s};
}

GroupElement GroupElement::identity(GroupKind kind) {
  return {kind, Mat3::Identity(), Vec3::Zero()};
}

static void check_rotation(const Mat3& r) {
  if (!r.allFinite()) throw NonFiniteError("rotation has non-finite entries");
  double orth = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (orth > 1e-10 || std::abs(r.determinant() - 1.0) > 1e-10) {
    throw std::invalid_argument("matrix is not a rotation (orthonormality "
                                "defect " + std::to_string(orth) + ")");
  }
}

GroupElement GroupElement::so3(const Mat3& rot) {
  check_rotation(rot);
  return {GroupKind::SO3, rot, Vec3::Zero()};
}

GroupElement GroupElement::se3(const Mat3& rot, const Vec3& trans) {
  check_rotation(rot);
  if (!finite(trans)) throw NonFiniteError("translation is non-finite");
  return {GroupKind::SE3, rot, trans};
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same_kind(kind, o.kind, "GroupElement *");
  return {kind, rot * o.rot, rot * o.trans + trans};
}

GroupElement GroupElement::inverse() const {
  Mat3 rt = rot.transpose();
  return {kind, rt, -(rt * trans)};
}

MatX GroupElement::matrix() const {
  if (kind == GroupKind::SO3) return rot;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rot;
  m.topRightCorner<3, 1>() = trans;
  return m;
}

Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0, -w.z(), w.y(),
       w.z(), 0, -w.x(),
       -w.y(), w.x(), 0;
  return m;
}

Vec3 unskew(const Mat3& m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

MatX hat(const AlgebraVector& xi) {
  if (xi.kind == GroupKind::SO3) return skew(xi.omega);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<3, 3>() = skew(xi.omega);
  m.topRightCorner<3, 1>() = xi.vel;
  return m;
}

AlgebraVector vee(GroupKind kind, const MatX& m) {
  if (kind == GroupKind::SO3) {
    if (m.rows() != 3 || m.cols() != 3)
      throw std::invalid_argument("vee: so(3) expects a 3x3 matrix");
    return AlgebraVector::so3(unskew(m));
  }
  if (m.rows() != 4 || m.cols() != 4)
    throw std::invalid_argument("vee: se(3) expects a 4x4 matrix");
  Mat3 w = m.topLeftCorner<3, 3>();
  return AlgebraVector::se3(unskew(w), m.topRightCorner<3, 1>());
}

AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b) {
  require_same_kind(a.kind, b.kind, "bracket");
  if (a.kind == GroupKind::SO3) return AlgebraVector::so3(a.omega.cross(b.omega));
  return AlgebraVector::se3(a.omega.cross(b.omega),
                            a.omega.cross(b.vel) - b.omega.cross(a.vel));
}

double pairing(const CoalgebraVector& mu, const AlgebraVector& xi) {
  require_same_kind(mu.kind, xi.kind, "pairing");
  return mu.pi.dot(xi.omega) + mu.gamma.dot(xi.vel);
}

// sin(a)/a, (1-cos a)/a^2, (a-sin a)/a^3 with series below kSmallAngle.
static void exp_coefficients(double a, double& s1, double& s2, double& s3) {
  double a2 = a * a;
  if (a < kSmallAngle) {
    s1 = 1.0 - a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0));
    s2 = 0.5 - a2 / 24.0 * (1.0 - a2 / 30.0 * (1.0 - a2 / 56.0));
    s3 = 1.0 / 6.0 - a2 / 120.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0));
    return;
  }
  double h = std::sin(0.5 * a);
  s1 = std::sin(a) / a;
  s2 = 2.0 * h * h / a2;
  s3 = (a - std::sin(a)) / (a2 * a);
}

Mat3 rotation_exp(const Vec3& w) {
  if (!finite(w)) throw NonFiniteError("exp: non-finite rotation vector");
  double s1, s2, s3;
  exp_coefficients(w.norm(), s1, s2, s3);
  Mat3 k = skew(w);
  return Mat3::Identity() + s1 * k + s2 * k * k;
}

GroupElement exp_group(const AlgebraVector& xi) {
  if (!finite(xi.omega) || !finite(xi.vel))
    throw NonFiniteError("exp: non-finite algebra element");
  double s1, s2, s3;
  exp_coefficients(xi.omega.norm(), s1, s2, s3);
  Mat3 k = skew(xi.omega);
  Mat3 k2 = k * k;
  Mat3 r = Mat3::Identity() + s1 * k + s2 * k2;
  if (xi.kind == GroupKind::SO3) return {GroupKind::SO3, r, Vec3::Zero()};
  Mat3 v = Mat3::Identity() + s2 * k + s3 * k2;
  return {GroupKind::SE3, r, v * xi.vel};
}

CoalgebraVector coadjoint_ad_star(const AlgebraVector& xi,
                                  const CoalgebraVector& mu) {
  require_same_kind(xi.kind, mu.kind, "coadjoint_ad_star");
  if (xi.kind == GroupKind::SO3)
    return CoalgebraVector::so3(mu.pi.cross(xi.omega));
  return CoalgebraVector::se3(mu.pi.cross(xi.omega) + mu.gamma.cross(xi.vel),
                              mu.gamma.cross(xi.omega));
}

AlgebraVector Ad(const GroupElement& g, const AlgebraVector& xi) {
  require_same_kind(g.kind, xi.kind, "Ad");
  Vec3 rw = g.rot * xi.omega;
  if (g.kind == GroupKind::SO3) return AlgebraVector::so3(rw);
  return AlgebraVector::se3(rw, g.rot * xi.vel + g.trans.cross(rw));
}

CoalgebraVector Ad_star(const GroupElement& g, const CoalgebraVector& mu) {
  require_same_kind(g.kind, mu.kind, "Ad_star");
  Mat3 rt = g.rot.transpose();
  if (g.kind == GroupKind::SO3) return CoalgebraVector::so3(rt * mu.pi);
  return CoalgebraVector::se3(rt * (mu.pi + mu.gamma.cross(g.trans)),
                              rt * mu.gamma);
}

}  // namespace rch
