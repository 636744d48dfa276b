#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <string>

#include "rch/errors.hpp"

namespace rch {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

enum class GroupKind { SO3, SE3 };

std::string to_string(GroupKind kind);
int algebra_dim(GroupKind kind);

// Element of so(3) or se(3). For SO3 the vel part is always zero.
struct AlgebraVector {
  GroupKind kind = GroupKind::SO3;
  Vec3 omega = Vec3::Zero();
  Vec3 vel = Vec3::Zero();

  static AlgebraVector so3(const Vec3& w);
  static AlgebraVector se3(const Vec3& w, const Vec3& v);
  static AlgebraVector zero(GroupKind kind);
  // Layout (omega, vel); size 3 for SO3 and 6 for SE3.
  static AlgebraVector from_flat(GroupKind kind, const VecX& x);
  VecX flat() const;
  int dim() const { return algebra_dim(kind); }

  AlgebraVector operator+(const AlgebraVector& o) const;
  AlgebraVector operator-(const AlgebraVector& o) const;
  AlgebraVector operator*(double s) const;
};

// Element of so(3)* or se(3)*: pi pairs with omega, gamma pairs with vel.
struct CoalgebraVector {
  GroupKind kind = GroupKind::SO3;
  Vec3 pi = Vec3::Zero();
  Vec3 gamma = Vec3::Zero();

  static CoalgebraVector so3(const Vec3& pi);
  static CoalgebraVector se3(const Vec3& pi, const Vec3& gamma);
  static CoalgebraVector zero(GroupKind kind);
  static CoalgebraVector from_flat(GroupKind kind, const VecX& x);
  VecX flat() const;
  int dim() const { return algebra_dim(kind); }

  CoalgebraVector operator+(const CoalgebraVector& o) const;
  CoalgebraVector operator-(const CoalgebraVector& o) const;
  CoalgebraVector operator*(double s) const;
};

// Rotation (and translation for SE3) acting as x -> rot * x + trans.
struct GroupElement {
  GroupKind kind = GroupKind::SO3;
  Mat3 rot = Mat3::Identity();
  Vec3 trans = Vec3::Zero();

  static GroupElement identity(GroupKind kind);
  // Throws unless rot is orthonormal with det +1 (tol 1e-10).
  static GroupElement so3(const Mat3& rot);
  static GroupElement se3(const Mat3& rot, const Vec3& trans);

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  // 3x3 for SO3, homogeneous 4x4 for SE3.
  MatX matrix() const;
};

Mat3 skew(const Vec3& w);
Vec3 unskew(const Mat3& m);

// Matrix representation: 3x3 skew for so(3), 4x4 twist for se(3).
MatX hat(const AlgebraVector& xi);
AlgebraVector vee(GroupKind kind, const MatX& m);

AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b);
double pairing(const CoalgebraVector& mu, const AlgebraVector& xi);

GroupElement exp_group(const AlgebraVector& xi);
Mat3 rotation_exp(const Vec3& w);

// ad_xi eta = [xi, eta]; coadjoint_ad_star is its dual:
//   <ad*_xi mu, eta> = <mu, [xi, eta]>.
CoalgebraVector coadjoint_ad_star(const AlgebraVector& xi,
                                  const CoalgebraVector& mu);

AlgebraVector Ad(const GroupElement& g, const AlgebraVector& xi);
// Transpose of Ad_g: <Ad*_g mu, xi> = <mu, Ad_g xi>. Right action, so
// Ad*_{gh} = Ad*_h o Ad*_g.
CoalgebraVector Ad_star(const GroupElement& g, const CoalgebraVector& mu);

void require_same_kind(GroupKind a, GroupKind b, const char* where);

}  // namespace rch
