#include <gtest/gtest.h>

#include "rch/bracket_suite.hpp"
#include "rch/rch_system.hpp"

namespace rch {
namespace {

RCHSystem random_system(const Layout& layout, Rng& rng) {
  RCHSystem s;
  s.name = "random";
  s.kind = layout.kind;
  s.rotor_count = layout.l_dim;
  s.keeps_angles = layout.theta_dim == layout.l_dim;
  s.hamiltonian = random_polynomial_field(layout, rng);
  return s;
}

// Linear fiber map x -> M x on the flat state.
FiberMap linear_map(const Layout& layout, const MatX& m) {
  return [layout, m](const ReducedPoint& p) {
    return ReducedPoint::from_flat(layout, m * p.flat());
  };
}

TEST(RchSystemTest, AbsentTermsLeaveHamiltonianField) {
  Rng rng(21);
  Layout layout{GroupKind::SO3, 3, 3};
  RCHSystem s = random_system(layout, rng);
  ReducedPoint p = random_reduced_point(layout, rng);
  EXPECT_EQ(dynamical_field(s, p).flat(), hamiltonian_field(s.hamiltonian, p).flat());
}

TEST(RchSystemTest, LinearFiberMapLift) {
  Rng rng(22);
  Layout layout{GroupKind::SE3, 2, 2};
  MatX m = MatX::Random(layout.size(), layout.size());
  RCHSystem s = random_system(layout, rng);
  VectorField x = [&s](const ReducedPoint& p) { return hamiltonian_part(s, p); };
  for (int i = 0; i < 20; ++i) {
    ReducedPoint p = random_reduced_point(layout, rng);
    Tangent lifted = vlift_fiber_map(linear_map(layout, m), x, p);
    VecX expected = m * x(p).flat();
    expected.segment(6, 2).setZero();
    EXPECT_LT((lifted.flat() - expected).norm(), 1e-8);
    EXPECT_EQ(lifted.d_theta, VecX::Zero(2));
  }
}

TEST(RchSystemTest, ExternalTermsAreVertical) {
  Rng rng(23);
  Layout layout{GroupKind::SO3, 3, 3};
  RCHSystem s = random_system(layout, rng);
  s.force = FiberTerm::fiber_map(linear_map(layout, MatX::Random(9, 9)));
  s.control = FiberTerm::vertical_field([](const ReducedPoint& p) {
    Tangent t = Tangent::zero(p.layout());
    t.d_nu.pi = Vec3(p.l[0], 1.0, -p.nu.pi[2]);
    t.d_l[2] = 0.5;
    return t;
  });
  for (int i = 0; i < 50; ++i) {
    ReducedPoint p = random_reduced_point(layout, rng);
    Tangent extra = dynamical_field(s, p) - hamiltonian_field(s.hamiltonian, p);
    EXPECT_EQ(extra.d_theta, VecX::Zero(3));
    EXPECT_GT(extra.norm(), 0.0);
  }
}

TEST(RchSystemTest, IdentityFiberMapAddsItsOwnVerticalPart) {
  Rng rng(24);
  Layout layout{GroupKind::SO3, 3, 3};
  RCHSystem s = random_system(layout, rng);
  s.control = FiberTerm::fiber_map([](const ReducedPoint& p) { return p; });
  ReducedPoint p = random_reduced_point(layout, rng);
  Tangent h = hamiltonian_field(s.hamiltonian, p);
  Tangent extra = dynamical_field(s, p) - h;
  EXPECT_LT((extra.flat() - vertical_part(h).flat()).norm(), 1e-8);
}

TEST(RchSystemTest, RejectsVerticalFieldWithBaseComponent) {
  Rng rng(25);
  Layout layout{GroupKind::SO3, 3, 3};
  RCHSystem s = random_system(layout, rng);
  s.control = FiberTerm::vertical_field([](const ReducedPoint& p) {
    Tangent t = Tangent::zero(p.layout());
    t.d_theta[0] = 1.0;
    return t;
  });
  EXPECT_THROW(dynamical_field(s, random_reduced_point(layout, rng)), std::invalid_argument);
}

TEST(RchSystemTest, RejectsMismatchedState) {
  Rng rng(26);
  RCHSystem s = random_system({GroupKind::SO3, 3, 3}, rng);
  EXPECT_THROW(dynamical_field(s, random_reduced_point({GroupKind::SE3, 2, 2}, rng)),
               std::invalid_argument);
}

TEST(RchSystemTest, MatchingControlReproducesTarget) {
  Rng rng(27);
  Layout layout{GroupKind::SE3, 0, 0};
  RCHSystem a = random_system(layout, rng);
  RCHSystem b = random_system(layout, rng);
  a.force = FiberTerm::fiber_map(linear_map(layout, MatX::Random(6, 6)));
  a.control = FiberTerm::vertical_field(matching_control(a, b, identity_transport()));
  for (int i = 0; i < 100; ++i) {
    ReducedPoint p = random_reduced_point(layout, rng);
    EXPECT_LT((dynamical_field(a, p) - dynamical_field(b, p)).norm(), 1e-10);
  }
}

TEST(RchSystemTest, MatchingTermIsLinearInTarget) {
  Rng rng(28);
  Layout layout{GroupKind::SO3, 0, 0};
  RCHSystem a = random_system(layout, rng);
  RCHSystem b = random_system(layout, rng);
  RCHSystem b2 = b;
  ScalarField hb = b.hamiltonian;
  b2.hamiltonian = ScalarField([hb](const ReducedPoint& p) { return 2.0 * hb(p); },
                               [hb](const ReducedPoint& p) {
                                 Gradient g = hb.gradient(p);
                                 return Gradient{g.d_nu * 2.0, 2.0 * g.d_theta, 2.0 * g.d_l};
                               });
  VectorField u1 = matching_control(a, b, identity_transport());
  VectorField u2 = matching_control(a, b2, identity_transport());
  for (int i = 0; i < 20; ++i) {
    ReducedPoint p = random_reduced_point(layout, rng);
    Tangent xa = dynamical_field(a, p);
    Tangent t1 = u1(p) + xa, t2 = u2(p) + xa;
    EXPECT_LT((t2 - t1 * 2.0).norm(), 1e-12);
  }
}

TEST(RchSystemTest, MatchingControlDetectsSingularTransport) {
  Rng rng(29);
  Layout layout{GroupKind::SO3, 0, 0};
  RCHSystem a = random_system(layout, rng);
  Transport collapse = identity_transport();
  collapse.to_b = [](const ReducedPoint& p) {
    ReducedPoint q = p;
    q.nu.pi[2] = 0.0;
    return q;
  };
  VectorField u = matching_control(a, a, collapse);
  ReducedPoint p = random_reduced_point(layout, rng);
  p.nu.pi[2] = 0.7;
  EXPECT_THROW(u(p), std::domain_error);
}

TEST(RchSystemTest, MatchingControlMustBeVertical) {
  Rng rng(30);
  Layout layout{GroupKind::SO3, 3, 3};
  RCHSystem a = random_system(layout, rng);
  RCHSystem b = random_system(layout, rng);
  VectorField u = matching_control(a, b, identity_transport());
  EXPECT_THROW(u(random_reduced_point(layout, rng)), std::domain_error);
}

}  // namespace
}  // namespace rch
