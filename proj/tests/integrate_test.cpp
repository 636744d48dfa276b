#include <gtest/gtest.h>

#include <cmath>

#include "rch/integrate.hpp"
#include "rch/systems.hpp"

namespace rch {
namespace {

ReducedPoint so3_point(const Vec3& pi) { return {CoalgebraVector::so3(pi), VecX(), VecX()}; }

VectorField euler_field(const Vec3& inertia) {
  return [inertia](const ReducedPoint& p) { return free_rigid_body_field(inertia, p); };
}

TEST(IntegrateTest, ZeroFieldKeepsState) {
  ReducedPoint p = so3_point(Vec3(1, 2, 3));
  VectorField zero = [](const ReducedPoint& q) { return Tangent::zero(q.layout()); };
  EXPECT_EQ(rk4_step(zero, p, 0.1).flat(), p.flat());
}

TEST(IntegrateTest, LinearGrowthOneStep) {
  VectorField grow = [](const ReducedPoint& q) { return Tangent{q.nu, q.theta, q.l}; };
  double h = 0.1;
  ReducedPoint p = rk4_step(grow, so3_point(Vec3(1, 0, 0)), h);
  double taylor = 1 + h + h * h / 2 + h * h * h / 6 + h * h * h * h / 24;
  EXPECT_NEAR(p.nu.pi[0], taylor, 1e-15);
  // Local truncation error of RK4 on x' = x is h^5/120 + O(h^6).
  EXPECT_NEAR(p.nu.pi[0], std::exp(h), 8.5e-8);
  EXPECT_GT(std::abs(p.nu.pi[0] - std::exp(h)), 8.4e-8);
}

TEST(IntegrateTest, FourthOrderConvergence) {
  VectorField f = euler_field(Vec3(1, 2, 3));
  ReducedPoint p0 = so3_point(Vec3(0.3, 1.0, -0.7));
  auto end_state = [&](double dt) { return run(f, p0, dt, 2.0).states.back().flat(); };
  VecX a = end_state(0.1), b = end_state(0.05), c = end_state(0.025);
  double order = std::log2((a - b).norm() / (b - c).norm());
  EXPECT_NEAR(order, 4.0, 0.1);
}

TEST(IntegrateTest, FreeRigidBodyDrift) {
  RCHSystem sys = free_rigid_body_system(Vec3(1, 2, 3));
  Trajectory t = run(field_of(sys), so3_point(Vec3(0.3, 1.0, -0.7)), 1e-3, 10.0,
                     standard_invariants(sys));
  ASSERT_EQ(t.invariant_names, (std::vector<std::string>{"energy", "pi_norm_sq"}));
  for (double d : t.max_drift()) EXPECT_LE(d, 1e-8);
  EXPECT_EQ(t.times.size(), 10001u);
  EXPECT_DOUBLE_EQ(t.times.back(), 10.0);
}

TEST(IntegrateTest, UniformTimeGrid) {
  Trajectory t = run(euler_field(Vec3(1, 2, 3)), so3_point(Vec3(1, 0, 0)), 1e-3, 1.0);
  for (size_t i = 1; i < t.times.size(); ++i)
    EXPECT_NEAR(t.times[i] - t.times[i - 1], 1e-3, 1e-15);
  EXPECT_EQ(t.times.size(), t.states.size());
}

TEST(IntegrateTest, TimeReversal) {
  VectorField f = euler_field(Vec3(1, 2, 3));
  VectorField back = [f](const ReducedPoint& p) { return f(p) * -1.0; };
  ReducedPoint p0 = so3_point(Vec3(0.3, 1.0, -0.7));
  ReducedPoint p1 = run(f, p0, 1e-3, 1.0).states.back();
  ReducedPoint p2 = run(back, p1, 1e-3, 1.0).states.back();
  EXPECT_LE((p2.flat() - p0.flat()).norm(), 1e-6);
}

TEST(IntegrateTest, IntermediateAxisIsUnstable) {
  Trajectory t = run(euler_field(Vec3(1, 2, 3)), so3_point(Vec3(1e-3, 1.0, 1e-3)), 1e-2, 40.0);
  double min_pi2 = 1.0;
  for (const ReducedPoint& p : t.states) min_pi2 = std::min(min_pi2, p.nu.pi[1]);
  EXPECT_LT(min_pi2, 0.0);
  Trajectory stable = run(euler_field(Vec3(1, 2, 3)), so3_point(Vec3(1.0, 1e-3, 1e-3)), 1e-2, 40.0);
  for (const ReducedPoint& p : stable.states) EXPECT_GT(p.nu.pi[0], 0.99);
}

TEST(IntegrateTest, BlowUpReportsTime) {
  ReducedPoint p0 = so3_point(Vec3(0.3, 1.0, -0.7));
  try {
    run(euler_field(Vec3(1, 2, 3)), p0, 10.0, 1000.0);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LE(e.time(), 1000.0);
  }
}

TEST(IntegrateTest, RejectsBadStep) {
  ReducedPoint p0 = so3_point(Vec3(1, 0, 0));
  EXPECT_THROW(rk4_step(euler_field(Vec3::Ones()), p0, 0.0), std::invalid_argument);
  EXPECT_THROW(run(euler_field(Vec3::Ones()), p0, -1e-3, 1.0), std::invalid_argument);
}

TEST(IntegrateTest, RelativeDriftFallsBackToAbsolute) {
  EXPECT_NEAR(relative_drift(2.2, 2.0), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(relative_drift(1e-9, 0.0), 1e-9);
}

}  // namespace
}  // namespace rch
