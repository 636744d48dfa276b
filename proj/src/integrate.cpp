#include "rch/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rch {

ReducedPoint rk4_step(const VectorField& field, const ReducedPoint& p, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("rk4_step: dt must be positive and finite");
  Tangent k1 = field(p);
  Tangent k2 = field(advance(p, k1, 0.5 * dt));
  Tangent k3 = field(advance(p, k2, 0.5 * dt));
  Tangent k4 = field(advance(p, k3, dt));
  Tangent incr = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
  ReducedPoint out = advance(p, incr, 1.0);
  if (!out.flat().allFinite())
    throw NonFiniteError("rk4_step produced a non-finite state");
  return out;
}

double relative_drift(double value, double initial) {
  double d = std::abs(value - initial);
  return std::abs(initial) > 1e-12 ? d / std::abs(initial) : d;
}

std::vector<double> Trajectory::max_drift() const {
  std::vector<double> out;
  for (const auto& series : drift)
    out.push_back(series.empty() ? 0.0 : *std::max_element(series.begin(), series.end()));
  return out;
}

namespace {

constexpr double kBlowUp = 1e12;

[[noreturn]] void blow_up(double t) {
  std::ostringstream msg;
  msg << "integration blew up at t=" << t;
  throw BlowUpError(msg.str(), t);
}

}  // namespace

Trajectory run(const VectorField& field, const ReducedPoint& p0, double dt,
               double T, const std::vector<Invariant>& invariants) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("run: dt must be positive and finite");
  if (!(T >= 0.0) || !std::isfinite(T))
    throw std::invalid_argument("run: T must be non-negative and finite");
  p0.validate();

  Trajectory traj;
  std::vector<double> initial;
  for (const Invariant& inv : invariants) {
    traj.invariant_names.push_back(inv.name);
    initial.push_back(inv.value(p0));
  }
  traj.invariant_values.resize(invariants.size());
  traj.drift.resize(invariants.size());

  auto record = [&](double t, const ReducedPoint& p) {
    traj.times.push_back(t);
    traj.states.push_back(p);
    for (size_t i = 0; i < invariants.size(); ++i) {
      double v = invariants[i].value(p);
      traj.invariant_values[i].push_back(v);
      traj.drift[i].push_back(relative_drift(v, initial[i]));
    }
  };

  long steps = std::max(0L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  record(0.0, p0);
  ReducedPoint p = p0;
  for (long n = 0; n < steps; ++n) {
    double t0 = n * dt;
    double t1 = (n + 1 == steps) ? T : (n + 1) * dt;
    try {
      p = rk4_step(field, p, t1 - t0);
    } catch (const NonFiniteError&) {
      blow_up(t1);
    }
    if (p.flat().cwiseAbs().maxCoeff() > kBlowUp) blow_up(t1);
    record(t1, p);
  }
  return traj;
}

}  // namespace rch
