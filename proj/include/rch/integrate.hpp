#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rch/rch_system.hpp"

namespace rch {

// Classical fourth-order Runge-Kutta step. dt must be positive.
ReducedPoint rk4_step(const VectorField& field, const ReducedPoint& p, double dt);

struct Invariant {
  std::string name;
  std::function<double(const ReducedPoint&)> value;
};

// |I - I0| / |I0|, or |I - I0| when |I0| <= 1e-12.
double relative_drift(double value, double initial);

struct Trajectory {
  std::vector<double> times;
  std::vector<ReducedPoint> states;
  std::vector<std::string> invariant_names;
  // [invariant][sample]
  std::vector<std::vector<double>> invariant_values;
  std::vector<std::vector<double>> drift;

  std::vector<double> max_drift() const;
};

// Integrates from 0 to T; the last step is shortened if T is not a
// multiple of dt. Throws BlowUpError when a component leaves [-1e12, 1e12]
// or turns non-finite.
Trajectory run(const VectorField& field, const ReducedPoint& p0, double dt,
               double T, const std::vector<Invariant>& invariants = {});

}  // namespace rch
