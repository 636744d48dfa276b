#pragma once

#include <cstdint>
#include <random>

#include "rch/poisson.hpp"

namespace rch {

// Seeded generator whose output is identical across standard libraries
// (the std distributions are implementation-defined, so they are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Vec3 uniform_vec3(double lo, double hi);
  VecX uniform_vec(int n, double lo, double hi);
  Vec3 unit_vec3();
  VecX unit_vec(int n);
  // Haar-distributed rotation.
  Mat3 rotation();

 private:
  std::mt19937_64 engine_;
};

// Reduced point with every flat coordinate uniform in [-scale, scale].
ReducedPoint random_reduced_point(const Layout& layout, Rng& rng,
                                  double scale = 1.0);

}  // namespace rch
