#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rch/poisson.hpp"
#include "rch/sampling.hpp"

namespace rch {

// The three brackets exercised by the axiom suite.
enum class BracketCase {
  SO3LiePoisson,  // so(3)*
  SO3Rotors,      // so(3)* x R^3 x R^3*
  SE3Rotors,      // se(3)* x R^2 x R^2*
};

std::string to_string(BracketCase c);
Layout layout_of(BracketCase c);

struct AxiomTolerances {
  double antisymmetry = 1e-12;
  double leibniz = 1e-8;
  double jacobi = 2e-5;
  double casimir = 1e-8;
};

struct SuiteOptions {
  int instances = 1000;
  std::uint64_t seed = 0;
  AxiomTolerances tol;
  // Flips the sign of the Pi term of the se(3)* bracket (Jacobi must break).
  bool inject_sign_error = false;
};

struct AxiomResult {
  std::string axiom;
  double worst = 0.0;
  int worst_instance = -1;
  double tolerance = 0.0;
  bool pass = true;
};

struct SuiteReport {
  BracketCase bracket;
  std::vector<AxiomResult> axioms;
  bool pass() const;
};

// Random polynomial of degree <= 3 in the flat coordinates, exact gradient.
ScalarField random_polynomial_field(const Layout& layout, Rng& rng);

SuiteReport run_bracket_suite(BracketCase bracket, const SuiteOptions& options);

}  // namespace rch
