#include "rch/bracket_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rch {

std::string to_string(BracketCase c) {
  switch (c) {
    case BracketCase::SO3LiePoisson: return "so3_lie_poisson";
    case BracketCase::SO3Rotors: return "so3_rotors";
    case BracketCase::SE3Rotors: return "se3_rotors";
  }
  return "unknown";
}

Layout layout_of(BracketCase c) {
  switch (c) {
    case BracketCase::SO3LiePoisson: return {GroupKind::SO3, 0, 0};
    case BracketCase::SO3Rotors: return {GroupKind::SO3, 3, 3};
    case BracketCase::SE3Rotors: return {GroupKind::SE3, 2, 2};
  }
  throw std::invalid_argument("layout_of: unknown bracket");
}

bool SuiteReport::pass() const {
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const AxiomResult& a) { return a.pass; });
}

ScalarField random_polynomial_field(const Layout& layout, Rng& rng) {
  int n = layout.size();
  double c0 = rng.uniform(-1, 1);
  // Each degree stays O(1) on the unit box whatever n is.
  VecX lin = rng.uniform_vec(n, -1, 1) / n;
  MatX quad(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) quad(i, j) = rng.uniform(-1, 1);
  quad = (0.5 / (n * n)) * (quad + quad.transpose()).eval();
  int ci = static_cast<int>(rng.uniform() * n);
  int cj = static_cast<int>(rng.uniform() * n);
  int ck = static_cast<int>(rng.uniform() * n);
  double cubic = rng.uniform(-1, 1);

  auto eval = [=](const ReducedPoint& p) {
    VecX x = p.flat();
    return c0 + lin.dot(x) + 0.5 * x.dot(quad * x) + cubic * x[ci] * x[cj] * x[ck];
  };
  auto grad = [=](const ReducedPoint& p) {
    VecX x = p.flat();
    VecX g = lin + quad * x;
    g[ci] += cubic * x[cj] * x[ck];
    g[cj] += cubic * x[ci] * x[ck];
    g[ck] += cubic * x[ci] * x[cj];
    return Gradient::from_flat(layout, g);
  };
  return ScalarField(eval, grad);
}

namespace {

using BracketFn =
    std::function<double(const Gradient&, const Gradient&, const ReducedPoint&)>;

double mutated_bracket(const Gradient& df, const Gradient& dk, const ReducedPoint& p) {
  double out = bracket_from_gradients(df, dk, p, BracketSign::Minus);
  // Undo -Pi.(a x b) and apply +Pi.(a x b).
  out += 2.0 * p.nu.pi.dot(df.d_nu.omega.cross(dk.d_nu.omega));
  return out;
}

ScalarField bracket_of(const BracketFn& br, ScalarField f, ScalarField k) {
  return ScalarField([br, f, k](const ReducedPoint& p) {
    return br(f.gradient(p), k.gradient(p), p);
  });
}

void record(AxiomResult& r, double value, int instance) {
  if (r.worst_instance >= 0 && std::isnan(r.worst)) return;
  if (r.worst_instance < 0 || !(value <= r.worst)) {
    r.worst = value;
    r.worst_instance = instance;
  }
}

}  // namespace

SuiteReport run_bracket_suite(BracketCase bracket, const SuiteOptions& options) {
  Layout layout = layout_of(bracket);
  BracketFn br;
  if (options.inject_sign_error && layout.kind == GroupKind::SE3) {
    br = mutated_bracket;
  } else {
    br = [](const Gradient& df, const Gradient& dk, const ReducedPoint& p) {
      return bracket_from_gradients(df, dk, p, BracketSign::Minus);
    };
  }
  auto apply = [&](const ScalarField& f, const ScalarField& k, const ReducedPoint& p) {
    return br(f.gradient(p), k.gradient(p), p);
  };

  AxiomResult anti{"antisymmetry", 0, -1, options.tol.antisymmetry, true};
  AxiomResult leib{"leibniz", 0, -1, options.tol.leibniz, true};
  AxiomResult jac{"jacobi", 0, -1, options.tol.jacobi, true};
  AxiomResult cas{"casimir", 0, -1, options.tol.casimir, true};
  std::vector<Casimir> cs = casimirs(layout.kind);

  Rng rng(options.seed * 0x9E3779B97F4A7C15ULL + static_cast<int>(bracket) + 1);
  for (int i = 0; i < options.instances; ++i) {
    ScalarField f = random_polynomial_field(layout, rng);
    ScalarField g = random_polynomial_field(layout, rng);
    ScalarField k = random_polynomial_field(layout, rng);
    ReducedPoint p = random_reduced_point(layout, rng);

    record(anti, std::abs(apply(f, k, p) + apply(k, f, p)), i);

    ScalarField fg([f, g](const ReducedPoint& q) { return f(q) * g(q); });
    double lhs = apply(fg, k, p);
    double rhs = f(p) * apply(g, k, p) + g(p) * apply(f, k, p);
    record(leib, std::abs(lhs - rhs), i);

    double j = apply(f, bracket_of(br, g, k), p) +
               apply(g, bracket_of(br, k, f), p) +
               apply(k, bracket_of(br, f, g), p);
    record(jac, std::abs(j), i);

    double cw = 0.0;
    for (const Casimir& c : cs) cw = std::max(cw, std::abs(apply(c.field, k, p)));
    record(cas, cw, i);
  }

  SuiteReport report{bracket, {anti, leib, jac, cas}};
  for (AxiomResult& a : report.axioms)
    a.pass = std::isfinite(a.worst) && a.worst <= a.tolerance;
  return report;
}

}  // namespace rch
