#pragma once

#include <cstdint>
#include <vector>

#include "gammalab/linalg.hpp"
#include "gammalab/opnorm.hpp"
#include "gammalab/spaces.hpp"

namespace gammalab {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 500;       // iteration budget per inner Nelder-Mead run
  double step_tol = 1e-9;
  double value_tol = 1e-7;   // stop alternating when gains fall below this
  std::uint64_t seed = 42;
  bool direct_complex = false;  // route complex spaces to the direct search
};

/// Result of a gamma search. The reported value is a certified lower
/// bound: the witnesses are feasible PSD matrices scaled to unit operator
/// norm on their respective sides, and hs_inner(witness_a, witness_b)
/// reproduces `value`. `converged` flags agreement of the top restarts
/// (spread <= 1e-4 over the best five).
struct GammaReport {
  double value = 0.0;
  HermitianMatrix witness_a{2, Field::real};
  HermitianMatrix witness_b{2, Field::real};
  int restarts_used = 0;
  bool converged = false;
  std::vector<double> restart_values;
};

/// gamma(X) = sup hs_inner(A, B) over PSD pairs with the X -> X* norm of
/// A and the X* -> X norm of B at most one, by multi-start alternating
/// ascent with Nelder-Mead polish over the parametrization
/// (a11, a22, off-diagonal) with nonnegative off-diagonal (the modulus
/// reduction makes this lossless). Complex two-dimensional spaces are
/// routed through their real moduli space unless cfg.direct_complex asks
/// for the direct complex search.
GammaReport gamma(const SpaceSpec& space, const OptimizerConfig& cfg);

/// Same search over genuinely complex PSD pairs: off-diagonal modulus and
/// phase are free parameters and the constraint norms are evaluated by
/// numerical phase search, with no modulus reduction anywhere. This is
/// the independent side of the complex-vs-real equality check.
GammaReport gamma_complex_direct(const SpaceSpec& space,
                                 const OptimizerConfig& cfg);

struct Theorem1Report {
  double p = 0.0;
  double q = 0.0;
  double gamma_real = 0.0;
  double gamma_complex = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool real_converged = false;
  bool complex_converged = false;
  bool pass = false;
};

/// Runs gamma on the real moduli ball and gamma_complex_direct on the
/// complex ball of {|z1|^p + |z2|^q <= 1} and compares the two values.
Theorem1Report verify_theorem1(double p, double q, const OptimizerConfig& cfg,
                               double tolerance = 2e-3);

/// Rank-one feasible pair certifying gamma >= 1: A = f f*, B = x x* for a
/// norming pair (unit x, unit functional f, f(x) = 1).
struct WitnessPair {
  HermitianMatrix a{2, Field::real};
  HermitianMatrix b{2, Field::real};
  double value = 0.0;
};
WitnessPair lower_bound_witness(const SpaceSpec& space);

}  // namespace gammalab
