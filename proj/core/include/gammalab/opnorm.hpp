#pragma once

#include <functional>
#include <vector>

#include "gammalab/linalg.hpp"
#include "gammalab/spaces.hpp"

namespace gammalab {

/// Which unit ball the PSD quadratic form is maximized over: the primal
/// ball gives the X -> X* operator norm, the dual ball gives X* -> X.
enum class NormSide { primal_to_dual, dual_to_primal };

/// sup of the Hermitian quadratic form z* A z over the chosen unit ball,
/// for PSD A (this sup equals the operator norm between the space and its
/// dual). Two-dimensional balls are reduced to the entrywise-modulus
/// matrix over the real moduli ball and maximized along directions
/// (cos t, sin t) of the positive quadrant; sup-norm and sum-norm spaces
/// use exact sign enumeration / diagonal maxima.
double quad_form_sup(const HermitianMatrix& a, const SpaceSpec& space,
                     NormSide side);

/// Independent lower-bound estimate of quad_form_sup by random direction
/// and phase sampling plus local coordinate ascent over complex unit-ball
/// points. No modulus reduction is applied anywhere, which makes this the
/// cross-check oracle for the reduced path.
double naive_quad_form_sup(const HermitianMatrix& a, const SpaceSpec& space,
                           NormSide side, SeededRng& rng, int samples);

/// Operator norm from the sup-norm space to the sum-norm space of a PSD
/// matrix. Real field: exact maximum of x^T A x over the 2^(n-1) sign
/// vectors with x_0 = +1. Complex field: coordinate phase ascent over
/// unimodular vectors (16 deterministic restarts seeded from the top
/// eigenvector phases, 200 sweeps max, movement tolerance 1e-10).
double linf_to_l1_norm(const HermitianMatrix& a, Field field);

/// Operator norm from the sum-norm space to the sup-norm space:
/// max_ij |b_ij|. For PSD inputs this equals the maximal diagonal entry
/// (checked, since |b_ij| <= sqrt(b_ii b_jj)).
double l1_to_linf_norm(const HermitianMatrix& b);

namespace detail {

/// Best sign vector (real) or unimodular phase vector (complex) found for
/// the quadratic form of a PSD matrix; the maximizer behind
/// linf_to_l1_norm, exposed so rank-one searches can seed from it.
std::vector<Cplx> extremal_unimodular(const HermitianMatrix& a, Field field);

/// Direction-ratio norm evaluator for 2-dimensional balls. The squared
/// gauge of (cos t, sin t) is cached on a dense grid at construction so
/// optimizer inner loops never pay for gauge bisection; refinement runs
/// golden-section on a locally interpolated gauge and certifies the
/// result with one fresh gauge evaluation, which keeps every returned
/// value a true ratio (a lower bound of the sup).
class DirectionNorm {
 public:
  DirectionNorm(const SpaceSpec& space, NormSide side);

  /// sup of the form of [[r11, c], [c, r22]] (entries nonnegative) over
  /// the ball.
  double sup_abs(double r11, double r22, double c) const;

  /// sup of the form of [[a11, m e^{i psi}], [m e^{-i psi}, a22]] over the
  /// complex ball, with the relative phase searched numerically instead of
  /// aligned analytically.
  double sup_complex_direct(double a11, double a22, double m,
                            double psi) const;

  double direction_gauge(double theta) const;

 private:
  double interpolated_g2(double theta) const;
  double refine(const std::function<double(double, double)>& ratio_of,
                int grid_best, double coarse_best) const;

  SpaceSpec moduli_space_;
  NormSide side_;
  std::vector<double> g2_;    // squared direction gauges on the theta grid
  std::vector<bool> kink_;    // cells where the gauge is not smooth
};

}  // namespace detail

}  // namespace gammalab
