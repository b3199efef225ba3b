#pragma once

#include <string>
#include <vector>

#include "gammalab/linalg.hpp"

namespace gammalab {

enum class SpaceKind { pq_ball, linf, l1 };

/// A normed space the lab can evaluate: the two-dimensional balls
/// {|z1|^p + |z2|^q <= 1} with 1 <= p, q <= 64, or sup-norm / sum-norm
/// spaces of dimension 2..8, over the real or complex field. Every unit
/// ball here is invariant under independent phase rotations of the
/// coordinates, so norms depend on coordinate moduli only.
struct SpaceSpec {
  SpaceKind kind;
  Field field;
  int dim;
  double p = 0.0;  // pq_ball only
  double q = 0.0;

  static SpaceSpec pq(double p, double q, Field field);
  static SpaceSpec linf(int n, Field field);
  static SpaceSpec l1(int n, Field field);

  /// Same geometry over the real field (the moduli-space ball).
  SpaceSpec moduli_space() const;

  /// Textual form used by the CLI: "pq:P,Q", "linf:N", "l1:N".
  std::string to_string() const;
  static SpaceSpec parse(const std::string& text, Field field);
};

using Vec = std::vector<Cplx>;

/// Minkowski functional of the unit ball: the unique t >= 0 with v/t on
/// the unit sphere (0 for v = 0). pq balls use bisection on
/// t -> (|v1|/t)^p + (|v2|/t)^q over the bracket [0, |v1|+|v2|], relative
/// tolerance 1e-12; sup/sum norms are exact.
double gauge(const SpaceSpec& space, const Vec& v);

/// Dual norm sup_{z in unit ball} |<w, z>| under the conjugate pairing.
/// For pq balls: 1-D maximization of |w1| x + |w2| y over the
/// positive-quadrant boundary (256-point grid + golden-section to 1e-10);
/// sup-norm and sum-norm are exact duals of each other.
double dual_gauge(const SpaceSpec& space, const Vec& w);

/// Point on the positive-quadrant unit sphere, parametrized by t in [0,1].
/// pq balls use x = t, y = (1 - x^p)^(1/q); the sup-norm square walks its
/// two edges; the sum-norm walks the segment x + y = 1.
Vec boundary_point(const SpaceSpec& space, double t);

enum class Census { four_vertices, more_than_four };

const char* census_name(Census c);

/// Midpoint test over adjacent positive-quadrant boundary samples: any
/// midpoint with gauge < 1 - 1e-9 exhibits a strictly convex arc (so the
/// ball has more than four extreme points); if every arc is affine to
/// within 1e-9 the ball is the four-vertex parallelogram/diamond case.
/// Requires a real two-dimensional space and grid >= 8.
Census extreme_point_census(const SpaceSpec& space, int grid);

}  // namespace gammalab
