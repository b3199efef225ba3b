// Test-only oracles, written independently of the library code paths they
// cross-check: plain loops, exhaustive enumeration and dense grids.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gammalab/linalg.hpp"

namespace oracles {

using gammalab::Cplx;
using gammalab::HermitianMatrix;

inline Cplx entry_sum_conj(const HermitianMatrix& a, const HermitianMatrix& b) {
  Cplx s(0.0);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * std::conj(b(i, j));
  }
  return s;
}

inline std::vector<std::vector<Cplx>> mat_mul(const HermitianMatrix& a,
                                              const HermitianMatrix& b) {
  const int n = a.dim();
  std::vector<std::vector<Cplx>> c(n, std::vector<Cplx>(n, Cplx(0.0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) c[i][j] += a(i, k) * b(k, j);
    }
  }
  return c;
}

inline double grid_diff_norm(const std::vector<std::vector<Cplx>>& c,
                             const HermitianMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) s += std::norm(c[i][j] - a(i, j));
  }
  return std::sqrt(s);
}

/// Exhaustive maximum of x^T A x over ALL 2^n sign vectors (the library
/// fixes the first coordinate; this one does not, on purpose).
inline double sign_max_full(const HermitianMatrix& a) {
  const int n = a.dim();
  double best = -1e300;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double val = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double xi = (mask >> i) & 1 ? -1.0 : 1.0;
        const double xj = (mask >> j) & 1 ? -1.0 : 1.0;
        val += a(i, j).real() * xi * xj;
      }
    }
    best = std::max(best, val);
  }
  return best;
}

/// Dense phase-grid maximum of z* A z over unimodular z for n = 2 or 3.
inline double phase_grid_max(const HermitianMatrix& a, int steps) {
  const int n = a.dim();
  double best = -1e300;
  auto value = [&](const std::vector<Cplx>& z) {
    Cplx s(0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) s += std::conj(z[i]) * a(i, j) * z[j];
    }
    return s.real();
  };
  if (n == 2) {
    for (int i = 0; i < steps; ++i) {
      const double phi = 2.0 * M_PI * i / steps;
      best = std::max(best, value({Cplx(1.0, 0.0), std::polar(1.0, phi)}));
    }
    return best;
  }
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double phi1 = 2.0 * M_PI * i / steps;
      const double phi2 = 2.0 * M_PI * j / steps;
      best = std::max(best, value({Cplx(1.0, 0.0), std::polar(1.0, phi1),
                                   std::polar(1.0, phi2)}));
    }
  }
  return best;
}

/// Dense grid over the three off-diagonal parameters of a symmetric 3x3
/// correlation matrix, PSD-filtered through leading principal minors.
inline double elliptope3_grid_max(const HermitianMatrix& a, int steps) {
  double best = -1e300;
  for (int i = 0; i <= steps; ++i) {
    const double x = -1.0 + 2.0 * i / steps;
    for (int j = 0; j <= steps; ++j) {
      const double y = -1.0 + 2.0 * j / steps;
      if (1.0 - x * x < -1e-12) continue;
      for (int k = 0; k <= steps; ++k) {
        const double z = -1.0 + 2.0 * k / steps;
        // det of [[1,x,y],[x,1,z],[y,z,1]]
        const double det = 1.0 + 2.0 * x * y * z - x * x - y * y - z * z;
        if (det < -1e-12) continue;
        if (1.0 - x * x < 0.0 || 1.0 - y * y < 0.0 || 1.0 - z * z < 0.0)
          continue;
        const double val = a(0, 0).real() + a(1, 1).real() + a(2, 2).real() +
                           2.0 * (a(0, 1).real() * x + a(0, 2).real() * y +
                                  a(1, 2).real() * z);
        best = std::max(best, val);
      }
    }
  }
  return best;
}

/// The 3x3 "triangle" matrix with unit diagonal and off-diagonals -1/2.
inline HermitianMatrix triangle_matrix(gammalab::Field field) {
  HermitianMatrix a(3, field);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) a.set(i, j, -0.5);
    a.set(i, i, 1.0);
  }
  return a;
}

}  // namespace oracles
