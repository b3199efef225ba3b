#pragma once

#include <vector>

#include "gammalab/gamma.hpp"
#include "gammalab/linalg.hpp"

namespace gammalab {

/// Row-factorized correlation matrix: n unit rows of length r whose Gram
/// matrix G[i][j] = <row_i, row_j> is PSD with unit diagonal. Rows are
/// renormalized on construction; a zero row is rejected.
struct CorrelationFactor {
  int n = 0;
  int r = 0;
  Field field = Field::real;
  std::vector<std::vector<Cplx>> rows;

  CorrelationFactor(Field field_, std::vector<std::vector<Cplx>> rows_);

  HermitianMatrix induced() const;
};

struct BetaReport {
  double value = 0.0;
  CorrelationFactor factor;
  int rank_estimate = 0;
  double rank1_value = 0.0;
  double gap = 0.0;  // value - rank1_value, >= 0 up to optimizer noise
};

/// beta(A) = sup over correlation matrices B of hs_inner(A, B), computed
/// by multi-start projected gradient ascent on full-rank factors (gradient
/// step on the rows, rows renormalized, backtracking step size). One start
/// lifts the rank-one phase/sign optimum so the reported value never falls
/// below it.
BetaReport beta(const HermitianMatrix& a, const OptimizerConfig& cfg);

/// The restriction of beta to rank-one correlation matrices z z* with
/// unimodular (complex) or sign (real) coordinates; equals the
/// sup-norm-to-sum-norm operator norm.
double rank1_beta(const HermitianMatrix& a, Field field);

/// gamma of the n-dimensional sup-norm space via the correlation-matrix
/// reduction: sup of beta(A) over PSD A with linf_to_l1_norm(A) <= 1
/// (completing the diagonal of a feasible B to ones never decreases the
/// objective, so the B side collapses onto correlation matrices).
/// Exploratory for n = 4; n in [2, 4].
GammaReport gamma_linf(int n, Field field, const OptimizerConfig& cfg);

/// Numerical rank of the induced correlation matrix (eigenvalues above
/// tol * largest). Candidate extreme optimizers for complex n <= 3 should
/// report rank one.
int extreme_rank_diagnostic(const CorrelationFactor& factor, double tol);

}  // namespace gammalab
