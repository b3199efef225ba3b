#pragma once

#include <functional>
#include <vector>

namespace gammalab {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section maximization on [lo, hi]; shrinks the interval to
/// `xtol` width and reports the best probed point. The objective is
/// assumed unimodal on the bracket; for a multimodal objective call it on
/// a bracket found by a prior grid scan.
ScalarMax golden_section_argmax(const std::function<double(double)>& f,
                                double lo, double hi, double xtol);

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol);

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Nelder-Mead maximization (standard coefficients 1, 2, 0.5, 0.5).
/// The initial simplex is x0 plus one vertex per coordinate offset by
/// `step[i]`. Deterministic; stops when the simplex value spread falls
/// below value_tol and its edge lengths below step_tol, or at max_iters.
NelderMeadResult nelder_mead_max(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& step,
    int max_iters, double value_tol = 1e-12, double step_tol = 1e-11);

}  // namespace gammalab
