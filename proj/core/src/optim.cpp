#include "gammalab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gammalab {

ScalarMax golden_section_argmax(const std::function<double(double)>& f,
                                double lo, double hi, double xtol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  ScalarMax best = f1 >= f2 ? ScalarMax{x1, f1} : ScalarMax{x2, f2};
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      if (f2 > best.value) best = {x2, f2};
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      if (f1 > best.value) best = {x1, f1};
    }
  }
  return best;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol) {
  return golden_section_argmax(f, lo, hi, xtol).value;
}

NelderMeadResult nelder_mead_max(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& step,
    int max_iters, double value_tol, double step_tol) {
  const int d = static_cast<int>(x0.size());
  auto neg = [&](const std::vector<double>& x) { return -f(x); };

  std::vector<std::vector<double>> simplex(d + 1, x0);
  for (int i = 0; i < d; ++i) simplex[i + 1][i] += step[i];
  std::vector<double> fv(d + 1);
  int evals = 0;
  for (int i = 0; i <= d; ++i) {
    fv[i] = neg(simplex[i]);
    ++evals;
  }

  std::vector<int> order(d + 1);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return fv[i] < fv[j]; });
    const int best = order[0], worst = order[d], second = order[d - 1];

    double spread = fv[worst] - fv[best];
    double size = 0.0;
    for (int i = 0; i < d; ++i) {
      size = std::max(size, std::abs(simplex[worst][i] - simplex[best][i]));
    }
    if (spread < value_tol && size < step_tol) break;

    std::vector<double> centroid(d, 0.0);
    for (int k = 0; k <= d; ++k) {
      if (k == worst) continue;
      for (int i = 0; i < d; ++i) centroid[i] += simplex[k][i];
    }
    for (int i = 0; i < d; ++i) centroid[i] /= d;

    auto along = [&](double coef) {
      std::vector<double> x(d);
      for (int i = 0; i < d; ++i) {
        x[i] = centroid[i] + coef * (simplex[worst][i] - centroid[i]);
      }
      return x;
    };

    const std::vector<double> xr = along(-1.0);  // reflection
    const double fr = neg(xr);
    ++evals;
    if (fr < fv[best]) {
      const std::vector<double> xe = along(-2.0);  // expansion
      const double fe = neg(xe);
      ++evals;
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fc = neg(xc);
    ++evals;
    if (fc < (outside ? fr : fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (int k = 0; k <= d; ++k) {  // shrink toward the best vertex
      if (k == best) continue;
      for (int i = 0; i < d; ++i) {
        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
      }
      fv[k] = neg(simplex[k]);
      ++evals;
    }
  }

  const int best = static_cast<int>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  return NelderMeadResult{simplex[best], -fv[best], evals};
}

}  // namespace gammalab
