#include "gammalab/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "gammalab/opnorm.hpp"
#include "gammalab/optim.hpp"

namespace gammalab {

namespace {

using Rows = std::vector<std::vector<Cplx>>;

void normalize_row(std::vector<Cplx>& row) {
  double norm2 = 0.0;
  for (const Cplx& v : row) norm2 += std::norm(v);
  if (norm2 < 1e-300) {
    throw std::invalid_argument("correlation factor has a zero row");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Cplx& v : row) v *= inv;
}

double factor_objective(const HermitianMatrix& a, const Rows& rows) {
  // tr(A V V*) = sum_k (col_k)* A (col_k), evaluated without forming G
  const int n = a.dim();
  const int r = static_cast<int>(rows[0].size());
  double total = 0.0;
  for (int k = 0; k < r; ++k) {
    Cplx acc(0.0);
    for (int i = 0; i < n; ++i) {
      Cplx ai(0.0);
      for (int j = 0; j < n; ++j) ai += a(i, j) * rows[j][k];
      acc += std::conj(rows[i][k]) * ai;
    }
    total += acc.real();
  }
  return total;
}

/// Projected gradient ascent: step along A*V, renormalize rows,
/// backtracking from step 1.0 with halving, accept on increase.
double ascend_rows(const HermitianMatrix& a, Rows& rows, int max_iters) {
  const int n = a.dim();
  const int r = static_cast<int>(rows[0].size());
  double value = factor_objective(a, rows);
  for (int iter = 0; iter < max_iters; ++iter) {
    Rows grad(n, std::vector<Cplx>(r, Cplx(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < r; ++k) {
        Cplx acc(0.0);
        for (int j = 0; j < n; ++j) acc += a(i, j) * rows[j][k];
        grad[i][k] = acc;
      }
    }
    double eta = 1.0;
    bool accepted = false;
    double new_value = value;
    Rows candidate = rows;
    for (int halving = 0; halving < 40; ++halving) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < r; ++k) {
          candidate[i][k] = rows[i][k] + eta * grad[i][k];
        }
        normalize_row(candidate[i]);
      }
      new_value = factor_objective(a, candidate);
      if (new_value > value) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    rows.swap(candidate);
    const double gain = new_value - value;
    value = new_value;
    if (gain < 1e-10) break;
  }
  return value;
}

Rows rank1_lift(const HermitianMatrix& a, Field field, int r) {
  const std::vector<Cplx> z = detail::extremal_unimodular(a, field);
  Rows rows(a.dim(), std::vector<Cplx>(r, Cplx(0.0)));
  for (int i = 0; i < a.dim(); ++i) rows[i][0] = z[i];
  return rows;
}

Rows identity_rows(int n, int r) {
  Rows rows(n, std::vector<Cplx>(r, Cplx(0.0)));
  for (int i = 0; i < n; ++i) rows[i][i % r] = 1.0;
  return rows;
}

Rows random_rows(int n, int r, Field field, SeededRng& rng) {
  Rows rows(n, std::vector<Cplx>(r));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < r; ++k) {
      const double re = rng.normal();
      const double im = field == Field::complex ? rng.normal() : 0.0;
      rows[i][k] = Cplx(re, im);
    }
    normalize_row(rows[i]);
  }
  return rows;
}

struct AscentResult {
  double value = -1e300;
  Rows rows;
};

AscentResult best_factor(const HermitianMatrix& a, Field field, int restarts,
                         int max_iters, std::uint64_t seed) {
  const int n = a.dim();
  const SeededRng base(seed);
  AscentResult best;
  for (int r = 0; r < restarts; ++r) {
    Rows rows;
    if (r == 0) {
      rows = rank1_lift(a, field, n);
    } else if (r == 1) {
      rows = identity_rows(n, n);
    } else {
      SeededRng rng = base.derive(static_cast<std::uint64_t>(r));
      rows = random_rows(n, n, field, rng);
    }
    const double val = ascend_rows(a, rows, max_iters);
    if (val > best.value) {
      best.value = val;
      best.rows = std::move(rows);
    }
  }
  return best;
}

}  // namespace

CorrelationFactor::CorrelationFactor(Field field_, Rows rows_)
    : n(static_cast<int>(rows_.size())),
      field(field_),
      rows(std::move(rows_)) {
  if (rows.empty()) {
    throw std::invalid_argument("correlation factor needs at least one row");
  }
  r = static_cast<int>(rows[0].size());
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != r) {
      throw std::invalid_argument("correlation factor rows differ in length");
    }
    if (field == Field::real) {
      for (const Cplx& v : row) {
        if (v.imag() != 0.0) {
          throw std::invalid_argument(
              "real correlation factor with complex entries");
        }
      }
    }
    normalize_row(row);
  }
  if (r < 1 || r > n) {
    throw std::invalid_argument("factor rank must satisfy 1 <= r <= n");
  }
}

HermitianMatrix CorrelationFactor::induced() const {
  HermitianMatrix g(n, field);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Cplx acc(0.0);
      for (int k = 0; k < r; ++k) acc += rows[i][k] * std::conj(rows[j][k]);
      if (i == j) acc = Cplx(acc.real(), 0.0);
      g.set(i, j, acc);
    }
  }
  return g;
}

BetaReport beta(const HermitianMatrix& a, const OptimizerConfig& cfg) {
  if (!is_psd(a)) {
    throw NotPsdError("beta needs a PSD matrix", min_eigenvalue(a));
  }
  if (cfg.restarts < 1) {
    throw std::invalid_argument("optimizer needs restarts >= 1");
  }
  const Field field = a.field();
  const AscentResult best =
      best_factor(a, field, cfg.restarts, cfg.max_iters, cfg.seed);

  BetaReport report{best.value, CorrelationFactor(field, best.rows), 0, 0.0,
                    0.0};
  report.rank_estimate = numerical_rank(report.factor.induced(), 1e-7);
  report.rank1_value = linf_to_l1_norm(a, field);
  report.gap = report.value - report.rank1_value;
  return report;
}

double rank1_beta(const HermitianMatrix& a, Field field) {
  return linf_to_l1_norm(a, field);
}

GammaReport gamma_linf(int n, Field field, const OptimizerConfig& cfg) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument("gamma_linf supports n in [2, 4]");
  }
  if (cfg.restarts < 1) {
    throw std::invalid_argument("optimizer needs restarts >= 1");
  }
  const bool complex_field = field == Field::complex;
  const int params = (complex_field ? 2 : 1) * n * n;

  auto matrix_from = [&](const std::vector<double>& x) {
    // A = G G* from the flattened factor entries; PSD by construction
    HermitianMatrix a(n, field);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Cplx acc(0.0);
        for (int k = 0; k < n; ++k) {
          const int base_i = (i * n + k) * (complex_field ? 2 : 1);
          const int base_j = (j * n + k) * (complex_field ? 2 : 1);
          const Cplx gi(x[base_i], complex_field ? x[base_i + 1] : 0.0);
          const Cplx gj(x[base_j], complex_field ? x[base_j + 1] : 0.0);
          acc += gi * std::conj(gj);
        }
        if (i == j) acc = Cplx(acc.real(), 0.0);
        a.set(i, j, acc);
      }
    }
    return a;
  };

  // Quick inner evaluation used inside the outer search: deterministic in
  // the candidate matrix, cheap enough to sit in a Nelder-Mead objective.
  auto ratio_of = [&](const std::vector<double>& x) {
    const HermitianMatrix a = matrix_from(x);
    if (a.max_abs_entry() < 1e-8) return -1.0;
    const double nu = linf_to_l1_norm(a, field);
    if (nu < 1e-10) return -1.0;
    const double beta_quick =
        best_factor(a, field, 5, 250, 0xbe7aull).value;
    return beta_quick / nu;
  };

  auto flatten = [&](const Rows& g) {
    std::vector<double> x(params, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const int base = (i * n + k) * (complex_field ? 2 : 1);
        x[base] = g[i][k].real();
        if (complex_field) x[base + 1] = g[i][k].imag();
      }
    }
    return x;
  };

  auto simplex_frame = [&]() {
    // n unit vectors with pairwise inner product -1/(n-1)
    Rows g(n, std::vector<Cplx>(n, Cplx(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        g[i][k] = (i == k ? 1.0 : 0.0) - 1.0 / n;
      }
      normalize_row(g[i]);
    }
    return g;
  };

  const SeededRng base(cfg.seed);
  GammaReport report;
  report.restarts_used = cfg.restarts;
  std::vector<double> best_x;
  double best_ratio = -1e300;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x0;
    if (r == 0) {
      x0 = flatten(identity_rows(n, n));
    } else if (r == 1) {
      x0 = flatten(simplex_frame());
    } else if (r == 2) {
      Rows ones(n, std::vector<Cplx>(n, Cplx(0.0)));
      for (int i = 0; i < n; ++i) ones[i][0] = 1.0;
      x0 = flatten(ones);
    } else {
      SeededRng rng = base.derive(static_cast<std::uint64_t>(r));
      x0 = flatten(random_rows(n, n, field, rng));
    }
    const NelderMeadResult nm =
        nelder_mead_max(ratio_of, x0, std::vector<double>(params, 0.25),
                        2 * cfg.max_iters, 1e-10, cfg.step_tol);
    report.restart_values.push_back(nm.value);
    if (nm.value > best_ratio) {
      best_ratio = nm.value;
      best_x = nm.x;
    }
  }

  // Re-evaluate the winner with full-strength settings and report that.
  HermitianMatrix a_best = matrix_from(best_x);
  const double nu = linf_to_l1_norm(a_best, field);
  HermitianMatrix a_unit = (1.0 / nu) * a_best;
  const AscentResult strong =
      best_factor(a_unit, field, std::max(cfg.restarts, 16), cfg.max_iters,
                  cfg.seed ^ 0x5712ull);
  const double nu_unit = linf_to_l1_norm(a_unit, field);

  report.value = strong.value / nu_unit;
  report.witness_a = a_unit;
  report.witness_b = CorrelationFactor(field, strong.rows).induced();
  std::vector<double> sorted = report.restart_values;
  std::sort(sorted.rbegin(), sorted.rend());
  const int top = std::min<std::size_t>(5, sorted.size());
  report.converged = (sorted.front() - sorted[top - 1]) <= 1e-4;
  return report;
}

int extreme_rank_diagnostic(const CorrelationFactor& factor, double tol) {
  return numerical_rank(factor.induced(), tol);
}

}  // namespace gammalab
