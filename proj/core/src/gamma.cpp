#include "gammalab/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "gammalab/optim.hpp"

namespace gammalab {

namespace {

double clamp01(double s) { return std::min(1.0, std::max(0.0, s)); }

/// 2x2 PSD matrices parametrized as (u, v, s[, psi]):
///   a11 = u^2, a22 = v^2, |a12| = clamp01(s) * |u v|,
/// which keeps PSD-ness unconditional. Real mode pins the off-diagonal
/// phase to zero (nonnegative off-diagonal; lossless by the modulus
/// reduction), complex mode searches it.
struct PairSearch {
  detail::DirectionNorm norm_a;  // primal-side constraint
  detail::DirectionNorm norm_b;  // dual-side constraint
  bool complex_mode;

  PairSearch(const SpaceSpec& space, bool complex_mode_)
      : norm_a(space, NormSide::primal_to_dual),
        norm_b(space, NormSide::dual_to_primal),
        complex_mode(complex_mode_) {}

  int params() const { return complex_mode ? 4 : 3; }

  double norm_of(const std::vector<double>& x, bool primal_side) const {
    const double a11 = x[0] * x[0];
    const double a22 = x[1] * x[1];
    const double off = clamp01(x[2]) * std::abs(x[0] * x[1]);
    const detail::DirectionNorm& dn = primal_side ? norm_a : norm_b;
    if (!complex_mode) return dn.sup_abs(a11, a22, off);
    return dn.sup_complex_direct(a11, a22, off, x[3]);
  }

  /// hs inner product of the two parametrized matrices (unnormalized).
  double pair_inner(const std::vector<double>& xa,
                    const std::vector<double>& xb) const {
    const double a11 = xa[0] * xa[0], a22 = xa[1] * xa[1];
    const double b11 = xb[0] * xb[0], b22 = xb[1] * xb[1];
    const double ca = clamp01(xa[2]) * std::abs(xa[0] * xa[1]);
    const double cb = clamp01(xb[2]) * std::abs(xb[0] * xb[1]);
    double cross = 2.0 * ca * cb;
    if (complex_mode) cross *= std::cos(xa[3] - xb[3]);
    return a11 * b11 + a22 * b22 + cross;
  }

  /// Objective on the unit-norm slice; the constraint sets are cones and
  /// the objective is bilinear, so rescaling each factor onto its slice
  /// loses nothing.
  double joint(const std::vector<double>& xa,
               const std::vector<double>& xb) const {
    const double na = norm_of(xa, true);
    const double nb = norm_of(xb, false);
    if (na < 1e-12 || nb < 1e-12) return -1.0;
    return pair_inner(xa, xb) / (na * nb);
  }

  HermitianMatrix matrix_of(const std::vector<double>& x, Field field) const {
    HermitianMatrix m(2, field);
    m.set(0, 0, x[0] * x[0]);
    m.set(1, 1, x[1] * x[1]);
    const double off = clamp01(x[2]) * std::abs(x[0] * x[1]);
    if (complex_mode && field == Field::complex) {
      m.set(0, 1, std::polar(off, x[3]));
    } else {
      m.set(0, 1, off);
    }
    return m;
  }
};

std::vector<double> params_from_matrix(const HermitianMatrix& m,
                                       bool complex_mode) {
  const double u = std::sqrt(std::max(0.0, m(0, 0).real()));
  const double v = std::sqrt(std::max(0.0, m(1, 1).real()));
  const double denom = u * v;
  const double s = denom > 1e-12 ? clamp01(std::abs(m(0, 1)) / denom) : 0.0;
  std::vector<double> x{u, v, s};
  if (complex_mode) x.push_back(std::arg(m(0, 1) + Cplx(1e-300, 0.0)));
  return x;
}

std::vector<double> nm_steps(const std::vector<double>& x) {
  std::vector<double> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = i == 3 ? 0.4 : 0.15 * std::max(0.5, std::abs(x[i]));
  }
  return s;
}

struct RestartOutcome {
  double value = -1.0;
  std::vector<double> xa, xb;
};

RestartOutcome run_restart(const PairSearch& search, std::vector<double> xa,
                           std::vector<double> xb,
                           const OptimizerConfig& cfg) {
  const int inner_iters = std::max(60, cfg.max_iters / 3);
  double prev = search.joint(xa, xb);
  for (int alt = 0; alt < 12; ++alt) {
    const double nb_fixed = std::max(search.norm_of(xb, false), 1e-12);
    const NelderMeadResult ra = nelder_mead_max(
        [&](const std::vector<double>& x) {
          const double na = search.norm_of(x, true);
          if (na < 1e-12) return -1.0;
          return search.pair_inner(x, xb) / (na * nb_fixed);
        },
        xa, nm_steps(xa), inner_iters, 1e-12, cfg.step_tol);
    xa = ra.x;
    const double na_fixed = std::max(search.norm_of(xa, true), 1e-12);
    const NelderMeadResult rb = nelder_mead_max(
        [&](const std::vector<double>& x) {
          const double nb = search.norm_of(x, false);
          if (nb < 1e-12) return -1.0;
          return search.pair_inner(xa, x) / (na_fixed * nb);
        },
        xb, nm_steps(xb), inner_iters, 1e-12, cfg.step_tol);
    xb = rb.x;
    const double val = search.joint(xa, xb);
    if (val - prev < cfg.value_tol) {
      prev = std::max(prev, val);
      break;
    }
    prev = val;
  }

  // joint polish co-adapts the pair across the bilinear coupling
  std::vector<double> xj(xa);
  xj.insert(xj.end(), xb.begin(), xb.end());
  const int half = search.params();
  const NelderMeadResult rj = nelder_mead_max(
      [&](const std::vector<double>& x) {
        const std::vector<double> a(x.begin(), x.begin() + half);
        const std::vector<double> b(x.begin() + half, x.end());
        return search.joint(a, b);
      },
      xj, nm_steps(xj), cfg.max_iters, 1e-13, cfg.step_tol);

  RestartOutcome out;
  out.xa.assign(rj.x.begin(), rj.x.begin() + half);
  out.xb.assign(rj.x.begin() + half, rj.x.end());
  out.value = search.joint(out.xa, out.xb);
  if (prev > out.value) {  // polish never discards the alternation result
    out.xa = xa;
    out.xb = xb;
    out.value = prev;
  }
  return out;
}

GammaReport run_gamma(const SpaceSpec& search_space, Field witness_field,
                      bool complex_mode, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) {
    throw std::invalid_argument("optimizer needs restarts >= 1");
  }
  const PairSearch search(search_space, complex_mode);
  const WitnessPair seed_pair = lower_bound_witness(search_space);
  const SeededRng base(cfg.seed);

  GammaReport report;
  report.restarts_used = cfg.restarts;
  RestartOutcome best;
  for (int r = 0; r < cfg.restarts; ++r) {
    SeededRng rng = base.derive(static_cast<std::uint64_t>(r));
    std::vector<double> xa, xb;
    if (r == 0) {
      xa = params_from_matrix(seed_pair.a, complex_mode);
      xb = params_from_matrix(seed_pair.b, complex_mode);
    } else if (r == 1) {
      xa = params_from_matrix(HermitianMatrix::identity(2, Field::real),
                              complex_mode);
      xb = xa;
    } else {
      auto random_params = [&]() {
        std::vector<double> x{0.3 + std::abs(rng.normal()),
                              0.3 + std::abs(rng.normal()), rng.uniform()};
        if (complex_mode) x.push_back(2.0 * M_PI * rng.uniform());
        return x;
      };
      xa = random_params();
      xb = random_params();
    }
    RestartOutcome out = run_restart(search, std::move(xa), std::move(xb), cfg);
    report.restart_values.push_back(out.value);
    if (out.value > best.value) best = std::move(out);
  }

  // scale the winning pair onto the unit-norm slice
  const double na = search.norm_of(best.xa, true);
  const double nb = search.norm_of(best.xb, false);
  report.witness_a = (1.0 / na) * search.matrix_of(best.xa, witness_field);
  report.witness_b = (1.0 / nb) * search.matrix_of(best.xb, witness_field);
  report.value = hs_inner(report.witness_a, report.witness_b);

  std::vector<double> sorted = report.restart_values;
  std::sort(sorted.rbegin(), sorted.rend());
  const int top = std::min<std::size_t>(5, sorted.size());
  report.converged = (sorted.front() - sorted[top - 1]) <= 1e-4;
  return report;
}

}  // namespace

GammaReport gamma(const SpaceSpec& space, const OptimizerConfig& cfg) {
  if (space.dim != 2) {
    throw std::invalid_argument(
        "gamma handles 2-dimensional spaces; use gamma_linf for sup-norm "
        "spaces of dimension 3+");
  }
  if (space.field == Field::complex && cfg.direct_complex) {
    return gamma_complex_direct(space, cfg);
  }
  // Phase symmetry of the ball makes gamma equal on the complex space and
  // its real moduli space, so the search runs over real pairs.
  return run_gamma(space.moduli_space(), Field::real, false, cfg);
}

GammaReport gamma_complex_direct(const SpaceSpec& space,
                                 const OptimizerConfig& cfg) {
  if (space.dim != 2 || space.field != Field::complex) {
    throw std::invalid_argument(
        "gamma_complex_direct needs a complex 2-dimensional space");
  }
  return run_gamma(space, Field::complex, true, cfg);
}

Theorem1Report verify_theorem1(double p, double q, const OptimizerConfig& cfg,
                               double tolerance) {
  Theorem1Report rep;
  rep.p = p;
  rep.q = q;
  rep.tolerance = tolerance;
  const GammaReport real_side = gamma(SpaceSpec::pq(p, q, Field::real), cfg);
  const GammaReport complex_side =
      gamma_complex_direct(SpaceSpec::pq(p, q, Field::complex), cfg);
  rep.gamma_real = real_side.value;
  rep.gamma_complex = complex_side.value;
  rep.abs_diff = std::abs(rep.gamma_real - rep.gamma_complex);
  rep.real_converged = real_side.converged;
  rep.complex_converged = complex_side.converged;
  rep.pass = rep.abs_diff <= tolerance && rep.real_converged &&
             rep.complex_converged;
  return rep;
}

WitnessPair lower_bound_witness(const SpaceSpec& space) {
  const int n = space.dim;
  std::vector<double> x(n, 0.0), f(n, 0.0);
  switch (space.kind) {
    case SpaceKind::pq_ball:
      x[0] = 1.0;
      f[0] = 1.0;
      break;
    case SpaceKind::linf:
      x.assign(n, 1.0);  // a vertex of the cube
      f[0] = 1.0;
      break;
    case SpaceKind::l1:
      x[0] = 1.0;
      f.assign(n, 1.0);  // the sup-norm functional pairing to 1
      break;
  }

  WitnessPair pair{HermitianMatrix(n, space.field),
                   HermitianMatrix(n, space.field), 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      pair.a.set(i, j, f[i] * f[j]);
      pair.b.set(i, j, x[i] * x[j]);
    }
  }
  pair.value = hs_inner(pair.a, pair.b);

  const double norm_a = quad_form_sup(pair.a, space, NormSide::primal_to_dual);
  const double norm_b = quad_form_sup(pair.b, space, NormSide::dual_to_primal);
  if (norm_a > 1.0 + 1e-9 || norm_b > 1.0 + 1e-9 ||
      std::abs(pair.value - 1.0) > 1e-9) {
    throw std::logic_error("lower-bound witness failed its feasibility check");
  }
  return pair;
}

}  // namespace gammalab
