#include "gammalab/opnorm.hpp"

#include <algorithm>
#include <cmath>

#include "gammalab/optim.hpp"

namespace gammalab {

namespace {

constexpr int kThetaGrid = 4097;  // dense cache; scans run at stride 8
constexpr double kHalfPi = 1.5707963267948966;

void check_norm_input(const HermitianMatrix& a, const SpaceSpec& space) {
  if (a.dim() != space.dim) {
    throw std::invalid_argument("matrix and space dimensions differ");
  }
  if (space.field == Field::real && a.field() == Field::complex) {
    throw std::invalid_argument("complex matrix over a real-field space");
  }
  if (!is_psd(a)) {
    throw NotPsdError("quadratic-form norm needs a PSD matrix",
                      min_eigenvalue(a));
  }
}

double max_diagonal(const HermitianMatrix& a) {
  double m = a(0, 0).real();
  for (int i = 1; i < a.dim(); ++i) m = std::max(m, a(i, i).real());
  return m;
}

double quad_value(const HermitianMatrix& a, const std::vector<Cplx>& z) {
  Cplx acc(0.0);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) acc += std::conj(z[i]) * a(i, j) * z[j];
  }
  return acc.real();
}

/// Coordinate phase ascent over unimodular vectors: each coordinate is
/// rotated to the phase of its off-diagonal residual, which never
/// decreases the form.
double phase_ascent(const HermitianMatrix& a, std::vector<Cplx>& z,
                    int max_sweeps, double move_tol) {
  const int n = a.dim();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      Cplx w(0.0);
      for (int j = 0; j < n; ++j) {
        if (j != i) w += a(i, j) * z[j];
      }
      const double r = std::abs(w);
      if (r < 1e-15) continue;
      const Cplx zi = w / r;
      moved = std::max(moved, std::abs(zi - z[i]));
      z[i] = zi;
    }
    if (moved < move_tol) break;
  }
  return quad_value(a, z);
}

std::vector<Cplx> sign_enumeration_argmax(const HermitianMatrix& a) {
  const int n = a.dim();
  double best = -1e300;
  std::vector<double> x(n, 1.0);
  std::vector<Cplx> argmax(n, Cplx(1.0, 0.0));
  const int combos = 1 << (n - 1);
  for (int mask = 0; mask < combos; ++mask) {
    for (int i = 1; i < n; ++i) x[i] = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
    double val = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) val += a(i, j).real() * x[i] * x[j];
    }
    if (val > best) {
      best = val;
      for (int i = 0; i < n; ++i) argmax[i] = Cplx(x[i], 0.0);
    }
  }
  return argmax;
}

std::vector<Cplx> top_eigvec_phases(const HermitianMatrix& a) {
  const Eigensystem es = eigh(a);
  const std::vector<Cplx>& v = es.vectors.back();
  std::vector<Cplx> z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::abs(v[i]);
    z[i] = r < 1e-12 ? Cplx(1.0, 0.0) : v[i] / r;
  }
  return z;
}

/// Coarse scan over the phase torus (first coordinate pinned to 1);
/// feasible for n <= 4, where it makes the ascent start near the global
/// basin.
std::vector<Cplx> phase_grid_argmax(const HermitianMatrix& a) {
  const int n = a.dim();
  const int steps = n <= 3 ? 48 : 24;
  std::vector<int> idx(n - 1, 0);
  std::vector<Cplx> z(n, Cplx(1.0, 0.0)), best_z = z;
  double best = -1e300;
  while (true) {
    for (int i = 1; i < n; ++i) {
      z[i] = std::polar(1.0, 2.0 * M_PI * idx[i - 1] / steps);
    }
    const double val = quad_value(a, z);
    if (val > best) {
      best = val;
      best_z = z;
    }
    int k = 0;
    while (k < n - 1 && ++idx[k] == steps) idx[k++] = 0;
    if (k == n - 1) break;
  }
  return best_z;
}

}  // namespace

namespace detail {

std::vector<Cplx> extremal_unimodular(const HermitianMatrix& a, Field field) {
  if (field == Field::real) {
    if (a.field() == Field::complex) {
      throw std::invalid_argument("real-field norm of a complex-tagged matrix");
    }
    return sign_enumeration_argmax(a);
  }

  const int n = a.dim();
  constexpr int kRestarts = 16;
  SeededRng rng(0x5eedf00dull);  // internal stream keeps the result a pure function
  double best = -1e300;
  std::vector<Cplx> best_z;
  for (int r = 0; r < kRestarts; ++r) {
    std::vector<Cplx> z(n, Cplx(1.0, 0.0));
    if (r == 1) z = top_eigvec_phases(a);
    if (r == 2 && n <= 4) z = phase_grid_argmax(a);
    if (r >= 3) {
      for (int i = 0; i < n; ++i) {
        z[i] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
      }
    }
    const double val = phase_ascent(a, z, 200, 1e-10);
    if (val > best) {
      best = val;
      best_z = z;
    }
  }
  return best_z;
}

}  // namespace detail

double linf_to_l1_norm(const HermitianMatrix& a, Field field) {
  if (!is_psd(a)) {
    throw NotPsdError("linf_to_l1_norm needs a PSD matrix", min_eigenvalue(a));
  }
  const std::vector<Cplx> z = detail::extremal_unimodular(a, field);
  return quad_value(a, z);
}

double l1_to_linf_norm(const HermitianMatrix& b) {
  double max_entry = 0.0;
  double max_off = 0.0;
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      const double v = std::abs(b(i, j));
      max_entry = std::max(max_entry, v);
      if (i != j) max_off = std::max(max_off, v);
    }
  }
  if (is_psd(b) && max_off > max_diagonal(b) + 1e-8) {
    throw std::logic_error(
        "PSD matrix with off-diagonal entry above its diagonal maximum");
  }
  return max_entry;
}

namespace detail {

DirectionNorm::DirectionNorm(const SpaceSpec& space, NormSide side)
    : moduli_space_(space.moduli_space()), side_(side) {
  if (space.dim != 2) {
    throw std::invalid_argument("DirectionNorm needs a 2-dimensional space");
  }
  if (moduli_space_.kind != SpaceKind::pq_ball) return;  // closed forms
  g2_.resize(kThetaGrid);
  for (int k = 0; k < kThetaGrid; ++k) {
    const double theta = kHalfPi * k / (kThetaGrid - 1);
    const double g = direction_gauge(theta);
    g2_[k] = g * g;
  }
  // The dual gauge of balls with p or q at 1 has isolated kinks where the
  // supporting point jumps; local interpolation is unreliable there. Flag
  // cells whose second difference towers over the nearby smooth level so
  // refine() can fall back to exact gauge evaluations.
  kink_.assign(kThetaGrid, false);
  std::vector<double> d2(kThetaGrid, 0.0);
  for (int i = 1; i < kThetaGrid - 1; ++i) {
    d2[i] = std::abs(g2_[i + 1] - 2.0 * g2_[i] + g2_[i - 1]);
  }
  for (int i = 1; i < kThetaGrid - 1; ++i) {
    const double left = d2[std::max(1, i - 3)];
    const double right = d2[std::min(kThetaGrid - 2, i + 3)];
    const double smooth_level = std::min(left, right);
    kink_[i] = d2[i] > 10.0 * smooth_level + 1e-9 * std::max(1.0, g2_[i]);
  }
}

double DirectionNorm::direction_gauge(double theta) const {
  const Vec d{Cplx(std::cos(theta), 0.0), Cplx(std::sin(theta), 0.0)};
  return side_ == NormSide::primal_to_dual ? gauge(moduli_space_, d)
                                           : dual_gauge(moduli_space_, d);
}

double DirectionNorm::interpolated_g2(double theta) const {
  const double h = kHalfPi / (kThetaGrid - 1);
  int i = static_cast<int>(theta / h + 0.5);
  i = std::min(std::max(i, 1), kThetaGrid - 2);
  const double d = theta / h - i;
  // parabola through the three nearest cached values
  return g2_[i] + 0.5 * d * (g2_[i + 1] - g2_[i - 1]) +
         0.5 * d * d * (g2_[i + 1] - 2.0 * g2_[i] + g2_[i - 1]);
}

/// Grid scan has found cell `grid_best`; golden-polish on the
/// interpolated gauge, then certify with one fresh gauge evaluation so
/// the result is a true ratio value. Brackets touching a kink cell are
/// polished on exact gauge evaluations instead.
double DirectionNorm::refine(
    const std::function<double(double, double)>& ratio_of, int grid_best,
    double coarse_best) const {
  const double h = kHalfPi / (kThetaGrid - 1);
  const double lo = std::max(0.0, (grid_best - 1) * h);
  const double hi = std::min(kHalfPi, (grid_best + 1) * h);

  const int flag_lo = std::max(0, grid_best - 1);
  const int flag_hi = std::min(kThetaGrid - 1, grid_best + 1);
  bool kinked = false;
  for (int i = flag_lo; i <= flag_hi; ++i) kinked = kinked || kink_[i];
  if (kinked) {
    const double exact = golden_section_max(
        [&](double th) {
          const double g = direction_gauge(th);
          return ratio_of(th, g * g);
        },
        lo, hi, 1e-10);
    return std::max(coarse_best, exact);
  }

  const ScalarMax polished = golden_section_argmax(
      [&](double th) { return ratio_of(th, interpolated_g2(th)); }, lo, hi,
      1e-11);
  const double g = direction_gauge(polished.x);
  return std::max(coarse_best, ratio_of(polished.x, g * g));
}

double DirectionNorm::sup_abs(double r11, double r22, double c) const {
  if (moduli_space_.kind != SpaceKind::pq_ball) {
    // Polyhedral balls: the convex-form maximum sits on extreme points,
    // which gives closed forms on both sides.
    const bool over_primal = side_ == NormSide::primal_to_dual;
    const bool sup_ball = moduli_space_.kind == SpaceKind::linf;
    if (sup_ball == over_primal) return r11 + r22 + 2.0 * c;  // corner (1,1)
    return std::max(r11, r22);  // sum-norm ball: vertices e_i
  }

  const double h = kHalfPi / (kThetaGrid - 1);
  auto ratio_at = [&](double theta, double g2) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return (r11 * ct * ct + 2.0 * c * ct * st + r22 * st * st) / g2;
  };

  double best = -1e300;
  int best_k = 0;
  constexpr int kStride = 8;
  for (int k = 0; k < kThetaGrid; k += kStride) {
    const double val = ratio_at(k * h, g2_[k]);
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  for (int k = std::max(0, best_k - kStride);
       k <= std::min(kThetaGrid - 1, best_k + kStride); ++k) {
    const double val = ratio_at(k * h, g2_[k]);
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  return refine(ratio_at, best_k, best);
}

double DirectionNorm::sup_complex_direct(double a11, double a22, double m,
                                         double psi) const {
  auto form = [&](double theta, double phi) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return a11 * ct * ct + a22 * st * st +
           2.0 * m * ct * st * std::cos(psi + phi);
  };

  if (moduli_space_.kind != SpaceKind::pq_ball) {
    const bool over_primal = side_ == NormSide::primal_to_dual;
    const bool sup_ball = moduli_space_.kind == SpaceKind::linf;
    if (sup_ball != over_primal) return std::max(a11, a22);  // vertices e_i
    // corner route: the phase scales the cross term, search it out
    double best_cross = 0.0;
    double best_phi = 0.0;
    constexpr int kPhiGrid = 64;
    for (int j = 0; j < kPhiGrid; ++j) {
      const double phi = 2.0 * M_PI * j / kPhiGrid;
      const double cross = std::abs(std::cos(psi + phi));
      if (cross > best_cross) {
        best_cross = cross;
        best_phi = phi;
      }
    }
    const double wp = 2.0 * M_PI / kPhiGrid;
    best_cross = std::max(
        best_cross,
        golden_section_max(
            [&](double ph) { return std::abs(std::cos(psi + ph)); },
            best_phi - wp, best_phi + wp, 1e-12));
    return a11 + a22 + 2.0 * m * best_cross;
  }

  const double h = kHalfPi / (kThetaGrid - 1);
  constexpr int kThetaStride = 32;
  constexpr int kPhiGrid = 40;
  double best = -1e300;
  int best_k = 0;
  double best_phi = 0.0;
  for (int k = 0; k < kThetaGrid; k += kThetaStride) {
    for (int j = 0; j < kPhiGrid; ++j) {
      const double phi = 2.0 * M_PI * j / kPhiGrid;
      const double val = form(k * h, phi) / g2_[k];
      if (val > best) {
        best = val;
        best_k = k;
        best_phi = phi;
      }
    }
  }
  for (int k = std::max(0, best_k - kThetaStride);
       k <= std::min(kThetaGrid - 1, best_k + kThetaStride); k += 4) {
    const double val = form(k * h, best_phi) / g2_[k];
    if (val > best) {
      best = val;
      best_k = k;
    }
  }

  double phi = best_phi;
  const double wp = 2.0 * M_PI / kPhiGrid;
  double result = best;
  for (int round = 0; round < 3; ++round) {
    const double theta_now = best_k * h;
    const ScalarMax pm =
        golden_section_argmax([&](double ph) { return form(theta_now, ph); },
                              phi - wp, phi + wp, 1e-12);
    phi = pm.x;
    auto ratio_at = [&](double theta, double g2) {
      return form(theta, phi) / g2;
    };
    for (int k = std::max(0, best_k - 4);
         k <= std::min(kThetaGrid - 1, best_k + 4); ++k) {
      const double val = ratio_at(k * h, g2_[k]);
      if (val > best) {
        best = val;
        best_k = k;
      }
    }
    result = std::max(result, refine(ratio_at, best_k, best));
  }
  return result;
}

}  // namespace detail

double quad_form_sup(const HermitianMatrix& a, const SpaceSpec& space,
                     NormSide side) {
  check_norm_input(a, space);
  switch (space.kind) {
    case SpaceKind::pq_ball: {
      const HermitianMatrix r = abs_entrywise(a);
      detail::DirectionNorm dn(space, side);
      return dn.sup_abs(r(0, 0).real(), r(1, 1).real(), r(0, 1).real());
    }
    case SpaceKind::linf:
      return side == NormSide::primal_to_dual
                 ? linf_to_l1_norm(a, space.field)
                 : max_diagonal(a);
    case SpaceKind::l1:
      return side == NormSide::primal_to_dual
                 ? max_diagonal(a)
                 : linf_to_l1_norm(a, space.field);
  }
  throw std::logic_error("unreachable");
}

namespace {

/// Naive search over a 2-dimensional ball: directions (cos t, sin t e^{i u})
/// sampled on a grid and at random, then alternating golden-section ascent
/// in each coordinate. Evaluates the untouched complex form of `a`.
double naive_dim2(const HermitianMatrix& a, const SpaceSpec& space,
                  NormSide side, SeededRng& rng, int samples) {
  const SpaceSpec ms = space.moduli_space();
  const bool complex_field = space.field == Field::complex;
  auto dir_gauge = [&](double theta) {
    const Vec d{Cplx(std::abs(std::cos(theta)), 0.0),
                Cplx(std::abs(std::sin(theta)), 0.0)};
    return side == NormSide::primal_to_dual ? gauge(ms, d) : dual_gauge(ms, d);
  };
  auto value = [&](double theta, double phi) {
    const double st = std::sin(theta);
    const Vec z{Cplx(std::cos(theta), 0.0),
                Cplx(st * std::cos(phi), st * std::sin(phi))};
    const double g = dir_gauge(theta);
    return quad_value(a, z) / (g * g);
  };

  double best = -1e300, bt = 0.0, bp = 0.0;
  auto consider = [&](double theta, double phi) {
    const double v = value(theta, phi);
    if (v > best) {
      best = v;
      bt = theta;
      bp = phi;
    }
  };

  const int tn = complex_field ? 40 : 128;
  const int pn = complex_field ? 24 : 2;
  for (int i = 0; i < tn; ++i) {
    for (int j = 0; j < pn; ++j) {
      consider(2.0 * M_PI * i / tn, 2.0 * M_PI * j / pn);
    }
  }
  for (int s = 0; s < samples; ++s) {
    consider(2.0 * M_PI * rng.uniform(),
             complex_field ? 2.0 * M_PI * rng.uniform()
                           : M_PI * static_cast<double>(rng.next_u64() & 1));
  }

  double wt = 2.0 * M_PI / tn, wp = 2.0 * M_PI / pn;
  for (int round = 0; round < 24; ++round) {
    const double before = best;
    const ScalarMax tm = golden_section_argmax(
        [&](double th) { return value(th, bp); }, bt - wt, bt + wt, 1e-12);
    if (tm.value > best) {
      best = tm.value;
      bt = tm.x;
    }
    if (complex_field) {
      const ScalarMax pm = golden_section_argmax(
          [&](double ph) { return value(bt, ph); }, bp - wp, bp + wp, 1e-12);
      if (pm.value > best) {
        best = pm.value;
        bp = pm.x;
      }
    }
    wt *= 0.5;
    wp *= 0.5;
    if (best - before < 1e-13 && round > 6) break;
  }
  return best;
}

/// Naive search over the polydisc (unimodular vectors): deterministic
/// starts plus random phase/sign vectors, polished by coordinate ascent.
double naive_polydisc(const HermitianMatrix& a, SeededRng& rng, int samples,
                      bool complex_field) {
  const int n = a.dim();
  double best = -1e300;
  auto polish = [&](std::vector<Cplx> z) {
    if (complex_field) {
      best = std::max(best, phase_ascent(a, z, 200, 1e-10));
      return;
    }
    // greedy single sign flips
    double val = quad_value(a, z);
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i) {
        z[i] = -z[i];
        const double v = quad_value(a, z);
        if (v > val + 1e-15) {
          val = v;
          moved = true;
        } else {
          z[i] = -z[i];
        }
      }
    }
    best = std::max(best, val);
  };

  polish(std::vector<Cplx>(n, Cplx(1.0, 0.0)));
  polish(top_eigvec_phases(a));
  for (int s = 0; s < samples; ++s) {
    std::vector<Cplx> z(n);
    for (int i = 0; i < n; ++i) {
      z[i] = complex_field ? std::polar(1.0, 2.0 * M_PI * rng.uniform())
                           : Cplx(rng.next_u64() & 1 ? 1.0 : -1.0, 0.0);
    }
    polish(std::move(z));
  }
  return best;
}

/// Naive search over the sum-norm ball; the convex form peaks at the
/// vertices, so those are scanned exactly alongside the random samples.
double naive_sum_ball(const HermitianMatrix& a, SeededRng& rng, int samples) {
  const int n = a.dim();
  double best = -1e300;
  for (int i = 0; i < n; ++i) best = std::max(best, a(i, i).real());
  for (int s = 0; s < samples; ++s) {
    std::vector<Cplx> z(n);
    double total = 0.0;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
      d[i] = -std::log(1.0 - rng.uniform());
      total += d[i];
    }
    for (int i = 0; i < n; ++i) {
      z[i] = std::polar(d[i] / total, 2.0 * M_PI * rng.uniform());
    }
    best = std::max(best, quad_value(a, z));
  }
  return best;
}

}  // namespace

double naive_quad_form_sup(const HermitianMatrix& a, const SpaceSpec& space,
                           NormSide side, SeededRng& rng, int samples) {
  check_norm_input(a, space);
  if (samples < 1) {
    throw std::invalid_argument("naive_quad_form_sup needs samples >= 1");
  }
  if (a.is_zero()) return 0.0;
  if (space.dim == 2 && space.kind == SpaceKind::pq_ball) {
    return naive_dim2(a, space, side, rng, samples);
  }
  const bool complex_field = space.field == Field::complex;
  const bool sup_ball = (space.kind == SpaceKind::linf) ==
                        (side == NormSide::primal_to_dual);
  return sup_ball ? naive_polydisc(a, rng, samples, complex_field)
                  : naive_sum_ball(a, rng, samples);
}

}  // namespace gammalab
