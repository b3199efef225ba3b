#include <doctest.h>

#include <cmath>

#include "gammalab/correlation.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

OptimizerConfig fast_cfg(int restarts = 12, std::uint64_t seed = 42) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = 400;
  cfg.seed = seed;
  return cfg;
}

CorrelationFactor orthonormal_factor(int n) {
  std::vector<std::vector<Cplx>> rows(n, std::vector<Cplx>(n, Cplx(0.0)));
  for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
  return CorrelationFactor(Field::real, rows);
}

}  // namespace

TEST_CASE("correlation factors validate and induce correlation matrices") {
  CorrelationFactor f(Field::real, {{Cplx(3.0), Cplx(4.0)}, {Cplx(0.0), Cplx(2.0)}});
  const HermitianMatrix g = f.induced();
  CHECK(g(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g(0, 1).real() == doctest::Approx(0.8));  // (3,4)/5 . (0,1)
  CHECK(is_psd(g));

  CHECK_THROWS_AS(CorrelationFactor(Field::real,
                                    {{Cplx(0.0), Cplx(0.0)}, {Cplx(1.0), Cplx(0.0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CorrelationFactor(Field::real, {{Cplx(0.0, 1.0)}, {Cplx(1.0)}}),
                  std::invalid_argument);
}

TEST_CASE("beta on the worked examples") {
  const auto i3 = HermitianMatrix::identity(3, Field::real);
  const BetaReport bi = beta(i3, fast_cfg());
  CHECK(bi.value == doctest::Approx(3.0).epsilon(1e-9));

  const auto tri = oracles::triangle_matrix(Field::real);
  const BetaReport bt = beta(tri, fast_cfg());
  CHECK(bt.value == doctest::Approx(4.5).epsilon(1e-6));
  CHECK(bt.rank1_value == doctest::Approx(4.0));
  CHECK(bt.gap == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(oracles::elliptope3_grid_max(tri, 200) ==
        doctest::Approx(4.5).epsilon(1e-3));

  HermitianMatrix j3(3, Field::real);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) j3.set(i, j, 1.0);
  }
  CHECK(beta(j3, fast_cfg()).value == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("beta rejects indefinite input and reports the eigenvalue") {
  HermitianMatrix indef(2, Field::real);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, 1.0);
  indef.set(0, 1, 2.0);
  CHECK_THROWS_AS(beta(indef, fast_cfg()), NotPsdError);
}

TEST_CASE("rank-one beta equals the sup-to-sum operator norm") {
  const auto tri_real = oracles::triangle_matrix(Field::real);
  CHECK(rank1_beta(tri_real, Field::real) == doctest::Approx(4.0));
  const auto tri_cplx = oracles::triangle_matrix(Field::complex);
  CHECK(rank1_beta(tri_cplx, Field::complex) ==
        doctest::Approx(4.5).epsilon(1e-6));
  CHECK(rank1_beta(HermitianMatrix::identity(3, Field::complex),
                   Field::complex) == doctest::Approx(3.0));
}

TEST_CASE("beta properties: scaling, rank-one floor, factor validity") {
  SeededRng rng(51);
  for (int k = 0; k < 30; ++k) {
    SeededRng child = rng.derive(k);
    const Field field = k % 2 ? Field::real : Field::complex;
    const auto a = random_psd(3, field, child);
    const BetaReport rep = beta(a, fast_cfg(6, k));
    CHECK(rep.value >= rep.rank1_value - 1e-9);
    CHECK(rep.gap >= -1e-9);

    const double c = 0.5 + 2.0 * child.uniform();
    const BetaReport scaled = beta(c * a, fast_cfg(6, k));
    CHECK(scaled.value ==
          doctest::Approx(c * rep.value).epsilon(1e-7));

    for (const auto& row : rep.factor.rows) {
      double norm2 = 0.0;
      for (const Cplx& v : row) norm2 += std::norm(v);
      CHECK(std::abs(norm2 - 1.0) <= 1e-12);
    }
    CHECK(is_psd(rep.factor.induced(), 1e-9));
  }
}

TEST_CASE("complex tightness at small dimension") {
  // beta and its rank-one restriction agree for complex 2x2 and 3x3
  SeededRng rng(52);
  for (int k = 0; k < 100; ++k) {
    SeededRng child = rng.derive(k);
    const int n = k % 2 ? 2 : 3;
    const auto a = random_psd(n, Field::complex, child);
    const BetaReport rep = beta(a, fast_cfg(8, k));
    CHECK(rep.value - rep.rank1_value <= 2e-3 * std::max(1.0, rep.value));
  }
}

TEST_CASE("real triangle matrix exhibits the 0.5 gap") {
  const auto tri = oracles::triangle_matrix(Field::real);
  const BetaReport rep = beta(tri, fast_cfg());
  CHECK(rep.value - rank1_beta(tri, Field::real) ==
        doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("diagonal completion never decreases the inner product") {
  SeededRng rng(53);
  for (int k = 0; k < 60; ++k) {
    SeededRng child = rng.derive(k);
    const auto a = random_psd(3, Field::complex, child);
    auto b = random_psd(3, Field::complex, child);
    double max_diag = 0.0;
    for (int i = 0; i < 3; ++i) max_diag = std::max(max_diag, b(i, i).real());
    b = (1.0 / max_diag) * b;
    HermitianMatrix completed = b;
    for (int i = 0; i < 3; ++i) {
      completed.set(i, i, 1.0);  // b_ii + (1 - b_ii)
    }
    CHECK(hs_inner(a, completed) >= hs_inner(a, b) - 1e-12);
  }
}

TEST_CASE("gauge freedom: a common unitary leaves the induced matrix fixed") {
  SeededRng rng(54);
  for (int k = 0; k < 20; ++k) {
    SeededRng child = rng.derive(k);
    std::vector<std::vector<Cplx>> rows(3, std::vector<Cplx>(3));
    for (auto& row : rows) {
      for (auto& v : row) v = Cplx(child.normal(), child.normal());
    }
    const CorrelationFactor f(Field::complex, rows);

    // Gram-Schmidt a random 3x3 into a unitary
    std::vector<std::vector<Cplx>> u(3, std::vector<Cplx>(3));
    for (auto& row : u) {
      for (auto& v : row) v = Cplx(child.normal(), child.normal());
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) {
        Cplx proj(0.0);
        for (int t = 0; t < 3; ++t) proj += u[i][t] * std::conj(u[j][t]);
        for (int t = 0; t < 3; ++t) u[i][t] -= proj * u[j][t];
      }
      double norm2 = 0.0;
      for (int t = 0; t < 3; ++t) norm2 += std::norm(u[i][t]);
      for (int t = 0; t < 3; ++t) u[i][t] /= std::sqrt(norm2);
    }

    std::vector<std::vector<Cplx>> rotated(3, std::vector<Cplx>(3, Cplx(0.0)));
    for (int i = 0; i < 3; ++i) {
      for (int t = 0; t < 3; ++t) {
        for (int s = 0; s < 3; ++s) rotated[i][t] += f.rows[i][s] * u[s][t];
      }
    }
    const CorrelationFactor g(Field::complex, rotated);
    CHECK(hs_norm(g.induced() + (-1.0 * f.induced())) <= 1e-12);
  }
}

TEST_CASE("extreme rank diagnostic") {
  std::vector<std::vector<Cplx>> same(3, {Cplx(1.0), Cplx(0.0), Cplx(0.0)});
  CHECK(extreme_rank_diagnostic(CorrelationFactor(Field::real, same), 1e-7) == 1);
  CHECK(extreme_rank_diagnostic(orthonormal_factor(3), 1e-7) == 3);

  const BetaReport tri_rep =
      beta(oracles::triangle_matrix(Field::real), fast_cfg());
  CHECK(extreme_rank_diagnostic(tri_rep.factor, 1e-7) == 2);  // planar optimum

  const BetaReport tri_cplx_rep =
      beta(oracles::triangle_matrix(Field::complex), fast_cfg());
  CHECK(extreme_rank_diagnostic(tri_cplx_rep.factor, 1e-7) == 1);
}

TEST_CASE("gamma_linf finds the property P verdicts") {
  const GammaReport c2 = gamma_linf(2, Field::complex, fast_cfg(10));
  CHECK(c2.value >= 1.0 - 1e-6);
  CHECK(c2.value <= 1.0 + 2e-3);

  const GammaReport r3 = gamma_linf(3, Field::real, fast_cfg(10));
  CHECK(r3.value >= 1.125 - 1e-3);

  CHECK_THROWS_AS(gamma_linf(5, Field::real, fast_cfg()),
                  std::invalid_argument);
}
