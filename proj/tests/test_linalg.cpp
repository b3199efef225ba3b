#include <doctest.h>

#include <cmath>

#include "gammalab/linalg.hpp"
#include "oracles.hpp"

using namespace gammalab;

namespace {

HermitianMatrix pauli_y_like() {  // [[1, i], [-i, 1]]
  HermitianMatrix a(2, Field::complex);
  a.set(0, 0, 1.0);
  a.set(1, 1, 1.0);
  a.set(0, 1, Cplx(0.0, 1.0));
  return a;
}

}  // namespace

TEST_CASE("hs_inner on the worked examples") {
  const auto i2 = HermitianMatrix::identity(2, Field::real);
  CHECK(hs_inner(i2, i2) == doctest::Approx(2.0));

  const auto d23 = HermitianMatrix::diagonal({2.0, 3.0}, Field::real);
  const auto d57 = HermitianMatrix::diagonal({5.0, 7.0}, Field::real);
  CHECK(hs_inner(d23, d57) == doctest::Approx(31.0));

  const auto a = pauli_y_like();
  HermitianMatrix b(2, Field::complex);
  b.set(0, 0, 1.0);
  b.set(1, 1, 1.0);
  b.set(0, 1, Cplx(0.0, -1.0));
  CHECK(hs_inner(a, b) == doctest::Approx(0.0));
  CHECK(oracles::entry_sum_conj(a, b).real() == doctest::Approx(0.0));
}

TEST_CASE("hs_inner rejects mismatched operands") {
  const auto i2 = HermitianMatrix::identity(2, Field::real);
  const auto i3 = HermitianMatrix::identity(3, Field::real);
  CHECK_THROWS_AS(hs_inner(i2, i3), std::invalid_argument);
  CHECK_THROWS_AS(hs_inner(i2, HermitianMatrix::identity(2, Field::complex)),
                  std::invalid_argument);
}

TEST_CASE("hs_inner is positive definite on Hermitian matrices") {
  SeededRng rng(11);
  for (int k = 0; k < 100; ++k) {
    SeededRng child = rng.derive(k);
    const auto a = random_psd(3, Field::complex, child);
    if (!a.is_zero()) CHECK(hs_inner(a, a) > 0.0);
  }
}

TEST_CASE("is_psd on the worked examples") {
  CHECK(is_psd(HermitianMatrix::identity(2, Field::real)));

  HermitianMatrix indef(2, Field::real);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, 1.0);
  indef.set(0, 1, 2.0);  // eigenvalues 3 and -1
  CHECK_FALSE(is_psd(indef));

  HermitianMatrix gram(2, Field::real);
  gram.set(0, 0, 1.0);
  gram.set(1, 1, 1.0);
  gram.set(0, 1, 1.0);
  CHECK(is_psd(gram));
}

TEST_CASE("jacobi eigenvalues of a diagonal matrix are exact") {
  const auto d = HermitianMatrix::diagonal({3.25, -1.5, 0.0, 7.0}, Field::real);
  const Eigensystem es = eigh(d);
  CHECK(es.values[0] == -1.5);
  CHECK(es.values[1] == 0.0);
  CHECK(es.values[2] == 3.25);
  CHECK(es.values[3] == 7.0);
}

TEST_CASE("eigh solves a complex 2x2 exactly enough") {
  const auto a = pauli_y_like();  // eigenvalues 0 and 2
  const Eigensystem es = eigh(a);
  CHECK(es.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.values[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("psd_sqrt on the worked examples") {
  const auto i2 = HermitianMatrix::identity(2, Field::real);
  const auto ri = psd_sqrt(i2);
  CHECK(hs_norm(ri + (-1.0 * i2)) < 1e-12);

  const auto d = HermitianMatrix::diagonal({4.0, 9.0}, Field::real);
  const auto rd = psd_sqrt(d);
  CHECK(rd(0, 0).real() == doctest::Approx(2.0));
  CHECK(rd(1, 1).real() == doctest::Approx(3.0));
  CHECK(std::abs(rd(0, 1)) < 1e-12);
}

TEST_CASE("psd_sqrt squares back to the input and commutes with it") {
  SeededRng rng(7);
  for (int k = 0; k < 50; ++k) {
    SeededRng child = rng.derive(k);
    const Field field = k % 2 ? Field::real : Field::complex;
    const auto a = random_psd(4, field, child);
    const auto b = psd_sqrt(a);
    CHECK(is_psd(b));
    const auto bb = oracles::mat_mul(b, b);
    CHECK(oracles::grid_diff_norm(bb, a) <= 1e-10 * (1.0 + hs_norm(a)));

    // commutation: B A == A B
    const auto ba = oracles::mat_mul(b, a);
    const auto ab = oracles::mat_mul(a, b);
    double diff = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) diff += std::norm(ba[i][j] - ab[i][j]);
    }
    CHECK(std::sqrt(diff) <= 1e-9);
  }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
  HermitianMatrix indef(2, Field::real);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, 1.0);
  indef.set(0, 1, 2.0);
  CHECK_THROWS_AS(psd_sqrt(indef), NotPsdError);
  try {
    psd_sqrt(indef);
  } catch (const NotPsdError& e) {
    CHECK(e.min_eigenvalue() == doctest::Approx(-1.0));
  }
}

TEST_CASE("abs_entrywise on the worked examples") {
  const auto a = abs_entrywise(pauli_y_like());
  CHECK(a(0, 1).real() == doctest::Approx(1.0));
  CHECK(a(0, 1).imag() == 0.0);
  CHECK(a(1, 0).real() == doctest::Approx(1.0));

  const auto i2 = HermitianMatrix::identity(2, Field::real);
  CHECK(hs_norm(abs_entrywise(i2) + (-1.0 * i2)) == 0.0);

  HermitianMatrix s(2, Field::real);
  s.set(0, 0, 2.0);
  s.set(1, 1, 2.0);
  s.set(0, 1, -1.0);
  const auto abs_s = abs_entrywise(s);
  CHECK(abs_s(0, 1).real() == doctest::Approx(1.0));
  CHECK(abs_s(0, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("abs_entrywise is idempotent and preserves PSD both ways") {
  SeededRng rng(21);
  for (int k = 0; k < 100; ++k) {
    SeededRng child = rng.derive(k);
    const auto a = random_psd(2, Field::complex, child);
    const auto abs_a = abs_entrywise(a);
    CHECK(is_psd(abs_a) == is_psd(a));
    CHECK(hs_norm(abs_entrywise(abs_a) + (-1.0 * abs_a)) == 0.0);

    // indefinite direction: flip the sign of a diagonal entry
    HermitianMatrix indef(2, Field::complex);
    indef.set(0, 0, -a(0, 0).real() - 0.1);
    indef.set(1, 1, a(1, 1));
    indef.set(0, 1, a(0, 1));
    CHECK(is_psd(abs_entrywise(indef)) == is_psd(indef));
  }
}

TEST_CASE("abs_entrywise rejects other dimensions") {
  CHECK_THROWS_AS(abs_entrywise(HermitianMatrix::identity(3, Field::real)),
                  std::invalid_argument);
}

TEST_CASE("random_psd is PSD, deterministic and field-correct") {
  SeededRng rng_a(123);
  SeededRng rng_b(123);
  const auto a = random_psd(5, Field::complex, rng_a);
  const auto b = random_psd(5, Field::complex, rng_b);
  CHECK(is_psd(a, 1e-10));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(a(i, j) == b(i, j));  // bit-identical across runs
    }
  }
  SeededRng rng_c(9);
  const auto c = random_psd(4, Field::real, rng_c);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(c(i, j).imag() == 0.0);
  }
}

TEST_CASE("seeded rng streams and derivations are reproducible") {
  SeededRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  SeededRng da = SeededRng(42).derive(3);
  SeededRng db = SeededRng(42).derive(3);
  CHECK(da.normal() == db.normal());
  CHECK(SeededRng(42).derive(3).seed() != SeededRng(42).derive(4).seed());
}

TEST_CASE("hermitian matrix invariants are enforced") {
  HermitianMatrix m(2, Field::real);
  CHECK_THROWS_AS(m.set(0, 1, Cplx(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(m.set(0, 0, Cplx(1.0, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(1, Field::real), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(9, Field::real), std::invalid_argument);

  // from_rows rejects a non-hermitian grid
  CHECK_THROWS_AS(HermitianMatrix::from_rows(
                      {{Cplx(1.0), Cplx(2.0)}, {Cplx(3.0), Cplx(1.0)}},
                      Field::real),
                  std::invalid_argument);

  HermitianMatrix c(2, Field::complex);
  c.set(0, 1, Cplx(0.5, -0.25));
  CHECK(c(1, 0) == std::conj(c(0, 1)));
  CHECK_THROWS_AS(c.retagged(Field::real), std::invalid_argument);
  CHECK(pauli_y_like().retagged(Field::complex)(0, 1) == Cplx(0.0, 1.0));
}
