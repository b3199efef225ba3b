#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gammalab/rng.hpp"

namespace gammalab {

using Cplx = std::complex<double>;

enum class Field { real, complex };

const char* field_name(Field f);

/// Default tolerance for PSD decisions; matches double-precision Jacobi
/// accuracy at the dimensions handled here (n <= 8).
inline constexpr double kPsdTol = 1e-10;

/// Thrown when an operation requires a positive semidefinite input and the
/// matrix fails the test; carries the offending smallest eigenvalue.
class NotPsdError : public std::domain_error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Dense Hermitian (real: symmetric) matrix, 2 <= n <= 8.
///
/// Invariants, enforced by the mutators:
///   entry(i,j) == conj(entry(j,i)), diagonal entries real,
///   field == real implies every imaginary part is exactly zero.
class HermitianMatrix {
 public:
  HermitianMatrix(int n, Field field);

  static HermitianMatrix identity(int n, Field field);
  static HermitianMatrix diagonal(const std::vector<double>& d, Field field);
  /// Validates hermiticity of `rows` (tolerance 1e-9 relative) and
  /// symmetrizes exactly.
  static HermitianMatrix from_rows(const std::vector<std::vector<Cplx>>& rows,
                                   Field field);

  int dim() const { return n_; }
  Field field() const { return field_; }

  Cplx operator()(int i, int j) const { return data_[idx(i, j)]; }

  /// Sets entry (i,j) and its conjugate mirror (j,i). Diagonal values must
  /// be real, and real-field matrices reject nonzero imaginary parts.
  void set(int i, int j, Cplx value);

  /// Same entries re-tagged with another field. complex -> real requires
  /// all imaginary parts zero.
  HermitianMatrix retagged(Field field) const;

  bool is_zero() const;
  double max_abs_entry() const;

 private:
  int idx(int i, int j) const { return i * n_ + j; }
  int n_;
  Field field_;
  std::vector<Cplx> data_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double c, const HermitianMatrix& a);

/// Hilbert-Schmidt inner product sum_ij A[i][j] * conj(B[i][j]).
/// Real-valued for Hermitian pairs; throws if the imaginary residue
/// exceeds 1e-12 or on dimension/field mismatch.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

double hs_norm(const HermitianMatrix& a);

std::vector<Cplx> matvec(const HermitianMatrix& a, const std::vector<Cplx>& x);

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Values ascending; vectors[k] is the unit eigenvector for values[k].
/// A diagonal input reproduces its diagonal exactly.
struct Eigensystem {
  std::vector<double> values;
  std::vector<std::vector<Cplx>> vectors;
};
Eigensystem eigh(const HermitianMatrix& a);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const HermitianMatrix& a, double tol = kPsdTol);

double min_eigenvalue(const HermitianMatrix& a);

/// Count of eigenvalues above rel_tol * max eigenvalue magnitude.
int numerical_rank(const HermitianMatrix& a, double rel_tol);

/// PSD square root B with ||B*B - A||_HS <= 1e-10 * (1 + ||A||_HS).
/// Eigenvalues in [-kPsdTol * scale, 0) are clamped to zero so that
/// optimizer-boundary matrices are tolerated; throws NotPsdError below that.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

/// Entrywise-modulus map for 2x2 matrices: diagonal kept, off-diagonal
/// replaced by its modulus. Preserves PSD-ness in both directions.
HermitianMatrix abs_entrywise(const HermitianMatrix& a);

/// Gram matrix G*conj(G)^T of an n x n standard-normal matrix drawn from
/// `rng`; always PSD, bit-reproducible per seed.
HermitianMatrix random_psd(int n, Field field, SeededRng& rng);

}  // namespace gammalab
