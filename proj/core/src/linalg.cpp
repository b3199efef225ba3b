#include "gammalab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gammalab {

namespace {

constexpr double kHermTol = 1e-9;

void check_dims(int n) {
  if (n < 2 || n > 8) {
    throw std::invalid_argument("matrix dimension must be in [2, 8], got " +
                                std::to_string(n));
  }
}

}  // namespace

const char* field_name(Field f) {
  return f == Field::real ? "real" : "complex";
}

HermitianMatrix::HermitianMatrix(int n, Field field)
    : n_(n), field_(field), data_(static_cast<std::size_t>(n) * n, Cplx(0.0)) {
  check_dims(n);
}

HermitianMatrix HermitianMatrix::identity(int n, Field field) {
  HermitianMatrix m(n, field);
  for (int i = 0; i < n; ++i) m.data_[m.idx(i, i)] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d,
                                          Field field) {
  HermitianMatrix m(static_cast<int>(d.size()), field);
  for (int i = 0; i < m.n_; ++i) m.data_[m.idx(i, i)] = d[i];
  return m;
}

void HermitianMatrix::set(int i, int j, Cplx value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw std::invalid_argument("matrix index out of range");
  }
  if (field_ == Field::real && value.imag() != 0.0) {
    throw std::invalid_argument(
        "real-field matrix entry with nonzero imaginary part");
  }
  if (i == j) {
    if (std::abs(value.imag()) > kHermTol * (1.0 + std::abs(value.real()))) {
      throw std::invalid_argument("diagonal entry must be real");
    }
    data_[idx(i, i)] = Cplx(value.real(), 0.0);
    return;
  }
  data_[idx(i, j)] = value;
  data_[idx(j, i)] = std::conj(value);
}

HermitianMatrix HermitianMatrix::from_rows(
    const std::vector<std::vector<Cplx>>& rows, Field field) {
  const int n = static_cast<int>(rows.size());
  check_dims(n);
  double scale = 0.0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) {
      throw std::invalid_argument("matrix rows must all have length n");
    }
    for (const Cplx& v : r) scale = std::max(scale, std::abs(v));
  }
  HermitianMatrix m(n, field);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Cplx residue = rows[i][j] - std::conj(rows[j][i]);
      if (std::abs(residue) > kHermTol * (1.0 + scale)) {
        throw std::invalid_argument(
            "matrix is not hermitian: entry (" + std::to_string(i) + "," +
            std::to_string(j) + ") does not match its conjugate mirror");
      }
      m.set(i, j, 0.5 * (rows[i][j] + std::conj(rows[j][i])));
    }
  }
  return m;
}

HermitianMatrix HermitianMatrix::retagged(Field field) const {
  if (field == field_) return *this;
  HermitianMatrix m(n_, field);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      m.set(i, j, (*this)(i, j));  // set() rejects imag parts for real target
    }
  }
  return m;
}

bool HermitianMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Cplx& v) { return v == Cplx(0.0); });
}

double HermitianMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const Cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim() || a.field() != b.field()) {
    throw std::invalid_argument("matrix sum: dimension or field mismatch");
  }
  HermitianMatrix out(a.dim(), a.field());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = i; j < a.dim(); ++j) out.set(i, j, a(i, j) + b(i, j));
  }
  return out;
}

HermitianMatrix operator*(double c, const HermitianMatrix& a) {
  HermitianMatrix out(a.dim(), a.field());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = i; j < a.dim(); ++j) out.set(i, j, c * a(i, j));
  }
  return out;
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  if (a.field() != b.field()) {
    throw std::invalid_argument("hs_inner: field mismatch");
  }
  Cplx acc(0.0);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) acc += a(i, j) * std::conj(b(i, j));
  }
  if (std::abs(acc.imag()) > 1e-12 * (1.0 + std::abs(acc.real()))) {
    throw std::logic_error("hs_inner: imaginary residue above 1e-12");
  }
  return acc.real();
}

double hs_norm(const HermitianMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  }
  return std::sqrt(s);
}

std::vector<Cplx> matvec(const HermitianMatrix& a, const std::vector<Cplx>& x) {
  if (static_cast<int>(x.size()) != a.dim()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  std::vector<Cplx> y(x.size(), Cplx(0.0));
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) y[i] += a(i, j) * x[j];
  }
  return y;
}

Eigensystem eigh(const HermitianMatrix& a) {
  const int n = a.dim();
  std::vector<std::vector<Cplx>> m(n, std::vector<Cplx>(n));
  std::vector<std::vector<Cplx>> v(n, std::vector<Cplx>(n, Cplx(0.0)));
  for (int i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
  }

  constexpr double kOffTol = 1e-13;  // off-diagonal convergence threshold
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(m[i][j]));
    }
    if (off < kOffTol) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = std::abs(m[p][q]);
        if (apq == 0.0) continue;
        const double app = m[p][p].real();
        const double aqq = m[q][q].real();
        // Unitary rotation U: U[p][p]=c, U[p][q]=s*e, U[q][p]=-s*conj(e),
        // U[q][q]=c with e = m[p][q]/|m[p][q]| zeroes entry (p,q) of U*MU.
        const Cplx e = m[p][q] / apq;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int j = 0; j < n; ++j) {  // rows p, q of U* M
          const Cplx mpj = m[p][j];
          const Cplx mqj = m[q][j];
          m[p][j] = c * mpj - s * e * mqj;
          m[q][j] = s * std::conj(e) * mpj + c * mqj;
        }
        for (int j = 0; j < n; ++j) {  // columns p, q of (U* M) U
          const Cplx mjp = m[j][p];
          const Cplx mjq = m[j][q];
          m[j][p] = c * mjp - s * std::conj(e) * mjq;
          m[j][q] = s * e * mjp + c * mjq;
        }
        m[p][q] = m[q][p] = Cplx(0.0);
        m[p][p] = Cplx(m[p][p].real(), 0.0);
        m[q][q] = Cplx(m[q][q].real(), 0.0);

        for (int j = 0; j < n; ++j) {  // accumulate V <- V U
          const Cplx vjp = v[j][p];
          const Cplx vjq = v[j][q];
          v[j][p] = c * vjp - s * std::conj(e) * vjq;
          v[j][q] = s * e * vjp + c * vjq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return m[i][i].real() < m[j][j].real();
  });

  Eigensystem out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<Cplx>(n));
  for (int k = 0; k < n; ++k) {
    out.values[k] = m[order[k]][order[k]].real();
    for (int i = 0; i < n; ++i) out.vectors[k][i] = v[i][order[k]];
  }
  return out;
}

bool is_psd(const HermitianMatrix& a, double tol) {
  return min_eigenvalue(a) >= -tol;
}

double min_eigenvalue(const HermitianMatrix& a) {
  return eigh(a).values.front();
}

int numerical_rank(const HermitianMatrix& a, double rel_tol) {
  const Eigensystem es = eigh(a);
  double top = 0.0;
  for (double v : es.values) top = std::max(top, std::abs(v));
  if (top == 0.0) return 0;
  int rank = 0;
  for (double v : es.values) {
    if (v > rel_tol * top) ++rank;
  }
  return rank;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const Eigensystem es = eigh(a);
  const double scale = std::max(1.0, std::abs(es.values.back()));
  if (es.values.front() < -kPsdTol * scale) {
    throw NotPsdError("psd_sqrt: input is not positive semidefinite",
                      es.values.front());
  }
  const int n = a.dim();
  HermitianMatrix b(n, a.field());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Cplx acc(0.0);
      for (int k = 0; k < n; ++k) {
        const double lam = std::sqrt(std::max(0.0, es.values[k]));
        acc += lam * es.vectors[k][i] * std::conj(es.vectors[k][j]);
      }
      if (i == j) acc = Cplx(acc.real(), 0.0);
      if (a.field() == Field::real) acc = Cplx(acc.real(), 0.0);
      b.set(i, j, acc);
    }
  }
  return b;
}

HermitianMatrix abs_entrywise(const HermitianMatrix& a) {
  if (a.dim() != 2) {
    throw std::invalid_argument(
        "abs_entrywise is defined for 2x2 matrices only");
  }
  HermitianMatrix m(2, a.field());
  m.set(0, 0, a(0, 0).real());
  m.set(1, 1, a(1, 1).real());
  m.set(0, 1, std::abs(a(0, 1)));
  return m;
}

HermitianMatrix random_psd(int n, Field field, SeededRng& rng) {
  check_dims(n);
  std::vector<std::vector<Cplx>> g(n, std::vector<Cplx>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = field == Field::complex ? rng.normal() : 0.0;
      g[i][j] = Cplx(re, im);
    }
  }
  HermitianMatrix m(n, field);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Cplx acc(0.0);
      for (int k = 0; k < n; ++k) acc += g[i][k] * std::conj(g[j][k]);
      if (i == j) acc = Cplx(acc.real(), 0.0);
      m.set(i, j, acc);
    }
  }
  return m;
}

}  // namespace gammalab
