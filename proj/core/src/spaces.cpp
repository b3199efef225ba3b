#include "gammalab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gammalab/optim.hpp"

namespace gammalab {

namespace {

constexpr double kGaugeRelTol = 1e-12;

double parse_number(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " \"" + token +
                                "\"");
  }
}

void check_vector(const SpaceSpec& space, const Vec& v) {
  if (static_cast<int>(v.size()) != space.dim) {
    throw std::invalid_argument("vector dimension does not match the space");
  }
  for (const Cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("vector has non-finite coordinates");
    }
    if (space.field == Field::real && z.imag() != 0.0) {
      throw std::invalid_argument(
          "complex coordinate passed to a real-field space");
    }
  }
}

std::vector<double> moduli(const Vec& v) {
  std::vector<double> m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::abs(v[i]);
  return m;
}

double pq_gauge(double p, double q, double m1, double m2) {
  if (m1 == 0.0 && m2 == 0.0) return 0.0;
  double lo = 0.0;
  double hi = m1 + m2;
  // f(t) = (m1/t)^p + (m2/t)^q - 1 decreases from +inf to f(hi) <= 0.
  while (hi - lo > kGaugeRelTol * hi) {
    const double t = 0.5 * (lo + hi);
    const double f = std::pow(m1 / t, p) + std::pow(m2 / t, q);
    if (f > 1.0) {
      lo = t;
    } else {
      hi = t;
    }
  }
  // Newton polish down to machine precision (f' is available in closed
  // form and the root is simple).
  double t = 0.5 * (lo + hi);
  for (int step = 0; step < 3; ++step) {
    const double up = std::pow(m1 / t, p);
    const double uq = std::pow(m2 / t, q);
    const double deriv = -(p * up + q * uq) / t;
    if (deriv == 0.0) break;
    const double next = t - (up + uq - 1.0) / deriv;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    t = next;
  }
  return t;
}

double pq_dual_gauge(const SpaceSpec& s, double w1, double w2) {
  if (w1 == 0.0 && w2 == 0.0) return 0.0;
  auto objective = [&](double t) {
    const double x = t;
    const double y = std::pow(std::max(0.0, 1.0 - std::pow(t, s.p)), 1.0 / s.q);
    return w1 * x + w2 * y;
  };
  constexpr int kGrid = 256;
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k < kGrid; ++k) {
    const double t = static_cast<double>(k) / (kGrid - 1);
    const double val = objective(t);
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  const double lo = std::max(0.0, (best_k - 1.0) / (kGrid - 1));
  const double hi = std::min(1.0, (best_k + 1.0) / (kGrid - 1));
  return std::max(best, golden_section_max(objective, lo, hi, 1e-10));
}

}  // namespace

SpaceSpec SpaceSpec::pq(double p, double q, Field field) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("p must be >= 1 and q must be >= 1");
  }
  if (p > 64.0 || q > 64.0) {
    throw std::invalid_argument("p and q must be <= 64");
  }
  return SpaceSpec{SpaceKind::pq_ball, field, 2, p, q};
}

SpaceSpec SpaceSpec::linf(int n, Field field) {
  if (n < 2 || n > 8) {
    throw std::invalid_argument("linf dimension must be in [2, 8]");
  }
  return SpaceSpec{SpaceKind::linf, field, n};
}

SpaceSpec SpaceSpec::l1(int n, Field field) {
  if (n < 2 || n > 8) {
    throw std::invalid_argument("l1 dimension must be in [2, 8]");
  }
  return SpaceSpec{SpaceKind::l1, field, n};
}

SpaceSpec SpaceSpec::moduli_space() const {
  SpaceSpec s = *this;
  s.field = Field::real;
  return s;
}

std::string SpaceSpec::to_string() const {
  switch (kind) {
    case SpaceKind::pq_ball: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "pq:%g,%g", p, q);
      return buf;
    }
    case SpaceKind::linf:
      return "linf:" + std::to_string(dim);
    case SpaceKind::l1:
      return "l1:" + std::to_string(dim);
  }
  return "?";
}

SpaceSpec SpaceSpec::parse(const std::string& text, Field field) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("space must look like pq:P,Q, linf:N or l1:N; got \"" +
                                text + "\"");
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "pq") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("pq space needs two exponents, e.g. pq:2,3.5");
    }
    const double p = parse_number(rest.substr(0, comma), "exponent p");
    const double q = parse_number(rest.substr(comma + 1), "exponent q");
    return SpaceSpec::pq(p, q, field);
  }
  if (kind == "linf" || kind == "l1") {
    const double n = parse_number(rest, "dimension");
    if (n != std::floor(n)) {
      throw std::invalid_argument("dimension must be an integer, got \"" +
                                  rest + "\"");
    }
    return kind == "linf" ? SpaceSpec::linf(static_cast<int>(n), field)
                          : SpaceSpec::l1(static_cast<int>(n), field);
  }
  throw std::invalid_argument("unknown space kind \"" + kind + "\"");
}

double gauge(const SpaceSpec& space, const Vec& v) {
  check_vector(space, v);
  const std::vector<double> m = moduli(v);
  switch (space.kind) {
    case SpaceKind::linf:
      return *std::max_element(m.begin(), m.end());
    case SpaceKind::l1: {
      double s = 0.0;
      for (double x : m) s += x;
      return s;
    }
    case SpaceKind::pq_ball:
      return pq_gauge(space.p, space.q, m[0], m[1]);
  }
  throw std::logic_error("unreachable");
}

double dual_gauge(const SpaceSpec& space, const Vec& w) {
  check_vector(space, w);
  const std::vector<double> m = moduli(w);
  switch (space.kind) {
    case SpaceKind::linf: {  // dual of sup-norm is the sum-norm
      double s = 0.0;
      for (double x : m) s += x;
      return s;
    }
    case SpaceKind::l1:
      return *std::max_element(m.begin(), m.end());
    case SpaceKind::pq_ball:
      return pq_dual_gauge(space, m[0], m[1]);
  }
  throw std::logic_error("unreachable");
}

Vec boundary_point(const SpaceSpec& space, double t) {
  if (space.dim != 2) {
    throw std::invalid_argument("boundary_point needs a 2-dimensional space");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("boundary parameter t must be in [0, 1]");
  }
  double x = 0.0, y = 0.0;
  switch (space.kind) {
    case SpaceKind::pq_ball:
      x = t;
      y = std::pow(std::max(0.0, 1.0 - std::pow(t, space.p)), 1.0 / space.q);
      break;
    case SpaceKind::linf:  // edge (2t, 1) then edge (1, 2-2t)
      if (t <= 0.5) {
        x = 2.0 * t;
        y = 1.0;
      } else {
        x = 1.0;
        y = 2.0 - 2.0 * t;
      }
      break;
    case SpaceKind::l1:
      x = t;
      y = 1.0 - t;
      break;
  }
  return Vec{Cplx(x, 0.0), Cplx(y, 0.0)};
}

const char* census_name(Census c) {
  return c == Census::four_vertices ? "four_vertices" : "more_than_four";
}

Census extreme_point_census(const SpaceSpec& space, int grid) {
  if (space.dim != 2 || space.field != Field::real) {
    throw std::invalid_argument("census needs a real 2-dimensional space");
  }
  if (grid < 8) {
    throw std::invalid_argument("census grid must be >= 8");
  }
  const int g = grid + (grid % 2);  // even grid keeps corners on samples
  Vec z = boundary_point(space, 0.0);
  for (int k = 0; k < g; ++k) {
    const Vec w = boundary_point(space, static_cast<double>(k + 1) / g);
    const Vec mid{0.5 * (z[0] + w[0]), 0.5 * (z[1] + w[1])};
    if (gauge(space, mid) < 1.0 - 1e-9) return Census::more_than_four;
    z = w;
  }
  return Census::four_vertices;
}

}  // namespace gammalab
