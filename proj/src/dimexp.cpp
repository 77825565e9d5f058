#include "negdim/dimexp.hpp"

#include <cmath>
#include <string>

#include "negdim/errors.hpp"
#include "negdim/specfun.hpp"

namespace negdim {

namespace {

const double kLn2Pi = std::log(2.0 * kPi);

double real_dim(const Dimension& D) {
  if (!D.is_real()) throw Error(Errc::DomainError, "a real dimension is required");
  return D.re();
}

// First root of f in (a, b] by sign scan on the given abscissae, refined by bisection.
template <class F, class Grid>
std::optional<double> first_root(F f, Grid next, double start, double stop, double abs_tol, int skip = 0) {
  double x0 = start, f0 = f(x0);
  while (x0 < stop) {
    const double x1 = next(x0);
    const double f1 = f(x1);
    if (f0 == 0.0 || std::signbit(f0) != std::signbit(f1)) {
      if (skip-- > 0) {
        x0 = x1;
        f0 = f1;
        continue;
      }
      double a = x0, b = x1, fa = f0;
      while (b - a > abs_tol && b - a > 4e-16 * std::abs(b)) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

}  // namespace

double SeriesExpansion::partial_sum(int k, double D) const {
  const double x = expansion_point - D;
  double s = 0.0, p = 1.0;
  for (int j = 0; j <= k && j < int(coefficients.size()); ++j, p *= x) s += coefficients[j] * p;
  return s;
}

double a1_exact(const Dimension& D) {
  const double d = real_dim(D);
  if (d >= 2.0) throw Error(Errc::OutOfDomain, "A_1 needs D < 2, got D = " + std::to_string(d));
  return std::pow(2.0 * kPi, -0.5 * d) * gamma_fn(1.0 - 0.5 * d);
}

SeriesExpansion a1_series(int order) {
  if (order < 0 || order > kMaxA1Order)
    throw Error(Errc::OrderOutOfRange, "order must lie in [0, " + std::to_string(kMaxA1Order) + "]");
  // log A = (x/2)(ln 2pi - gamma) + sum_{k>=2} (-1)^k zeta(k) (x/2)^k / k, the zeta values being
  // the polygamma values at 1. A = exp(log A) via n a_n = sum_k k l_k a_{n-k}.
  std::vector<double> l(order + 1, 0.0);
  if (order >= 1) l[1] = 0.5 * (kLn2Pi - kEulerGamma);
  for (int k = 2; k <= order; ++k) l[k] = (k % 2 ? -1.0 : 1.0) * std::riemann_zeta(double(k)) / (k * std::ldexp(1.0, k));
  SeriesExpansion s;
  s.coefficients.assign(order + 1, 0.0);
  s.coefficients[0] = 1.0;
  for (int n = 1; n <= order; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += k * l[k] * s.coefficients[n - k];
    s.coefficients[n] = acc / n;
  }
  s.radius_estimate = 2.0;
  return s;
}

EvalResult free_energy(const Dimension& D, double g, int N) {
  if (N < 1) throw Error(Errc::InvalidInput, "N must be at least 1");
  if (!(g > 0)) throw Error(Errc::InvalidInput, "coupling must be positive");
  if (std::abs(D.value) < D.pole_tolerance) throw Error(Errc::ZeroDimension, "free energy has a 1/D pole at D = 0");
  EvalResult r;
  if (N == 1) {
    if (!(std::abs(D.value) < 2.0)) throw Error(Errc::OutOfDomain, "N = 1 form needs |D| < 2");
    r.value = std::pow(cplx(g / (2.0 * kPi)), 0.5 * D.value) * gamma_fn(1.0 - 0.5 * D.value) / D.value;
    return r;
  }
  const cplx e = D.value / (2.0 * N - D.re() * (N - 1));
  const double c = 0.5 * (kEulerGamma - std::log(4.0 * kPi)) -
                   std::log(std::sqrt(2.0 / kPi) * std::tgamma(1.0 + 0.5 / N));
  const cplx ge = std::pow(cplx(g), e);
  r.value = ge * (1.0 / D.value + c);
  r.error = std::abs(ge * D.value);
  r.status = Convergence::converged;
  return r;
}

double a_n_constant(int N, double D) {
  if (N < 1) throw Error(Errc::InvalidInput, "N must be at least 1");
  const double den = 2.0 * N - D * (N - 1);
  const double e = D / den;
  if (N == 1) {
    // g dF/dg = (1/2) (g/2pi)^{D/2} Gamma(1 - D/2)
    if (!(std::abs(D) < 2.0)) throw Error(Errc::OutOfDomain, "N = 1 form needs |D| < 2");
    return 2.0 * (1.0 - e) * 0.5 * a1_exact(Dimension(D));
  }
  const double c = 0.5 * (kEulerGamma - std::log(4.0 * kPi)) -
                   std::log(std::sqrt(2.0 / kPi) * std::tgamma(1.0 + 0.5 / N));
  // g dF/dg = e F, and e (1/D + c) = (1 + c D) / den
  return 2.0 * N * (1.0 - e) * (1.0 + c * D) / den;
}

double qm_eigenvalue(const EigenvalueQuery& q) {
  const double d = real_dim(q.dimension);
  if (q.level < 0) throw Error(Errc::InvalidInput, "level must be non-negative");
  const double nu = 0.5 * d - 1.0;
  auto f = [&](double x) { return bessel(BesselKind::J, nu, x); };
  // geometric steps below 1 catch the small zero that appears as D -> 0+
  auto next = [](double x) { return x < 1.0 ? std::min(1.0, x * 1.05) : x + 0.02; };
  const double stop = 50.0 + 4.0 * q.level + 2.0 * std::abs(nu);
  const auto z = first_root(f, next, 1e-8, stop, 1e-14, q.level);
  if (!z) throw Error(Errc::RootNotBracketed, "no zero of J_" + std::to_string(nu) + " below " + std::to_string(stop));
  return *z * *z;
}

ThresholdResult qm_threshold(int n, double d_offset, int truncation) {
  if (n < 0) throw Error(Errc::InvalidInput, "n must be non-negative");
  if (d_offset < 0 || d_offset > 0.5) throw Error(Errc::InvalidInput, "offset must lie in [0, 0.5]");
  const int order = truncation < 0 ? n + 6 : truncation;
  if (order < n + 3) throw Error(Errc::InvalidInput, "truncation order must be at least n + 3");
  ThresholdResult out;
  if (d_offset == 0.0) return out;

  auto solve = [&](double eps) {
    auto p = [&](double E) {
      double s = 0.0, t = 1.0;
      for (int j = 0; j <= order; ++j) {
        s += t * rgamma(cplx(j - n + 0.5 * eps)).real();
        t *= -0.25 * E / (j + 1);
      }
      return s;
    };
    const auto r = first_root(p, [](double E) { return E * 1.02; }, 1e-14, 1e3, 0.0, 0);
    if (!r) throw Error(Errc::NotConverged, "truncated threshold series has no positive root");
    return *r;
  };
  out.energy = solve(d_offset);
  // least-squares slope of log E against log offset over one decade
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = 9;
  for (int k = 0; k < m; ++k) {
    const double eps = d_offset * std::pow(10.0, -double(k) / (m - 1));
    const double x = std::log(eps), y = std::log(solve(eps));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

std::vector<Table1Row> table1_report(const std::vector<int>& orders) {
  std::vector<Table1Row> rows;
  if (orders.empty()) return rows;
  int top = 0;
  for (int k : orders) top = std::max(top, k);
  const SeriesExpansion s = a1_series(top);
  struct Printed {
    double D;
    double k1, k2;
  };
  for (const Printed& p : {Printed{-1.0, 1.63, 2.0}, Printed{-2.0, 2.261, 3.739}}) {
    Table1Row row;
    row.dimension = p.D;
    row.exact = a1_exact(Dimension(p.D));
    for (int k : orders) {
      row.orders.push_back(k);
      const double v = s.partial_sum(k, p.D);
      row.partial_sums.push_back(v);
      std::optional<double> printed;
      if (k == 1) printed = p.k1;
      if (k == 2) printed = p.k2;
      row.printed.push_back(printed);
      row.deviates.push_back(printed && std::abs(v - *printed) > kTable1PrintTolerance);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace negdim
