#include "negdim/propagator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "negdim/errors.hpp"
#include "negdim/quadrature.hpp"
#include "negdim/specfun.hpp"

namespace negdim {

namespace {

double real_dim(const Dimension& D) {
  if (!D.is_real()) throw Error(Errc::DomainError, "propagators need a real dimension");
  return D.re();
}

void check_rm(double r, double m) {
  if (!(r > 0)) throw Error(Errc::DomainError, "separation must be positive");
  if (!(m > 0)) throw Error(Errc::DomainError, "mass must be positive");
}

// nu = (2 + D_t|a|)/2, rejecting a = -2k/D_t where Gamma(1 - nu) has a pole.
double multifractal_order(int D_t, const MeasureExponent& a) {
  if (D_t < 1) throw Error(Errc::InvalidInput, "topological dimension must be positive");
  if (!(a.alpha < 0)) throw Error(Errc::DomainError, "the negative branch needs alpha < 0");
  const double h = 0.5 * D_t * std::abs(a.alpha);
  if (std::abs(h - std::round(h)) < 1e-12)
    throw Error(Errc::ForbiddenExponent, "D_t|alpha|/2 = " + std::to_string(h) + " is an integer");
  return 1.0 + h;
}

}  // namespace

void PropagatorQuery::validate() const {
  if (topological_dimension < 1) throw Error(Errc::InvalidInput, "topological dimension must be positive");
  const double df = real_dim(continuation_dimension);
  if (df < 0 || df > topological_dimension)
    throw Error(Errc::DomainError, "need 0 <= D_f <= D_t, got D_f = " + std::to_string(df));
  if (!(separation > 0)) throw Error(Errc::DomainError, "separation must be positive");
  if (!(mass >= 0)) throw Error(Errc::DomainError, "mass must be non-negative");
}

EvalResult schwinger(const Dimension& D, double r, double m) {
  const double d = real_dim(D);
  check_rm(r, m);
  const double nu = 0.5 * d - 1.0;
  EvalResult out;
  out.value = std::pow(2.0 * kPi, -0.5 * d) * std::pow(m / r, nu) * bessel(BesselKind::K, nu, m * r);
  return out;
}

EvalResult schwinger_radial_quadrature(const Dimension& D, double r, double m) {
  const double d = real_dim(D);
  check_rm(r, m);
  const double nu = 0.5 * d - 1.0;
  if (d <= 0 || d >= 5) throw Error(Errc::DomainError, "radial integral converges only for 0 < D < 5");
  auto g = [&](double rho) { return std::pow(rho, 0.5 * d) * bessel(BesselKind::J, nu, rho * r) / (rho * rho + m * m); };
  // approximate zeros (k + nu/2 - 1/4) pi of J_nu(rho r)
  auto edge = [&](int k) { return k == 0 ? 0.0 : (k + 0.5 * nu - 0.25) * kPi / r; };
  auto seg = [&](int k) {
    return k == 0 ? quad::tanh_sinh(g, 0.0, edge(1), 1e-13).value : quad::gauss_legendre(g, edge(k), edge(k + 1));
  };
  const quad::Result q = quad::alternating_tail(seg, 120);
  const double pre = std::pow(2.0 * kPi, -0.5 * d) * std::pow(r, -nu);
  EvalResult out;
  out.value = pre * q.value;
  out.error = std::abs(pre) * q.error;
  return out;
}

EvalResult schwinger_fractional(const PropagatorQuery& q) {
  q.validate();
  const double df = q.continuation_dimension.re();
  if (q.mass > 0) return schwinger(q.continuation_dimension, q.separation, q.mass);
  EvalResult out;
  if (df <= 2.0) {
    out.value = std::numeric_limits<double>::infinity();
    out.status = Convergence::diverges;
    return out;
  }
  // Gamma(D/2 - 1) / (4 pi^{D/2} r^{D-2})
  out.value = gamma_fn(0.5 * df - 1.0) / (4.0 * std::pow(kPi, 0.5 * df) * std::pow(q.separation, df - 2.0));
  return out;
}

double omega(int D_t) {
  if (D_t < 1) throw Error(Errc::InvalidInput, "topological dimension must be positive");
  return 2.0 * std::pow(kPi, 0.5 * D_t) / std::tgamma(0.5 * D_t);
}

double multifractal_massless(int D_t, const MeasureExponent& a, double r) {
  if (D_t < 1) throw Error(Errc::InvalidInput, "topological dimension must be positive");
  if (!(a.alpha < 0)) throw Error(Errc::DomainError, "the negative branch needs alpha < 0");
  if (!(r >= 0)) throw Error(Errc::DomainError, "separation must be non-negative");
  const double p = 2.0 + D_t * std::abs(a.alpha);
  return -std::pow(r, p) / (omega(D_t) * p);
}

double multifractal_massive(int D_t, const MeasureExponent& a, double r, double m) {
  const double nu = multifractal_order(D_t, a);
  check_rm(r, m);
  return std::pow(2.0 * r / m, nu) * bessel(BesselKind::K, nu, m * r) / (omega(D_t) * gamma_fn(1.0 - nu));
}

MultifractalSplit multifractal_massive_split(int D_t, const MeasureExponent& a, double r, double m) {
  const double nu = multifractal_order(D_t, a);
  check_rm(r, m);
  const double c = std::pow(2.0 * r / m, nu) / (omega(D_t) * gamma_fn(1.0 - nu)) * 0.5 * kPi / std::sin(nu * kPi);
  return {c * bessel(BesselKind::I, -nu, m * r), -c * bessel(BesselKind::I, nu, m * r)};
}

EvalResult momentum_propagator(int D_t, const MeasureExponent& a, double k, double m) {
  if (D_t < 1) throw Error(Errc::InvalidInput, "topological dimension must be positive");
  if (!(k >= 0)) throw Error(Errc::DomainError, "momentum must be non-negative");
  if (!(m >= 0)) throw Error(Errc::DomainError, "mass must be non-negative");
  const double h = 0.5 * D_t * a.alpha;
  if (h < 0 && std::abs(h - std::round(h)) < 1e-12)
    throw Error(Errc::ForbiddenExponent, "D_t alpha/2 = " + std::to_string(h) + " is a negative integer");
  if (m == 0) {
    if (k == 0) throw Error(Errc::DomainError, "massless propagator is singular at k = 0");
    EvalResult out;
    out.value = -(D_t - 2.0) / (omega(D_t) * (2.0 + D_t * std::abs(a.alpha)) * k * k);
    return out;
  }
  EvalResult out = gauss_2f1(h, 1.0, 0.5 * D_t, -(k * k) / (m * m));
  out.value /= m * m;
  out.error /= m * m;
  return out;
}

}  // namespace negdim
