#include "negdim/measure.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "negdim/errors.hpp"
#include "negdim/quadrature.hpp"
#include "negdim/specfun.hpp"

namespace negdim {

namespace {

constexpr int kEpsLevels = 10;

std::string str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double real_dimension(const Dimension& D) {
  if (!D.is_real()) throw Error(Errc::DomainError, "radial measures need a real dimension");
  return D.re();
}

// Integral over (0, inf) with breakpoints, tolerant of endpoint singularities at 0.
double integrate_half_line(const RealFn& g, double knee, double rel_tol) {
  double total = 0.0;
  double a = 0.0;
  for (double b : {knee, 1.0}) {
    if (b <= a) continue;
    total += quad::tanh_sinh(g, a, b, rel_tol).value;
    a = b;
  }
  total += quad::exp_sinh(g, a, rel_tol).value;
  return total;
}

}  // namespace

void RadialMeasureSpec::validate() const {
  const double d = real_dimension(dimension);
  if (branch == Branch::positive) {
    if (!(d > 0)) throw Error(Errc::DomainError, "positive branch needs D > 0, got D = " + str(d));
    return;
  }
  if (!(d < 0)) throw Error(Errc::DomainError, "negative branch needs D < 0, got D = " + str(d));
  const double k = std::round(d / 2.0);
  if (k != 0.0 && std::abs(d - 2.0 * k) < dimension.pole_tolerance)
    throw Error(Errc::PoleAtDimension, "Gamma(-|D|/2) pole at D = " + str(d));
  if (!(eps >= 0)) throw Error(Errc::InvalidInput, "eps must be non-negative");
}

cplx sphere_area(const Dimension& D) {
  const cplx h = 0.5 * D.value;
  if (near_gamma_pole(h, D.pole_tolerance))
    throw Error(Errc::PoleAtDimension, "Gamma(D/2) pole at D = " + str(D.re()));
  return 2.0 * std::pow(cplx(kPi, 0.0), h) / gamma_fn(h);
}

double radial_weight(const RadialMeasureSpec& spec, double r) {
  spec.validate();
  if (!(r > 0)) throw Error(Errc::DomainError, "radius must be positive");
  const double d = spec.dimension.re();
  const double s = sphere_area(spec.dimension).real();
  if (spec.branch == Branch::positive) return s * std::pow(r, d - 1.0);
  const double a = std::abs(d) + 1.0;
  const double ra = std::pow(r, a);
  return s * ra / (ra * ra + spec.eps * spec.eps);
}

EvalResult radial_integral(const RadialMeasureSpec& spec, const RealFn& f, const ToleranceConfig& tol) {
  spec.validate();
  const double d = spec.dimension.re();
  const double s = sphere_area(spec.dimension).real();
  const double qtol = std::max(tol.rel_tol, 1e-13);
  EvalResult r;
  if (spec.branch == Branch::positive) {
    auto g = [&](double x) { return x == 0.0 ? 0.0 : f(x) * std::pow(x, d - 1.0); };
    r.value = s * integrate_half_line(g, 1.0, qtol);
    return r;
  }
  const double f0 = f(0.0);
  if (std::abs(f0) > 1e-12)
    throw Error(Errc::PreconditionViolated, "negative branch needs f(0) = 0, got " + str(f0));
  const double a = std::abs(d) + 1.0;
  std::vector<std::pair<double, double>> samples;
  for (int k = 0; k < kEpsLevels; ++k) {
    const double eps = tol.eps_reg * std::ldexp(1.0, -k);
    auto g = [&](double x) {
      if (x == 0.0) return 0.0;
      const double xa = std::pow(x, a);
      return f(x) * xa / (xa * xa + eps * eps);
    };
    samples.emplace_back(eps, s * integrate_half_line(g, std::pow(eps, 1.0 / a), qtol));
  }
  r = eps_extrapolate(samples);
  return r;
}

EvalResult eps_extrapolate(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3)
    throw Error(Errc::InsufficientSamples, "need at least 3 samples, got " + std::to_string(samples.size()));
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first < samples[i - 1].first))
      throw Error(Errc::PreconditionViolated, "eps must be strictly decreasing");
  // Wynn epsilon table; even columns hold the extrapolants.
  std::vector<double> prev(samples.size() + 1, 0.0), cur;
  for (std::size_t i = 0; i < samples.size(); ++i) cur.push_back(samples[i].second);
  std::vector<double> best = cur, best_prev;
  for (int col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    bool degenerate = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) {
        degenerate = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (degenerate) break;
    prev = cur;
    cur = next;
    if (col % 2 == 0) {
      best_prev = best;
      best = cur;
    }
  }
  EvalResult r;
  r.value = best.back();
  if (best.size() >= 2)
    r.error = std::abs(best.back() - best[best.size() - 2]);
  else if (!best_prev.empty())
    r.error = std::abs(best.back() - best_prev.back());
  return r;
}

ExpansionCoefficients expansion_coefficients(const RealFn& f, const RealFn& f_prime, int order, Branch branch,
                                             double eps) {
  if (order < 0) throw Error(Errc::InvalidInput, "order must be non-negative");
  ExpansionCoefficients out;
  out.order = order;
  const double f0 = f(0.0);
  if (branch == Branch::negative && std::abs(f0) > 1e-12)
    throw Error(Errc::PreconditionViolated, "negative branch needs f(0) = 0, got " + str(f0));
  out.c.push_back(branch == Branch::positive ? f0 : 0.0);
  for (int n = 1; n <= order; ++n) {
    if (branch == Branch::positive) {
      auto g = [&](double r) { return r == 0.0 ? 0.0 : -std::pow(std::log(r), n) * f_prime(r); };
      out.c.push_back(integrate_half_line(g, 1.0, 1e-12));
    } else {
      auto part = [&](bool imag) {
        return [&, imag](double r) {
          const cplx v = -std::pow(std::log(cplx(r, eps)), n) * f_prime(r);
          return imag ? v.imag() : v.real();
        };
      };
      const double re = integrate_half_line(part(false), 1.0, 1e-12);
      const double im = integrate_half_line(part(true), 1.0, 1e-12);
      out.c.emplace_back(re, im);
    }
    if (!std::isfinite(std::abs(out.c.back())))
      throw Error(Errc::NotConverged, "log-moment quadrature failed at order " + std::to_string(n));
  }
  return out;
}

cplx expansion_value(const ExpansionCoefficients& c, double D) {
  cplx s = 0.0;
  double w = 1.0;
  for (std::size_t n = 0; n < c.c.size(); ++n) {
    s += c.c[n] * w;
    w *= D / double(n + 1);
  }
  return std::pow(kPi, 0.5 * D) / gamma_fn(1.0 + 0.5 * D) * s;
}

std::pair<double, double> power_law_fourier(double lambda, const Dimension& D) {
  const double d = real_dimension(D);
  const double h = 0.5 * (lambda + d);
  if (near_gamma_pole(h, D.pole_tolerance))
    throw Error(Errc::ForbiddenExponent,
                "lambda = " + str(lambda) + " lies in {-D, -D-2, ...} for D = " + str(d));
  const double c = std::pow(2.0, lambda + d) * std::pow(kPi, 0.5 * d) * gamma_fn(h) * rgamma(-0.5 * lambda).real();
  return {c, -lambda - d};
}

}  // namespace negdim
