#include "negdim/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "negdim/errors.hpp"

namespace negdim {

namespace {

// Lanczos g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

cplx lanczos_lgamma(cplx z) {
  z -= 1.0;
  cplx a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + double(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

std::string fmt(cplx x) {
  std::ostringstream os;
  os.precision(12);
  if (x.imag() == 0.0)
    os << x.real();
  else
    os << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
  return os.str();
}

// sin(pi x) and cos(pi x), exact at integers and half-integers.
double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(kPi * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

cplx sinpi(cplx z) {
  if (z.imag() == 0.0) return sinpi(z.real());
  return std::sin(kPi * z);
}

bool is_integer(double x) { return x == std::round(x); }

}  // namespace

bool near_gamma_pole(cplx x, double tol) {
  if (x.real() > 0.5) return false;
  const double k = std::round(x.real());
  return std::abs(x - cplx(k, 0.0)) < tol;
}

double gamma_fn(double x, double pole_tol) {
  if (near_gamma_pole(x, pole_tol)) throw Error(Errc::PoleAtArgument, "Gamma(" + fmt(x) + ")");
  return std::tgamma(x);
}

cplx gamma_fn(cplx x, double pole_tol) {
  if (x.imag() == 0.0) return gamma_fn(x.real(), pole_tol);
  if (near_gamma_pole(x, pole_tol)) throw Error(Errc::PoleAtArgument, "Gamma(" + fmt(x) + ")");
  if (x.real() < 0.5) return kPi / (sinpi(x) * gamma_fn(1.0 - x, pole_tol));
  return std::exp(lanczos_lgamma(x));
}

cplx lgamma(cplx x) {
  if (near_gamma_pole(x, 0.0)) throw Error(Errc::PoleAtArgument, "lgamma(" + fmt(x) + ")");
  if (x.real() < 0.5) return std::log(kPi) - std::log(sinpi(x)) - lgamma(1.0 - x);
  return lanczos_lgamma(x);
}

cplx rgamma(cplx x, double pole_tol) {
  if (near_gamma_pole(x, pole_tol)) return 0.0;
  if (x.imag() == 0.0 && x.real() > 171.0) return 0.0;
  return 1.0 / gamma_fn(x, pole_tol);
}

cplx pochhammer(cplx z, long n, double pole_tol) {
  cplx p = 1.0;
  if (n >= 0) {
    for (long k = 0; k < n; ++k) p *= z + double(k);
    return p;
  }
  for (long k = 1; k <= -n; ++k) {
    const cplx f = z - double(k);
    if (std::abs(f) < pole_tol)
      throw Error(Errc::PoleAtArgument, "(" + fmt(z) + ", " + std::to_string(n) + ") meets Gamma(" +
                                            fmt(f) + ")");
    p *= f;
  }
  return 1.0 / p;
}

cplx rpochhammer(cplx z, long n, double pole_tol) {
  cplx p = 1.0;
  if (n < 0) {
    for (long k = 1; k <= -n; ++k) p *= z - double(k);
    return p;
  }
  for (long k = 0; k < n; ++k) {
    const cplx f = z + double(k);
    if (std::abs(f) < pole_tol)
      throw Error(Errc::PoleAtArgument, "1/(" + fmt(z) + ", " + std::to_string(n) + ") meets Gamma(" +
                                            fmt(z) + ")");
    p *= f;
  }
  return 1.0 / p;
}

GammaFlip gamma_ratio_flip(const std::vector<cplx>& alpha, const std::vector<cplx>& beta, cplx theta,
                           double rel_tol) {
  cplx s = 0.0;
  for (const auto& b : beta) s += b;
  for (const auto& a : alpha) s -= a;
  if (std::abs(s - theta) > rel_tol * std::max(1.0, std::abs(theta)))
    throw Error(Errc::InconsistentTheta,
                "sum(beta - alpha) = " + fmt(s) + " but theta = " + fmt(theta));
  GammaFlip out;
  if (theta.imag() == 0.0 && is_integer(theta.real()))
    out.sign = (static_cast<long long>(std::round(theta.real())) % 2 == 0) ? 1.0 : -1.0;
  else
    out.sign = std::exp(cplx(0.0, kPi) * theta);
  for (const auto& b : beta) out.numerator.push_back(1.0 - b);
  for (const auto& a : alpha) out.denominator.push_back(1.0 - a);
  return out;
}

cplx flip_reflection_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& beta) {
  cplx f = std::pow(kPi, double(alpha.size()) - double(beta.size()));
  for (const auto& b : beta) f *= sinpi(b);
  for (const auto& a : alpha) f /= sinpi(a);
  return f;
}

cplx gamma_product(const std::vector<cplx>& numerator, const std::vector<cplx>& denominator) {
  cplx v = 1.0;
  for (const auto& a : numerator) v *= gamma_fn(a);
  for (const auto& b : denominator) v *= rgamma(b);
  return v;
}

double bessel(BesselKind kind, double order, double x) {
  if (!(x > 0)) throw Error(Errc::DomainError, "Bessel argument must be positive, got " + fmt(x));
  if (!(std::abs(order) <= 20.0))
    throw Error(Errc::OrderOutOfRange, "Bessel order " + fmt(order) + " outside [-20, 20]");
  const double mu = std::abs(order);
  switch (kind) {
    case BesselKind::J:
      if (order >= 0) return std::cyl_bessel_j(mu, x);
      if (is_integer(mu)) return (static_cast<long>(mu) % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(mu, x);
      return cospi(mu) * std::cyl_bessel_j(mu, x) - sinpi(mu) * std::cyl_neumann(mu, x);
    case BesselKind::Y:
      if (order >= 0) return std::cyl_neumann(mu, x);
      if (is_integer(mu)) return (static_cast<long>(mu) % 2 ? -1.0 : 1.0) * std::cyl_neumann(mu, x);
      return sinpi(mu) * std::cyl_bessel_j(mu, x) + cospi(mu) * std::cyl_neumann(mu, x);
    case BesselKind::I:
      if (order >= 0 || is_integer(mu)) return std::cyl_bessel_i(mu, x);
      return std::cyl_bessel_i(mu, x) + (2.0 / kPi) * sinpi(mu) * std::cyl_bessel_k(mu, x);
    case BesselKind::K:
      return std::cyl_bessel_k(mu, x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Power series of I_nu, valid for any real nu including negative non-integers.
double bessel_i_series(double nu, double x) {
  const double h = 0.5 * x;
  double term = std::pow(h, nu) * std::real(rgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= h * h / (double(k) * (double(k) + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double k_difference(double nu, double x) {
  return 0.5 * kPi * (bessel_i_series(-nu, x) - bessel_i_series(nu, x)) / sinpi(nu);
}

}  // namespace

double bessel_k_from_i_difference(double order, double x) {
  if (!(x > 0)) throw Error(Errc::DomainError, "Bessel argument must be positive, got " + fmt(x));
  if (!(std::abs(order) <= 20.0))
    throw Error(Errc::OrderOutOfRange, "Bessel order " + fmt(order) + " outside [-20, 20]");
  if (!is_integer(order)) return k_difference(order, x);
  // K is even in nu and smooth, so the symmetric average has an O(h^2) error removed by Richardson.
  const double h = 1e-6;
  auto avg = [&](double d) { return 0.5 * (k_difference(order + d, x) + k_difference(order - d, x)); };
  return (4.0 * avg(h) - avg(2.0 * h)) / 3.0;
}

Convergence classify_2f1(cplx a, cplx b, cplx c) {
  const double g = (a + b - c).real();
  if (g >= 1.0) return Convergence::diverges;
  if (g < 0.0) return Convergence::absolutely;
  return Convergence::except_at_one;
}

EvalResult gauss_2f1(cplx a, cplx b, cplx c, cplx z, const ToleranceConfig& tol) {
  const double az = std::abs(z);
  if (az > 1.0 + 1e-15) throw Error(Errc::OutsideDisk, "|z| = " + fmt(az) + " > 1");
  EvalResult r;
  r.status = classify_2f1(a, b, c);
  const bool on_circle = az > 1.0 - 1e-15;
  if (on_circle) {
    if (r.status == Convergence::diverges)
      throw Error(Errc::DivergentSeries, "2F1 diverges on |z| = 1 (gamma = Re(a + b - c) >= 1)");
    if (std::abs(z - 1.0) < 1e-15) {
      if (r.status != Convergence::absolutely)
        throw Error(Errc::DivergentSeries, "2F1 diverges at z = 1");
      r.value = gamma_fn(c) * gamma_fn(c - a - b) * rgamma(c - a) * rgamma(c - b);
      return r;
    }
  }
  cplx term = 1.0, sum = 1.0;
  double last = 1.0;
  int quiet = 0;
  for (long k = 0; k < tol.max_terms; ++k) {
    const cplx ck = c + double(k);
    if (std::abs(ck) < kDefaultPoleTol && std::abs(term) > 0)
      throw Error(Errc::PoleAtArgument, "2F1 lower parameter c = " + fmt(c) + " hits a pole");
    term *= (a + double(k)) * (b + double(k)) / (ck * double(k + 1)) * z;
    sum += term;
    r.terms = k + 1;
    if (term == 0.0) {
      r.value = sum;
      r.error = 0.0;
      return r;
    }
    const double rho = std::max(az, std::abs(term) / last);
    last = std::abs(term);
    const double tail = (on_circle || rho >= 1.0) ? std::abs(term) * double(k + 1)
                                                  : std::abs(term) * rho / (1.0 - rho);
    if (tail <= tol.abs_tol + tol.rel_tol * std::abs(sum)) {
      if (++quiet >= 2) {
        r.value = sum;
        r.error = tail;
        return r;
      }
    } else {
      quiet = 0;
    }
  }
  throw Error(Errc::NotConverged, "2F1 series exhausted " + std::to_string(tol.max_terms) + " terms");
}

cplx series_term(const HyperSeries& s, long n0, long n1) {
  // Interleave the factors of every Pochhammer symbol so partial products stay in range.
  struct Run {
    cplx base;
    long len;
    bool up;      // ascending product (base + k) versus descending (base - 1 - k)
    bool invert;  // divide instead of multiply
  };
  std::vector<Run> runs;
  long longest = std::max(n0, n1);
  auto add = [&](const PochFactor& f, bool den) {
    const long L = f.c0 * n0 + f.c1 * n1;
    if (L == 0) return;
    // (a, L) for L > 0 multiplies a..a+L-1; for L < 0 divides by (a-1)..(a-|L|).
    runs.push_back({f.base, std::abs(L), L > 0, den == (L > 0)});
    longest = std::max(longest, std::abs(L));
  };
  for (const auto& f : s.num) add(f, false);
  for (const auto& f : s.den) add(f, true);
  cplx t = 1.0;
  for (long k = 0; k < longest; ++k) {
    for (const auto& r : runs) {
      if (k >= r.len) continue;
      const cplx e = r.up ? r.base + double(k) : r.base - double(k + 1);
      if (r.invert) {
        if (std::abs(e) < kDefaultPoleTol)
          throw Error(Errc::PoleAtArgument, "series term meets a Gamma pole at " + fmt(e));
        t /= e;
      } else {
        t *= e;
      }
    }
    if (k < n0) t *= s.z0;
    if (k < n1) t *= s.z1;
  }
  return t;
}

namespace {

// (a, L + c) / (a, L)
cplx step_ratio(cplx a, long L, int c) {
  cplx r = 1.0;
  if (c > 0)
    for (int k = 0; k < c; ++k) r *= a + double(L + k);
  else
    for (int k = 1; k <= -c; ++k) r /= a + double(L - k);
  return r;
}

cplx term_ratio(const HyperSeries& s, long n0, long n1, int dir) {
  cplx r = dir == 0 ? s.z0 : s.z1;
  for (const auto& f : s.num) r *= step_ratio(f.base, f.c0 * n0 + f.c1 * n1, dir == 0 ? f.c0 : f.c1);
  for (const auto& f : s.den) r /= step_ratio(f.base, f.c0 * n0 + f.c1 * n1, dir == 0 ? f.c0 : f.c1);
  return r;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double xlogx(double L) { return L == 0.0 ? 0.0 : L * std::log(std::abs(L)); }

}  // namespace

double series_growth_rate(const HyperSeries& s) {
  if (s.nvars == 0) return -std::numeric_limits<double>::infinity();
  const double lz0 = std::log(std::abs(s.z0));
  const double lz1 = s.nvars == 2 ? std::log(std::abs(s.z1)) : 0.0;
  // Coefficient of lambda*log(lambda) along direction (u, 1-u); linear in u.
  auto kcoef = [&](double u) {
    const double v = s.nvars == 2 ? 1.0 - u : 0.0;
    double k = 0.0;
    for (const auto& f : s.num) k += f.c0 * u + f.c1 * v;
    for (const auto& f : s.den) k -= f.c0 * u + f.c1 * v;
    return k;
  };
  auto phi = [&](double u) {
    const double v = s.nvars == 2 ? 1.0 - u : 0.0;
    double h = 0.0;
    if (u > 0) h += u * lz0;
    if (v > 0) h += v * lz1;
    for (const auto& f : s.num) h += xlogx(f.c0 * u + f.c1 * v);
    for (const auto& f : s.den) h -= xlogx(f.c0 * u + f.c1 * v);
    return h;
  };
  const double k1 = kcoef(1.0), k0 = s.nvars == 2 ? kcoef(0.0) : k1;
  const double eps = 1e-12;
  if (k1 > eps || k0 > eps) return std::numeric_limits<double>::infinity();
  if (k1 < -eps && k0 < -eps) return -std::numeric_limits<double>::infinity();
  if (s.nvars == 1) return phi(1.0);
  if (!(std::abs(k1) <= eps && std::abs(k0) <= eps)) {
    // Only the balanced endpoint grows exponentially.
    return std::abs(k1) <= eps ? phi(1.0) : phi(0.0);
  }
  const int n = 2000;
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i <= n; ++i) {
    const double v = phi(double(i) / n);
    if (v > best) best = v, arg = i;
  }
  double lo = std::max(0.0, double(arg - 1) / n), hi = std::min(1.0, double(arg + 1) / n);
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (phi(m1) < phi(m2)) lo = m1; else hi = m2;
  }
  return std::max(best, phi(0.5 * (lo + hi)));
}

EvalResult sum_series(const HyperSeries& s, const ToleranceConfig& tol) {
  EvalResult r;
  if (s.nvars == 0) {
    r.value = series_term(s, 0, 0);
    r.terms = 1;
    return r;
  }
  std::vector<cplx> prev{series_term(s, 0, 0)}, cur;
  cplx sum = prev[0];
  double prev_mass = std::abs(prev[0]);
  long terms = 1;
  int quiet = 0;
  for (long d = 1;; ++d) {
    cur.assign(s.nvars == 2 ? d + 1 : 1, 0.0);
    if (s.nvars == 2) {
      for (long n0 = 0; n0 < d; ++n0) {
        const long n1 = d - 1 - n0;
        cplx t = prev[n0] * term_ratio(s, n0, n1, 1);
        if (s.z1 == 0.0) t = 0.0;
        else if (prev[n0] == 0.0 || !finite(t)) t = series_term(s, n0, n1 + 1);
        cur[n0] = t;
      }
      const cplx last = prev.back();
      cplx t = last * term_ratio(s, d - 1, 0, 0);
      if (s.z0 == 0.0) t = 0.0;
      else if (last == 0.0 || !finite(t)) t = series_term(s, d, 0);
      cur[d] = t;
    } else {
      cplx t = prev[0] * term_ratio(s, d - 1, 0, 0);
      if (s.z0 == 0.0) t = 0.0;
      else if (prev[0] == 0.0 || !finite(t)) t = series_term(s, d, 0);
      cur[0] = t;
    }
    double mass = 0.0;
    cplx dsum = 0.0;
    for (const auto& t : cur) {
      if (!finite(t)) throw Error(Errc::NotConverged, "non-finite series term at diagonal " + std::to_string(d));
      mass += std::abs(t);
      dsum += t;
    }
    sum += dsum;
    terms += long(cur.size());
    double tail = 0.0;
    if (mass > 0.0) {
      const double rho = prev_mass > 0.0 ? mass / prev_mass : 1.0;
      tail = rho < 1.0 ? mass * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
    }
    const double err = mass + tail;
    if (d >= 3 && err <= tol.abs_tol + tol.rel_tol * std::abs(sum)) {
      if (++quiet >= 2) {
        r.value = sum;
        r.error = err;
        r.terms = terms;
        return r;
      }
    } else {
      quiet = 0;
    }
    if (terms > tol.max_terms)
      throw Error(Errc::NotConverged, "series exhausted " + std::to_string(tol.max_terms) + " terms");
    prev.swap(cur);
    prev_mass = mass;
  }
}

HyperSeries appell_f4_series(cplx alpha, cplx beta, cplx gamma1, cplx gamma2, cplx x, cplx y) {
  HyperSeries s;
  s.num = {{alpha, 1, 1}, {beta, 1, 1}};
  s.den = {{gamma1, 1, 0}, {gamma2, 0, 1}, {1.0, 1, 0}, {1.0, 0, 1}};
  s.z0 = x;
  s.z1 = y;
  s.nvars = 2;
  return s;
}

EvalResult appell_f4(cplx alpha, cplx beta, cplx gamma1, cplx gamma2, cplx x, cplx y,
                     const ToleranceConfig& tol) {
  const double rho = std::sqrt(std::abs(x)) + std::sqrt(std::abs(y));
  if (!(rho < 1.0))
    throw Error(Errc::OutsideDomain, "F4 needs sqrt|x| + sqrt|y| < 1, got " + fmt(rho));
  EvalResult r = sum_series(appell_f4_series(alpha, beta, gamma1, gamma2, x, y), tol);
  r.status = Convergence::absolutely;
  return r;
}

}  // namespace negdim
