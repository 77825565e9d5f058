#include "negdim/masterint.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>

#include "negdim/errors.hpp"
#include "negdim/quadrature.hpp"
#include "negdim/specfun.hpp"

namespace negdim {

namespace {

std::string str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double pole_distance(cplx x) {
  if (x.real() > 0.5) return std::abs(x.imag()) > 0 ? std::abs(x) : 1.0;
  const double k = std::min(0.0, std::round(x.real()));
  return std::abs(x - k);
}

// Screens Gamma arguments: raises inside the pole tolerance, flags inside the warning band.
struct PoleScreen {
  const Dimension& D;
  bool flag = false;

  void check(cplx x, const char* what) {
    const double d = pole_distance(x);
    if (d < D.pole_tolerance)
      throw Error(Errc::PoleAtDimension, std::string("Gamma(") + what + ") pole at D = " + str(D.re()));
    if (d < kPoleWarnDistance) flag = true;
  }
};

double real_dim(const Dimension& D) {
  if (!D.is_real()) throw Error(Errc::DomainError, "this integral needs a real dimension");
  return D.re();
}

}  // namespace

cplx PhaseTag::value() const { return std::exp(cplx(0.0, 0.5 * kPi * quarter_turns)); }

std::string PhaseTag::str() const {
  double k = std::fmod(quarter_turns, 4.0);
  if (k < 0) k += 4.0;
  if (k == 0.0) return "1";
  if (k == 1.0) return "i";
  if (k == 2.0) return "-1";
  if (k == 3.0) return "-i";
  return "i^" + negdim::str(k);
}

PhaseTag minkowski_phase(double n) { return {1.0 + 2.0 * n}; }

void MetricSpec::validate() const {
  if (entries.rows() == 0 || entries.rows() != entries.cols())
    throw Error(Errc::InvalidInput, "metric must be a non-empty square matrix");
  if (!entries.isApprox(entries.transpose(), 1e-14)) throw Error(Errc::InvalidInput, "metric must be symmetric");
}

MetricSpec MetricSpec::euclidean(int n) {
  if (n <= 0) throw Error(Errc::InvalidInput, "metric needs at least one dimension");
  return {Eigen::MatrixXd::Identity(n, n), 0.0};
}

MetricSpec MetricSpec::liv(int n, double a) {
  MetricSpec m = euclidean(n);
  m.entries(0, 0) += a;
  m.liv_parameter = a;
  return m;
}

cplx gaussian_integral(const Dimension& D) { return std::pow(cplx(4.0 * kPi), -0.5 * D.value); }

TadpoleResult tadpole(const Dimension& D, double n, double m2, double q2) {
  if (!(n > 0)) throw Error(Errc::InvalidInput, "propagator power must be positive");
  const double delta = m2 - q2;
  if (!(m2 > 0) || !(delta > 0)) throw Error(Errc::DomainError, "need m^2 > 0 and m^2 - q^2 > 0");
  PoleScreen ps{D};
  const cplx h = 0.5 * D.value;
  ps.check(n - h, "n - D/2");
  TadpoleResult r;
  r.scalar.value = gaussian_integral(D) * gamma_fn(n - h) / gamma_fn(n) * std::pow(cplx(delta), h - n);
  r.scalar.phase = minkowski_phase(n);
  r.scalar.pole_flag = ps.flag;
  r.vector_coefficient = r.scalar;
  r.vector_coefficient.value = -r.scalar.value;
  return r;
}

MasterResult moment_integral(const Dimension& D, double n, int moment, double delta) {
  if (moment < 0) throw Error(Errc::InvalidInput, "moment must be non-negative");
  if (!(delta > 0)) throw Error(Errc::DomainError, "Delta must be positive");
  PoleScreen ps{D};
  const cplx h = 0.5 * D.value;
  ps.check(double(moment) + h, "m + D/2");
  ps.check(n - double(moment) - h, "n - m - D/2");
  ps.check(h, "D/2");
  MasterResult r;
  r.value = gaussian_integral(D) * gamma_fn(double(moment) + h) * gamma_fn(n - double(moment) - h) / (gamma_fn(h) * gamma_fn(n)) *
            std::pow(cplx(delta), h + double(moment) - n);
  r.phase = minkowski_phase(double(moment) - n);
  r.pole_flag = ps.flag;
  return r;
}

TensorResult tensor_integral(const Dimension& D, double n, double delta, int rank, const MetricSpec& metric) {
  metric.validate();
  if (rank != 2 && rank != 4) throw Error(Errc::InvalidInput, "tensor rank must be 2 or 4");
  if (!(delta > 0)) throw Error(Errc::DomainError, "Delta must be positive");
  const double d = real_dim(D);
  const double s = 0.5 * rank;
  PoleScreen ps{D};
  ps.check(n - s - 0.5 * d, rank == 2 ? "n - 1 - D/2" : "n - 2 - D/2");
  const double mag = std::pow(4.0 * kPi, -0.5 * d) * gamma_fn(n - s - 0.5 * d) / gamma_fn(n) *
                     std::pow(delta, 0.5 * d + s - n);
  const auto& g = metric.entries;
  const int N = metric.dimension_count();
  TensorResult t;
  t.rank = rank;
  t.dim = N;
  t.pole_flag = ps.flag;
  t.phase = minkowski_phase(s - n);
  if (rank == 2) {
    t.data.resize(N * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t.data[i * N + j] = 0.5 * g(i, j) * mag;
    return t;
  }
  t.data.resize(N * N * N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l)
          t.data[((i * N + j) * N + k) * N + l] =
              0.25 * (g(i, j) * g(k, l) + g(i, k) * g(j, l) + g(i, l) * g(j, k)) * mag;
  return t;
}

EvalResult feynman_param_bubble(const Dimension& D, double n, double k, double m2, double K2,
                                const ToleranceConfig& tol) {
  const double d = real_dim(D);
  if (!(n > 0) || !(k > 0)) throw Error(Errc::InvalidInput, "propagator powers must be positive");
  if (m2 < 0 || K2 < 0) throw Error(Errc::DomainError, "need m^2 >= 0 and K^2 >= 0");
  if (m2 == 0 && K2 == 0) throw Error(Errc::DomainError, "scaleless bubble");
  const double e = 0.5 * d - n - k;
  if (m2 == 0 && (n - 1 + e <= -1 || k - 1 + e <= -1))
    throw Error(Errc::EndpointSingularity, "Feynman-parameter integrand is not integrable at D = " + str(d));
  PoleScreen ps{D};
  ps.check(n + k - 0.5 * d, "n + k - D/2");
  auto g = [&](double x) {
    const double u = x * (1 - x) * K2 + m2;
    if (u == 0.0) return 0.0;
    return std::pow(x, n - 1) * std::pow(1 - x, k - 1) * std::pow(u, e);
  };
  const quad::Result q = quad::tanh_sinh(g, 0.0, 1.0, std::max(tol.rel_tol, 1e-13));
  if (!std::isfinite(q.value)) throw Error(Errc::NotConverged, "Feynman-parameter quadrature failed");
  const double pre =
      std::pow(4.0 * kPi, -0.5 * d) * gamma_fn(n + k - 0.5 * d) / (gamma_fn(n) * gamma_fn(k));
  EvalResult r;
  r.value = pre * q.value;
  r.error = std::abs(pre) * q.error;
  r.phase = (minkowski_phase(n) * minkowski_phase(k)).str();
  return r;
}

std::vector<double> taylor_coefficients(const std::function<double(double)>& g, int order, double h) {
  if (order < 0) throw Error(Errc::InvalidInput, "order must be non-negative");
  std::vector<double> c{g(0.0)};
  auto central = [&](int j, double step) {
    double s = 0.0, binom = 1.0;
    for (int i = 0; i <= j; ++i) {
      s += ((i % 2) ? -binom : binom) * g((0.5 * j - i) * step);
      binom = binom * (j - i) / (i + 1);
    }
    return s / std::pow(step, j);
  };
  double fact = 1.0;
  for (int j = 1; j <= order; ++j) {
    fact *= j;
    const double deriv = (4.0 * central(j, 0.5 * h) - central(j, h)) / 3.0;
    c.push_back(deriv / fact);
  }
  return c;
}

EvalResult gelfand_collins(const std::function<double(double)>& f, const Dimension& D, int l, double split,
                           const ToleranceConfig& tol) {
  const double d = real_dim(D);
  if (l < 0) throw Error(Errc::InvalidInput, "subtraction count must be non-negative");
  if (!(split > 0)) throw Error(Errc::InvalidInput, "split point must be positive");
  const bool in_window = l == 0 ? d > -2.0 : (d > -2.0 * l - 2 && d < -2.0 * l);
  if (!in_window) throw Error(Errc::WrongWindow, "D = " + str(d) + " is outside the window for l = " + std::to_string(l));
  for (int j = 0; j <= l; ++j)
    if (std::abs(d + 2.0 * j) < D.pole_tolerance) throw Error(Errc::PoleAtDimension, "D = -2j boundary");

  const std::vector<double> c = taylor_coefficients(f, l + 2);
  const double qtol = std::max(tol.rel_tol, 1e-13);
  // Below pc the subtracted bracket is replaced by its next two Taylor terms. pc balances
  // roundoff in the bracket (~ eps pc^D) against the dropped terms (~ pc^{D+2l+6}).
  const double pc = std::min(std::pow(10.0, -16.0 / (2 * l + 6)), 0.1 * split);
  double low = 0.0;
  for (int j = l + 1; j <= l + 2; ++j) low += c[j] * std::pow(pc, d + 2 * j) / (d + 2 * j);
  auto bracket = [&](double p) {
    double t = 0.0, u = 1.0;
    for (int j = 0; j <= l; ++j, u *= p * p) t += c[j] * u;
    return std::pow(p, d - 1) * (f(p * p) - t);
  };
  const quad::Result mid = quad::tanh_sinh(bracket, pc, split, qtol);
  double counter = 0.0;
  for (int j = 0; j <= l; ++j) counter += c[j] * std::pow(split, d + 2 * j) / (d + 2 * j);
  const quad::Result tail = quad::exp_sinh([&](double p) { return std::pow(p, d - 1) * f(p * p); }, split, qtol);

  const double total = low + mid.value + counter + tail.value;
  if (!std::isfinite(total)) throw Error(Errc::NotConverged, "subtracted radial integral failed");
  const double pre = 2.0 * std::pow(4.0 * kPi, -0.5 * d) * rgamma(cplx(0.5 * d)).real();
  EvalResult r;
  r.value = pre * total;
  r.error = std::abs(pre) * (mid.error + tail.error);
  return r;
}

cplx weyl_closed(WeylKind kind, const WeylParams& p, const Dimension& D) {
  const cplx h = 0.5 * D.value;
  const cplx base = std::pow(cplx(kPi), h);
  switch (kind) {
    case WeylKind::power: {
      PoleScreen ps{D};
      ps.check(p.n - h, "n - D/2");
      if (!(p.l > 0)) throw Error(Errc::DomainError, "length must be positive");
      return base * std::pow(cplx(p.l), D.value - 2.0 * p.n) * gamma_fn(p.n - h) / gamma_fn(p.n);
    }
    case WeylKind::gauss:
    case WeylKind::gauss_drift: {
      if (!(p.delta > 0)) throw Error(Errc::DomainError, "delta must be positive");
      cplx v = base * std::pow(cplx(p.delta), -h);
      if (kind == WeylKind::gauss_drift) v *= std::exp(p.gamma * p.gamma / (4.0 * p.delta));
      return v;
    }
  }
  throw Error(Errc::InvalidInput, "unknown Weyl kind");
}

VacuumResult vacuum_diagrams(const Dimension& D, double m2, double g) {
  if (!(m2 > 0)) throw Error(Errc::DomainError, "mass squared must be positive");
  if (std::abs(D.value) < D.pole_tolerance) throw Error(Errc::ZeroDimension, "one-loop vacuum diagram has a 1/D pole");
  PoleScreen ps{D};
  const cplx h = 0.5 * D.value;
  ps.check(1.0 - h, "1 - D/2");
  const cplx g1 = gamma_fn(1.0 - h);
  VacuumResult v;
  v.one_loop.value = std::pow(cplx(m2 / (4.0 * kPi)), h) * g1 / D.value;
  v.one_loop.pole_flag = ps.flag;
  v.two_loop.value = -(g / 8.0) * std::pow(cplx(m2), D.value - 2.0) * std::pow(cplx(4.0 * kPi), -D.value) * g1 * g1;
  v.two_loop.pole_flag = ps.flag;
  return v;
}

}  // namespace negdim
