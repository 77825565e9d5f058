#include "negdim/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "negdim/errors.hpp"

namespace negdim::quad {

namespace {

void check(const Result& r, const char* rule) {
  if (!std::isfinite(r.value)) throw Error(Errc::NotConverged, std::string(rule) + " returned a non-finite value");
}

}  // namespace

Result gauss_kronrod(const Fn& f, double a, double b, double rel_tol, int max_depth) {
  Result r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &r.error);
  r.error *= std::abs(r.value);
  check(r, "gauss-kronrod");
  return r;
}

double gauss_legendre(const Fn& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

Result tanh_sinh(const Fn& f, double a, double b, double rel_tol) {
  static thread_local boost::math::quadrature::tanh_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  r.value = rule.integrate(f, a, b, rel_tol, &r.error, &l1);
  check(r, "tanh-sinh");
  return r;
}

Result exp_sinh(const Fn& f, double a, double rel_tol) {
  static thread_local boost::math::quadrature::exp_sinh<double> rule;
  Result r;
  double l1 = 0.0;
  r.value = rule.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1);
  check(r, "exp-sinh");
  return r;
}

Result half_line(const Fn& f, double a, double split, double rel_tol) {
  const Result lo = tanh_sinh(f, a, a + split, rel_tol);
  const Result hi = exp_sinh(f, a + split, rel_tol);
  return {lo.value + hi.value, lo.error + hi.error};
}

Result alternating_tail(const std::function<double(int)>& segment, int n_segments) {
  std::vector<double> partial;
  partial.reserve(n_segments);
  double s = 0.0;
  for (int k = 0; k < n_segments; ++k) {
    s += segment(k);
    partial.push_back(s);
  }
  // Repeated averaging of partial sums (Euler transform of the alternating tail).
  const std::size_t keep = std::min<std::size_t>(partial.size(), 16);
  std::vector<double> row(partial.end() - keep, partial.end());
  double prev = row.back();
  while (row.size() > 1) {
    std::vector<double> next(row.size() - 1);
    for (std::size_t i = 0; i + 1 < row.size(); ++i) next[i] = 0.5 * (row[i] + row[i + 1]);
    prev = row.back();
    row.swap(next);
  }
  return {row[0], std::abs(row[0] - prev)};
}

}  // namespace negdim::quad
