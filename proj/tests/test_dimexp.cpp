#include <cmath>

#include "doctest.h"
#include "negdim/dimexp.hpp"
#include "negdim/errors.hpp"
#include "negdim/specfun.hpp"

using namespace negdim;

namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

double A(double x) { return a1_exact(Dimension(-x)); }

// J_0 from its power series, first zero by bisection.
double j0_first_zero() {
  auto j0 = [](double x) {
    double s = 0, t = 1;
    for (int k = 0; k < 60; ++k) {
      s += t;
      t *= -(x * x / 4) / ((k + 1.0) * (k + 1.0));
    }
    return s;
  };
  double a = 2, b = 3;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (j0(m) > 0 ? a : b) = m;
  }
  return a;
}

}  // namespace

TEST_CASE("A_1 exact values") {
  CHECK(rel(a1_exact(Dimension(-1)), kPi / std::sqrt(2.0)) < 1e-14);
  CHECK(rel(a1_exact(Dimension(-2)), 2 * kPi) < 1e-14);
  CHECK(a1_exact(Dimension(0)) == 1.0);
  CHECK_THROWS_AS(a1_exact(Dimension(2)), Error);
}

TEST_CASE("A_1 series coefficients") {
  const auto s = a1_series(12);
  CHECK(s.coefficients[0] == 1.0);
  CHECK(s.radius_estimate == 2.0);
  const double l2p = std::log(2 * kPi), g = kEulerGamma;
  CHECK(rel(s.coefficients[1], 0.5 * (l2p - g)) < 1e-15);
  CHECK(rel(s.coefficients[2], (6 * l2p * l2p - 12 * g * l2p + kPi * kPi + 6 * g * g) / 48) < 1e-14);
  // published seven-digit values carry ~1e-5 rounding drift
  CHECK(std::abs(s.coefficients[1] - 0.6303389) < 5e-5);
  CHECK(std::abs(s.coefficients[2] - 0.4043101) < 5e-5);

  // finite-difference oracle in x = -D
  const double h = 1e-2;
  const double d1 = (-A(2 * h) + 8 * A(h) - 8 * A(-h) + A(-2 * h)) / (12 * h);
  const double d2 = (-A(2 * h) + 16 * A(h) - 30 * A(0) + 16 * A(-h) - A(-2 * h)) / (12 * h * h);
  CHECK(rel(s.coefficients[1], d1) < 1e-7);
  CHECK(rel(s.coefficients[2], d2 / 2) < 1e-6);

  // the full order-12 sum against the closed form well inside the radius
  for (double D : {-0.5, -0.2, 0.3}) CHECK(rel(s.partial_sum(12, D), a1_exact(Dimension(D))) < 1e-7);
  CHECK_THROWS_AS(a1_series(13), Error);
}

TEST_CASE("A_1 partial sums") {
  const auto s = a1_series(2);
  CHECK(std::abs(s.partial_sum(1, -1) - 1.630) < 5e-3);
  CHECK(std::abs(s.partial_sum(2, -1) - 2.034) < 5e-3);
  CHECK(std::abs(s.partial_sum(1, -2) - 2.261) < 5e-3);
  CHECK(std::abs(s.partial_sum(2, -2) - 3.878) < 5e-3);
}

TEST_CASE("A_1 series convergence on the negative axis") {
  const auto s = a1_series(10);
  for (double D = 0.0; D > -1.4; D -= 0.05) {
    const double ex = a1_exact(Dimension(D));
    CHECK(std::abs(s.partial_sum(10, D) - ex) < 1e-3 * ex);
  }
  // near the radius the tenth partial sum is still far off
  const double ex = a1_exact(Dimension(-1.9));
  CHECK(std::abs(s.partial_sum(10, -1.9) - ex) > 1e-3 * ex);
}

TEST_CASE("free energy") {
  for (double D : {-1.5, -0.5, 0.5}) {
    const double g = 1.3, h = 1e-5;
    const double dF = (free_energy(Dimension(D), g + h, 1).real() - free_energy(Dimension(D), g - h, 1).real()) / (2 * h);
    const double closed = 0.5 * std::pow(g / (2 * kPi), D / 2) * std::tgamma(1 - D / 2);
    CHECK(rel(g * dF, closed) < 1e-6);
  }
  for (int N = 1; N <= 5; ++N) CHECK(a_n_constant(N, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

  const double D = -0.5, x = 0.5;
  const double bracket = -1 / x + 0.5 * (kEulerGamma - std::log(4 * kPi)) - std::log(std::sqrt(2 / kPi) * std::tgamma(1.25));
  for (double g : {1.0, 2.0}) {
    const auto F = free_energy(Dimension(D), g, 2);
    CHECK(rel(F.real(), std::pow(g, -x / (4 + x)) * bracket) < 1e-14);
    CHECK(F.error > 0);
  }
  // N >= 2: A_N from the logarithmic g derivative of F
  for (int N : {2, 3}) {
    const double g = 1.0, h = 1e-6, d = -0.3;
    const double dF = (free_energy(Dimension(d), g + h, N).real() - free_energy(Dimension(d), g - h, N).real()) / (2 * h);
    CHECK(rel(a_n_constant(N, d), 2 * N * g * (1 - d / (2 * N - d * (N - 1))) * dF) < 1e-7);
  }
  try {
    free_energy(Dimension(0), 1, 2);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroDimension);
  }
}

TEST_CASE("QM eigenvalues") {
  CHECK(rel(qm_eigenvalue({Dimension(3), 0}), kPi * kPi) < 1e-12);
  CHECK(rel(qm_eigenvalue({Dimension(1), 0}), kPi * kPi / 4) < 1e-12);
  const double z = j0_first_zero();
  CHECK(rel(qm_eigenvalue({Dimension(2), 0}), z * z) < 1e-12);
  CHECK(std::abs(qm_eigenvalue({Dimension(2), 0}) - 5.78319) < 1e-5);
  CHECK(rel(qm_eigenvalue({Dimension(3), 2}), 9 * kPi * kPi) < 1e-12);
  for (int level : {0, 1}) {
    double prev = 0;
    for (double D = 1.0; D <= 6.0 + 1e-12; D += 0.25) {
      const double E = qm_eigenvalue({Dimension(D), level});
      CHECK(E > prev);
      prev = E;
    }
  }
}

TEST_CASE("QM threshold behaviour") {
  CHECK(std::abs(qm_threshold(0, 0.01).fitted_exponent - 1.0) < 0.05);
  CHECK(std::abs(qm_threshold(1, 0.01).fitted_exponent - 0.5) < 0.05);
  CHECK(std::abs(qm_threshold(2, 1e-4).fitted_exponent - 1.0 / 3) < 0.05);
  // the slope approaches its limit from above as the window shrinks
  CHECK(qm_threshold(1, 0.1).fitted_exponent > qm_threshold(1, 0.01).fitted_exponent);
  CHECK(qm_threshold(1, 0.0).energy == 0.0);
  // the truncated series root tracks the true Bessel zero near threshold
  CHECK(rel(qm_threshold(0, 0.01).energy, qm_eigenvalue({Dimension(0.01), 0})) < 1e-8);
  CHECK_THROWS_AS(qm_threshold(1, 0.1, 3), Error);
}

TEST_CASE("reference table report") {
  const auto rows = table1_report();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].exact == a1_exact(Dimension(-1)));
  CHECK(rows[1].exact == a1_exact(Dimension(-2)));
  CHECK_FALSE(rows[0].deviates[0]);
  CHECK_FALSE(rows[1].deviates[0]);
  CHECK(rows[0].deviates[1]);
  CHECK(rows[1].deviates[1]);
  CHECK(table1_report({}).empty());
}
