#include <cmath>
#include <random>

#include "doctest.h"
#include "negdim/errors.hpp"
#include "negdim/masterint.hpp"
#include "negdim/ndim.hpp"
#include "negdim/quadrature.hpp"
#include "negdim/specfun.hpp"

using namespace negdim;

namespace {

double rel(cplx a, cplx b) { return std::abs(a / b - 1.0); }

LoopIntegralSpec bubble(double D, double M1, double M2, double v1 = 1, double v2 = 1, double Q2 = 1) {
  return {{v1, v2}, {M1, M2}, {Q2}, Dimension(D)};
}

std::string names(const Solution& s, const ConstraintSystem& sys) {
  std::string out;
  for (int j : s.solved) out += sys.variables[j].name();
  return out;
}

// int_0^1 x^{a-1} (1-x)^{b-1} dx continued to a, b < 0: split at 1/2; near each endpoint the
// low Taylor terms of the smooth factor are integrated exactly and the tail by quadrature.
double continued_beta(double a, double b) {
  auto half = [](double a, double b) {
    const int K = std::max(0, int(std::ceil(-a)) + 1);
    std::vector<double> c(80);
    c[0] = 1;
    for (int k = 1; k < 80; ++k) c[k] = c[k - 1] * (k - b) / k;  // (1 - x)^{b-1} coefficients
    double exact = 0;
    for (int k = 0; k < K; ++k) exact += c[k] * std::pow(0.5, a + k) / (a + k);
    auto tail = [&](double x) {
      double s = 0, p = 1;
      for (int k = K; k < 80; ++k, p *= x) s += c[k] * p;
      return std::pow(x, a - 1 + K) * s;
    };
    return exact + quad::tanh_sinh(tail, 0.0, 0.5, 1e-13).value;
  };
  return half(a, b) + half(b, a);
}

double bubble_quadrature(double D, double v1, double v2, double Q2, double M1, double M2) {
  const double e = D / 2 - v1 - v2;
  auto g = [&](double x) {
    return std::pow(x, v1 - 1) * std::pow(1 - x, v2 - 1) * std::pow(x * (1 - x) * Q2 + x * M1 + (1 - x) * M2, e);
  };
  return std::tgamma(v1 + v2 - D / 2) / (std::tgamma(v1) * std::tgamma(v2)) * quad::tanh_sinh(g, 0, 1, 1e-13).value;
}

}  // namespace

TEST_CASE("constraint system shape") {
  auto sys = build_system(bubble(3, 0.1, 0.2));
  CHECK(sys.rows.size() == 3);
  CHECK(sys.variables.size() == 5);
  // q1 + p1 = -v1 in the massless case
  auto ml = build_system(bubble(3, 0, 0));
  CHECK(ml.variables.size() == 3);
  CHECK(ml.rows[0] == std::vector<int>{1, 0, 1});
  CHECK(ml.rows[1] == std::vector<int>{0, 1, 1});
  CHECK(ml.rows[2] == std::vector<int>{1, 1, 1});
  auto tad = build_system({{1.5}, {1.0}, {}, Dimension(3)});
  CHECK(tad.rows.size() == 2);
  CHECK(tad.variables.size() == 2);
  CHECK_THROWS_AS(build_system({{1}, {1.0}, {1.0}, Dimension(3)}), Error);
  CHECK_THROWS_AS(build_system({{1, 1}, {1.0, -1.0}, {1.0}, Dimension(3)}), Error);
}

TEST_CASE("solution enumeration") {
  auto sys = build_system(bubble(3, 0.1, 0.2));
  auto sols = enumerate_solutions(sys);
  REQUIRE(sols.size() == 8);
  for (const auto& s : sols) {
    CHECK(names(s, sys) != "p1q1m2");
    CHECK(names(s, sys) != "p2q1m1");
  }
  CHECK(names(sols[0], sys) == "p1p2q1");

  auto ml = build_system(bubble(3, 0, 0));
  auto one = enumerate_solutions(ml);
  REQUIRE(one.size() == 1);
  // q1 = D/2 - v1 - v2, p1 = v2 - D/2, p2 = v1 - D/2
  Affine q(2, 0), p1(2, 0), p2(2, 0);
  q.cD = Rational(1, 2), q.cv = {-1, -1};
  p1.cD = Rational(-1, 2), p1.cv = {0, 1};
  p2.cD = Rational(-1, 2), p2.cv = {1, 0};
  CHECK(one[0].assignment[2] == q);
  CHECK(one[0].assignment[0] == p1);
  CHECK(one[0].assignment[1] == p2);

  CHECK(enumerate_solutions(build_system({{1.5}, {1.0}, {}, Dimension(3)})).size() == 1);
}

TEST_CASE("descriptor flip balance") {
  for (auto spec : {bubble(3, 0.1, 0.2), bubble(3, 0, 0.2), bubble(3, 0, 0)}) {
    auto sys = build_system(spec);
    for (const auto& s : enumerate_solutions(sys)) {
      auto d = to_descriptor(s, sys);
      CHECK(d.theta.str() == "1/2*D");
    }
  }
}

TEST_CASE("F4 descriptor of the leading solution") {
  auto sys = build_system(bubble(3, 0.1, 0.2));
  auto d = to_descriptor(enumerate_solutions(sys)[0], sys);
  std::vector<std::string> num, den;
  for (auto& t : d.sum_num) {
    CHECK(t.coef == std::vector<int>{1, 1});
    num.push_back(t.base.str());
  }
  for (auto& t : d.sum_den) den.push_back(t.base.str() + (t.coef[0] ? "/n1" : "/n2"));
  std::sort(num.begin(), num.end());
  std::sort(den.begin(), den.end());
  CHECK(num == std::vector<std::string>{"-1/2*D + v1 + v2", "1 - D + v1 + v2"});
  CHECK(den == std::vector<std::string>{"1 - 1/2*D + v1/n1", "1 - 1/2*D + v2/n2", "1/n1", "1/n2"});
  REQUIRE(d.ratios.size() == 2);
  CHECK(scale_name(d.ratios[0].powers[1].first, bubble(3, 0.1, 0.2)) == "M1^2");
  CHECK(d.ratios[0].powers[0] == std::pair{0, -1});
  CHECK(d.ratios[0].negative);

  auto ml = build_system(bubble(3, 0, 0));
  auto dm = to_descriptor(enumerate_solutions(ml)[0], ml);
  CHECK(dm.sum_num.empty());
  CHECK(dm.sum_den.empty());
  CHECK(dm.pre_num.size() == 3);
  CHECK(dm.pre_den.size() == 3);
}

TEST_CASE("denominator Gamma(0) kills a solution") {
  auto sys = build_system(bubble(3, 0.1, 0.2));
  auto sols = enumerate_solutions(sys);
  auto d = to_descriptor(sols.back(), sys);
  CHECK(names(sols.back(), sys) == "q1m1m2");
  CHECK(d.vanishes);
  CHECK(evaluate_descriptor(d, bubble(3, 0.1, 0.2)).result.value == 0.0);
}

TEST_CASE("massless bubble") {
  CHECK(rel(eval_massless_bubble(Dimension(3), 1, 1, 1).value, std::pow(kPi, 1.5)) < 1e-10);
  CHECK(rel(eval_massless_bubble(Dimension(3), 1, 1, 1).value, continued_beta(0.5, 0.5) * std::sqrt(kPi)) < 1e-10);
  CHECK(eval_massless_bubble(Dimension(3), 0, 1, 1).value == 0.0);
  CHECK_THROWS_AS(eval_massless_bubble(Dimension(4), 1, 1, 1), Error);
  // the engine and the closed form agree
  CHECK(rel(eval_loop_integral(bubble(-1.7, 0, 0, 0.8, 1.3, 2.0)).value,
            eval_massless_bubble(Dimension(-1.7), 0.8, 1.3, 2.0).value) < 1e-13);
  CHECK(rel(eval_massive_bubble(Dimension(2.5), 1, 1, 1, 0, 0).value, eval_massless_bubble(Dimension(2.5), 1, 1, 1).value) < 1e-13);
}

TEST_CASE("massless bubble against continued Beta quadrature") {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> uD(-3, -0.1), uv(0.3, 2.5);
  int done = 0;
  while (done < 50) {
    const double D = uD(rng), v1 = uv(rng), v2 = uv(rng), Q2 = 1.7;
    const double a = D / 2 - v2, b = D / 2 - v1;
    auto off = [](double x) { return std::abs(x - std::round(x)) > 1e-2; };
    if (!off(a) || !off(b) || !off(v1 + v2 - D / 2) || !off(D - v1 - v2)) continue;
    const double oracle = std::tgamma(v1 + v2 - D / 2) / (std::tgamma(v1) * std::tgamma(v2)) * continued_beta(a, b) *
                          std::pow(Q2, D / 2 - v1 - v2);
    CHECK(rel(eval_massless_bubble(Dimension(D), v1, v2, Q2).value, oracle) < 1e-6);
    ++done;
  }
}

TEST_CASE("tadpole through the engine") {
  for (double D : {-1.5, 0.5, 3.0}) {
    const double v = 1.25, M2 = 0.7;
    const auto r = eval_loop_integral({{v}, {M2}, {}, Dimension(D)});
    CHECK(rel(r.value, std::tgamma(v - D / 2) / std::tgamma(v) * std::pow(M2, D / 2 - v)) < 1e-13);
  }
}

TEST_CASE("massive bubble against Feynman-parameter quadrature") {
  const double masses[][2] = {{1e-3, 0.2}, {0.1, 0.05}, {0.2, 0.2}, {0.01, 0.01}, {0.05, 1e-3}};
  for (double D : {-1.3, -0.5, 2.5, 3.0})
    for (auto& m : masses) {
      const auto r = eval_massive_bubble(Dimension(D), 1, 1, 1, m[0], m[1]);
      CHECK(rel(r.value, bubble_quadrature(D, 1, 1, 1, m[0], m[1])) < 1e-6);
      CHECK(rel(r.value, bubble_parametric_oracle(D, 1, 1, 1, m[0], m[1]).value) < 1e-6);
    }
  // non-unit powers, one massless line
  CHECK(rel(eval_massive_bubble(Dimension(2.5), 1.3, 0.6, 2.0, 0.15, 0).value, bubble_quadrature(2.5, 1.3, 0.6, 2.0, 0.15, 0)) <
        1e-6);
  CHECK(rel(eval_massive_bubble(Dimension(3), 1, 1, 1, 0.01, 0.01).value, bubble_quadrature(3, 1, 1, 1, 0.01, 0.01)) < 1e-6);
}

TEST_CASE("heavy-mass region") {
  // only the mass-expansion solutions converge when Q^2 is small
  for (double D : {-0.5, 2.5}) {
    const auto r = eval_massive_bubble(Dimension(D), 1, 1, 0.05, 1.0, 4.0);
    CHECK(rel(r.value, bubble_quadrature(D, 1, 1, 0.05, 1.0, 4.0)) < 1e-6);
  }
}

TEST_CASE("no convergent region") {
  try {
    eval_massive_bubble(Dimension(-1), 1, 1, 1, 1, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoConvergentRegion);
  }
}

TEST_CASE("validation mode") {
  CHECK_NOTHROW(eval_massive_bubble(Dimension(2.5), 1, 1, 1, 0.1, 0.05, {}, true));
}

TEST_CASE("cross-check with the Feynman-parameter master integral") {
  // masterint uses d^Dk/(2 pi)^D, which is (4 pi)^{-D/2} times the loop normalization here
  const double D = -1, m2 = 0.1, K2 = 1;
  const auto mi = feynman_param_bubble(Dimension(D), 1, 1, m2, K2);
  const auto nd = eval_massive_bubble(Dimension(D), 1, 1, K2, m2, m2);
  CHECK(rel(mi.value, std::pow(4 * kPi, -D / 2) * nd.value) < 1e-8);
}

TEST_CASE("swap symmetry") {
  for (double D : {-1.3, 2.5}) {
    const auto a = eval_massive_bubble(Dimension(D), 1.2, 0.7, 1, 0.03, 0.12);
    const auto b = eval_massive_bubble(Dimension(D), 0.7, 1.2, 1, 0.12, 0.03);
    CHECK(rel(a.value, b.value) < 1e-12);
  }
}

TEST_CASE("scale homogeneity") {
  const double D = -0.5, v1 = 1.1, v2 = 0.9, lam = 3.7;
  const auto a = eval_massive_bubble(Dimension(D), v1, v2, 1, 0.02, 0.1);
  const auto b = eval_massive_bubble(Dimension(D), v1, v2, lam, lam * 0.02, lam * 0.1);
  CHECK(rel(b.value, std::pow(lam, D / 2 - v1 - v2) * a.value) < 1e-12);

  // three propagators, one momentum scale
  LoopIntegralSpec t{{1.1, 0.9, 1.3}, {0.05, 0, 0.1}, {1.0}, Dimension(-0.5)};
  LoopIntegralSpec ts = t;
  ts.scales2 = {lam};
  ts.masses2 = {lam * 0.05, 0, lam * 0.1};
  const auto x = eval_loop_integral(t), y = eval_loop_integral(ts);
  CHECK(rel(y.value, std::pow(lam, -0.25 - 3.3) * x.value) < 1e-10);
}
