#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "negdim/types.hpp"

namespace negdim {

enum class Branch { positive, negative };

struct RadialMeasureSpec {
  Dimension dimension;
  Branch branch = Branch::positive;
  double eps = 1e-2;  // regulator of the negative branch

  void validate() const;
};

struct ExpansionCoefficients {
  std::vector<cplx> c;
  int order = 0;
};

using RealFn = std::function<double(double)>;

// 2 pi^{D/2} / Gamma(D/2)
cplx sphere_area(const Dimension& D);

double radial_weight(const RadialMeasureSpec& spec, double r);

// Integral of f against the radial measure over (0, inf). The negative branch is extrapolated
// to eps -> 0 over eps_k = tol.eps_reg * 2^-k, k = 0..9.
EvalResult radial_integral(const RadialMeasureSpec& spec, const RealFn& f, const ToleranceConfig& tol = {});

ExpansionCoefficients expansion_coefficients(const RealFn& f, const RealFn& f_prime, int order, Branch branch,
                                             double eps = 1e-8);

// pi^{D/2} / Gamma(1 + D/2) * sum_n c_n D^n / n!
cplx expansion_value(const ExpansionCoefficients& c, double D);

// Fourier transform of r^lambda in D dimensions: C |k|^{-lambda - D}.
std::pair<double, double> power_law_fourier(double lambda, const Dimension& D);

// Limit of a sequence sampled at strictly decreasing eps, by Wynn's epsilon algorithm.
EvalResult eps_extrapolate(const std::vector<std::pair<double, double>>& samples);

}  // namespace negdim
