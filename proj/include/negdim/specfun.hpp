#pragma once
#include <vector>

#include "negdim/types.hpp"

namespace negdim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr double kDefaultPoleTol = 1e-8;

// True when x lies within tol of {0, -1, -2, ...}.
bool near_gamma_pole(cplx x, double tol = kDefaultPoleTol);

cplx gamma_fn(cplx x, double pole_tol = kDefaultPoleTol);
double gamma_fn(double x, double pole_tol = kDefaultPoleTol);

// Principal branch of log Gamma, valid off the poles.
cplx lgamma(cplx x);

// 1/Gamma(x); exactly zero at the poles.
cplx rgamma(cplx x, double pole_tol = kDefaultPoleTol);

// (z, n) = Gamma(z + n) / Gamma(z) for any integer n.
cplx pochhammer(cplx z, long n, double pole_tol = kDefaultPoleTol);
// 1 / (z, n), zero where (z, n) has a pole.
cplx rpochhammer(cplx z, long n, double pole_tol = kDefaultPoleTol);

struct GammaFlip {
  cplx sign;                // (-1)^theta on the principal branch
  std::vector<cplx> numerator;    // 1 - beta_j
  std::vector<cplx> denominator;  // 1 - alpha_i
};

// prod Gamma(alpha) / prod Gamma(beta) -> sign * prod Gamma(1 - beta) / prod Gamma(1 - alpha).
// The sign is exact when the arguments pair up with integer offsets; otherwise
// the flip is the formal continuation step and flip_reflection_factor gives the exact factor.
GammaFlip gamma_ratio_flip(const std::vector<cplx>& alpha, const std::vector<cplx>& beta, cplx theta,
                           double rel_tol = 1e-9);

// Exact factor F with prod G(alpha)/prod G(beta) = F * prod G(1-beta)/prod G(1-alpha).
cplx flip_reflection_factor(const std::vector<cplx>& alpha, const std::vector<cplx>& beta);

// Product of Gamma ratios evaluated directly.
cplx gamma_product(const std::vector<cplx>& numerator, const std::vector<cplx>& denominator);

enum class BesselKind { J, Y, I, K };

double bessel(BesselKind kind, double order, double x);

// K from the difference (pi/2)(I_{-nu} - I_nu)/sin(nu pi); integer orders by a symmetric limit.
// Loses accuracy to cancellation once x grows past a few units.
double bessel_k_from_i_difference(double order, double x);

Convergence classify_2f1(cplx a, cplx b, cplx c);

EvalResult gauss_2f1(cplx a, cplx b, cplx c, cplx z, const ToleranceConfig& tol = {});

// One Pochhammer factor (base, c0*n0 + c1*n1) of a one- or two-index series term.
struct PochFactor {
  cplx base;
  int c0 = 0;
  int c1 = 0;
};

// sum over n0, n1 >= 0 of prod(num) / prod(den) * z0^n0 * z1^n1. Factorials must be listed in den.
struct HyperSeries {
  std::vector<PochFactor> num;
  std::vector<PochFactor> den;
  cplx z0{0.0, 0.0};
  cplx z1{0.0, 0.0};
  int nvars = 2;
};

cplx series_term(const HyperSeries& s, long n0, long n1);

// Largest exponential growth rate of |term| over directions; negative means convergent.
// Returns +inf for factorially growing series and -inf for entire ones.
double series_growth_rate(const HyperSeries& s);

// Diagonal summation with a geometric tail estimate.
EvalResult sum_series(const HyperSeries& s, const ToleranceConfig& tol = {});

HyperSeries appell_f4_series(cplx alpha, cplx beta, cplx gamma1, cplx gamma2, cplx x, cplx y);

EvalResult appell_f4(cplx alpha, cplx beta, cplx gamma1, cplx gamma2, cplx x, cplx y,
                     const ToleranceConfig& tol = {});

}  // namespace negdim
