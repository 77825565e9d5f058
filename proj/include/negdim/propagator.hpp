#pragma once
#include "negdim/types.hpp"

namespace negdim {

struct PropagatorQuery {
  int topological_dimension = 4;
  Dimension continuation_dimension{4.0};
  double separation = 1.0;
  double mass = 1.0;

  void validate() const;
};

// Real part of the multifractal measure exponent; the propagator formulas use the negative branch.
struct MeasureExponent {
  double alpha = -0.25;
};

// (2 pi)^{-D/2} (m/r)^{D/2-1} K_{D/2-1}(m r), the Euclidean two-point function of a free scalar.
EvalResult schwinger(const Dimension& D, double r, double m);

// (2 pi)^{-D/2} r^{1-D/2} int_0^inf rho^{D/2} J_{D/2-1}(rho r) / (rho^2 + m^2) d rho by segmentwise
// quadrature between Bessel zeros and an averaged alternating tail.
EvalResult schwinger_radial_quadrature(const Dimension& D, double r, double m);

// Same value as schwinger(D_f, r, m); D_t only records the embedding. At m = 0 the massless form is
// returned for D_f > 2 and a divergence flag for D_f <= 2.
EvalResult schwinger_fractional(const PropagatorQuery& q);

// 2 pi^{D_t/2} / Gamma(D_t/2)
double omega(int D_t);

// -r^{2 + D_t|a|} / (Omega (2 + D_t|a|))
double multifractal_massless(int D_t, const MeasureExponent& a, double r);

// (2r/m)^nu K_nu(m r) / (Omega Gamma(1 - nu)), nu = (2 + D_t|a|)/2. Integer nu is excluded.
double multifractal_massive(int D_t, const MeasureExponent& a, double r, double m);

// The massive form split by K_nu = pi/(2 sin nu pi) (I_{-nu} - I_nu): `regular` is the I_{-nu} part,
// which the radial operator annihilates near the origin, and `matched` the I_nu part, whose m -> 0
// limit is the massless propagator.
struct MultifractalSplit {
  double regular = 0.0;
  double matched = 0.0;
};
MultifractalSplit multifractal_massive_split(int D_t, const MeasureExponent& a, double r, double m);

// m > 0: m^{-2} 2F1(D_t a/2, 1; D_t/2; -k^2/m^2) with its boundary class in `status`.
// m = 0: -(D_t - 2) / (Omega (2 + D_t|a|)) k^{-2}.
EvalResult momentum_propagator(int D_t, const MeasureExponent& a, double k, double m);

}  // namespace negdim
