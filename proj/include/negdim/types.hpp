#pragma once
#include <complex>
#include <string>

namespace negdim {

using cplx = std::complex<double>;

enum class DimClass { positive, negative, complex, near_pole };

const char* dim_class_name(DimClass c);

struct Dimension {
  cplx value{4.0, 0.0};
  double pole_tolerance = 1e-8;

  Dimension() = default;
  Dimension(double re) : value(re, 0.0) {}
  Dimension(cplx v, double tol = 1e-8) : value(v), pole_tolerance(tol) {}

  double re() const { return value.real(); }
  double im() const { return value.imag(); }
  bool is_real() const { return value.imag() == 0.0; }

  // Even nonzero integers: poles of Gamma(1 - D/2) for D > 0, excluded set for D < 0.
  bool near_pole() const;
  DimClass classify() const;
};

struct ToleranceConfig {
  double abs_tol = 1e-16;
  double rel_tol = 1e-15;
  long max_terms = 200000;
  int quad_points = 15;
  double eps_reg = 1e-2;

  void validate() const;
};

enum class Convergence { converged, absolutely, except_at_one, diverges };

const char* convergence_name(Convergence c);

struct EvalResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  Convergence status = Convergence::converged;
  long terms = 0;
  std::string phase;  // symbolic phase carried alongside the Euclidean magnitude

  double real() const { return value.real(); }
};

}  // namespace negdim
