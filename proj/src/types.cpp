#include "negdim/types.hpp"

#include <cmath>

#include "negdim/errors.hpp"

namespace negdim {

const char* dim_class_name(DimClass c) {
  switch (c) {
    case DimClass::positive: return "positive";
    case DimClass::negative: return "negative";
    case DimClass::complex: return "complex";
    case DimClass::near_pole: return "near-pole";
  }
  return "unknown";
}

bool Dimension::near_pole() const {
  const double re = value.real();
  const double k = std::round(re / 2.0);
  if (k == 0.0) return false;
  return std::abs(value - cplx(2.0 * k, 0.0)) < pole_tolerance;
}

DimClass Dimension::classify() const {
  if (near_pole()) return DimClass::near_pole;
  if (std::abs(value.imag()) > pole_tolerance) return DimClass::complex;
  return value.real() > 0 ? DimClass::positive : DimClass::negative;
}

void ToleranceConfig::validate() const {
  if (!(abs_tol > 0 && rel_tol > 0 && max_terms > 0 && quad_points > 0 && eps_reg > 0))
    throw Error(Errc::InvalidInput, "tolerances must be strictly positive");
  if (!(eps_reg < 1)) throw Error(Errc::InvalidInput, "eps_reg must be < 1");
}

const char* convergence_name(Convergence c) {
  switch (c) {
    case Convergence::converged: return "converged";
    case Convergence::absolutely: return "converges-absolutely";
    case Convergence::except_at_one: return "converges-except-z=1";
    case Convergence::diverges: return "diverges";
  }
  return "unknown";
}

}  // namespace negdim
