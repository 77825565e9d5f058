#pragma once
#include <functional>
#include <vector>

namespace negdim {

// v = 1 (none), 1 + a t^{-beta} (plus) or -1 + t^{-beta} (minus).
enum class WeightVariant { none, plus, minus };

struct WeightSpec {
  WeightVariant variant = WeightVariant::none;
  double amplitude = 1.0;  // a, used by plus only
  double beta = 1.0;
};

// Bracket of the continuity equation: (D_t - 1) H is normative, (D_t - 1) Hdot is kept for comparison.
enum class ContinuityReading { hubble, hubble_dot };

struct CosmoParams {
  double kappa2 = 1.0;
  double lambda = 0.0;
  int curvature = 0;  // k in {-1, 0, 1}
  int D_t = 4;
  double eos_w = 0.0;  // p = w rho
  WeightSpec weight;
  double omega = 0.0;                // kinetic weight coefficient, monitored only
  double nonminimal_coupling = 0.0;  // derivative coupling; any nonzero value is rejected at run time
  ContinuityReading reading = ContinuityReading::hubble;

  void validate() const;
};

struct CosmoState {
  double t = 1.0;
  double a = 1.0;
  double H = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double phi_dot = 0.0;
};

struct CosmoDerivative {
  double a_dot = 0.0;
  double H_dot = 0.0;
  double rho_dot = 0.0;
  double phi_dot = 0.0;
  double phi_ddot = 0.0;
};

enum class FriedmannVariant { standard, negative_fractal, flat_neg };

struct Weight {
  double v = 1.0;
  double v_dot = 0.0;
  double v_ddot = 0.0;
};

Weight weight_v(double t, const CosmoParams& p);

// First t with |v - v_inf| <= tol, where v_inf = +1 or -1.
double weight_settle_time(const CosmoParams& p, double tol);

// V and V'. The scalar field is a test field: it feels H and v but does not source the geometry.
struct Potential {
  std::function<double(double)> V = [](double) { return 0.0; };
  std::function<double(double)> V_prime = [](double) { return 0.0; };
};

// H^2 - (sign kappa^2 rho + lambda) * 2/((D_t-1)(D_t-2)) + k/a^2, sign -1 for the negative-fractal variants.
double friedmann_constraint(const CosmoState& s, const CosmoParams& p, FriedmannVariant variant);

// Positive root H of the active constraint; DomainError if H^2 < 0.
double hubble_on_constraint(double a, double rho, const CosmoParams& p, FriedmannVariant variant);

CosmoDerivative friedmann_rhs(const CosmoState& s, const CosmoParams& p, FriedmannVariant variant,
                              const Potential& pot = {});

// rho_dot + [(D_t - 1) H + v_dot/v](rho + p), or with Hdot in place of H under the compatibility reading.
double continuity_residual(const CosmoState& s, const CosmoDerivative& d, const CosmoParams& p);

struct ScalarFieldRhs {
  double phi_dot = 0.0;
  double phi_ddot = 0.0;
  double rho_phi = 0.0;
  double p_phi = 0.0;
};

ScalarFieldRhs scalar_field_rhs(const CosmoState& s, const CosmoParams& p, const Potential& pot);

// H^2 + (D_t-1) Hdot + 2k/a^2 + box v/v + H vdot/v + omega (v box v - vdot^2), with box v = -vddot - (D_t-1) H vdot.
double gravitational_residual(const CosmoState& s, double H_dot, const CosmoParams& p);

struct CosmoDiagnostics {
  double max_constraint_drift = 0.0;      // relative to the largest term of the constraint
  double max_continuity_residual = 0.0;   // relative drift of rho (a^{D_t-1} v)^{1+w}
  double max_gravitational_residual = 0.0;
  long steps = 0;
};

struct CosmoSample {
  CosmoState state;
  double constraint_drift = 0.0;
  double continuity_residual = 0.0;
};

struct Trajectory {
  std::vector<CosmoSample> samples;
  CosmoDiagnostics diagnostics;
};

// Classical fourth-order Runge-Kutta with fixed step dt, sampled every step.
Trajectory integrate(const CosmoState& initial, const CosmoParams& p, FriedmannVariant variant, double t_end, double dt,
                     const Potential& pot = {});

// Least-squares slope of ln a against ln t.
double fit_scale_exponent(const Trajectory& tr);

}  // namespace negdim
