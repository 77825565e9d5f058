#pragma once
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "negdim/measure.hpp"
#include "negdim/types.hpp"

namespace negdim {

// Minkowski phase i^k carried symbolically; evaluation stays Euclidean.
struct PhaseTag {
  double quarter_turns = 0.0;

  PhaseTag operator*(const PhaseTag& o) const { return {quarter_turns + o.quarter_turns}; }
  cplx value() const;
  std::string str() const;
};

// i (-1)^n
PhaseTag minkowski_phase(double n);

struct MasterResult {
  cplx value{0.0, 0.0};
  PhaseTag phase;
  bool pole_flag = false;  // some Gamma argument sat within kPoleWarnDistance of a pole
};

// Gamma arguments closer than this to a pole set pole_flag; closer than the
// dimension's pole_tolerance they raise.
inline constexpr double kPoleWarnDistance = 1e-4;

struct MetricSpec {
  Eigen::MatrixXd entries;
  double liv_parameter = 0.0;

  int dimension_count() const { return int(entries.rows()); }
  void validate() const;

  static MetricSpec euclidean(int n);
  // eta + a e0 e0^T with eta Euclidean.
  static MetricSpec liv(int n, double a);
};

// Flattened rank-2 or rank-4 tensor over dimension_count indices.
struct TensorResult {
  int rank = 2;
  int dim = 0;
  std::vector<double> data;
  PhaseTag phase;
  bool pole_flag = false;

  double at(int i, int j) const { return data[i * dim + j]; }
  double at(int i, int j, int k, int l) const { return data[((i * dim + j) * dim + k) * dim + l]; }
};

// (4 pi)^{-D/2}
cplx gaussian_integral(const Dimension& D);

struct TadpoleResult {
  MasterResult scalar;
  MasterResult vector_coefficient;  // coefficient of q_mu: -scalar
};

TadpoleResult tadpole(const Dimension& D, double n, double m2, double q2);

MasterResult moment_integral(const Dimension& D, double n, int moment, double delta);

TensorResult tensor_integral(const Dimension& D, double n, double delta, int rank, const MetricSpec& metric);

// Equal-mass bubble with propagator powers n and k at external momentum squared K2.
EvalResult feynman_param_bubble(const Dimension& D, double n, double k, double m2, double K2,
                                const ToleranceConfig& tol = {});

// Taylor coefficients of g(u) at u = 0 by central differences with Richardson refinement.
std::vector<double> taylor_coefficients(const std::function<double(double)>& g, int order, double h = 1e-3);

// Radial integral of f(p^2) with l + 1 Taylor terms subtracted below the split point a,
// continued in D. Valid for -2l - 2 < D, away from D = -2j.
EvalResult gelfand_collins(const std::function<double(double)>& f, const Dimension& D, int l, double split = 1.0,
                           const ToleranceConfig& tol = {});

enum class WeylKind { power, gauss, gauss_drift };

struct WeylParams {
  double n = 1.0;
  double l = 1.0;
  double delta = 1.0;
  double gamma = 0.0;
};

cplx weyl_closed(WeylKind kind, const WeylParams& p, const Dimension& D);

struct VacuumResult {
  MasterResult one_loop;
  MasterResult two_loop;
};

VacuumResult vacuum_diagrams(const Dimension& D, double m2, double g);

}  // namespace negdim
