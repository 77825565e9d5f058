#pragma once
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "negdim/specfun.hpp"
#include "negdim/types.hpp"

namespace negdim {

using Rational = boost::rational<long long>;

// One-loop integral over d^Dk / pi^{D/2} (Euclidean magnitude of the i pi^{D/2} normalization)
// of prod 1/(A_i)^{v_i}. A single momentum scale, when present, couples propagators 1 and 2.
struct LoopIntegralSpec {
  std::vector<double> powers;
  std::vector<double> masses2;
  std::vector<double> scales2;
  Dimension dimension;

  int n() const { return int(powers.size()); }
  int q() const { return int(scales2.size()); }
  int m() const;  // number of nonzero masses
  void validate() const;
};

// c0 + cD * D + sum cv_i v_i + sum cn_j n_j with exact rational coefficients.
struct Affine {
  Rational c0{0}, cD{0};
  std::vector<Rational> cv;
  std::vector<Rational> cn;

  Affine() = default;
  Affine(int nv, int nf) : cv(nv, 0), cn(nf, 0) {}

  Affine operator+(const Affine& o) const;
  Affine operator-(const Affine& o) const;
  Affine operator*(Rational k) const;
  bool operator==(const Affine& o) const;

  bool index_free() const;
  bool constant() const;  // no D, v or index dependence
  Affine index_free_part() const;
  cplx eval(cplx D, const std::vector<double>& v) const;
  std::string str() const;
};

enum class VarKind { p, q, m };

struct Variable {
  VarKind kind;
  int index;        // 1-based label
  int propagator;   // m: propagator carrying the mass; p: its propagator; q: -1
  int scale;        // -1 for p; 0 for Q^2; 1 + k for the k-th nonzero mass
  std::string name() const;
};

struct ConstraintSystem {
  std::vector<Variable> variables;
  std::vector<std::vector<int>> rows;  // (n + 1) x variables
  std::vector<Affine> rhs;             // -v_i, then -D/2
  int nv = 0;                          // number of powers
};

struct Solution {
  std::vector<int> solved;
  std::vector<int> free;
  std::vector<Affine> assignment;  // per variable, affine in D, v and the free indices
};

struct PochTerm {
  Affine base;
  std::vector<int> coef;  // per free index
};

struct ScaleRatio {
  std::vector<std::pair<int, int>> powers;  // (scale id, exponent)
  bool negative = false;
};

struct HyperSeriesDescriptor {
  Solution solution;
  std::vector<Affine> raw_num, raw_den;  // index-free Gamma arguments before flipping
  Affine theta;
  std::vector<Affine> pre_num, pre_den;  // after flipping and cancellation
  double residue_factor = 1.0;           // from cancelled constant poles
  bool vanishes = false;                 // more constant poles below than above
  bool singular = false;                 // more constant poles above than below
  std::vector<std::pair<int, Affine>> scale_powers;
  std::vector<PochTerm> sum_num, sum_den;
  std::vector<ScaleRatio> ratios;
};

ConstraintSystem build_system(const LoopIntegralSpec& spec);

std::vector<Solution> enumerate_solutions(const ConstraintSystem& system);

HyperSeriesDescriptor to_descriptor(const Solution& solution, const ConstraintSystem& system);

struct DescriptorValue {
  EvalResult result;
  bool converges = false;
  double growth_rate = 0.0;
};

DescriptorValue evaluate_descriptor(const HyperSeriesDescriptor& d, const LoopIntegralSpec& spec,
                                    const ToleranceConfig& tol = {});

// Sum of every solution whose series converges at the spec's scales.
EvalResult eval_loop_integral(const LoopIntegralSpec& spec, const ToleranceConfig& tol = {});

EvalResult eval_massless_bubble(const Dimension& D, double v1, double v2, double Q2);

EvalResult eval_massive_bubble(const Dimension& D, double v1, double v2, double Q2, double M1_2, double M2_2,
                               const ToleranceConfig& tol = {}, bool validate = false);

// Feynman-parameter representation of the two-mass bubble in the same normalization.
EvalResult bubble_parametric_oracle(double D, double v1, double v2, double Q2, double M1_2, double M2_2);

std::string scale_name(int id, const LoopIntegralSpec& spec);

}  // namespace negdim
