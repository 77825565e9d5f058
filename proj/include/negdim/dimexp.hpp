#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "negdim/types.hpp"

namespace negdim {

// Power series in x = -D about D = 0.
struct SeriesExpansion {
  std::vector<double> coefficients;
  double expansion_point = 0.0;
  double radius_estimate = 0.0;

  // sum_{j <= k} a_j (-D)^j
  double partial_sum(int k, double D) const;
};

struct EigenvalueQuery {
  Dimension dimension;
  int level = 0;
};

// (2 pi)^{-D/2} Gamma(1 - D/2), D < 2.
double a1_exact(const Dimension& D);

inline constexpr int kMaxA1Order = 12;

SeriesExpansion a1_series(int order);

// Free energy of the phi^{2N} theory: exact for N = 1, leading Laurent terms for N >= 2
// with the O(D) remainder reported as the error.
EvalResult free_energy(const Dimension& D, double g, int N);

// A_N = 2N g (1 - D/(2N - D(N - 1))) dF/dg at g = 1, with the 1/D pole cancelled.
double a_n_constant(int N, double D);

// E = z^2 for the (level + 1)-th positive zero z of J_{D/2 - 1}.
double qm_eigenvalue(const EigenvalueQuery& q);

struct ThresholdResult {
  double energy = 0.0;
  double fitted_exponent = 0.0;
};

// Smallest positive root of the small-E Bessel series at D = -2n + offset, and the
// log-log slope of E against the offset over the decade below it.
ThresholdResult qm_threshold(int n, double d_offset, int truncation = -1);

struct Table1Row {
  double dimension = 0.0;
  std::vector<int> orders;
  std::vector<double> partial_sums;
  std::vector<std::optional<double>> printed;  // values printed in the reference table
  std::vector<bool> deviates;                  // computed and printed differ beyond print precision
  double exact = 0.0;
};

inline constexpr double kTable1PrintTolerance = 5e-3;

std::vector<Table1Row> table1_report(const std::vector<int>& orders = {1, 2});

}  // namespace negdim
