#pragma once
#include <cstdint>
#include <vector>

namespace negdim {

// Signed D_f: the positive branch for D_f > 0, the negative branch for D_f < 0.
struct DiffusionConfig {
  double topological_df = 4.0;
  double minimal_length = 1.0;
  double diffusion_time = 0.0;

  void validate() const;
};

// [4 pi (s + l^2)]^{-D_f/2} exp(-|x - y|^2 / (4 (s + l^2)))
double heat_kernel(const std::vector<double>& x, const std::vector<double>& y, const DiffusionConfig& cfg);

// Kernel diagonal, the flat-space return probability.
double return_probability(const DiffusionConfig& cfg);

// s D_f / (s + l^2)
double spectral_dimension(const DiffusionConfig& cfg);

// -2 d ln P / d ln s from the kernel diagonal by a central difference in ln s.
double spectral_dimension_from_kernel(const DiffusionConfig& cfg);

// s = D l^2 / (D_f - D), the inverse of spectral_dimension.
double diffusion_clock(double spec_dim, double D_f, double l);

// The kernel parameterized by the spectral dimension instead of s.
double kernel_by_dimension(const std::vector<double>& x, const std::vector<double>& y, double spec_dim, double D_f,
                           double l);

struct BoxExperiment {
  double window = 1.0;
  double scale = 16.0;
  long trials = 1000000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct BoxRung {
  double scale = 0.0;
  double en = 0.0;
  double stderr_en = 0.0;
};

struct BoxDimensionResult {
  BoxRung at_scale;  // the experiment's own scale
  std::vector<BoxRung> rungs;
  double dimension_estimate = 0.0;
  double stderr_dimension = 0.0;
};

// Exact intersection probability of a blob and a strip of width 1/b, both uniform and fully inside the
// window, meeting when their centers are closer than 1/b.
double box_intersection_probability(double window, double scale);

// Monte Carlo estimate of EN at one scale; the stream is seeded from (seed, stream).
BoxRung box_intersection_mc(const BoxExperiment& exp, std::uint64_t stream = 0);

std::vector<double> default_box_ladder();  // 2^4 .. 2^12

// EN at the experiment's scale plus the weighted least-squares slope of ln EN against ln b over a ladder.
BoxDimensionResult box_dimension_mc(const BoxExperiment& exp, const std::vector<double>& ladder = default_box_ladder());

}  // namespace negdim
