#include "negdim/spectral.hpp"

#include <cmath>
#include <random>
#include <string>

#include "negdim/errors.hpp"
#include "negdim/specfun.hpp"

namespace negdim {

namespace {

double dist2(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(Errc::InvalidInput, "points have different lengths");
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return s;
}

void check_dimension_range(double spec_dim, double D_f, double l) {
  if (!(l > 0)) throw Error(Errc::DomainError, "minimal length must be positive");
  if (D_f == 0) throw Error(Errc::ZeroDimension, "D_f must be nonzero");
  if (spec_dim == D_f) throw Error(Errc::SaturatedClock, "spectral dimension D_f is reached only as s -> inf");
  // 0 <= D < D_f on the positive branch, D_f < D <= 0 on the negative one
  const double t = spec_dim / D_f;
  if (!(t >= 0 && t < 1))
    throw Error(Errc::DomainError, "spectral dimension " + std::to_string(spec_dim) + " outside the range set by D_f");
}

}  // namespace

void DiffusionConfig::validate() const {
  if (!(minimal_length > 0)) throw Error(Errc::DomainError, "minimal length must be positive");
  if (!(diffusion_time >= 0)) throw Error(Errc::DomainError, "diffusion time must be non-negative");
}

double heat_kernel(const std::vector<double>& x, const std::vector<double>& y, const DiffusionConfig& cfg) {
  cfg.validate();
  const double w = cfg.diffusion_time + cfg.minimal_length * cfg.minimal_length;
  return std::pow(4.0 * kPi * w, -0.5 * cfg.topological_df) * std::exp(-dist2(x, y) / (4.0 * w));
}

double return_probability(const DiffusionConfig& cfg) { return heat_kernel({}, {}, cfg); }

double spectral_dimension(const DiffusionConfig& cfg) {
  cfg.validate();
  const double s = cfg.diffusion_time;
  if (!(s > 0)) throw Error(Errc::DomainError, "spectral dimension needs s > 0");
  // the ratio first: s / (s + l^2) is exactly 1/2 at s = l^2
  return cfg.topological_df * (s / (s + cfg.minimal_length * cfg.minimal_length));
}

double spectral_dimension_from_kernel(const DiffusionConfig& cfg) {
  if (!(cfg.diffusion_time > 0)) throw Error(Errc::DomainError, "spectral dimension needs s > 0");
  const double h = 1e-4;
  DiffusionConfig up = cfg, dn = cfg;
  up.diffusion_time = cfg.diffusion_time * std::exp(h);
  dn.diffusion_time = cfg.diffusion_time * std::exp(-h);
  return -2.0 * (std::log(return_probability(up)) - std::log(return_probability(dn))) / (2.0 * h);
}

double diffusion_clock(double spec_dim, double D_f, double l) {
  check_dimension_range(spec_dim, D_f, l);
  return spec_dim * l * l / (D_f - spec_dim);
}

double kernel_by_dimension(const std::vector<double>& x, const std::vector<double>& y, double spec_dim, double D_f,
                           double l) {
  check_dimension_range(spec_dim, D_f, l);
  const double g = (D_f - spec_dim) / (D_f * l * l);
  return std::pow(g / (4.0 * kPi), 0.5 * D_f) * std::exp(-dist2(x, y) * g / 4.0);
}

void BoxExperiment::validate() const {
  if (!(window > 0)) throw Error(Errc::InvalidInput, "window must be positive");
  if (!(scale > 1)) throw Error(Errc::InvalidInput, "scale b must exceed 1");
  if (!(1.0 / scale < window)) throw Error(Errc::InvalidInput, "blob does not fit in the window");
  if (trials < 1) throw Error(Errc::InsufficientTrials, "need at least one trial");
}

double box_intersection_probability(double window, double scale) {
  const double d = 1.0 / scale, w = window - d;  // centers range over [d/2, L - d/2]
  if (d >= w) return 1.0;
  const double t = d / w;
  return 2.0 * t - t * t;
}

BoxRung box_intersection_mc(const BoxExperiment& exp, std::uint64_t stream) {
  exp.validate();
  std::seed_seq seq{std::uint32_t(exp.seed), std::uint32_t(exp.seed >> 32), std::uint32_t(stream)};
  std::mt19937_64 rng(seq);
  const double d = 1.0 / exp.scale;
  std::uniform_real_distribution<double> pos(0.5 * d, exp.window - 0.5 * d);
  long hits = 0;
  for (long i = 0; i < exp.trials; ++i) {
    pos(rng);  // blob abscissa; a horizontal strip ignores it
    const double py = pos(rng);
    const double ly = pos(rng);
    if (std::abs(py - ly) < d) ++hits;
  }
  BoxRung r;
  r.scale = exp.scale;
  r.en = double(hits) / double(exp.trials);
  r.stderr_en = std::sqrt(r.en * (1.0 - r.en) / double(exp.trials));
  return r;
}

std::vector<double> default_box_ladder() {
  std::vector<double> b;
  for (int k = 4; k <= 12; ++k) b.push_back(std::ldexp(1.0, k));
  return b;
}

BoxDimensionResult box_dimension_mc(const BoxExperiment& exp, const std::vector<double>& ladder) {
  exp.validate();
  if (exp.trials < 1000) throw Error(Errc::InsufficientTrials, "the dimension path needs at least 1000 trials per rung");
  if (ladder.size() < 2) throw Error(Errc::InvalidInput, "ladder needs at least two scales");
  BoxDimensionResult out;
  out.at_scale = box_intersection_mc(exp, 0);
  // weighted least squares of ln EN on ln b, weights 1/var(ln EN)
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    BoxExperiment e = exp;
    e.scale = ladder[k];
    const BoxRung r = box_intersection_mc(e, k + 1);
    if (r.en == 0.0 || r.en == 1.0)
      throw Error(Errc::InsufficientTrials, "no spread in hits at b = " + std::to_string(ladder[k]));
    out.rungs.push_back(r);
    const double x = std::log(r.scale), y = std::log(r.en);
    const double w = 1.0 / std::pow(r.stderr_en / r.en, 2);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  const double det = sw * sxx - sx * sx;
  out.dimension_estimate = (sw * sxy - sx * sy) / det;
  out.stderr_dimension = std::sqrt(sw / det);
  return out;
}

}  // namespace negdim
