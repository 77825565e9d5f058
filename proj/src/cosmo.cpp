#include "negdim/cosmo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "negdim/errors.hpp"

namespace negdim {

namespace {

// 2 / ((D_t - 1)(D_t - 2)), equal to 1/3 at D_t = 4
double fr_coeff(const CosmoParams& p) { return 2.0 / ((p.D_t - 1.0) * (p.D_t - 2.0)); }

double matter_sign(FriedmannVariant v) { return v == FriedmannVariant::standard ? 1.0 : -1.0; }

void check_runnable(const CosmoParams& p, FriedmannVariant variant) {
  p.validate();
  if (p.nonminimal_coupling != 0.0)
    throw Error(Errc::NotImplemented, "non-minimal derivative coupling has no FRW reduction");
  if (variant == FriedmannVariant::flat_neg && p.curvature != 0)
    throw Error(Errc::InvalidInput, "the flat negative-fractal variant needs k = 0");
}

double constraint_scale(const CosmoState& s, const CosmoParams& p) {
  const double c = fr_coeff(p);
  return std::max({s.H * s.H, c * p.kappa2 * std::abs(s.rho), c * std::abs(p.lambda),
                   std::abs(p.curvature) / (s.a * s.a), 1e-300});
}

double continuity_invariant(const CosmoState& s, const CosmoParams& p) {
  const double v = weight_v(s.t, p).v;
  return s.rho * std::pow(std::pow(s.a, p.D_t - 1.0) * std::abs(v), 1.0 + p.eos_w);
}

}  // namespace

void CosmoParams::validate() const {
  if (!(kappa2 > 0)) throw Error(Errc::InvalidInput, "kappa^2 must be positive");
  if (curvature < -1 || curvature > 1) throw Error(Errc::InvalidInput, "curvature must be -1, 0 or 1");
  if (D_t < 3) throw Error(Errc::InvalidInput, "D_t must be at least 3");
  if (weight.variant != WeightVariant::none && !(weight.beta > 0))
    throw Error(Errc::InvalidInput, "weight exponent beta must be positive");
  if (!std::isfinite(lambda) || !std::isfinite(eos_w) || !std::isfinite(omega))
    throw Error(Errc::InvalidInput, "non-finite parameter");
}

Weight weight_v(double t, const CosmoParams& p) {
  if (!(t > 0)) throw Error(Errc::DomainError, "weight needs t > 0");
  const WeightSpec& w = p.weight;
  if (w.variant == WeightVariant::none) return {};
  const double c = w.variant == WeightVariant::plus ? w.amplitude : 1.0;
  const double tb = std::pow(t, -w.beta);
  Weight out;
  out.v = (w.variant == WeightVariant::plus ? 1.0 : -1.0) + c * tb;
  out.v_dot = -w.beta * c * tb / t;
  out.v_ddot = w.beta * (w.beta + 1.0) * c * tb / (t * t);
  return out;
}

double weight_settle_time(const CosmoParams& p, double tol) {
  if (!(tol > 0)) throw Error(Errc::InvalidInput, "tolerance must be positive");
  const WeightSpec& w = p.weight;
  if (w.variant == WeightVariant::none) return 0.0;
  const double c = w.variant == WeightVariant::plus ? std::abs(w.amplitude) : 1.0;
  if (c == 0) return 0.0;
  return std::pow(tol / c, -1.0 / w.beta);
}

double friedmann_constraint(const CosmoState& s, const CosmoParams& p, FriedmannVariant variant) {
  const double c = fr_coeff(p);
  return s.H * s.H - c * (matter_sign(variant) * p.kappa2 * s.rho + p.lambda) + p.curvature / (s.a * s.a);
}

double hubble_on_constraint(double a, double rho, const CosmoParams& p, FriedmannVariant variant) {
  p.validate();
  if (!(a > 0)) throw Error(Errc::DomainError, "scale factor must be positive");
  const double h2 = fr_coeff(p) * (matter_sign(variant) * p.kappa2 * rho + p.lambda) - p.curvature / (a * a);
  if (h2 < 0) throw Error(Errc::DomainError, "constraint gives H^2 = " + std::to_string(h2) + " < 0");
  return std::sqrt(h2);
}

ScalarFieldRhs scalar_field_rhs(const CosmoState& s, const CosmoParams& p, const Potential& pot) {
  const Weight w = weight_v(s.t, p);
  const double V = pot.V(s.phi), Vp = pot.V_prime(s.phi);
  const double h = 1e-5 * std::max(1.0, std::abs(s.phi));
  const double fd = (pot.V(s.phi + h) - pot.V(s.phi - h)) / (2 * h);
  if (std::abs(fd - Vp) > 1e-4 * (1.0 + std::abs(Vp)))
    throw Error(Errc::InvalidInput, "V' does not match the derivative of V at phi = " + std::to_string(s.phi));
  ScalarFieldRhs out;
  out.phi_dot = s.phi_dot;
  out.phi_ddot = -((p.D_t - 1.0) * s.H + w.v_dot / w.v) * s.phi_dot - Vp;
  out.rho_phi = 0.5 * s.phi_dot * s.phi_dot + V;
  out.p_phi = 0.5 * s.phi_dot * s.phi_dot - V;
  return out;
}

CosmoDerivative friedmann_rhs(const CosmoState& s, const CosmoParams& p, FriedmannVariant variant,
                              const Potential& pot) {
  check_runnable(p, variant);
  if (!(s.a > 0)) throw Error(Errc::DomainError, "scale factor must be positive");
  const Weight w = weight_v(s.t, p);
  const double n = p.D_t, c = fr_coeff(p);
  const double pr = p.eos_w * s.rho;
  CosmoDerivative d;
  d.a_dot = s.a * s.H;
  switch (variant) {
    case FriedmannVariant::standard:
    case FriedmannVariant::negative_fractal:
      // Hdot + H^2 = -sign c kappa^2 ((n-3) rho + (n-1) p)/2 + c lambda
      d.H_dot = -matter_sign(variant) * 0.5 * c * p.kappa2 * ((n - 3.0) * s.rho + (n - 1.0) * pr) + c * p.lambda -
                s.H * s.H;
      break;
    case FriedmannVariant::flat_neg:
      d.H_dot = p.kappa2 * (s.rho + pr) / (n - 2.0);
      break;
  }
  d.rho_dot = -((n - 1.0) * s.H + w.v_dot / w.v) * (s.rho + pr);
  const ScalarFieldRhs f = scalar_field_rhs(s, p, pot);
  d.phi_dot = f.phi_dot;
  d.phi_ddot = f.phi_ddot;
  return d;
}

double continuity_residual(const CosmoState& s, const CosmoDerivative& d, const CosmoParams& p) {
  const Weight w = weight_v(s.t, p);
  const double h = p.reading == ContinuityReading::hubble ? s.H : d.H_dot;
  return d.rho_dot + ((p.D_t - 1.0) * h + w.v_dot / w.v) * (1.0 + p.eos_w) * s.rho;
}

double gravitational_residual(const CosmoState& s, double H_dot, const CosmoParams& p) {
  const Weight w = weight_v(s.t, p);
  const double box_v = -w.v_ddot - (p.D_t - 1.0) * s.H * w.v_dot;
  return s.H * s.H + (p.D_t - 1.0) * H_dot + 2.0 * p.curvature / (s.a * s.a) + box_v / w.v + s.H * w.v_dot / w.v +
         p.omega * (w.v * box_v - w.v_dot * w.v_dot);
}

Trajectory integrate(const CosmoState& initial, const CosmoParams& p, FriedmannVariant variant, double t_end, double dt,
                     const Potential& pot) {
  check_runnable(p, variant);
  if (!(dt > 0)) throw Error(Errc::InvalidInput, "dt must be positive");
  if (!(dt < (t_end - initial.t) / 10.0))
    throw Error(Errc::PreconditionViolated, "need dt < (t_end - t0)/10");
  if (!(initial.a > 0)) throw Error(Errc::DomainError, "scale factor must be positive");
  const double drift0 = std::abs(friedmann_constraint(initial, p, variant)) / constraint_scale(initial, p);
  if (drift0 > 1e-8)
    throw Error(Errc::PreconditionViolated, "initial state is off the constraint by " + std::to_string(drift0));

  using Vec = std::array<double, 5>;  // a, H, rho, phi, phi_dot
  auto pack = [](const CosmoState& s) { return Vec{s.a, s.H, s.rho, s.phi, s.phi_dot}; };
  auto unpack = [](double t, const Vec& y) { return CosmoState{t, y[0], y[1], y[2], y[3], y[4]}; };
  auto rhs = [&](double t, const Vec& y) {
    for (double x : y)
      if (!std::isfinite(x)) throw Error(Errc::StepRejected, "non-finite stage at t = " + std::to_string(t));
    if (!(y[0] > 0)) throw Error(Errc::StepRejected, "scale factor left a > 0 at t = " + std::to_string(t));
    const CosmoDerivative d = friedmann_rhs(unpack(t, y), p, variant, pot);
    return Vec{d.a_dot, d.H_dot, d.rho_dot, d.phi_dot, d.phi_ddot};
  };
  auto axpy = [](const Vec& y, double h, const Vec& k) {
    Vec r;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = y[i] + h * k[i];
    return r;
  };

  const double inv0 = continuity_invariant(initial, p);
  Trajectory tr;
  auto record = [&](const CosmoState& s) {
    CosmoSample smp{s, std::abs(friedmann_constraint(s, p, variant)) / constraint_scale(s, p), 0.0};
    const double inv = continuity_invariant(s, p);
    smp.continuity_residual = inv0 != 0 ? std::abs(inv / inv0 - 1.0) : std::abs(inv);
    const double hd = friedmann_rhs(s, p, variant, pot).H_dot;
    auto& dg = tr.diagnostics;
    dg.max_constraint_drift = std::max(dg.max_constraint_drift, smp.constraint_drift);
    dg.max_continuity_residual = std::max(dg.max_continuity_residual, smp.continuity_residual);
    dg.max_gravitational_residual = std::max(dg.max_gravitational_residual, std::abs(gravitational_residual(s, hd, p)));
    tr.samples.push_back(smp);
  };

  record(initial);
  Vec y = pack(initial);
  const long nsteps = std::lround(std::ceil((t_end - initial.t) / dt - 1e-9));
  for (long i = 0; i < nsteps; ++i) {
    const double t = initial.t + i * dt;
    const double h = std::min(dt, t_end - t);
    const Vec k1 = rhs(t, y);
    const Vec k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const Vec k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const Vec k4 = rhs(t + h, axpy(y, h, k3));
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    for (double x : y)
      if (!std::isfinite(x)) throw Error(Errc::StepRejected, "non-finite state at t = " + std::to_string(t + h));
    if (!(y[0] > 0)) throw Error(Errc::StepRejected, "scale factor left a > 0 at t = " + std::to_string(t + h));
    record(unpack(t + h, y));
    ++tr.diagnostics.steps;
  }
  return tr;
}

double fit_scale_exponent(const Trajectory& tr) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : tr.samples) {
    if (!(s.state.t > 0)) continue;
    const double x = std::log(s.state.t), y = std::log(s.state.a);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 2) throw Error(Errc::InvalidInput, "need at least two samples with t > 0");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace negdim
