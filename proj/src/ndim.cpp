#include "negdim/ndim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "negdim/errors.hpp"
#include "negdim/quadrature.hpp"

namespace negdim {

namespace {

double to_double(Rational r) { return double(r.numerator()) / double(r.denominator()); }

bool is_integer(Rational r) { return r.denominator() == 1; }

long double log_factorial(long k) { return std::lgamma((long double)(k) + 1.0L); }

struct GammaArg {
  cplx value;
  double slope;  // d(argument)/dD
};

// prod Gamma(num) / prod Gamma(den). Poles are counted: extra denominator poles give 0,
// extra numerator poles raise, and balanced poles are resolved by the limit along D.
cplx gamma_ratio(const std::vector<GammaArg>& num, const std::vector<GammaArg>& den, double pole_tol) {
  int pn = 0, pd = 0;
  for (const auto& a : num) pn += near_gamma_pole(a.value, pole_tol);
  for (const auto& a : den) pd += near_gamma_pole(a.value, pole_tol);
  if (pd > pn) return 0.0;
  if (pn > pd) throw Error(Errc::PoleAtDimension, "Gamma pole in the numerator is not cancelled");
  cplx v = 1.0;
  // Gamma(-k + s delta) ~ (-1)^k / (k! s delta); the deltas cancel when counts balance.
  auto residue = [&](const GammaArg& a) {
    if (a.slope == 0.0) throw Error(Errc::PoleAtDimension, "pole does not move with D; limit undefined");
    const long k = std::lround(-a.value.real());
    return double((k % 2) ? -1 : 1) * std::exp(double(-log_factorial(k))) / a.slope;
  };
  for (const auto& a : num) v *= near_gamma_pole(a.value, pole_tol) ? residue(a) : gamma_fn(a.value);
  for (const auto& a : den) v /= near_gamma_pole(a.value, pole_tol) ? residue(a) : gamma_fn(a.value);
  return v;
}

// Rational Gauss-Jordan solve of A x = b with affine right-hand sides; false when singular.
bool solve(std::vector<std::vector<Rational>> A, std::vector<Affine>& b) {
  const int n = int(A.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (A[r][c] != Rational(0)) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    const Rational inv = Rational(1) / A[c][c];
    for (auto& x : A[c]) x *= inv;
    b[c] = b[c] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == Rational(0)) continue;
      const Rational f = A[r][c];
      for (int k = 0; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] = b[r] - b[c] * f;
    }
  }
  return true;
}

double scale_value(int id, const LoopIntegralSpec& spec) {
  if (id == 0) return spec.scales2.at(0);
  int k = 0;
  for (double m2 : spec.masses2)
    if (m2 != 0.0 && ++k == id) return m2;
  throw Error(Errc::InvalidInput, "unknown scale id");
}

std::string rat_str(Rational r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

}  // namespace

int LoopIntegralSpec::m() const {
  return int(std::count_if(masses2.begin(), masses2.end(), [](double x) { return x != 0.0; }));
}

void LoopIntegralSpec::validate() const {
  if (n() < 1 || n() > 3) throw Error(Errc::InvalidInput, "only 1 to 3 propagators are supported");
  if (int(masses2.size()) != n()) throw Error(Errc::InvalidInput, "need one mass per propagator");
  if (q() > 1) throw Error(Errc::InvalidInput, "at most one momentum scale is supported");
  if (q() == 1 && n() < 2) throw Error(Errc::InvalidInput, "a momentum scale needs two propagators");
  if (m() > 2) throw Error(Errc::InvalidInput, "at most two nonzero masses are supported");
  for (double x : masses2)
    if (!(x >= 0)) throw Error(Errc::InvalidInput, "masses squared must be non-negative");
  for (double x : scales2)
    if (!(x > 0)) throw Error(Errc::InvalidInput, "momentum scales must be positive");
}

Affine Affine::operator+(const Affine& o) const {
  Affine r = *this;
  r.c0 += o.c0;
  r.cD += o.cD;
  for (std::size_t i = 0; i < cv.size(); ++i) r.cv[i] += o.cv[i];
  for (std::size_t i = 0; i < cn.size(); ++i) r.cn[i] += o.cn[i];
  return r;
}

Affine Affine::operator-(const Affine& o) const { return *this + o * Rational(-1); }

Affine Affine::operator*(Rational k) const {
  Affine r = *this;
  r.c0 *= k;
  r.cD *= k;
  for (auto& x : r.cv) x *= k;
  for (auto& x : r.cn) x *= k;
  return r;
}

bool Affine::operator==(const Affine& o) const { return c0 == o.c0 && cD == o.cD && cv == o.cv && cn == o.cn; }

bool Affine::index_free() const {
  return std::all_of(cn.begin(), cn.end(), [](Rational x) { return x == Rational(0); });
}

bool Affine::constant() const {
  return cD == Rational(0) && index_free() && std::all_of(cv.begin(), cv.end(), [](Rational x) { return x == Rational(0); });
}

Affine Affine::index_free_part() const {
  Affine r = *this;
  std::fill(r.cn.begin(), r.cn.end(), Rational(0));
  return r;
}

cplx Affine::eval(cplx D, const std::vector<double>& v) const {
  cplx s = to_double(c0) + to_double(cD) * D;
  for (std::size_t i = 0; i < cv.size(); ++i) s += to_double(cv[i]) * v[i];
  return s;
}

std::string Affine::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](Rational c, const std::string& name) {
    if (c == Rational(0)) return;
    const bool neg = c < Rational(0);
    const Rational a = neg ? -c : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (name.empty())
      os << rat_str(a);
    else if (a == Rational(1))
      os << name;
    else
      os << rat_str(a) << "*" << name;
    first = false;
  };
  term(c0, "");
  term(cD, "D");
  for (std::size_t i = 0; i < cv.size(); ++i) term(cv[i], "v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < cn.size(); ++i) term(cn[i], "n" + std::to_string(i + 1));
  if (first) os << "0";
  return os.str();
}

std::string Variable::name() const {
  const char* k = kind == VarKind::p ? "p" : kind == VarKind::q ? "q" : "m";
  return k + std::to_string(index);
}

std::string scale_name(int id, const LoopIntegralSpec& spec) {
  if (id == 0) return "Q1^2";
  int k = 0;
  for (int i = 0; i < spec.n(); ++i)
    if (spec.masses2[i] != 0.0 && ++k == id) return "M" + std::to_string(i + 1) + "^2";
  return "?";
}

ConstraintSystem build_system(const LoopIntegralSpec& spec) {
  spec.validate();
  ConstraintSystem s;
  const int n = spec.n();
  s.nv = n;
  for (int i = 0; i < n; ++i) s.variables.push_back({VarKind::p, i + 1, i, -1});
  if (spec.q() == 1) s.variables.push_back({VarKind::q, 1, -1, 0});
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (spec.masses2[i] != 0.0) {
      ++k;
      s.variables.push_back({VarKind::m, i + 1, i, k});
    }
  const int nvar = int(s.variables.size());
  s.rows.assign(n + 1, std::vector<int>(nvar, 0));
  for (int j = 0; j < nvar; ++j) {
    const Variable& v = s.variables[j];
    if (v.kind == VarKind::p) {
      s.rows[v.propagator][j] = 1;
      s.rows[n][j] = 1;
    } else if (v.kind == VarKind::q) {
      s.rows[0][j] = s.rows[1][j] = 1;
      s.rows[n][j] = 1;
    } else {
      s.rows[v.propagator][j] = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    Affine a(n, 0);
    a.cv[i] = -1;
    s.rhs.push_back(a);
  }
  Affine d(n, 0);
  d.cD = Rational(-1, 2);
  s.rhs.push_back(d);
  return s;
}

std::vector<Solution> enumerate_solutions(const ConstraintSystem& system) {
  const int nvar = int(system.variables.size());
  const int k = int(system.rows.size());
  std::vector<Solution> out;
  if (nvar < k) return out;
  const int nfree = nvar - k;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<int> fr;
    for (int j = 0, t = 0; j < nvar; ++j) {
      if (t < k && pick[t] == j)
        ++t;
      else
        fr.push_back(j);
    }
    std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k));
    std::vector<Affine> b;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) A[r][c] = system.rows[r][pick[c]];
      Affine rhs = system.rhs[r];
      rhs.cn.assign(nfree, 0);
      for (int f = 0; f < nfree; ++f) rhs.cn[f] = -system.rows[r][fr[f]];
      b.push_back(rhs);
    }
    if (solve(A, b)) {
      Solution s;
      s.solved = pick;
      s.free = fr;
      s.assignment.assign(nvar, Affine(system.nv, nfree));
      for (int c = 0; c < k; ++c) s.assignment[pick[c]] = b[c];
      for (int f = 0; f < nfree; ++f) s.assignment[fr[f]].cn[f] = 1;
      out.push_back(std::move(s));
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == nvar - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

HyperSeriesDescriptor to_descriptor(const Solution& sol, const ConstraintSystem& system) {
  const int nv = system.nv;
  const int nfree = int(sol.free.size());
  if (nfree > 2) throw Error(Errc::NotImplemented, "more than two free summation indices");
  HyperSeriesDescriptor d;
  d.solution = sol;
  std::vector<int> flip_parity(nfree, 0);

  auto one = [&] {
    Affine a(nv, nfree);
    a.c0 = 1;
    return a;
  };
  // Template: prod Gamma(1 - v_i) Gamma(1 + sum p) / prod Gamma(1 + x) over all variables.
  std::vector<Affine> tnum, tden;
  for (int i = 0; i < nv; ++i) {
    Affine a = one();
    a.cv[i] = -1;
    tnum.push_back(a);
  }
  Affine sp = one();
  for (std::size_t j = 0; j < system.variables.size(); ++j)
    if (system.variables[j].kind == VarKind::p) sp = sp + sol.assignment[j];
  tnum.push_back(sp);
  std::vector<bool> own_factorial;
  for (std::size_t j = 0; j < system.variables.size(); ++j) {
    tden.push_back(one() + sol.assignment[j]);
    own_factorial.push_back(std::find(sol.free.begin(), sol.free.end(), int(j)) != sol.free.end());
  }

  auto split = [&](const Affine& a, bool numerator, bool factorial) {
    std::vector<int> coef(nfree);
    bool pos = false, neg = false;
    for (int f = 0; f < nfree; ++f) {
      if (!is_integer(a.cn[f])) throw Error(Errc::NotImplemented, "non-integer index coefficient");
      coef[f] = int(a.cn[f].numerator());
      pos |= coef[f] > 0;
      neg |= coef[f] < 0;
    }
    const Affine base = a.index_free_part();
    if (!factorial) (numerator ? d.raw_num : d.raw_den).push_back(base);
    if (!pos && !neg) return;
    if (pos) {  // mixed signs stay unflipped; their sign is carried by the symbol itself
      (numerator ? d.sum_num : d.sum_den).push_back({base, coef});
      return;
    }
    // (A, -N) = (-1)^N / (1 - A, N)
    for (int f = 0; f < nfree; ++f) {
      flip_parity[f] += -coef[f];
      coef[f] = -coef[f];
    }
    (numerator ? d.sum_den : d.sum_num).push_back({one() - base, coef});
  };
  for (const auto& a : tnum) split(a, true, false);
  for (std::size_t j = 0; j < tden.size(); ++j) split(tden[j], false, own_factorial[j]);

  d.theta = Affine(nv, nfree);
  for (const auto& b : d.raw_den) d.theta = d.theta + b;
  for (const auto& a : d.raw_num) d.theta = d.theta - a;
  Affine expect(nv, nfree);
  expect.cD = Rational(1, 2);
  if (!(d.theta == expect))
    throw Error(Errc::ThetaMismatch, "flip balance " + d.theta.str() + " differs from D/2");

  for (const auto& b : d.raw_den) d.pre_num.push_back(one() - b);
  for (const auto& a : d.raw_num) d.pre_den.push_back(one() - a);
  for (auto it = d.pre_num.begin(); it != d.pre_num.end();) {
    auto jt = std::find(d.pre_den.begin(), d.pre_den.end(), *it);
    if (jt != d.pre_den.end()) {
      d.pre_den.erase(jt);
      it = d.pre_num.erase(it);
    } else {
      ++it;
    }
  }
  // Constant arguments at non-positive integers are exact poles; pair them off.
  auto take_poles = [](std::vector<Affine>& v) {
    std::vector<long> ks;
    for (auto it = v.begin(); it != v.end();) {
      if (it->constant() && is_integer(it->c0) && it->c0 <= Rational(0)) {
        ks.push_back(-it->c0.numerator());
        it = v.erase(it);
      } else {
        ++it;
      }
    }
    return ks;
  };
  const auto kn = take_poles(d.pre_num), kd = take_poles(d.pre_den);
  if (kd.size() > kn.size()) d.vanishes = true;
  if (kn.size() > kd.size()) d.singular = true;
  if (kn.size() == kd.size()) {
    // Gamma(-k) / Gamma(-l) -> (-1)^{k-l} l! / k! under a common shift
    for (std::size_t i = 0; i < kn.size(); ++i) {
      const long k = kn[i], l = kd[i];
      d.residue_factor *= ((k + l) % 2 ? -1.0 : 1.0) * std::exp(double(log_factorial(l) - log_factorial(k)));
    }
  }

  // Scale powers: constant parts go to the prefactor, index parts form the ratios.
  d.ratios.assign(nfree, {});
  for (std::size_t j = 0; j < system.variables.size(); ++j) {
    const Variable& v = system.variables[j];
    if (v.scale < 0) continue;
    const Affine& a = sol.assignment[j];
    const Affine c = a.index_free_part();
    if (!(c == Affine(nv, nfree))) d.scale_powers.push_back({v.scale, c});
    for (int f = 0; f < nfree; ++f) {
      if (a.cn[f] == Rational(0)) continue;
      const int e = int(a.cn[f].numerator());
      d.ratios[f].powers.push_back({v.scale, e});
      flip_parity[f] += e;  // (-Q^2)^q (-M^2)^m
    }
  }
  for (int f = 0; f < nfree; ++f) d.ratios[f].negative = (flip_parity[f] % 2) != 0;
  return d;
}

DescriptorValue evaluate_descriptor(const HyperSeriesDescriptor& d, const LoopIntegralSpec& spec,
                                    const ToleranceConfig& tol) {
  DescriptorValue out;
  const cplx D = spec.dimension.value;
  const auto& v = spec.powers;
  const int nfree = int(d.ratios.size());

  HyperSeries hs;
  hs.nvars = nfree;
  std::vector<cplx> z(2, 0.0);
  for (int f = 0; f < nfree; ++f) {
    double r = 1.0;
    for (auto [id, e] : d.ratios[f].powers) r *= std::pow(scale_value(id, spec), e);
    z[f] = d.ratios[f].negative ? -r : r;
  }
  hs.z0 = z[0];
  hs.z1 = z[1];
  auto factor = [&](const PochTerm& t) {
    return PochFactor{t.base.eval(D, v), nfree > 0 ? t.coef[0] : 0, nfree > 1 ? t.coef[1] : 0};
  };
  for (const auto& t : d.sum_num) hs.num.push_back(factor(t));
  for (const auto& t : d.sum_den) hs.den.push_back(factor(t));  // includes the factorials
  out.growth_rate = series_growth_rate(hs);
  out.converges = out.growth_rate < 0;

  if (d.vanishes) {
    out.converges = true;
    return out;
  }
  if (d.singular) throw Error(Errc::PoleAtDimension, "solution carries an uncancelled constant pole");
  if (!out.converges) return out;

  std::vector<GammaArg> num, den;
  for (const auto& a : d.pre_num) num.push_back({a.eval(D, v), to_double(a.cD)});
  for (const auto& a : d.pre_den) den.push_back({a.eval(D, v), to_double(a.cD)});
  cplx pre = d.residue_factor * gamma_ratio(num, den, spec.dimension.pole_tolerance);
  for (const auto& [id, e] : d.scale_powers) pre *= std::pow(cplx(scale_value(id, spec)), e.eval(D, v));
  if (pre == 0.0) return out;

  const EvalResult s = sum_series(hs, tol);
  out.result.value = pre * s.value;
  out.result.error = std::abs(pre) * s.error;
  out.result.terms = s.terms;
  return out;
}

EvalResult eval_loop_integral(const LoopIntegralSpec& spec, const ToleranceConfig& tol) {
  const ConstraintSystem sys = build_system(spec);
  EvalResult total;
  bool any = false;
  for (const Solution& s : enumerate_solutions(sys)) {
    const HyperSeriesDescriptor d = to_descriptor(s, sys);
    const DescriptorValue dv = evaluate_descriptor(d, spec, tol);
    if (!dv.converges) continue;
    if (!d.vanishes) any = true;
    total.value += dv.result.value;
    total.error += dv.result.error;
    total.terms += dv.result.terms;
  }
  if (!any) throw Error(Errc::NoConvergentRegion, "no solution converges at these scales");
  return total;
}

EvalResult eval_massless_bubble(const Dimension& D, double v1, double v2, double Q2) {
  if (!(Q2 > 0)) throw Error(Errc::DomainError, "Q^2 must be positive");
  const cplx h = 0.5 * D.value;
  const std::vector<GammaArg> num = {{h - v1, 0.5}, {h - v2, 0.5}, {v1 + v2 - h, -0.5}};
  const std::vector<GammaArg> den = {{cplx(v1), 0.0}, {cplx(v2), 0.0}, {D.value - v1 - v2, 1.0}};
  EvalResult r;
  r.value = gamma_ratio(num, den, D.pole_tolerance) * std::pow(cplx(Q2), h - v1 - v2);
  return r;
}

EvalResult eval_massive_bubble(const Dimension& D, double v1, double v2, double Q2, double M1_2, double M2_2,
                               const ToleranceConfig& tol, bool validate) {
  LoopIntegralSpec spec{{v1, v2}, {M1_2, M2_2}, {Q2}, D};
  EvalResult r = eval_loop_integral(spec, tol);
  if (validate) {
    if (!D.is_real()) throw Error(Errc::InvalidInput, "validation needs a real dimension");
    const EvalResult o = bubble_parametric_oracle(D.re(), v1, v2, Q2, M1_2, M2_2);
    const double dev = std::abs(r.value - o.value) / std::abs(o.value);
    const double lim = 10.0 * std::max(tol.rel_tol, 1e-6);
    if (dev > lim)
      throw Error(Errc::OracleMismatch, "solution sum deviates from the parametric integral by " + std::to_string(dev));
  }
  return r;
}

EvalResult bubble_parametric_oracle(double D, double v1, double v2, double Q2, double M1_2, double M2_2) {
  if (!(v1 > 0) || !(v2 > 0)) throw Error(Errc::DomainError, "parametric form needs positive powers");
  const double e = 0.5 * D - v1 - v2;
  auto g = [&](double x) {
    const double u = x * (1 - x) * Q2 + x * M1_2 + (1 - x) * M2_2;
    if (u <= 0.0) return 0.0;
    return std::pow(x, v1 - 1) * std::pow(1 - x, v2 - 1) * std::pow(u, e);
  };
  const quad::Result q = quad::tanh_sinh(g, 0.0, 1.0, 1e-13);
  if (!std::isfinite(q.value)) throw Error(Errc::EndpointSingularity, "parametric integrand is not integrable");
  const double pre = gamma_fn(v1 + v2 - 0.5 * D) / (gamma_fn(v1) * gamma_fn(v2));
  EvalResult r;
  r.value = pre * q.value;
  r.error = std::abs(pre) * q.error;
  return r;
}

}  // namespace negdim
