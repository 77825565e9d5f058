#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "negdim/cosmo.hpp"
#include "negdim/dimexp.hpp"
#include "negdim/errors.hpp"
#include "negdim/masterint.hpp"
#include "negdim/ndim.hpp"
#include "negdim/propagator.hpp"
#include "negdim/specfun.hpp"
#include "negdim/spectral.hpp"

namespace negdim::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Dimension parse_dim(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(s.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? s.size() : comma)) throw std::invalid_argument(s);
    if (comma == std::string::npos) return Dimension(re);
    const std::string tail = s.substr(comma + 1);
    const double im = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(s);
    return im == 0 ? Dimension(re) : Dimension(cplx(re, im));
  } catch (const std::logic_error&) {
    throw Error(Errc::InvalidInput, "--dim expects RE[,IM], got '" + s + "'");
  }
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string tol_profile(const ToleranceConfig& t) {
  return "rel=" + short_num(t.rel_tol) + ";abs=" + short_num(t.abs_tol) + ";terms=" + std::to_string(t.max_terms) +
         ";quad=" + std::to_string(t.quad_points) + ";eps=" + short_num(t.eps_reg);
}

using Cell = std::variant<double, std::string>;

class Csv {
 public:
  Csv(std::ostream& os, std::vector<std::string> header, std::string profile)
      : os_(os), profile_(std::move(profile)) {
    header.push_back("tol_profile");
    write(header);
  }
  void row(const std::vector<Cell>& cells) {
    std::vector<std::string> s;
    for (const auto& c : cells) s.push_back(std::holds_alternative<double>(c) ? num(std::get<double>(c)) : std::get<std::string>(c));
    s.push_back(profile_);
    write(s);
  }

 private:
  void write(const std::vector<std::string>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) os_ << (i ? "," : "") << s[i];
    os_ << '\n';
  }
  std::ostream& os_;
  std::string profile_;
};

// Shared per-run state: the output stream, tolerance flags and the manifest.
struct Run {
  std::string command;
  std::string out_path;
  std::string manifest_path;
  ToleranceConfig tol;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> flags;
  std::ostream* sink = nullptr;
  std::unique_ptr<std::ofstream> file;

  std::ostream& out() { return *sink; }

  void write_manifest() const {
    std::string path = manifest_path;
    if (path.empty() && !out_path.empty()) path = out_path + ".manifest.json";
    if (path.empty()) return;
    json m;
    m["command"] = command;
    json f = json::object();
    for (const auto& [k, v] : flags) f[k] = v;
    m["flags"] = f;
    m["seed"] = seed;
    m["tolerance"] = {{"abs_tol", tol.abs_tol},
                      {"rel_tol", tol.rel_tol},
                      {"max_terms", tol.max_terms},
                      {"quad_points", tol.quad_points},
                      {"eps_reg", tol.eps_reg}};
    m["output_paths"] = out_path.empty() ? json::array() : json::array({out_path});
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["timestamp"] = ts;
    std::ofstream os(path);
    if (!os) throw Error(Errc::InvalidInput, "cannot write manifest " + path);
    os << m.dump(2) << '\n';
  }
};

void add_common(CLI::App* sub, Run& run) {
  sub->add_option("--out", run.out_path, "output file (default stdout)");
  sub->add_option("--manifest", run.manifest_path, "manifest path (default <out>.manifest.json)");
  sub->add_option("--rel-tol", run.tol.rel_tol, "relative tolerance");
  sub->add_option("--abs-tol", run.tol.abs_tol, "absolute tolerance");
  sub->add_option("--max-terms", run.tol.max_terms, "series term budget");
}

json affine_list(const std::vector<Affine>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json poch_list(const std::vector<PochTerm>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back({{"base", p.base.str()}, {"coef", p.coef}});
  return a;
}

json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

LoopIntegralSpec parse_loop_spec(const json& j) {
  LoopIntegralSpec s;
  try {
    for (const auto& [k, v] : j.items())
      if (k != "powers" && k != "masses2" && k != "scales2" && k != "dimension")
        throw Error(Errc::InvalidInput, "unknown key '" + k + "' in integral spec");
    s.powers = j.at("powers").get<std::vector<double>>();
    s.masses2 = j.value("masses2", std::vector<double>(s.powers.size(), 0.0));
    s.scales2 = j.value("scales2", std::vector<double>{});
    const auto& d = j.at("dimension");
    s.dimension = d.is_number() ? Dimension(d.get<double>())
                                : Dimension(cplx(d.at("re").get<double>(), d.value("im", 0.0)));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("integral spec: ") + e.what());
  }
  s.validate();
  return s;
}

CosmoParams parse_cosmo_params(const json& j) {
  CosmoParams p;
  static const std::vector<std::string> keys{"kappa2", "lambda", "curvature", "D_t",  "eos_w",
                                             "weight", "omega",  "nonminimal_coupling"};
  try {
    for (const auto& [k, v] : j.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end())
        throw Error(Errc::InvalidInput, "unknown key '" + k + "' in cosmology parameters");
    p.kappa2 = j.value("kappa2", p.kappa2);
    p.lambda = j.value("lambda", p.lambda);
    p.curvature = j.value("curvature", p.curvature);
    p.D_t = j.value("D_t", p.D_t);
    p.eos_w = j.value("eos_w", p.eos_w);
    p.omega = j.value("omega", p.omega);
    p.nonminimal_coupling = j.value("nonminimal_coupling", p.nonminimal_coupling);
    if (j.contains("weight")) {
      const auto& w = j.at("weight");
      const std::string v = w.value("variant", "none");
      if (v == "none") p.weight.variant = WeightVariant::none;
      else if (v == "plus") p.weight.variant = WeightVariant::plus;
      else if (v == "minus") p.weight.variant = WeightVariant::minus;
      else throw Error(Errc::InvalidInput, "weight variant must be none, plus or minus");
      p.weight.amplitude = w.value("amplitude", p.weight.amplitude);
      p.weight.beta = w.value("beta", p.weight.beta);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("cosmology parameters: ") + e.what());
  }
  p.validate();
  return p;
}

json read_json(const std::string& path_or_text) {
  std::string text = path_or_text;
  if (!text.empty() && text.front() != '{') {
    std::ifstream is(path_or_text);
    if (!is) throw Error(Errc::InvalidInput, "cannot read " + path_or_text);
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "need at least one point");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

const std::vector<std::string> kCommands{"table1",        "tadpole", "bubble",    "ndim-solve", "schwinger", "multifractal",
                                         "spectral-flow", "boxdim",  "cosmo-run", "weyl",       "gc-check"};

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  if (argv.empty() || (argv[0].rfind("-", 0) != 0 &&
                       std::find(kCommands.begin(), kCommands.end(), argv[0]) == kCommands.end())) {
    err << "negdim: unknown command" << (argv.empty() ? "" : " '" + argv[0] + "'") << "; expected one of";
    for (const auto& c : kCommands) err << ' ' << c;
    err << '\n';
    return kExitUnknownCommand;
  }

  CLI::App app{"Analytic continuation in dimension: loop integrals, propagators, spectral flow, cosmology"};
  app.require_subcommand(1);
  Run run;
  std::function<void()> action;

  // table1
  std::vector<int> orders{1, 2};
  auto* t1 = app.add_subcommand("table1", "A_1 partial sums against the exact value");
  t1->add_option("--orders", orders, "partial-sum orders")->delimiter(',');
  add_common(t1, run);
  t1->callback([&] {
    action = [&] {
      Csv csv(run.out(), {"D", "order", "partial_sum", "printed", "deviates", "exact"}, tol_profile(run.tol));
      for (const auto& r : table1_report(orders))
        for (std::size_t i = 0; i < r.orders.size(); ++i)
          csv.row({r.dimension, double(r.orders[i]), r.partial_sums[i],
                   r.printed[i] ? Cell(*r.printed[i]) : Cell(std::string()), std::string(r.deviates[i] ? "yes" : "no"),
                   r.exact});
    };
  });

  // shared dimension flag
  std::string dim_text = "4";
  auto dim_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--dim", dim_text, "dimension RE[,IM]");
    if (required) o->required();
  };

  // tadpole
  double n_pow = 1, m2 = 1, q2 = 0;
  auto* tp = app.add_subcommand("tadpole", "one-loop tadpole with shifted propagator");
  dim_opt(tp, true);
  tp->add_option("--n", n_pow, "propagator power");
  tp->add_option("--m2", m2, "mass squared");
  tp->add_option("--q2", q2, "shift momentum squared");
  add_common(tp, run);
  tp->callback([&] {
    action = [&] {
      const Dimension D = parse_dim(dim_text);
      const TadpoleResult r = tadpole(D, n_pow, m2, q2);
      Csv csv(run.out(), {"D_re", "D_im", "n", "value_re", "value_im", "vector_re", "vector_im", "phase", "pole_flag"},
              tol_profile(run.tol));
      csv.row({D.re(), D.im(), n_pow, r.scalar.value.real(), r.scalar.value.imag(), r.vector_coefficient.value.real(),
               r.vector_coefficient.value.imag(), r.scalar.phase.str(), std::string(r.scalar.pole_flag ? "yes" : "no")});
    };
  });

  // bubble
  double v1 = 1, v2 = 1, bq2 = 1, bm1 = 0, bm2 = 0;
  std::string method = "ndim";
  auto* bb = app.add_subcommand("bubble", "one-loop bubble by NDIM or Feynman parameters");
  dim_opt(bb, true);
  bb->add_option("--v1", v1, "power of propagator 1");
  bb->add_option("--v2", v2, "power of propagator 2");
  bb->add_option("--q2", bq2, "external momentum squared");
  bb->add_option("--m1", bm1, "mass squared of propagator 1");
  bb->add_option("--m2", bm2, "mass squared of propagator 2");
  bb->add_option("--method", method, "ndim or feynman")->check(CLI::IsMember({"ndim", "feynman"}));
  add_common(bb, run);
  bb->callback([&] {
    action = [&] {
      const Dimension D = parse_dim(dim_text);
      EvalResult r;
      if (method == "feynman") {
        if (!D.is_real()) throw Error(Errc::DomainError, "the Feynman-parameter route needs a real dimension");
        r = bubble_parametric_oracle(D.re(), v1, v2, bq2, bm1, bm2);
      } else if (bm1 == 0 && bm2 == 0) {
        r = eval_massless_bubble(D, v1, v2, bq2);
      } else {
        r = eval_massive_bubble(D, v1, v2, bq2, bm1, bm2, run.tol);
      }
      Csv csv(run.out(), {"D_re", "D_im", "v1", "v2", "Q2", "M1_2", "M2_2", "method", "value_re", "value_im", "error"},
              tol_profile(run.tol));
      csv.row({D.re(), D.im(), v1, v2, bq2, bm1, bm2, method, r.value.real(), r.value.imag(), r.error});
    };
  });

  // ndim-solve
  std::string spec_in;
  auto* ns = app.add_subcommand("ndim-solve", "NDIM constraint solutions and descriptors as JSON");
  ns->add_option("--spec", spec_in, "integral spec: JSON file or inline JSON")->required();
  add_common(ns, run);
  ns->callback([&] {
    action = [&] {
      const LoopIntegralSpec spec = parse_loop_spec(read_json(spec_in));
      const ConstraintSystem sys = build_system(spec);
      json j;
      json vars = json::array();
      for (const auto& v : sys.variables) vars.push_back(v.name());
      j["variables"] = vars;
      j["rows"] = sys.rows;
      j["rhs"] = affine_list(sys.rhs);
      json sols = json::array();
      for (const auto& s : enumerate_solutions(sys)) {
        const HyperSeriesDescriptor d = to_descriptor(s, sys);
        json e;
        json solved = json::array(), fr = json::array();
        for (int i : s.solved) solved.push_back(sys.variables[i].name());
        for (int i : s.free) fr.push_back(sys.variables[i].name());
        e["solved"] = solved;
        e["free"] = fr;
        e["theta"] = d.theta.str();
        e["vanishes"] = d.vanishes;
        e["singular"] = d.singular;
        e["pre_num"] = affine_list(d.pre_num);
        e["pre_den"] = affine_list(d.pre_den);
        e["residue_factor"] = d.residue_factor;
        json sp = json::array();
        for (const auto& [id, a] : d.scale_powers) sp.push_back({{"scale", scale_name(id, spec)}, {"power", a.str()}});
        e["scale_powers"] = sp;
        e["sum_num"] = poch_list(d.sum_num);
        e["sum_den"] = poch_list(d.sum_den);
        json ratios = json::array();
        for (const auto& r : d.ratios) {
          std::string t = r.negative ? "-" : "";
          for (std::size_t k = 0; k < r.powers.size(); ++k)
            t += (k ? " * " : "") + scale_name(r.powers[k].first, spec) + "^" + std::to_string(r.powers[k].second);
          ratios.push_back(t);
        }
        e["ratios"] = ratios;
        try {
          const DescriptorValue v = evaluate_descriptor(d, spec, run.tol);
          e["converges"] = v.converges;
          e["growth_rate"] = v.growth_rate;
          e["value"] = cplx_json(v.result.value);
        } catch (const Error& ex) {
          e["converges"] = false;
          e["diagnostic"] = ex.what();
        }
        sols.push_back(e);
      }
      j["solutions"] = sols;
      try {
        const EvalResult r = eval_loop_integral(spec, run.tol);
        j["value"] = cplx_json(r.value);
        j["error"] = r.error;
      } catch (const Error& ex) {
        j["value"] = nullptr;
        j["diagnostic"] = ex.what();
      }
      j["tol_profile"] = tol_profile(run.tol);
      run.out() << j.dump(2) << '\n';
    };
  });

  // schwinger
  double sm = 1, r_min = 0.25, r_max = 4;
  int points = 16;
  bool check = false;
  auto* sw = app.add_subcommand("schwinger", "free massive two-point function on a radial grid");
  dim_opt(sw, true);
  sw->add_option("--m", sm, "mass");
  sw->add_option("--r-min", r_min, "smallest separation");
  sw->add_option("--r-max", r_max, "largest separation");
  sw->add_option("--points", points, "grid points");
  sw->add_flag("--check", check, "add the radial quadrature column");
  add_common(sw, run);
  sw->callback([&] {
    action = [&] {
      const Dimension D = parse_dim(dim_text);
      std::vector<std::string> h{"r", "G"};
      if (check) h.push_back("G_quadrature");
      Csv csv(run.out(), h, tol_profile(run.tol));
      for (double r : linspace(r_min, r_max, points)) {
        std::vector<Cell> row{r, schwinger(D, r, sm).real()};
        if (check) row.push_back(schwinger_radial_quadrature(D, r, sm).real());
        csv.row(row);
      }
    };
  });

  // multifractal
  int dt_top = 4;
  double alpha = -0.25, mm = 1;
  auto* mf = app.add_subcommand("multifractal", "multifractal propagators on a radial grid");
  mf->add_option("--dt", dt_top, "topological dimension");
  mf->add_option("--alpha", alpha, "measure exponent (negative branch)");
  mf->add_option("--m", mm, "mass");
  mf->add_option("--r-min", r_min, "smallest separation");
  mf->add_option("--r-max", r_max, "largest separation");
  mf->add_option("--points", points, "grid points");
  add_common(mf, run);
  mf->callback([&] {
    action = [&] {
      Csv csv(run.out(), {"r", "massless", "massive", "regular", "matched"}, tol_profile(run.tol));
      for (double r : linspace(r_min, r_max, points)) {
        const auto s = multifractal_massive_split(dt_top, {alpha}, r, mm);
        csv.row({r, multifractal_massless(dt_top, {alpha}, r), multifractal_massive(dt_top, {alpha}, r, mm), s.regular,
                 s.matched});
      }
    };
  });

  // spectral-flow
  double df = 4, ml = 1;
  int per_decade = 4, dec_lo = -3, dec_hi = 4;
  auto* sf = app.add_subcommand("spectral-flow", "spectral dimension along diffusion time");
  sf->add_option("--df", df, "topological dimension D_f");
  sf->add_option("--l", ml, "minimal length");
  sf->add_option("--per-decade", per_decade, "points per decade of s/l^2");
  sf->add_option("--decades-below", dec_lo, "lowest decade of s/l^2 (negative)");
  sf->add_option("--decades-above", dec_hi, "highest decade of s/l^2");
  add_common(sf, run);
  sf->callback([&] {
    action = [&] {
      if (per_decade < 1 || dec_lo > dec_hi) throw Error(Errc::InvalidInput, "bad grid");
      Csv csv(run.out(), {"s", "D_plus", "D_minus"}, tol_profile(run.tol));
      for (int k = dec_lo * per_decade; k <= dec_hi * per_decade; ++k) {
        const double s = ml * ml * (k == 0 ? 1.0 : std::pow(10.0, double(k) / per_decade));
        csv.row({s, spectral_dimension({std::abs(df), ml, s}), spectral_dimension({-std::abs(df), ml, s})});
      }
    };
  });

  // boxdim
  BoxExperiment be;
  int b_lo = 4, b_hi = 12;
  auto* bx = app.add_subcommand("boxdim", "Monte Carlo point-line intersection ladder");
  bx->add_option("--window", be.window, "window size L");
  bx->add_option("--trials", be.trials, "trials per rung");
  bx->add_option("--seed", be.seed, "random seed");
  bx->add_option("--log2-min", b_lo, "smallest rung 2^k");
  bx->add_option("--log2-max", b_hi, "largest rung 2^k");
  add_common(bx, run);
  bx->callback([&] {
    action = [&] {
      run.seed = be.seed;
      std::vector<double> ladder;
      for (int k = b_lo; k <= b_hi; ++k) ladder.push_back(std::ldexp(1.0, k));
      if (ladder.empty()) throw Error(Errc::InvalidInput, "empty ladder");
      be.scale = ladder.front();
      const BoxDimensionResult r = box_dimension_mc(be, ladder);
      Csv csv(run.out(), {"b", "EN", "stderr_EN", "EN_exact", "ln_slope", "ln_slope_stderr"}, tol_profile(run.tol));
      for (const auto& g : r.rungs)
        csv.row({g.scale, g.en, g.stderr_en, box_intersection_probability(be.window, g.scale), r.dimension_estimate,
                 r.stderr_dimension});
    };
  });

  // cosmo-run
  std::string params_in, variant = "standard";
  CosmoState st;
  st.rho = 4.0 / 3.0;
  double t_end = 10, step = 1e-3, h0 = std::nan(""), phi_mass = 0;
  int every = 1;
  auto* cr = app.add_subcommand("cosmo-run", "integrate a Friedmann system and emit the trajectory");
  cr->add_option("--params", params_in, "parameters: JSON file or inline JSON");
  cr->add_option("--variant", variant, "standard, negative-fractal or flat-neg")
      ->check(CLI::IsMember({"standard", "negative-fractal", "flat-neg"}));
  cr->add_option("--t0", st.t, "initial time");
  cr->add_option("--a0", st.a, "initial scale factor");
  cr->add_option("--rho0", st.rho, "initial density");
  cr->add_option("--h0", h0, "initial Hubble rate (default: from the constraint)");
  cr->add_option("--phi0", st.phi, "initial field");
  cr->add_option("--phidot0", st.phi_dot, "initial field velocity");
  cr->add_option("--phi-mass", phi_mass, "field mass in V = m^2 phi^2 / 2");
  cr->add_option("--t-end", t_end, "final time");
  cr->add_option("--dt", step, "step");
  cr->add_option("--every", every, "emit every k-th step");
  add_common(cr, run);
  cr->callback([&] {
    action = [&] {
      const CosmoParams p = params_in.empty() ? CosmoParams{} : parse_cosmo_params(read_json(params_in));
      const FriedmannVariant v = variant == "standard"           ? FriedmannVariant::standard
                                 : variant == "negative-fractal" ? FriedmannVariant::negative_fractal
                                                                 : FriedmannVariant::flat_neg;
      if (every < 1) throw Error(Errc::InvalidInput, "--every must be positive");
      st.H = std::isnan(h0) ? hubble_on_constraint(st.a, st.rho, p, v) : h0;
      const double m2f = phi_mass * phi_mass;
      Potential pot{[m2f](double x) { return 0.5 * m2f * x * x; }, [m2f](double x) { return m2f * x; }};
      const Trajectory tr = integrate(st, p, v, t_end, step, pot);
      Csv csv(run.out(), {"t", "a", "H", "rho", "phi", "phi_dot", "constraint_drift", "continuity_residual"},
              tol_profile(run.tol));
      for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        if (i % every != 0 && i + 1 != tr.samples.size()) continue;
        const auto& s = tr.samples[i];
        csv.row({s.state.t, s.state.a, s.state.H, s.state.rho, s.state.phi, s.state.phi_dot, s.constraint_drift,
                 s.continuity_residual});
      }
    };
  });

  // weyl
  std::string kind = "power";
  WeylParams wp;
  auto* wy = app.add_subcommand("weyl", "closed-form Weyl integrals");
  dim_opt(wy, true);
  wy->add_option("--kind", kind, "power, gauss or gauss-drift")->check(CLI::IsMember({"power", "gauss", "gauss-drift"}));
  wy->add_option("--n", wp.n, "power");
  wy->add_option("--l", wp.l, "length");
  wy->add_option("--delta", wp.delta, "Gaussian width parameter");
  wy->add_option("--gamma", wp.gamma, "drift");
  add_common(wy, run);
  wy->callback([&] {
    action = [&] {
      const Dimension D = parse_dim(dim_text);
      const WeylKind k = kind == "power" ? WeylKind::power : kind == "gauss" ? WeylKind::gauss : WeylKind::gauss_drift;
      const cplx v = weyl_closed(k, wp, D);
      Csv csv(run.out(), {"kind", "D_re", "D_im", "value_re", "value_im"}, tol_profile(run.tol));
      csv.row({kind, D.re(), D.im(), v.real(), v.imag()});
    };
  });

  // gc-check
  std::vector<double> dims;
  auto* gc = app.add_subcommand("gc-check", "subtracted radial quadrature of 1/(p^2+1) against the closed form");
  gc->add_option("--dims", dims, "dimensions in (-2, 0)")->delimiter(',');
  add_common(gc, run);
  gc->callback([&] {
    action = [&] {
      if (dims.empty())
        for (int i = 0; i < 10; ++i) dims.push_back(-0.1 - 0.2 * i);
      if (std::find(dims.begin(), dims.end(), -1.0) == dims.end()) dims.push_back(-1.0);
      Csv csv(run.out(), {"D", "subtracted", "closed", "rel_diff", "agrees"}, tol_profile(run.tol));
      for (double d : dims) {
        const double sub = gelfand_collins([](double p2) { return 1.0 / (p2 + 1.0); }, Dimension(d), 0, 1.0, run.tol).real();
        const double closed = gaussian_integral(Dimension(d)).real() * gamma_fn(1.0 - 0.5 * d);
        const double rd = std::abs(sub / closed - 1.0);
        csv.row({d, sub, closed, rd, std::string(rd < 1e-6 ? "yes" : "no")});
      }
    };
  });

  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "negdim: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  for (auto* sub : app.get_subcommands()) {
    run.command = sub->get_name();
    for (const auto* opt : sub->get_options())
      if (opt->count() > 0 && opt->get_name() != "--help") run.flags[opt->get_name()] = CLI::detail::join(opt->results(), ",");
  }
  try {
    run.tol.validate();
    if (!run.out_path.empty()) {
      run.file = std::make_unique<std::ofstream>(run.out_path);
      if (!*run.file) throw Error(Errc::InvalidInput, "cannot write " + run.out_path);
      run.sink = run.file.get();
    } else {
      run.sink = &out;
    }
    action();
    run.out().flush();
    run.write_manifest();
  } catch (const Error& e) {
    err << "negdim " << run.command << ": " << e.what() << '\n';
    if (e.code() == Errc::InvalidInput) return kExitInvalidInput;
    if (e.code() == Errc::NotImplemented) return kExitNotImplemented;
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace negdim::cli
