// nitsche-lab: command-line front end for the nitsche library.
//
// Exit codes: 0 ok, 1 verify failure, 2 parse/usage error, 3 domain error, 4 bound violated, 5 no lift.

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nitsche/nitsche.hpp"
#include "nitsche/verify.hpp"

namespace {

using namespace nitsche;

struct RunConfig {
  std::string command;
  std::string map_path;
  std::string bhm_path;
  std::string out_path;
  std::optional<double> R, R_star, a, lam, v;
  bool example51 = false;
  std::string rho_grid;
  std::string quad;
  std::string n_range = "-40:40";
  std::optional<double> tol;
  std::uint64_t seed = VerifyConfig{}.seed;
  int count = 10;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Grid {
  double lo, hi;
  int steps;
};

Grid parse_grid(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--rho-grid expects lo:hi:steps");
  try {
    std::size_t used = 0;
    Grid g{std::stod(parts[0], &used), 0.0, 0};
    if (used != parts[0].size()) throw UsageError("bad grid bound");
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw UsageError("bad grid bound");
    g.steps = std::stoi(parts[2], &used);
    if (used != parts[2].size() || g.steps < 1) throw UsageError("bad grid steps");
    return g;
  } catch (const std::logic_error&) {
    throw UsageError("--rho-grid expects lo:hi:steps");
  }
}

std::pair<int, int> parse_pair(const std::string& s, char sep, const char* what) {
  const auto k = s.find(sep);
  if (k == std::string::npos) throw UsageError(std::string(what) + " expects two integers");
  try {
    std::size_t u1 = 0, u2 = 0;
    const int x = std::stoi(s.substr(0, k), &u1);
    const int y = std::stoi(s.substr(k + 1), &u2);
    if (u1 != k || u2 != s.size() - k - 1) throw UsageError(std::string(what) + " expects two integers");
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(what) + " expects two integers");
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty())
    std::cout << text;
  else
    write_file_atomic(cfg.out_path, text);
}

/// Informational lines go to stderr when the primary output occupies stdout.
std::ostream& info(const RunConfig& cfg) { return cfg.out_path.empty() ? std::cerr : std::cout; }

AnnulusMap load_map(const RunConfig& cfg) {
  if (!cfg.map_path.empty()) return read_ahm(cfg.map_path);
  if (cfg.example51) return example_51_map(cfg.a.value_or(0.5), cfg.lam, cfg.R.value_or(kCounterexampleR));
  if (cfg.v) return nitsche_map({*cfg.v, cfg.R.value_or(2.0)});
  throw UsageError("no map given: use --map, --example51 or --nitsche-v");
}

std::vector<double> rho_values(const RunConfig& cfg, double lo, double hi, int steps) {
  if (!cfg.rho_grid.empty()) {
    const Grid g = parse_grid(cfg.rho_grid);
    lo = g.lo;
    hi = g.hi;
    steps = g.steps;
  }
  return linear_grid(lo, hi, steps);
}

int cmd_means(const RunConfig& cfg) {
  const AnnulusMap h = load_map(cfg);
  const double R = h.outer_radius();
  CsvTable t({"rho", "U", "U_dot", "U_ddot", "mean_radius", "L1", "L3", "energy", "nitsche_floor", "margin"});
  for (double rho : rho_values(cfg, 1.0, 1.0 + 0.99 * (R - 1.0), 50)) {
    const CircleMeans m = means_closed_form(h, rho);
    const LValues L = operator_L(h, rho);
    const double mr = std::sqrt(m.U);
    t.row({rho, m.U, m.U_dot, m.U_ddot, mr, L.L1, L.L3, energy_green(h, rho), nitsche_floor(rho), mr - nitsche_floor(rho)});
  }
  emit(cfg, t.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyConfig v;
  v.seed = cfg.seed;
  v.tol = cfg.tol;
  const auto checks = run_checks(v);
  std::ostringstream os;
  print_checks(os, checks);
  int failed = 0;
  for (const auto& c : checks) failed += !c.pass;
  os << "summary checks=" << checks.size() << " failed=" << failed << "\n";
  emit(cfg, os.str());
  if (!cfg.out_path.empty()) std::cout << os.str();
  return failed ? 1 : 0;
}

int cmd_construct(const RunConfig& cfg) {
  if (!cfg.R || !cfg.R_star) throw UsageError("construct needs --R and --Rstar");
  const double R = *cfg.R, Rs = *cfg.R_star;
  try {
    const AnnulusMap h = construct_harmonic_homeo(R, Rs);
    const AnnulusMap m = energy_minimizer(R, Rs);
    std::ostream& os = info(cfg);
    os << std::setprecision(17);
    os << "v=" << construct_speed(R, Rs) << "\n";
    os << "a1=" << h.mode(1).a.real() << " b1=" << h.mode(1).b.real() << "\n";
    os << "minimizer_a=" << m.mode(1).a.real() << " minimizer_b=" << m.mode(1).b.real() << "\n";
    os << "energy=" << minimizer_energy(R, Rs) << "\n";
    os << "margin=" << 0.0 - nitsche_deficit(R, Rs) << "\n";
    if (nitsche_deficit(R, Rs) == 0.0) os << "equality: rigid family\n";
    emit(cfg, to_ahm(h));
  } catch (const NoHarmonicHomeomorphism& e) {
    std::cerr << std::setprecision(17) << "bound violated: deficit=" << e.deficit() << "\n";
    std::cout << std::setprecision(17) << "deficit=" << e.deficit() << "\n";
    return 4;
  }
  return 0;
}

int cmd_minsurf(const RunConfig& cfg) {
  const AnnulusMap h = load_map(cfg);
  LiftGrid grid;
  if (!cfg.quad.empty()) std::tie(grid.n_theta, grid.n_rho) = parse_pair(cfg.quad, ',', "--quad");
  const MinimalLift L = lift(h, grid);
  CsvTable t({"rho", "theta", "u", "v", "w", "residual"});
  for (int i = 0; i < L.n_rho; ++i)
    for (int j = 0; j < L.n_theta; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * L.n_theta + j;
      const PolarJet jet = evaluate_polar(h, L.rho[i], L.theta[j]);
      const double scale = std::norm(jet.d_z) + std::norm(jet.d_zbar);
      const double res = scale > 0.0 ? std::abs(jet.d_z * std::conj(jet.d_zbar) + L.w_z[k] * L.w_z[k]) / scale : 0.0;
      t.row({L.rho[i], L.theta[j], jet.value.real(), jet.value.imag(), L.w[k], res});
    }
  emit(cfg, t.str());
  const SurfaceBound b = surface_bound(h);
  info(cfg) << std::setprecision(17) << "flat=" << (L.flat ? 1 : 0) << " modulus=" << b.surface_modulus
            << " ratio=" << b.ratio << " slack=" << b.bound.slack << " holds=" << (b.bound.holds ? 1 : 0) << "\n";
  return 0;
}

int cmd_identity(const RunConfig& cfg) {
  const AnnulusMap h = load_map(cfg);
  QuadOrders q;
  if (!cfg.quad.empty()) std::tie(q.M, q.K) = parse_pair(cfg.quad, ',', "--quad");
  const double R = h.outer_radius();
  CsvTable t({"R_eval", "lhs", "rhs", "residual", "term1", "term2", "term3", "term4", "int1", "int2"});
  for (double Re : rho_values(cfg, R, R, 1)) {
    const IdentityReport r = identity_report(h, Re, q);
    t.row({Re, r.lhs.total, r.rhs.total, r.residual, r.lhs.term1, r.lhs.term2, r.lhs.term3, r.lhs.term4, r.rhs.int1,
           r.rhs.int2});
  }
  emit(cfg, t.str());
  return 0;
}

int cmd_qforms(const RunConfig& cfg) {
  if (!cfg.map_path.empty() || cfg.example51 || cfg.v) {
    const AnnulusMap h = load_map(cfg);
    const double R = h.outer_radius();
    const std::vector<double> rhos = rho_values(cfg, 1.0 + 0.01 * (R - 1.0), 1.0 + 0.99 * (R - 1.0), 50);
    CsvTable t({"rho", "certificate", "qform_sum", "below_sqrt7", "trace_not_unimodular"});
    for (double rho : rhos) {
      const Certificate c = prop52_certificate(h, rho);
      t.row({rho, c.value, qform_sum(h, rho), c.below_sqrt7 ? 1.0 : 0.0, c.trace_not_unimodular ? 1.0 : 0.0});
    }
    emit(cfg, t.str());
    return 0;
  }
  const std::vector<double> rhos = cfg.rho_grid.empty() ? sqrt7_grid(25.0, 0.01) : rho_values(cfg, 0, 0, 1);
  const auto [n_lo, n_hi] = parse_pair(cfg.n_range, ':', "--n-range");
  CsvTable t({"n", "rho", "A", "B", "C", "discriminant"});
  for (int n = n_lo; n <= n_hi; ++n)
    for (double rho : rhos) {
      const QFormEval q = qform_coefficients(n, rho);
      t.row({static_cast<double>(n), rho, q.A, q.B, q.C, q.discriminant});
    }
  emit(cfg, t.str());
  const PositivityReport r = positivity_scan(n_lo, n_hi, rhos);
  info(cfg) << std::setprecision(17) << "min_A=" << r.min_A << " min_B=" << r.min_B
            << " min_discriminant=" << r.min_discriminant << " all_positive=" << (r.all_positive() ? 1 : 0) << "\n";
  return 0;
}

int cmd_chain(const RunConfig& cfg) {
  CsvTable t({"index", "boundary_abs_det", "disk_energy", "twice_area", "area", "lemma62"});
  auto add = [&](int idx, const DiskMap& f, double l62) {
    const JacobianEnergyChain c = jacobian_energy_chain(f);
    t.row({static_cast<double>(idx), c.boundary_abs_det, c.disk_energy, c.twice_area, c.area, l62});
  };
  if (!cfg.bhm_path.empty()) {
    const BoundaryHomeo b = read_bhm(cfg.bhm_path);
    add(0, poisson_extend(b, 128), lemma62_functional(b));
  } else if (!cfg.map_path.empty() || cfg.example51 || cfg.v) {
    add(0, poisson_extend(load_map(cfg)), std::nan(""));
  } else {
    Rng rng(cfg.seed);
    for (int k = 0; k < cfg.count; ++k) {
      const BoundaryHomeo b = random_boundary_homeo(rng);
      add(k, poisson_extend(b, 128), lemma62_functional(b));
    }
  }
  emit(cfg, t.str());
  return 0;
}

int cmd_example51(const RunConfig& cfg) {
  const double a = cfg.a.value_or(0.5);
  const AnnulusMap h = example_51_map(a, cfg.lam, cfg.R.value_or(kCounterexampleR));
  const double lam = h.log_a0().real();
  const InitialConditions ic = check_initial_conditions(h);
  std::ostream& os = info(cfg);
  os << std::setprecision(17);
  os << "a=" << a << " lam=" << lam << " N=" << h.order() << " R=" << h.outer_radius() << "\n";
  os << "I=" << ic.I << " winding=" << ic.winding << " min_modulus=" << ic.min_modulus << "\n";
  os << "II=" << ic.II << " U_dot_1=" << ic.U_dot_1 << "\n";
  os << "III=" << ic.III << " mean_jacobian=" << ic.mean_jacobian << "\n";
  os << "mean_jacobian_-(1+a^2)/(1-a^2)=" << -(1 + a * a) / (1 - a * a)
     << " mean_jacobian_-(1+a^2)/(1-a^2)^3=" << -(1 + a * a) / std::pow(1 - a * a, 3) << "\n";
  const auto cross = first_bound_violation(h, 1.0, 0.999 * h.outer_radius() + 0.001, 4000);
  if (cross)
    os << "bound_violated_from_sigma=" << *cross << "\n";
  else
    os << "bound_violated_from_sigma=none\n";
  if (cfg.out_path.empty())
    std::cout << to_ahm(h);
  else
    write_file_atomic(cfg.out_path, to_ahm(h));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"nitsche-lab: harmonic maps of annuli, integral means and the Nitsche bound"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--map", cfg.map_path, "AHM coefficient file");
  app.add_option("--bhm", cfg.bhm_path, "BHM boundary homeomorphism file (chain)");
  app.add_option("--out", cfg.out_path, "output path (written atomically); stdout if absent");
  app.add_option("--tol", cfg.tol, "tolerance for residual-type checks (verify)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for randomized runs");
  app.add_option("--rho-grid", cfg.rho_grid, "lo:hi:steps");
  app.add_option("--quad", cfg.quad, "M,K quadrature orders (angular, radial)");
  app.add_option("--R", cfg.R, "outer radius of the domain annulus");
  app.add_option("--Rstar", cfg.R_star, "outer radius of the target annulus");
  app.add_option("--nitsche-v", cfg.v, "use the Nitsche map with initial speed v");
  app.add_flag("--example51", cfg.example51, "use the log-perturbed counterexample map");
  app.add_option("--a", cfg.a, "counterexample parameter a in (0,1)");
  app.add_option("--lam", cfg.lam, "counterexample parameter lambda (default 1/a)");
  app.add_option("--n-range", cfg.n_range, "index range lo:hi for qforms");
  app.add_option("--count", cfg.count, "number of random inputs for chain")->check(CLI::PositiveNumber);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"means", "integral means, L[U] and energy on a rho grid (CSV)"},
      {"verify", "run the verification suite"},
      {"construct", "harmonic homeomorphism / energy minimizer for --R --Rstar (AHM)"},
      {"minsurf", "minimal-graph lift and modulus bound (CSV)"},
      {"identity", "both sides of the integral identity (CSV)"},
      {"qforms", "quadratic-form coefficients or certificate (CSV)"},
      {"chain", "Jacobian-energy chain and boundary functional (CSV)"},
      {"example51", "counterexample initial conditions and bound violation"}};
  for (const auto& [name, desc] : commands) app.add_subcommand(name, desc)->callback([&cfg, n = name] { cfg.command = n; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cfg.command == "means") return cmd_means(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "construct") return cmd_construct(cfg);
    if (cfg.command == "minsurf") return cmd_minsurf(cfg);
    if (cfg.command == "identity") return cmd_identity(cfg);
    if (cfg.command == "qforms") return cmd_qforms(cfg);
    if (cfg.command == "chain") return cmd_chain(cfg);
    if (cfg.command == "example51") return cmd_example51(cfg);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NoLift& e) {
    std::cerr << "no lift: " << e.what() << "\n";
    return 5;
  } catch (const NoHarmonicHomeomorphism& e) {
    std::cerr << "bound violated: deficit=" << e.deficit() << "\n";
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
