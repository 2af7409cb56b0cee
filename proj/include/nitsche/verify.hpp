#ifndef NITSCHE_VERIFY_HPP
#define NITSCHE_VERIFY_HPP

// Batch of end-to-end checks used by `nitsche-lab verify`. Each check reports its measured value,
// the threshold it is compared against and the outcome; nothing is skipped.

#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "nitsche/nitsche.hpp"

namespace nitsche {

struct CheckResult {
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", ">", "=="
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 20240607;
  std::optional<double> tol;  // replaces the tolerance of every residual-type check
};

namespace detail {

inline CheckResult at_most(int c, std::string name, double value, double thr) {
  return {c, std::move(name), value, thr, "<=", std::abs(value) <= thr};
}
inline CheckResult at_least(int c, std::string name, double value, double thr) {
  return {c, std::move(name), value, thr, ">=", value >= thr};
}
inline CheckResult above(int c, std::string name, double value, double thr) {
  return {c, std::move(name), value, thr, ">", value > thr};
}
inline CheckResult flag(int c, std::string name, bool ok) { return {c, std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok}; }

}  // namespace detail

inline std::vector<CheckResult> run_checks(const VerifyConfig& cfg = {}) {
  using detail::above;
  using detail::at_least;
  using detail::at_most;
  using detail::flag;
  auto tol = [&](double d) { return cfg.tol.value_or(d); };
  constexpr double pi = std::numbers::pi;
  std::vector<CheckResult> out;
  Rng rng(cfg.seed);

  // 1. critical map equality
  {
    double worst = 0.0;
    for (double R : {2.0, std::numbers::e, 10.0}) {
      const AnnulusMap h = critical_nitsche_map(R);
      for (int i = 0; i < 50; ++i) {
        const double rho = 1.0 + (R - 1.0) * i / 50.0;
        worst = std::max(worst, std::abs(bound_margin(h, rho)));
      }
    }
    out.push_back(at_most(1, "critical_map_margin_max_abs", worst, tol(1e-12)));
  }

  // 2. identity residuals
  {
    auto rel = [](const IdentityReport& r) { return std::abs(r.residual) / std::max(1.0, std::abs(r.lhs.total)); };
    const IdentityReport one = identity_report(AnnulusMap::constant(2.0, 1.0), 2.0);
    const IdentityReport id = identity_report(AnnulusMap::identity(2.0), 2.0);
    out.push_back(at_most(2, "identity_const_lhs_minus_1.1794415", one.lhs.total - 1.1794415416798357, tol(1e-9)));
    out.push_back(at_most(2, "identity_const_residual", rel(one), tol(1e-8)));
    out.push_back(at_most(2, "identity_z_lhs_minus_0.9", id.lhs.total - 0.9, tol(1e-12)));
    out.push_back(at_most(2, "identity_z_residual", rel(id), tol(1e-8)));
    double worst = 0.0;
    std::uniform_real_distribution<double> Rdist(1.0, 3.0);
    std::uniform_int_distribution<int> Ndist(1, 8);
    for (int k = 0; k < 200; ++k) {
      double R = Rdist(rng);
      if (R <= 1.0) R = 3.0;
      RandomMapOptions o;
      o.N = Ndist(rng);
      worst = std::max(worst, rel(identity_report(random_map(rng, R, o), R)));
    }
    out.push_back(at_most(2, "identity_random200_residual_max", worst, tol(1e-8)));
  }

  // 3. quadratic-form positivity
  {
    const PositivityReport r = positivity_scan(-40, 40, sqrt7_grid(25.0, 0.01));
    out.push_back(above(3, "qform_min_A", r.min_A, 0.0));
    out.push_back(above(3, "qform_min_B", r.min_B, 0.0));
    out.push_back(above(3, "qform_min_discriminant", r.min_discriminant, 0.0));
    out.push_back(at_most(3, "qform_A2_at_3_minus_56.777778", qform_coefficients(2, 3.0).A - 511.0 / 9.0, tol(1e-9)));
    out.push_back(flag(3, "qform_B_n_ge_n_rho2_over_7", r.bnest_holds));
    out.push_back(flag(3, "qform_B_minus_m_gt_49_48_m3_rho2", r.coef6_holds));
  }

  // 4. certificate = Σ Qₙ
  {
    double worst_rel = 0.0, min_cert = std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> Rdist(3.0, 12.0), u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
      const double R = Rdist(rng);
      const AnnulusMap h = random_map(rng, R);
      const double rho = std::sqrt(7.0) + (R - std::sqrt(7.0)) * u(rng) * 0.999;
      const double c = prop52_certificate(h, rho).value;
      const double q = qform_sum(h, rho);
      worst_rel = std::max(worst_rel, std::abs(c - q) / std::max(std::abs(q), 1e-300));
      min_cert = std::min(min_cert, c);
    }
    out.push_back(at_most(4, "certificate_vs_qform_sum_rel_max", worst_rel, tol(1e-12)));
    out.push_back(at_least(4, "certificate_min", min_cert, -1e-10));
  }

  // 5. Jacobian-energy chain
  {
    const JacobianEnergyChain z = jacobian_energy_chain(DiskMap({{1, 1.0}}));
    const double dev = std::max({std::abs(z.boundary_abs_det - 2 * pi), std::abs(z.disk_energy - 2 * pi),
                                 std::abs(z.twice_area - 2 * pi)});
    out.push_back(at_most(5, "chain_identity_deviation", dev, tol(1e-10)));
    double slack = std::numeric_limits<double>::infinity(), area_dev = 0.0;
    for (int k = 0; k < 50; ++k) {
      const JacobianEnergyChain c = jacobian_energy_chain(poisson_extend(random_boundary_homeo(rng), 128));
      slack = std::min({slack, c.boundary_abs_det - c.disk_energy, c.disk_energy - c.twice_area});
      area_dev = std::max(area_dev, std::abs(c.area - pi));
    }
    out.push_back(at_least(5, "chain_random50_min_slack", slack, -1e-8));
    out.push_back(at_most(5, "chain_random50_area_minus_pi", area_dev, tol(1e-8)));
  }

  // 6. boundary functional and Ψ
  {
    out.push_back(at_most(6, "lemma62_rotation", lemma62_functional(BoundaryHomeo::rotation(0.7)), tol(1e-9)));
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 50; ++k) worst = std::min(worst, lemma62_functional(random_boundary_homeo(rng)));
    out.push_back(at_least(6, "lemma62_random50_min", worst, -1e-9));
    const PsiReport p = psi_region_check(1000);
    out.push_back(at_least(6, "psi_region_min", p.min_value, -1e-12));
    out.push_back(above(6, "psi_at_pi/2_-pi/2", p.value_at_minus_half_pi, 0.0));
    out.push_back(at_most(6, "psi_at_pi/2_-pi/2_minus_(2-pi/2)", p.value_at_minus_half_pi - (2.0 - pi / 2.0), tol(1e-15)));
  }

  // 7. counterexample family
  {
    const AnnulusMap e = example_51_map(0.5, 2.0);
    const InitialConditions ic = check_initial_conditions(e);
    out.push_back(flag(7, "example51_condition_I", ic.I));
    out.push_back(flag(7, "example51_condition_II", ic.II));
    out.push_back(flag(7, "example51_condition_III_fails", !ic.III));
    out.push_back(at_most(7, "example51_mean_jacobian_minus_(-2.9629630)", ic.mean_jacobian + 1.25 / 0.421875, tol(1e-9)));
    out.push_back(at_most(7, "example51_mean_jacobian_minus_(-5/3)", ic.mean_jacobian + 5.0 / 3.0, tol(1e-9)));
    out.push_back({7, "example51_margin_at_12", bound_margin(e, 12.0), 0.0, "<", bound_margin(e, 12.0) < 0.0});
  }

  // 8. existence / minimizer
  {
    const AnnulusMap c = construct_harmonic_homeo(2.0, 1.5);
    const AnnulusMap m = energy_minimizer(2.0, 1.5);
    const double d = std::max(std::abs(c.mode(1).a - m.mode(1).a), std::abs(c.mode(1).b - m.mode(1).b));
    out.push_back(at_most(8, "construct_vs_minimizer", d, tol(1e-14)));
    out.push_back(at_most(8, "minimizer_a_minus_2/3", m.mode(1).a.real() - 2.0 / 3.0, tol(1e-14)));
    const AnnulusMap hb = critical_nitsche_map(2.0);
    const double g = energy_green(hb, 2.0);
    const double q = energy_quadrature(hb, 2.0).value;
    out.push_back(at_most(8, "energy_green_vs_quadrature_rel", std::abs(g - q) / std::abs(q), tol(1e-9)));
    out.push_back(at_most(8, "energy_green_minus_15pi/8", g - 15.0 * pi / 8.0, tol(1e-12)));
    double deficit = std::nan("");
    try {
      (void)construct_harmonic_homeo(2.0, 1.2);
    } catch (const NoHarmonicHomeomorphism& ex) {
      deficit = ex.deficit();
    }
    out.push_back(at_most(8, "construct_2_1.2_deficit_minus_0.05", std::isnan(deficit) ? 1.0 : deficit - 0.05, tol(1e-14)));
  }

  // 9. conformal case
  {
    double dev = 0.0;
    const AnnulusMap lz(10.0, 0.0, 0.0, {{1, {std::polar(1.0, 0.4), 0.0}}});
    for (double rho : linear_grid(1.0, 9.9, 50)) {
      const CircleMeans m = means_closed_form(lz, rho);
      dev = std::max({dev, std::abs(m.U - rho * rho), std::abs(m.U_dot - 2 * rho), std::abs(m.U_ddot - 2.0)});
    }
    out.push_back(at_most(9, "conformal_lambda_z_means", dev, tol(1e-12)));
    double min_L = std::numeric_limits<double>::infinity(), fd_worst = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      const AnnulusMap h = random_holomorphic_map(rng, 3.0, 6);
      const double rho = 1.1 + 1.7 * u(rng);
      const double L = operator_L_conformal(h, rho);
      min_L = std::min(min_L, L);
      // (1/ρ) d/dρ [ρ³ d/dρ (U/ρ²)] by nested central differences of the closed-form U, Richardson-extrapolated
      auto V = [&](double r) { return means_closed_form(h, r).U / (r * r); };
      auto nested = [&](double d) {
        auto inner = [&](double r) { return r * r * r * (V(r + d) - V(r - d)) / (2 * d); };
        return (inner(rho + d) - inner(rho - d)) / (2 * d) / rho;
      };
      const double fd = (4.0 * nested(5e-4) - nested(1e-3)) / 3.0;
      fd_worst = std::max(fd_worst, std::abs(fd - L) / std::max(1.0, std::abs(L)));
    }
    out.push_back(at_least(9, "conformal_L_random100_min", min_L, 0.0));
    out.push_back(at_most(9, "conformal_L_vs_finite_difference", fd_worst, tol(1e-6)));
  }

  // 10. minimal surface
  {
    const MinimalLift L = lift(critical_nitsche_map(2.0));
    double err = 0.0;
    for (int i = 0; i < L.n_rho; ++i)
      for (int j = 0; j < L.n_theta; ++j) err = std::max(err, std::abs(L.w_at(i, j) - std::log(L.rho[i])));
    out.push_back(at_most(10, "catenoid_lift_w_minus_log_rho", err, tol(1e-10)));
    out.push_back(at_most(10, "catenoid_lift_cr_residual", L.residual, tol(1e-9)));
    double slack = 0.0;
    for (double R : linear_grid(1.1, 10.0, 90))
      slack = std::max(slack, std::abs(modulus_bound_check(std::log(R), 0.5 * (R + 1.0 / R)).slack));
    out.push_back(at_most(10, "modulus_bound_slack_on_critical_pairs", slack, tol(1e-12)));
  }
  return out;
}

inline void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  os << std::setprecision(17);
  for (const CheckResult& c : checks)
    os << "criterion=" << c.criterion << " name=" << c.name << " value=" << c.value << " relation=" << c.relation
       << " threshold=" << c.threshold << " " << (c.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace nitsche

#endif
