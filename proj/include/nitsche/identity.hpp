#ifndef NITSCHE_IDENTITY_HPP
#define NITSCHE_IDENTITY_HPP

// Both sides of the integral identity for harmonic h on A(1, R_eval):
//   2R²/(R²+1) U(R) − (R²+1)/2 U(1) − (R²−1)⨍_T|h||h|_ρ − (R²−1) log R ⨍_T Im h̄(h_θ − ih)
//     = (1/π)∬ W₁|g_z|² + (1/π)∬ W₂|g_z̄|²,   g = 2z̄h/(|z|²+1).

#include <cmath>
#include <numbers>

#include "nitsche/annulus_map.hpp"
#include "nitsche/circle_means.hpp"
#include "nitsche/quadratic_forms.hpp"
#include "nitsche/quadrature.hpp"

namespace nitsche {

struct GSubstitute {
  cplx g{};
  cplx g_z{};
  cplx g_zbar{};
  double abs_g_z_polar = 0.0;     // |(ρh_ρ − ih_θ)/(1+ρ²) − 2ρ²h/(1+ρ²)²|
  double abs_g_zbar_polar = 0.0;  // |(ρh_ρ + ih_θ)/(1+ρ²) + 2h/(1+ρ²)²|
};

namespace detail {

inline void polar_g_moduli(const PolarJet& j, double rho, double& gz, double& gzb) {
  const double s = 1.0 + rho * rho;
  gz = std::abs((rho * j.d_rho - I * j.d_theta) / s - 2.0 * rho * rho * j.value / (s * s));
  gzb = std::abs((rho * j.d_rho + I * j.d_theta) / s + 2.0 * j.value / (s * s));
}

}  // namespace detail

/// g and its Wirtinger derivatives from h, h_z, h_z̄; the polar moduli are computed separately.
inline GSubstitute g_substitute(const AnnulusMap& map, cplx z) {
  const PolarJet j = evaluate(map, z);
  const double rho = std::abs(z);
  const double s = rho * rho + 1.0;
  const cplx zb = std::conj(z);
  GSubstitute out;
  out.g = 2.0 * zb * j.value / s;
  out.g_z = 2.0 * zb / s * (j.d_z - zb * j.value / s);
  out.g_zbar = 2.0 / s * (zb * j.d_zbar + j.value / s);
  detail::polar_g_moduli(j, rho, out.abs_g_z_polar, out.abs_g_zbar_polar);
  return out;
}

/// (R²−1) log(R/ρ) + (R² − ρ²)/ρ².
inline double identity_weight1(double R, double rho) {
  return (R * R - 1.0) * std::log(R / rho) + (R * R - rho * rho) / (rho * rho);
}

/// (R² − ρ²) − (R²−1) log(R/ρ); nonnegative on [1, R] iff R <= e.
inline double identity_weight2(double R, double rho) {
  return (R * R - rho * rho) - (R * R - 1.0) * std::log(R / rho);
}

struct IdentityLhs {
  double term1 = 0.0;  // 2R²/(R²+1) U(R)
  double term2 = 0.0;  // −(R²+1)/2 U(1)
  double term3 = 0.0;  // −(R²−1) ⨍_T|h||h|_ρ, via ½U̇(1)
  double term4 = 0.0;  // −(R²−1) log R ⨍_T Im h̄(h_θ − ih)
  double total = 0.0;
};

inline IdentityLhs identity_lhs(const AnnulusMap& map, double R_eval) {
  if (!(R_eval > 1.0) || !(R_eval <= map.outer_radius()))
    throw DomainError("identity_lhs: R_eval must lie in (1, R]");
  const double R2 = R_eval * R_eval;
  const CircleMeans at1 = detail::means_sum(map, 1.0);
  const double UR = detail::means_sum(map, R_eval).U;
  double W = 0.0;
  for (const auto& [n, m] : map.terms()) W += n * std::norm(m.a + m.b);
  IdentityLhs l;
  l.term1 = 2.0 * R2 / (R2 + 1.0) * UR;
  l.term2 = -(R2 + 1.0) / 2.0 * at1.U;
  l.term3 = -(R2 - 1.0) * 0.5 * at1.U_dot;
  l.term4 = -(R2 - 1.0) * std::log(R_eval) * (W - at1.U);
  l.total = l.term1 + l.term2 + l.term3 + l.term4;
  return l;
}

struct QuadOrders {
  int M = 0;  // angular trapezoid nodes; 0 selects 4N + 8 (exact in θ)
  int K = 0;  // starting radial panels of 8-point Gauss–Legendre; 0 selects 4 per unit length
};

struct IdentityRhs {
  double int1 = 0.0;  // (1/π)∬ W₁|g_z|²
  double int2 = 0.0;  // (1/π)∬ W₂|g_z̄|²
  double total = 0.0;
  int M = 0;
  int panels = 0;
  bool converged = false;
};

/// Radial composite Gauss–Legendre (doubling until the relative change is below rel_tol) times an
/// angular trapezoid rule.
inline IdentityRhs identity_rhs(const AnnulusMap& map, double R_eval, QuadOrders q = {}, double rel_tol = 1e-12) {
  if (!(R_eval > 1.0) || !(R_eval <= map.outer_radius()))
    throw DomainError("identity_rhs: R_eval must lie in (1, R]");
  const int M = q.M > 0 ? q.M : angular_nodes(map);
  const int start = q.K > 0 ? q.K : std::max(2, static_cast<int>(std::ceil(4.0 * (R_eval - 1.0))));
  const auto rule = quad::gauss_legendre(8);
  auto both = [&](int panels, double& i1, double& i2) {
    i1 = quad::composite_gauss(
        [&](double r) {
          return 2.0 * r * identity_weight1(R_eval, r) * quad::periodic_mean(
                                                             [&](double t) {
                                                               double gz, gzb;
                                                               detail::polar_g_moduli(evaluate_polar(map, r, t), r, gz, gzb);
                                                               return gz * gz;
                                                             },
                                                             M);
        },
        1.0, R_eval, panels, rule);
    i2 = quad::composite_gauss(
        [&](double r) {
          return 2.0 * r * identity_weight2(R_eval, r) * quad::periodic_mean(
                                                             [&](double t) {
                                                               double gz, gzb;
                                                               detail::polar_g_moduli(evaluate_polar(map, r, t), r, gz, gzb);
                                                               return gzb * gzb;
                                                             },
                                                             M);
        },
        1.0, R_eval, panels, rule);
  };
  IdentityRhs out;
  out.M = M;
  double p1, p2;
  both(start, p1, p2);
  int panels = start;
  constexpr int kMaxPanels = 1 << 12;
  while (true) {
    panels *= 2;
    double c1, c2;
    both(panels, c1, c2);
    const double change = std::abs((c1 + c2) - (p1 + p2));
    p1 = c1;
    p2 = c2;
    if (change <= rel_tol * std::max(1.0, std::abs(c1) + std::abs(c2))) {
      out.converged = true;
      break;
    }
    if (panels >= kMaxPanels) break;
  }
  // (1/π)∬ f dA = (1/π)∫ 2πρ ⨍f dρ = ∫ 2ρ ⨍f dρ
  out.int1 = p1;
  out.int2 = p2;
  out.total = p1 + p2;
  out.panels = panels;
  return out;
}

struct IdentityReport {
  double R = 0.0;
  IdentityLhs lhs;
  IdentityRhs rhs;
  double residual = 0.0;
};

inline IdentityReport identity_report(const AnnulusMap& map, double R_eval, QuadOrders q = {}) {
  IdentityReport r;
  r.R = R_eval;
  r.lhs = identity_lhs(map, R_eval);
  r.rhs = identity_rhs(map, R_eval, q);
  r.residual = r.lhs.total - r.rhs.total;
  return r;
}

struct ThinBound {
  double value = 0.0;           // √U(σ) − ½(σ + 1/σ)
  bool sigma_in_range = false;  // 1 < σ <= min(R, e)
  bool unimodular = false;
  bool winding_one = false;
  bool speed_nonnegative = false;
  bool qualifies() const { return sigma_in_range && unimodular && winding_one && speed_nonnegative; }
};

inline ThinBound thin_annulus_bound(const AnnulusMap& map, double sigma) {
  if (!(sigma > 1.0) || !(sigma <= map.outer_radius())) throw DomainError("thin_annulus_bound: sigma must lie in (1, R]");
  ThinBound b;
  b.value = std::sqrt(detail::means_sum(map, sigma).U) - 0.5 * (sigma + 1.0 / sigma);
  b.sigma_in_range = sigma <= std::numbers::e;
  b.unimodular = trace_is_unimodular(map);
  b.winding_one = std::abs(winding_number(map, 1.0) - 1.0) < 1e-6;
  b.speed_nonnegative = detail::means_sum(map, 1.0).U_dot >= -1e-12;
  return b;
}

/// Max-norm coefficient distance to the family ½e^{iα}(z + 1/z̄), α chosen from a₁ + b₁.
inline double distance_to_critical_family(const AnnulusMap& map) {
  const Mode m1 = map.mode(1);
  const cplx s = m1.a + m1.b;
  const cplx u = std::abs(s) > 0.0 ? s / std::abs(s) : cplx(1.0, 0.0);
  double d = std::max({std::abs(map.log_a0()), std::abs(map.log_b0()), std::abs(m1.a - 0.5 * u), std::abs(m1.b - 0.5 * u)});
  for (const auto& [n, m] : map.terms())
    if (n != 1) d = std::max({d, std::abs(m.a), std::abs(m.b)});
  return d;
}

}  // namespace nitsche

#endif
