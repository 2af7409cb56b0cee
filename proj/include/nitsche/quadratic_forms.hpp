#ifndef NITSCHE_QUADRATIC_FORMS_HPP
#define NITSCHE_QUADRATIC_FORMS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/circle_means.hpp"
#include "nitsche/disk_maps.hpp"

namespace nitsche {

/// Circle functionals of h and of its disk extension f (cₙ = aₙ + bₙ).
struct CircleFunctionals {
  double U = 0.0;               // ⨍_{T_ρ}|h|²
  double half_dU_at_1 = 0.0;    // ½U̇(1) = Re(a₀b̄₀) + Σ n(|aₙ|² − |bₙ|²)
  double winding_form = 0.0;    // ⨍_T Im(h̄ h_θ) = Σ n|cₙ|²
  double mean_jacobian = 0.0;   // ⨍_T J(z,h) = Σ n²(|aₙ|² − |bₙ|²)
  double boundary_det_Df = 0.0; // ⨍_T det Df = Σ n|n||cₙ|²
  double disk_energy = 0.0;     // ∬_D |Df|² = 2πΣ|n||cₙ|²
  double disk_area = 0.0;       // ∬_D det Df = πΣ n|cₙ|²
};

inline CircleFunctionals circle_functionals(const AnnulusMap& map, double rho) {
  detail::check_open_radius(map, rho, "circle_functionals");
  CircleFunctionals f;
  f.U = detail::means_sum(map, rho).U;
  f.half_dU_at_1 = std::real(map.log_a0() * std::conj(map.log_b0()));
  for (const auto& [n, m] : map.terms()) {
    const double dn = n;
    const double c2 = std::norm(m.a + m.b);
    const double diff = std::norm(m.a) - std::norm(m.b);
    f.half_dU_at_1 += dn * diff;
    f.winding_form += dn * c2;
    f.mean_jacobian += dn * dn * diff;
    f.boundary_det_Df += dn * std::abs(n) * c2;
    f.disk_energy += std::abs(n) * c2;
    f.disk_area += dn * c2;
  }
  f.disk_energy *= quad::two_pi;
  f.disk_area *= std::numbers::pi;
  return f;
}

/// The same seven numbers from trapezoid rules on T, T_ρ and 2-D quadrature on the disk.
inline CircleFunctionals circle_functionals_quadrature(const AnnulusMap& map, double rho, int M = 0) {
  detail::check_open_radius(map, rho, "circle_functionals_quadrature");
  if (M <= 0) M = angular_nodes(map);
  CircleFunctionals f;
  f.U = quad::periodic_mean([&](double t) { return std::norm(value_at(map, rho, t)); }, M);
  f.half_dU_at_1 = quad::periodic_mean(
      [&](double t) {
        const PolarJet j = evaluate_polar(map, 1.0, t);
        return std::real(std::conj(j.value) * j.d_rho);
      },
      M);
  f.winding_form = quad::periodic_mean(
      [&](double t) {
        const PolarJet j = evaluate_polar(map, 1.0, t);
        return std::imag(std::conj(j.value) * j.d_theta);
      },
      M);
  f.mean_jacobian = quad::periodic_mean([&](double t) { return evaluate_polar(map, 1.0, t).jacobian; }, M);
  const DiskMap d = poisson_extend(map);
  f.boundary_det_Df = quad::periodic_mean([&](double t) { return evaluate_disk(d, 1.0, t).jacobian; }, M);
  f.disk_energy = disk_energy_quadrature(d);
  f.disk_area = disk_area_quadrature(d);
  return f;
}

/// Q(ξ,ζ) = A|ξ|² + B|ζ|² + 2C Re(ξζ̄).
inline double qform_value(double A, double B, double C, cplx xi, cplx zeta) {
  return A * std::norm(xi) + B * std::norm(zeta) + 2.0 * C * std::real(xi * std::conj(zeta));
}

struct QValue {
  cplx xi;
  cplx zeta;
  double Q;
};

struct QFormEval {
  int n = 0;
  double rho = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double discriminant = 0.0;  // AB − C²
  std::optional<QValue> value_at;
};

/// Coefficients of Qₙ in each index case; rho > 1.
inline QFormEval qform_coefficients(int n, double rho) {
  if (!(rho > 1.0) || !std::isfinite(rho)) throw DomainError("qform_coefficients: rho must be > 1");
  QFormEval q;
  q.n = n;
  q.rho = rho;
  const double k = rho * rho - 4.0 - 1.0 / (rho * rho);
  const double p = std::pow(rho + 1.0 / rho, 2);
  if (n >= 2) {
    const double dn = n;
    q.A = std::pow(rho, 2 * n) - dn / 4.0 * p - 2.0 * dn - (2.0 * dn * dn - dn) / 2.0 * k;
    q.B = std::pow(rho, -2 * n) - dn / 4.0 * p + 2.0 * dn + dn / 2.0 * k;
    q.C = 1.0 - dn / 4.0 * p - (dn * dn - dn) / 2.0 * k;
  } else if (n <= -1) {
    const double m = -static_cast<double>(n);
    q.A = std::pow(rho, 2 * n) + m / 4.0 * p + 2.0 * m + m / 2.0 * k;
    q.B = std::pow(rho, -2 * n) + m / 4.0 * p - 2.0 * m + (2.0 * m * m + m) / 2.0 * k;
    q.C = 1.0 + m / 4.0 * p + (m * m + m) / 2.0 * k;
  } else if (n == 1) {
    const double kappa = std::pow(rho * rho - 1.0, 2) / (4.0 * rho * rho);
    q.A = kappa;
    q.B = kappa;
    q.C = -kappa;
  } else {
    const double L = std::log(rho);
    q.A = L * L;
    q.B = 1.0;
    q.C = L - 1.0;
  }
  q.discriminant = q.A * q.B - q.C * q.C;
  return q;
}

inline QFormEval qform_at(int n, double rho, cplx xi, cplx zeta) {
  QFormEval q = qform_coefficients(n, rho);
  q.value_at = QValue{xi, zeta, qform_value(q.A, q.B, q.C, xi, zeta)};
  return q;
}

struct PositivityReport {
  long long cells = 0;
  double min_A = std::numeric_limits<double>::infinity();
  double min_B = std::numeric_limits<double>::infinity();
  double min_discriminant = std::numeric_limits<double>::infinity();
  int argmin_disc_n = 0;
  double argmin_disc_rho = 0.0;
  bool bnest_holds = true;       // Bₙ >= nρ²/7, n >= 2
  bool coef6_holds = true;       // B₋ₘ > (49/48)m³ρ², m >= 2
  bool goal1_holds = true;       // Aₙ > 7(½ − 1/(4n))²n³ρ², n >= 3
  bool m1_bound_holds = true;    // A₋₁B₋₁ − C₋₁² >= (8ρ²(ρ²−1) − 100)/16
  double n1_max_abs_discriminant = 0.0;  // rank-one form: 0 up to rounding
  double n0_min_discriminant = std::numeric_limits<double>::infinity();
  bool all_positive() const { return min_A > 0.0 && min_B > 0.0 && min_discriminant > 0.0; }
};

/// Scans n in [n_lo, n_hi] over rho_grid; n = 0 and n = 1 are recorded separately.
inline PositivityReport positivity_scan(int n_lo, int n_hi, const std::vector<double>& rho_grid) {
  PositivityReport r;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (double rho : rho_grid) {
      const QFormEval q = qform_coefficients(n, rho);
      const double r2 = rho * rho;
      if (n == 1) {
        r.n1_max_abs_discriminant = std::max(r.n1_max_abs_discriminant, std::abs(q.discriminant));
        continue;
      }
      if (n == 0) {
        r.n0_min_discriminant = std::min(r.n0_min_discriminant, q.discriminant);
        continue;
      }
      ++r.cells;
      r.min_A = std::min(r.min_A, q.A);
      r.min_B = std::min(r.min_B, q.B);
      if (q.discriminant < r.min_discriminant) {
        r.min_discriminant = q.discriminant;
        r.argmin_disc_n = n;
        r.argmin_disc_rho = rho;
      }
      if (n >= 2 && !(q.B >= n * r2 / 7.0)) r.bnest_holds = false;
      if (n >= 3) {
        const double c = 0.5 - 1.0 / (4.0 * n);
        if (!(q.A > 7.0 * c * c * n * n * static_cast<double>(n) * r2)) r.goal1_holds = false;
      }
      if (n <= -2) {
        const double m = -static_cast<double>(n);
        if (!(q.B > 49.0 / 48.0 * m * m * m * r2)) r.coef6_holds = false;
      }
      if (n == -1 && !(q.discriminant >= (8.0 * r2 * (r2 - 1.0) - 100.0) / 16.0)) r.m1_bound_holds = false;
    }
  }
  return r;
}

/// ρ grid √7, √7 + step, ..., up to hi.
inline std::vector<double> sqrt7_grid(double hi, double step) {
  std::vector<double> g;
  const double lo = std::sqrt(7.0);
  for (long k = 0;; ++k) {
    const double r = lo + step * k;
    if (r > hi + 1e-12) break;
    g.push_back(r);
  }
  return g;
}

struct Certificate {
  double value = 0.0;
  double U = 0.0;
  double winding_term = 0.0;
  double speed_term = 0.0;
  double jacobian_term = 0.0;
  double disk_term = 0.0;
  bool below_sqrt7 = false;          // inequality not guaranteed for ρ < √7
  bool trace_not_unimodular = false; // |h| ≢ 1 on T
};

inline bool trace_is_unimodular(const AnnulusMap& map, double tol = 1e-9) {
  const int M = std::max(256, 8 * map.order());
  for (int j = 0; j < M; ++j)
    if (std::abs(std::abs(value_at(map, 1.0, quad::two_pi * j / M)) - 1.0) > tol) return false;
  return true;
}

/// U(ρ) − ((ρ+ρ⁻¹)/2)²W − 2·½U̇(1) − (k/2)⨍_T J − (k/4π)[∫_T det Df − ∬_D|Df|²], k = ρ² − 4 − ρ⁻².
inline Certificate prop52_certificate(const AnnulusMap& map, double rho) {
  const CircleFunctionals f = circle_functionals(map, rho);
  const double k = rho * rho - 4.0 - 1.0 / (rho * rho);
  Certificate c;
  c.U = f.U;
  c.winding_term = std::pow(0.5 * (rho + 1.0 / rho), 2) * f.winding_form;
  c.speed_term = 2.0 * f.half_dU_at_1;
  c.jacobian_term = 0.5 * k * f.mean_jacobian;
  c.disk_term = k / (4.0 * std::numbers::pi) * (quad::two_pi * f.boundary_det_Df - f.disk_energy);
  c.value = c.U - c.winding_term - c.speed_term - c.jacobian_term - c.disk_term;
  c.below_sqrt7 = rho < std::sqrt(7.0);
  c.trace_not_unimodular = !trace_is_unimodular(map);
  return c;
}

/// Σ Qₙ(aₙ, bₙ) + Q₀(a₀, b₀).
inline double qform_sum(const AnnulusMap& map, double rho) {
  detail::check_open_radius(map, rho, "qform_sum");
  const QFormEval q0 = qform_coefficients(0, rho);
  double s = qform_value(q0.A, q0.B, q0.C, map.log_a0(), map.log_b0());
  for (const auto& [n, m] : map.terms()) {
    const QFormEval q = qform_coefficients(n, rho);
    s += qform_value(q.A, q.B, q.C, m.a, m.b);
  }
  return s;
}

/// Per-index terms of the decomposition, n = 0 first.
inline std::vector<QFormEval> qform_decomposition(const AnnulusMap& map, double rho) {
  detail::check_open_radius(map, rho, "qform_decomposition");
  std::vector<QFormEval> out;
  out.push_back(qform_at(0, rho, map.log_a0(), map.log_b0()));
  for (const auto& [n, m] : map.terms()) out.push_back(qform_at(n, rho, m.a, m.b));
  return out;
}

}  // namespace nitsche

#endif
