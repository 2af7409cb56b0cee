#ifndef NITSCHE_CIRCLE_MEANS_HPP
#define NITSCHE_CIRCLE_MEANS_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/quadrature.hpp"

namespace nitsche {

/// U(ρ) = ⨍_{T_ρ}|h|² and its first two ρ-derivatives.
struct CircleMeans {
  double U = 0.0;
  double U_dot = 0.0;
  double U_ddot = 0.0;
};

namespace detail {

inline void check_open_radius(const AnnulusMap& map, double rho, const char* who) {
  if (!(rho >= 1.0) || !(rho < map.outer_radius()))
    throw DomainError(std::string(who) + ": rho must lie in [1, R)");
}

inline void check_closed_radius(const AnnulusMap& map, double rho, const char* who) {
  if (!(rho >= 1.0) || !(rho <= map.outer_radius()))
    throw DomainError(std::string(who) + ": rho must lie in [1, R]");
}

/// Orthogonal sum over modes; valid on the closed annulus.
inline CircleMeans means_sum(const AnnulusMap& map, double rho) {
  CircleMeans m;
  {
    const cplx u = map.log_a0() * std::log(rho) + map.log_b0();
    const cplx u1 = map.log_a0() / rho;
    const cplx u2 = -map.log_a0() / (rho * rho);
    m.U += std::norm(u);
    m.U_dot += 2.0 * std::real(std::conj(u) * u1);
    m.U_ddot += 2.0 * (std::norm(u1) + std::real(std::conj(u) * u2));
  }
  for (const auto& [n, md] : map.terms()) {
    const double dn = n;
    const double rn = std::pow(rho, n);
    const double rmn = 1.0 / rn;
    const cplx u = md.a * rn + md.b * rmn;
    const cplx u1 = dn * (md.a * rn - md.b * rmn) / rho;
    const cplx u2 = (dn * (dn - 1.0) * md.a * rn + dn * (dn + 1.0) * md.b * rmn) / (rho * rho);
    m.U += std::norm(u);
    m.U_dot += 2.0 * std::real(std::conj(u) * u1);
    m.U_ddot += 2.0 * (std::norm(u1) + std::real(std::conj(u) * u2));
  }
  return m;
}

}  // namespace detail

/// Exact finite sums of the means and their term-wise derivatives, 1 <= rho < R.
inline CircleMeans means_closed_form(const AnnulusMap& map, double rho) {
  detail::check_open_radius(map, rho, "means_closed_form");
  return detail::means_sum(map, rho);
}

struct QuadratureMean {
  double U = 0.0;
  int nodes = 0;
  bool exact = true;  // false when nodes < 4N + 8
};

/// M-point trapezoid average of |h|² on T_rho.
inline QuadratureMean means_quadrature(const AnnulusMap& map, double rho, int M) {
  detail::check_closed_radius(map, rho, "means_quadrature");
  if (M < 1) throw DomainError("means_quadrature: M must be >= 1");
  QuadratureMean out;
  out.nodes = M;
  out.exact = M >= 4 * map.order() + 8;
  out.U = quad::periodic_mean([&](double t) { return std::norm(value_at(map, rho, t)); }, M);
  return out;
}

/// Default node count for angular averages of quadratic expressions in h and Dh.
inline int angular_nodes(const AnnulusMap& map) { return 4 * map.order() + 8; }

/// Derivative of the mean radius at the inner circle, U̇(1) / (2√U(1)).
inline double initial_speed(const AnnulusMap& map) {
  const CircleMeans m = detail::means_sum(map, 1.0);
  if (!(m.U > 0.0)) throw DomainError("initial_speed: U(1) = 0");
  return m.U_dot / (2.0 * std::sqrt(m.U));
}

/// ∬_{A(1,rho)} |Dh|² via Green's identity, π(ρU̇(ρ) − U̇(1)). Accepts 1 <= rho <= R.
inline double energy_green(const AnnulusMap& map, double rho) {
  detail::check_closed_radius(map, rho, "energy_green");
  return std::numbers::pi * (rho * detail::means_sum(map, rho).U_dot - detail::means_sum(map, 1.0).U_dot);
}

/// Direct 2-D quadrature of ∬_{A(1,rho)} |Dh|²: composite 8-point Gauss–Legendre in ρ starting at
/// 32 nodes per unit length and doubling until the relative change is below rel_tol; exact
/// trapezoid in θ.
inline quad::RefinedValue energy_quadrature(const AnnulusMap& map, double rho, double rel_tol = 1e-10) {
  detail::check_closed_radius(map, rho, "energy_quadrature");
  if (rho == 1.0) return {0.0, 0, true};
  const int M = angular_nodes(map);
  const auto rule = quad::gauss_legendre(8);
  auto ring = [&](double r) {
    return quad::two_pi * r *
           quad::periodic_mean([&](double t) { return evaluate_polar(map, r, t).grad_norm_sq; }, M);
  };
  const int start = std::max(1, static_cast<int>(std::ceil(4.0 * (rho - 1.0))));
  return quad::refine_by_doubling([&](int p) { return quad::composite_gauss(ring, 1.0, rho, p, rule); }, start,
                                  rel_tol, 1 << 14);
}

/// The three forms of L[U].
struct LValues {
  double L1 = 0.0;
  double L2 = 0.0;
  double L3 = 0.0;
};

inline double operator_L1(const CircleMeans& m, double rho) {
  const double s = rho * rho + 1.0;
  return m.U_ddot + (3.0 - rho * rho) / (rho * s) * m.U_dot - 8.0 * m.U / (s * s);
}

/// Divergence form ((ρ²+1)/ρ³)(ρ³V')' with V = U/(ρ²+1) differentiated analytically.
inline double operator_L2(const CircleMeans& m, double rho) {
  const double s = rho * rho + 1.0;
  const double V1 = m.U_dot / s - 2.0 * rho * m.U / (s * s);
  const double V2 = m.U_ddot / s - 4.0 * rho * m.U_dot / (s * s) - 2.0 * m.U / (s * s) +
                    8.0 * rho * rho * m.U / (s * s * s);
  const double r3 = rho * rho * rho;
  return s / r3 * (3.0 * rho * rho * V1 + r3 * V2);
}

/// First-derivative integrand of L3 averaged over T_rho with M nodes.
inline double operator_L3(const AnnulusMap& map, double rho, int M) {
  const double s = rho * rho + 1.0;
  const double c_mix = 2.0 * (rho * rho - 1.0) / (rho * s);
  const double c_val = 8.0 / (s * s);
  return quad::periodic_mean(
      [&](double t) {
        const PolarJet j = evaluate_polar(map, rho, t);
        const double d_abs_sq = 2.0 * std::real(std::conj(j.value) * j.d_rho);
        return 2.0 * std::norm(j.d_rho) + 2.0 / (rho * rho) * std::norm(j.d_theta) - c_mix * d_abs_sq -
               c_val * std::norm(j.value);
      },
      M);
}

/// L[U] at rho in [1, R] in all three forms.
inline LValues operator_L(const AnnulusMap& map, double rho) {
  detail::check_closed_radius(map, rho, "operator_L");
  const CircleMeans m = detail::means_sum(map, rho);
  return {operator_L1(m, rho), operator_L2(m, rho), operator_L3(map, rho, angular_nodes(map))};
}

/// (1/ρ)(ρ³(U/ρ²)')' = 4Σ n(n−1)|aₙ|²ρ^{2n−2} for conformal tables.
inline double operator_L_conformal(const AnnulusMap& map, double rho, double tol = 1e-12) {
  detail::check_closed_radius(map, rho, "operator_L_conformal");
  if (!is_conformal(map, tol)) throw DomainError("operator_L_conformal: map is not conformal");
  double s = 0.0;
  for (const auto& [n, md] : map.terms())
    s += 4.0 * n * (n - 1.0) * std::norm(md.a) * std::pow(rho, 2 * n - 2);
  return s;
}

/// Ü − U̇/ρ, the same operator evaluated from the means of an arbitrary table.
inline double operator_L_conformal_from_means(const CircleMeans& m, double rho) { return m.U_ddot - m.U_dot / rho; }

struct RadialProfile {
  std::vector<double> rho_grid;
  std::vector<double> U;
  std::vector<double> U_dot;
  std::vector<double> U_ddot;
  std::vector<double> mean_radius;
  std::vector<double> L_of_U;
};

inline RadialProfile radial_profile(const AnnulusMap& map, const std::vector<double>& rho_grid) {
  RadialProfile p;
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (i > 0 && !(rho_grid[i] > rho_grid[i - 1])) throw DomainError("radial_profile: grid must be increasing");
    const double r = rho_grid[i];
    const CircleMeans m = means_closed_form(map, r);
    p.rho_grid.push_back(r);
    p.U.push_back(m.U);
    p.U_dot.push_back(m.U_dot);
    p.U_ddot.push_back(m.U_ddot);
    p.mean_radius.push_back(std::sqrt(m.U));
    p.L_of_U.push_back(operator_L1(m, r));
  }
  return p;
}

/// lo, lo + h, ..., hi with `steps` points (steps >= 2), or {lo} when steps == 1.
inline std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw DomainError("linear_grid: steps must be >= 1");
  std::vector<double> g(steps);
  if (steps == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
  g.back() = hi;
  return g;
}

}  // namespace nitsche

#endif
