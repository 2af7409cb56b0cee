#ifndef NITSCHE_NITSCHE_FAMILY_HPP
#define NITSCHE_NITSCHE_FAMILY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/circle_means.hpp"

namespace nitsche {

struct NitscheParams {
  double v = 0.0;
  double R = 2.0;
};

/// ħ_v(z) = ½(z + 1/z̄) + (v/2)(z − 1/z̄).
inline AnnulusMap nitsche_map(const NitscheParams& p) {
  if (!(p.v >= 0.0) || !std::isfinite(p.v)) throw DomainError("nitsche_map: v must be >= 0");
  return AnnulusMap(p.R, 0.0, 0.0, {{1, {0.5 * (1.0 + p.v), 0.5 * (1.0 - p.v)}}});
}

/// Critical Nitsche map ½(z + 1/z̄).
inline AnnulusMap critical_nitsche_map(double R) { return nitsche_map({0.0, R}); }

/// Mean radius of ħ_v on T_rho.
inline double nitsche_mean_radius(double v, double rho) {
  return 0.5 * (rho + 1.0 / rho) + 0.5 * v * (rho - 1.0 / rho);
}

/// ½(ρ + 1/ρ).
inline double nitsche_floor(double rho) { return 0.5 * (rho + 1.0 / rho); }

inline bool nitsche_bound_holds(double R, double R_star) { return R_star >= 0.5 * (R + 1.0 / R); }

inline double nitsche_deficit(double R, double R_star) { return 0.5 * (R + 1.0 / R) - R_star; }

namespace detail {

inline void require_bound(double R, double R_star) {
  if (!(R > 1.0) || !std::isfinite(R)) throw DomainError("R must be finite and > 1");
  if (!(R_star > 1.0) || !std::isfinite(R_star)) throw DomainError("R* must be finite and > 1");
  if (!nitsche_bound_holds(R, R_star)) throw NoHarmonicHomeomorphism(nitsche_deficit(R, R_star));
}

}  // namespace detail

/// Sampled evidence that a map is a sense-preserving homeomorphism onto its image.
struct HomeoCheck {
  double min_jacobian = 0.0;  // over the open annulus sample grid
  double inner_winding = 0.0;
  double outer_winding = 0.0;
  bool pass = false;
};

/// Jacobian sign on an n×n interior polar grid plus boundary degrees. Heuristic, not a proof.
inline HomeoCheck homeomorphism_heuristic(const AnnulusMap& map, int n = 64) {
  HomeoCheck c;
  c.min_jacobian = std::numeric_limits<double>::infinity();
  const double R = map.outer_radius();
  for (int i = 0; i < n; ++i) {
    const double rho = 1.0 + (R - 1.0) * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double t = quad::two_pi * j / n;
      c.min_jacobian = std::min(c.min_jacobian, evaluate_polar(map, rho, t).jacobian);
    }
  }
  c.inner_winding = winding_number(map, 1.0);
  c.outer_winding = winding_number(map, R);
  c.pass = c.min_jacobian > 0.0 && std::abs(c.inner_winding - 1.0) < 1e-6 && std::abs(c.outer_winding - 1.0) < 1e-6;
  return c;
}

/// ħ_v from A(1,R) onto a domain with outer mean radius R*; v = (2R* − (R + 1/R))/(R − 1/R).
inline AnnulusMap construct_harmonic_homeo(double R, double R_star) {
  detail::require_bound(R, R_star);
  const double v = std::max(0.0, (2.0 * R_star - (R + 1.0 / R)) / (R - 1.0 / R));
  return nitsche_map({v, R});
}

/// v of the map returned by construct_harmonic_homeo.
inline double construct_speed(double R, double R_star) {
  detail::require_bound(R, R_star);
  return std::max(0.0, (2.0 * R_star - (R + 1.0 / R)) / (R - 1.0 / R));
}

/// h^min = az + b/z̄ with a = (RR*−1)/(R²−1), b = (R−R*)R/(R²−1).
inline AnnulusMap energy_minimizer(double R, double R_star) {
  detail::require_bound(R, R_star);
  const double d = R * R - 1.0;
  const double a = (R * R_star - 1.0) / d;
  const double b = (R - R_star) * R / d;
  return AnnulusMap(R, 0.0, 0.0, {{1, {a, b}}});
}

/// 2π[a²(R²−1) + b²(1−R⁻²)], the energy of az + b/z̄ over A(1,R).
inline double minimizer_energy(double R, double R_star) {
  const AnnulusMap m = energy_minimizer(R, R_star);
  const double a = m.mode(1).a.real(), b = m.mode(1).b.real();
  return quad::two_pi * (a * a * (R * R - 1.0) + b * b * (1.0 - 1.0 / (R * R)));
}

/// Map on A(R⁻¹, R) glued from radial pieces.
class PiecewiseMap {
 public:
  enum class Kind { angular_projection, harmonic };
  struct Piece {
    double lo;
    double hi;
    Kind kind;
    std::optional<AnnulusMap> map;
  };

  explicit PiecewiseMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw DomainError("PiecewiseMap: no pieces");
    for (std::size_t i = 1; i < pieces_.size(); ++i)
      if (pieces_[i].lo != pieces_[i - 1].hi) throw DomainError("PiecewiseMap: pieces must be contiguous");
  }

  const std::vector<Piece>& pieces() const { return pieces_; }
  double inner_radius() const { return pieces_.front().lo; }
  double outer_radius() const { return pieces_.back().hi; }

  /// Value at z; the piece with the smallest index containing |z| wins on a seam.
  cplx value(cplx z) const {
    const double rho = std::abs(z);
    for (const Piece& p : pieces_) {
      if (rho >= p.lo && rho <= p.hi) return value_on(p, z);
    }
    throw DomainError("PiecewiseMap: |z| outside the domain");
  }

  /// Values from both sides of seam k (between piece k and k+1) at angle theta.
  std::pair<cplx, cplx> seam_values(std::size_t k, double theta) const {
    const double rho = pieces_.at(k).hi;
    const cplx z = std::polar(rho, theta);
    return {value_on(pieces_.at(k), z), value_on(pieces_.at(k + 1), z)};
  }

 private:
  static cplx value_on(const Piece& p, cplx z) {
    if (p.kind == Kind::angular_projection) return z / std::abs(z);
    return evaluate(*p.map, z).value;
  }

  std::vector<Piece> pieces_;
};

/// h^inf: z/|z| on R⁻¹ ≤ |z| ≤ 1 and ½(z + 1/z̄) on 1 ≤ |z| ≤ R.
inline PiecewiseMap hammering_map(double R) {
  if (!(R > 1.0)) throw DomainError("hammering_map: R must be > 1");
  return PiecewiseMap({{1.0 / R, 1.0, PiecewiseMap::Kind::angular_projection, std::nullopt},
                       {1.0, R, PiecewiseMap::Kind::harmonic, critical_nitsche_map(R)}});
}

/// ½(z/√(rR) + √(rR)/z̄) on A(r, R), returned on A(1, R/r): a₁ = 1/(2s), b₁ = s/2 with s = √(R/r).
inline AnnulusMap double_cover_map(double r, double R) {
  if (!(r > 0.0) || !(R > r)) throw DomainError("double_cover_map: need 0 < r < R");
  const double s = std::sqrt(R / r);
  return AnnulusMap(R / r, 0.0, 0.0, {{1, {0.5 / s, 0.5 * s}}});
}

/// Radius where U is smallest on [1, R], by bisection on U̇.
inline double min_mean_radius_location(const AnnulusMap& map) {
  const double R = map.outer_radius();
  double lo = 1.0, hi = R;
  const double d_lo = detail::means_sum(map, lo).U_dot;
  const double d_hi = detail::means_sum(map, hi).U_dot;
  if (d_lo >= 0.0) return 1.0;
  if (d_hi <= 0.0) return R;
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (detail::means_sum(map, mid).U_dot < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Outer mean radius divided by the smallest mean radius over [1, R].
inline double mean_radius_ratio(const AnnulusMap& map) {
  const double rmin = std::sqrt(detail::means_sum(map, min_mean_radius_location(map)).U);
  return std::sqrt(detail::means_sum(map, map.outer_radius()).U) / rmin;
}

/// Default outer radius for the log-perturbed counterexample table.
inline constexpr double kCounterexampleR = 25.0;

/// (1 + a z̄)/(z̄ + a) + λ log|z| expanded as a + (1−a²)Σ_{n≥1} (−a)^{n−1} z̄^{−n}, truncated once aⁿ < 1e-16.
/// λ defaults to 1/a.
inline AnnulusMap example_51_map(double a, std::optional<double> lam = std::nullopt, double R = kCounterexampleR) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("example_51_map: a must lie in (0, 1)");
  const double l = lam.value_or(1.0 / a);
  if (!std::isfinite(l)) throw DomainError("example_51_map: lambda must be finite");
  int N = 1;
  for (double aN = a; aN >= 1e-16; aN *= a) ++N;
  AnnulusMap::Terms t;
  double pw = 1.0;  // (−a)^{n−1}
  for (int n = 1; n <= N; ++n, pw *= -a) t[n] = {0.0, (1.0 - a * a) * pw};
  return AnnulusMap(R, l, a, std::move(t));
}

/// Closed-form value of the counterexample map, used as an oracle for the truncated table.
inline cplx example_51_exact(double a, double lam, cplx z) {
  const cplx zb = std::conj(z);
  return (1.0 + a * zb) / (zb + a) + lam * std::log(std::abs(z));
}

/// √U(σ) − ½(σ + 1/σ).
inline double bound_margin(const AnnulusMap& map, double sigma) {
  detail::check_closed_radius(map, sigma, "bound_margin");
  return std::sqrt(detail::means_sum(map, sigma).U) - nitsche_floor(sigma);
}

/// First σ in [lo, hi] where the margin drops below −slack: scan then bisection.
inline std::optional<double> first_bound_violation(const AnnulusMap& map, double lo, double hi, int steps = 2000,
                                                   double slack = 1e-12) {
  const auto g = linear_grid(lo, hi, steps);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (bound_margin(map, g[i]) < -slack) {
      if (i == 0) return g[0];
      double a = g[i - 1], b = g[i];
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double mid = 0.5 * (a + b);
        (bound_margin(map, mid) < -slack ? b : a) = mid;
      }
      return 0.5 * (a + b);
    }
  }
  return std::nullopt;
}

/// Conditions (I)–(III) on the inner circle with the measured values.
struct InitialConditions {
  bool I = false;
  bool II = false;
  bool III = false;
  double winding = 0.0;
  double min_modulus = 0.0;
  double U_dot_1 = 0.0;
  double mean_jacobian = 0.0;
};

/// I: degree one and nonvanishing on T (surrogate for a homeomorphism homotopic to the identity).
/// II: U̇(1) >= −1e-12. III: trapezoid mean of the Jacobian on T >= −1e-12.
inline InitialConditions check_initial_conditions(const AnnulusMap& map) {
  InitialConditions c;
  const int samples = std::max(1024, 32 * map.order());
  c.min_modulus = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j)
    c.min_modulus = std::min(c.min_modulus, std::abs(value_at(map, 1.0, quad::two_pi * j / samples)));
  c.winding = c.min_modulus > 0.0 ? winding_number(map, 1.0, samples) : std::nan("");
  c.I = c.min_modulus > 0.0 && std::abs(c.winding - 1.0) < 1e-6;
  c.U_dot_1 = detail::means_sum(map, 1.0).U_dot;
  c.II = c.U_dot_1 >= -1e-12;
  c.mean_jacobian =
      quad::periodic_mean([&](double t) { return evaluate_polar(map, 1.0, t).jacobian; }, angular_nodes(map));
  c.III = c.mean_jacobian >= -1e-12;
  return c;
}

}  // namespace nitsche

#endif
