#ifndef NITSCHE_MINIMAL_SURFACE_HPP
#define NITSCHE_MINIMAL_SURFACE_HPP

// Lifts of harmonic maps h = u + iv to minimal graphs (u, v, w) in isothermal coordinates:
// w_z² = −h_z·conj(h_z̄), w real with dw = 2 Re(w_z dz).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/circle_means.hpp"
#include "nitsche/quadrature.hpp"

namespace nitsche {

/// μ = conj(h_z̄)/h_z.
inline cplx second_dilatation(const AnnulusMap& map, cplx z) {
  const PolarJet j = evaluate(map, z);
  if (j.d_z == 0.0) throw SingularPoint("second_dilatation: h_z vanishes");
  return std::conj(j.d_zbar) / j.d_z;
}

/// log(R* + √(R*² − 1)), the modulus of the catenoid slab over the Nitsche-critical pair.
inline double catenoid_modulus(double R_star) {
  if (!(R_star >= 1.0)) throw DomainError("catenoid_modulus: R* must be >= 1");
  return std::log(R_star + std::sqrt((R_star - 1.0) * (R_star + 1.0)));
}

struct ModulusBound {
  bool holds = false;
  double slack = 0.0;
};

inline ModulusBound modulus_bound_check(double surface_modulus, double ratio) {
  if (!(ratio >= 1.0)) throw DomainError("modulus_bound_check: ratio must be >= 1");
  ModulusBound b;
  b.slack = catenoid_modulus(ratio) - surface_modulus;
  b.holds = b.slack >= 0.0;
  return b;
}

struct LiftGrid {
  int n_rho = 65;    // radial samples including ρ = 1 and ρ = R
  int n_theta = 128; // angular samples
  int sub = 8;       // Gauss–Legendre nodes per grid step
};

struct MinimalLift {
  AnnulusMap base;
  int n_rho = 0;
  int n_theta = 0;
  std::vector<double> rho;
  std::vector<double> theta;
  std::vector<double> w;             // n_rho × n_theta, row-major in ρ
  std::vector<cplx> w_z;             // tracked branch of i·s·√φ at the samples
  std::vector<int> branch_sign;      // per ray: tracked √φ at ρ = 1 equals sign·(principal root)
  std::vector<std::optional<cplx>> mu;  // absent where h_z = 0
  bool flat = false;
  double residual = 0.0;             // max |h_z conj(h_z̄) + w_z²| / (|h_z|² + |h_z̄|²)
  double period_defect = 0.0;        // |∮_T dw| and outer-circle path mismatch, relative to the w scale

  double w_at(int i, int j) const { return w[static_cast<std::size_t>(i) * n_theta + j]; }
  cplx value_at(int i, int j) const { return nitsche::value_at(base, rho[i], theta[j]); }
};

namespace detail {

inline cplx phi_at(const AnnulusMap& map, double rho, double theta) {
  const PolarJet j = evaluate_polar(map, rho, theta);
  return j.d_z * std::conj(j.d_zbar);
}

/// Root of phi closest to the previous branch value.
inline cplx continue_root(cplx phi, cplx prev) {
  const cplx r = std::sqrt(phi);
  return std::real(r * std::conj(prev)) >= 0.0 ? r : -r;
}

/// Argument increment of phi along a closed polyline of points, in turns.
template <class Points>
double phi_winding(const AnnulusMap& map, const Points& pts) {
  double total = 0.0;
  cplx prev = phi_at(map, pts.back().first, pts.back().second);
  for (const auto& p : pts) {
    const cplx cur = phi_at(map, p.first, p.second);
    if (cur == 0.0 || prev == 0.0) return std::nan("");
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / quad::two_pi;
}

inline bool is_odd_turn(double turns) {
  if (std::isnan(turns)) return false;
  const long k = std::lround(turns);
  return (k % 2) != 0;
}

}  // namespace detail

/// Path-integrates w_z = i·s·√φ first along T from θ = 0 (gauge w = 0 there), then out along each ray.
/// The overall sign s is fixed so that the mean of w on the outer circle is nonnegative.
inline MinimalLift lift(const AnnulusMap& map, LiftGrid grid = {}) {
  if (grid.n_rho < 2 || grid.n_theta < 8 || grid.sub < 1) throw DomainError("lift: grid too coarse");
  const double R = map.outer_radius();
  MinimalLift L{map, grid.n_rho, grid.n_theta, {}, {}, {}, {}, {}, {}, false, 0.0, 0.0};
  L.rho = linear_grid(1.0, R, grid.n_rho);
  for (int j = 0; j < grid.n_theta; ++j) L.theta.push_back(quad::two_pi * j / grid.n_theta);
  const std::size_t cells = static_cast<std::size_t>(grid.n_rho) * grid.n_theta;
  L.w.assign(cells, 0.0);
  L.w_z.assign(cells, 0.0);
  L.mu.assign(cells, std::nullopt);
  L.branch_sign.assign(grid.n_theta, 1);

  double phi_max = 0.0, scale_max = 0.0;
  std::vector<cplx> phi(cells);
  for (int i = 0; i < grid.n_rho; ++i)
    for (int j = 0; j < grid.n_theta; ++j) {
      const PolarJet jet = evaluate_polar(map, L.rho[i], L.theta[j]);
      const std::size_t k = static_cast<std::size_t>(i) * grid.n_theta + j;
      phi[k] = jet.d_z * std::conj(jet.d_zbar);
      if (jet.d_z != 0.0) L.mu[k] = std::conj(jet.d_zbar) / jet.d_z;
      phi_max = std::max(phi_max, std::abs(phi[k]));
      scale_max = std::max(scale_max, std::norm(jet.d_z) + std::norm(jet.d_zbar));
    }
  if (phi_max <= 1e-14 * std::max(scale_max, 1e-300) || phi_max == 0.0) {
    L.flat = true;
    return L;
  }

  // Odd-order zeros: winding of φ around T and around every grid cell (edges subdivided).
  {
    constexpr int kEdge = 4;
    std::vector<std::pair<double, double>> ring;
    for (int j = 0; j < grid.n_theta * kEdge; ++j) ring.emplace_back(1.0, quad::two_pi * j / (grid.n_theta * kEdge));
    if (detail::is_odd_turn(detail::phi_winding(map, ring)))
      throw NoLift("lift: sqrt(h_z conj(h_zbar)) has no continuous branch around the unit circle");
    for (int i = 0; i + 1 < grid.n_rho; ++i) {
      for (int j = 0; j < grid.n_theta; ++j) {
        const double r0 = L.rho[i], r1 = L.rho[i + 1];
        const double t0 = L.theta[j], t1 = t0 + quad::two_pi / grid.n_theta;
        std::vector<std::pair<double, double>> loop;
        for (int k = 0; k < kEdge; ++k) loop.emplace_back(r0 + (r1 - r0) * k / kEdge, t0);
        for (int k = 0; k < kEdge; ++k) loop.emplace_back(r1, t0 + (t1 - t0) * k / kEdge);
        for (int k = 0; k < kEdge; ++k) loop.emplace_back(r1 - (r1 - r0) * k / kEdge, t1);
        for (int k = 0; k < kEdge; ++k) loop.emplace_back(r0, t1 - (t1 - t0) * k / kEdge);
        const double turns = detail::phi_winding(map, loop);
        if (detail::is_odd_turn(turns))
          throw NoLift("lift: odd-order zero of h_z conj(h_zbar) near rho = " + std::to_string(0.5 * (r0 + r1)) +
                       ", theta = " + std::to_string(0.5 * (t0 + t1)));
      }
    }
  }

  const auto rule = quad::gauss_legendre(grid.sub);
  // Integrates 2 Re(i·√φ dz) along a path z(t), t in [a, b], continuing the root from `root`.
  auto segment = [&](auto&& path, auto&& dpath, double a, double b, cplx& root) {
    double acc = 0.0;
    const double h = b - a;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = a + 0.5 * h * (1.0 + rule.nodes[q]);
      const auto [r, th] = path(t);
      root = detail::continue_root(detail::phi_at(map, r, th), root);
      acc += 0.5 * h * rule.weights[q] * 2.0 * std::real(I * root * dpath(t));
    }
    root = detail::continue_root(detail::phi_at(map, path(b).first, path(b).second), root);
    return acc;
  };

  // Along T.
  const int nt = grid.n_theta;
  const double dth = quad::two_pi / nt;
  std::vector<cplx> root_T(nt + 1);
  std::vector<double> w_T(nt + 1, 0.0);
  root_T[0] = std::sqrt(phi[0]);
  if (root_T[0] == 0.0) root_T[0] = std::sqrt(detail::phi_at(map, 1.0, 1e-9));
  {
    auto path = [](double t) { return std::pair<double, double>{1.0, t}; };
    auto dpath = [](double t) { return I * std::polar(1.0, t); };
    for (int j = 0; j < nt; ++j) {
      cplx root = root_T[j];
      w_T[j + 1] = w_T[j] + segment(path, dpath, j * dth, (j + 1) * dth, root);
      root_T[j + 1] = root;
    }
  }
  double w_scale = 0.0;
  for (double v : w_T) w_scale = std::max(w_scale, std::abs(v));
  if (std::real(root_T[nt] * std::conj(root_T[0])) < 0.0)
    throw NoLift("lift: branch of sqrt(phi) does not close up around the unit circle");

  // Along rays.
  for (int j = 0; j < nt; ++j) {
    const double th = L.theta[j];
    cplx root = root_T[j];
    L.branch_sign[j] = std::real(root * std::conj(std::sqrt(phi[j]))) >= 0.0 ? 1 : -1;
    double w = w_T[j];
    auto path = [th](double t) { return std::pair<double, double>{t, th}; };
    auto dpath = [th](double) { return std::polar(1.0, th); };
    L.w[j] = w;
    L.w_z[j] = I * root;
    for (int i = 0; i + 1 < grid.n_rho; ++i) {
      w += segment(path, dpath, L.rho[i], L.rho[i + 1], root);
      const std::size_t k = static_cast<std::size_t>(i + 1) * nt + j;
      L.w[k] = w;
      L.w_z[k] = I * root;
    }
  }
  for (double v : L.w) w_scale = std::max(w_scale, std::abs(v));

  // Single-valuedness: period around T, and the outer circle walked between ray ends.
  double defect = std::abs(w_T[nt]);
  {
    const int io = grid.n_rho - 1;
    auto path = [R](double t) { return std::pair<double, double>{R, t}; };
    auto dpath = [R](double t) { return I * std::polar(R, t); };
    cplx root = -L.w_z[static_cast<std::size_t>(io) * nt] * I;  // back from i·root
    double w = L.w_at(io, 0);
    for (int j = 0; j < nt; ++j) {
      w += segment(path, dpath, j * dth, (j + 1) * dth, root);
      const int jn = (j + 1) % nt;
      defect = std::max(defect, std::abs(w - L.w_at(io, jn)));
      const cplx expected = -L.w_z[static_cast<std::size_t>(io) * nt + jn] * I;
      if (std::real(root * std::conj(expected)) < 0.0)
        throw NoLift("lift: ray branches disagree on the outer circle");
    }
  }
  L.period_defect = defect / std::max(1.0, w_scale);
  if (L.period_defect > 1e-6) throw NoLift("lift: w is not single-valued (period defect " + std::to_string(L.period_defect) + ")");

  // Orientation: upper slab.
  double outer_mean = 0.0;
  for (int j = 0; j < nt; ++j) outer_mean += L.w_at(grid.n_rho - 1, j);
  if (outer_mean < 0.0) {
    for (double& v : L.w) v = -v;
    for (cplx& c : L.w_z) c = -c;
    for (int& s : L.branch_sign) s = -s;
  }

  for (int i = 0; i < grid.n_rho; ++i)
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * nt + j;
      const PolarJet jet = evaluate_polar(map, L.rho[i], L.theta[j]);
      const double scale = std::norm(jet.d_z) + std::norm(jet.d_zbar);
      if (scale > 0.0) L.residual = std::max(L.residual, std::abs(phi[k] + L.w_z[k] * L.w_z[k]) / scale);
    }
  return L;
}

/// Conformal modulus of the graph surface (the parameter annulus) and the image ratio
/// √U(R)/√U(1) used as R*/r*.
struct SurfaceBound {
  double surface_modulus = 0.0;
  double ratio = 0.0;
  ModulusBound bound;
};

inline SurfaceBound surface_bound(const AnnulusMap& map) {
  SurfaceBound s;
  s.surface_modulus = conformal_modulus(map);
  const double U1 = detail::means_sum(map, 1.0).U;
  if (!(U1 > 0.0)) throw DomainError("surface_bound: U(1) = 0");
  s.ratio = std::sqrt(detail::means_sum(map, map.outer_radius()).U / U1);
  s.bound = modulus_bound_check(s.surface_modulus, s.ratio);
  return s;
}

}  // namespace nitsche

#endif
