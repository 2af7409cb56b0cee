#ifndef NITSCHE_RANDOM_MAPS_HPP
#define NITSCHE_RANDOM_MAPS_HPP

// Seeded generators of test maps. Every generator is a pure function of the engine state.

#include <cmath>
#include <random>

#include "nitsche/annulus_map.hpp"
#include "nitsche/disk_maps.hpp"

namespace nitsche {

using Rng = std::mt19937_64;

namespace detail {

inline cplx complex_gaussian(Rng& rng, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace detail

struct RandomMapOptions {
  int N = 8;              // truncation order
  double decay = 2.0;     // coefficient scale |n|^{-decay}
  bool log_term = true;
};

/// aₙ, bₙ complex Gaussian scaled by |n|^{-decay}; a₀, b₀ unit complex Gaussian when log_term.
inline AnnulusMap random_map(Rng& rng, double R, const RandomMapOptions& opt = {}) {
  AnnulusMap::Terms t;
  for (int n = -opt.N; n <= opt.N; ++n) {
    if (n == 0) continue;
    const double s = std::pow(std::abs(n), -opt.decay);
    const cplx a = detail::complex_gaussian(rng, s);
    const cplx b = detail::complex_gaussian(rng, s);
    t[n] = {a, b};
  }
  cplx a0{}, b0{};
  if (opt.log_term) {
    a0 = detail::complex_gaussian(rng, 1.0);
    b0 = detail::complex_gaussian(rng, 1.0);
  }
  return AnnulusMap(R, a0, b0, std::move(t));
}

/// Holomorphic table: Σ aₙzⁿ over 1 <= |n| <= N plus a constant; all bₙ and a₀ vanish.
inline AnnulusMap random_holomorphic_map(Rng& rng, double R, int N = 8, double decay = 2.0) {
  AnnulusMap::Terms t;
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    t[n] = {detail::complex_gaussian(rng, std::pow(std::abs(n), -decay)), 0.0};
  }
  return AnnulusMap(R, 0.0, detail::complex_gaussian(rng, 1.0), std::move(t));
}

/// Inner trace e^{iα} z on T: a₁ + b₁ = e^{iα}, bₙ = −aₙ for n ≠ 1, b₀ = 0, a₀ free.
inline AnnulusMap random_unimodular_trace_map(Rng& rng, double R, int N = 8, double decay = 2.0) {
  std::uniform_real_distribution<double> ang(0.0, quad::two_pi);
  AnnulusMap::Terms t;
  for (int n = -N; n <= N; ++n) {
    if (n == 0 || n == 1) continue;
    const cplx a = detail::complex_gaussian(rng, std::pow(std::abs(n), -decay));
    t[n] = {a, -a};
  }
  const cplx a1 = detail::complex_gaussian(rng, 1.0);
  t[1] = {a1, std::polar(1.0, ang(rng)) - a1};
  return AnnulusMap(R, detail::complex_gaussian(rng, 1.0), 0.0, std::move(t));
}

/// ζ with random coefficients rescaled so that 2Σ n|ζₙ| = budget (< 1 keeps ξ' > 0).
inline BoundaryHomeo random_boundary_homeo(Rng& rng, int N = 6, double budget = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<int, cplx> z;
  double norm = 0.0;
  for (int n = 1; n <= N; ++n) {
    const cplx c = detail::complex_gaussian(rng, std::pow(n, -2.0));
    z[n] = c;
    norm += 2.0 * n * std::abs(c);
  }
  const double target = budget * u(rng);
  if (norm > 0.0)
    for (auto& [n, c] : z) c *= target / norm;
  std::uniform_real_distribution<double> shift(-std::numbers::pi, std::numbers::pi);
  return BoundaryHomeo(shift(rng), std::move(z));
}

}  // namespace nitsche

#endif
