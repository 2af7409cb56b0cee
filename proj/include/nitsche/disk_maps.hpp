#ifndef NITSCHE_DISK_MAPS_HPP
#define NITSCHE_DISK_MAPS_HPP

// Harmonic maps of the unit disk, boundary circle homeomorphisms ξ(θ) = θ + ζ(θ) and the
// functionals around the Jacobian–energy inequality.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nitsche/ahm_io.hpp"
#include "nitsche/annulus_map.hpp"
#include "nitsche/quadrature.hpp"

namespace nitsche {

/// Increasing degree-one circle map ξ(θ) = θ + ζ(θ), ζ(θ) = ζ₀ + 2 Re Σ_{n≥1} ζₙ e^{inθ}.
class BoundaryHomeo {
 public:
  static constexpr int kCheckGrid = 4096;

  explicit BoundaryHomeo(double zeta0 = 0.0, std::map<int, cplx> zeta = {}) : z0_(zeta0), z_(std::move(zeta)) {
    if (!std::isfinite(z0_)) throw DomainError("BoundaryHomeo: non-finite zeta_0");
    for (const auto& [n, c] : z_) {
      if (n < 1) throw DomainError("BoundaryHomeo: coefficients are indexed by n >= 1");
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("BoundaryHomeo: non-finite coefficient");
    }
    min_derivative_ = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kCheckGrid; ++j)
      min_derivative_ = std::min(min_derivative_, xi_prime(quad::two_pi * j / kCheckGrid));
    if (!(min_derivative_ > 0.0))
      throw DomainError("BoundaryHomeo: xi is not increasing (min xi' = " + std::to_string(min_derivative_) + ")");
  }

  /// ξ(θ) = θ + c.
  static BoundaryHomeo rotation(double c) { return BoundaryHomeo(c); }

  /// ξ(θ) = θ + amp·sin(kθ).
  static BoundaryHomeo sine(double amp, int k) { return BoundaryHomeo(0.0, {{k, cplx(0.0, -0.5 * amp)}}); }

  double zeta0() const { return z0_; }
  const std::map<int, cplx>& zeta() const { return z_; }
  int order() const { return z_.empty() ? 0 : z_.rbegin()->first; }
  double min_derivative() const { return min_derivative_; }

  double zeta_at(double t) const {
    double s = z0_;
    for (const auto& [n, c] : z_) s += 2.0 * std::real(c * std::polar(1.0, n * t));
    return s;
  }
  double zeta_prime(double t) const {
    double s = 0.0;
    for (const auto& [n, c] : z_) s += 2.0 * std::real(I * static_cast<double>(n) * c * std::polar(1.0, n * t));
    return s;
  }
  double xi(double t) const { return t + zeta_at(t); }
  double xi_prime(double t) const { return 1.0 + zeta_prime(t); }

  /// Translate the parameter: ζ(θ) -> ζ(θ − s).
  BoundaryHomeo shifted(double s) const {
    std::map<int, cplx> z;
    for (const auto& [n, c] : z_) z[n] = c * std::polar(1.0, -n * s);
    return BoundaryHomeo(z0_, std::move(z));
  }
  BoundaryHomeo plus_constant(double c) const { return BoundaryHomeo(z0_ + c, z_); }

 private:
  double z0_;
  std::map<int, cplx> z_;
  double min_derivative_ = 0.0;
};

/// f = Σ_{n≥0} cₙ zⁿ + Σ_{n<0} cₙ z̄^{|n|} on the closed unit disk.
class DiskMap {
 public:
  explicit DiskMap(std::map<int, cplx> coeffs) : c_(std::move(coeffs)) {
    for (const auto& [n, c] : c_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("DiskMap: non-finite coefficient");
  }
  const std::map<int, cplx>& coeffs() const { return c_; }
  cplx coeff(int n) const {
    auto it = c_.find(n);
    return it == c_.end() ? cplx{} : it->second;
  }
  int order() const {
    int N = 1;
    for (const auto& [n, c] : c_) N = std::max(N, std::abs(n));
    return N;
  }

 private:
  std::map<int, cplx> c_;
};

struct DiskJet {
  cplx value{};
  cplx d_rho{};
  cplx d_theta{};
  cplx d_z{};
  cplx d_zbar{};
  double jacobian = 0.0;
  double grad_norm_sq = 0.0;
};

inline DiskJet evaluate_disk(const DiskMap& f, double rho, double theta) {
  if (!(rho >= 0.0) || !(rho <= 1.0 + 1e-14)) throw DomainError("evaluate_disk: need 0 <= rho <= 1");
  const cplx z = std::polar(rho, theta);
  DiskJet j;
  for (const auto& [n, c] : f.coeffs()) {
    const int m = std::abs(n);
    const cplx e = std::polar(1.0, n * theta);
    const double rm = std::pow(rho, m);
    j.value += c * rm * e;
    if (m > 0) {
      j.d_rho += static_cast<double>(m) * c * std::pow(rho, m - 1) * e;
      j.d_theta += I * static_cast<double>(n) * c * rm * e;
    }
    if (n > 0) j.d_z += static_cast<double>(n) * c * std::pow(z, n - 1);
    if (n < 0) j.d_zbar += static_cast<double>(m) * c * std::pow(std::conj(z), m - 1);
  }
  const double pz = std::norm(j.d_z), pzb = std::norm(j.d_zbar);
  j.jacobian = pz - pzb;
  j.grad_norm_sq = 2.0 * (pz + pzb);
  return j;
}

/// Spectral Poisson extension of e^{iξ(θ)}: cₙ by an M-point trapezoid rule, |n| <= N.
/// Coefficients below 1e-20 in modulus are dropped.
inline DiskMap poisson_extend(const BoundaryHomeo& b, int N, int M = 0) {
  if (N < 1) throw DomainError("poisson_extend: N must be >= 1");
  if (M <= 0) M = std::max(4096, 8 * N);
  std::vector<cplx> samples(M), twiddle(M);
  for (int j = 0; j < M; ++j) {
    samples[j] = std::polar(1.0, b.xi(quad::two_pi * j / M));
    twiddle[j] = std::polar(1.0, -quad::two_pi * j / M);
  }
  std::map<int, cplx> c;
  for (int n = -N; n <= N; ++n) {
    cplx s{};
    const long long step = ((n % M) + M) % M;
    for (long long j = 0, k = 0; j < M; ++j, k = (k + step) % M) s += samples[j] * twiddle[k];
    s /= static_cast<double>(M);
    if (std::abs(s) >= 1e-20) c[n] = s;
  }
  return DiskMap(std::move(c));
}

/// Extension of the inner trace of an annulus map: cₙ = aₙ + bₙ, c₀ = b₀.
inline DiskMap poisson_extend(const AnnulusMap& h) {
  std::map<int, cplx> c;
  if (h.log_b0() != 0.0) c[0] = h.log_b0();
  for (const auto& [n, m] : h.terms()) {
    const cplx s = m.a + m.b;
    if (s != 0.0) c[n] = s;
  }
  return DiskMap(std::move(c));
}

/// ∬_D |Df|² = 2πΣ|n||cₙ|².
inline double disk_energy(const DiskMap& f) {
  double s = 0.0;
  for (const auto& [n, c] : f.coeffs()) s += std::abs(n) * std::norm(c);
  return quad::two_pi * s;
}

/// ∬_D det Df = πΣ n|cₙ|².
inline double disk_area(const DiskMap& f) {
  double s = 0.0;
  for (const auto& [n, c] : f.coeffs()) s += n * std::norm(c);
  return std::numbers::pi * s;
}

/// ⨍_T det Df = Σ n|n||cₙ|².
inline double boundary_mean_det(const DiskMap& f) {
  double s = 0.0;
  for (const auto& [n, c] : f.coeffs()) s += static_cast<double>(n) * std::abs(n) * std::norm(c);
  return s;
}

namespace detail {

/// ∬_D of a quadratic jet expression: Gauss–Legendre in ρ (exact for the polynomial degree) times
/// an exact trapezoid in θ.
template <class F>
double disk_integral(const DiskMap& f, F&& integrand) {
  const int N = f.order();
  const auto rule = quad::gauss_legendre(N + 2);
  const int M = 4 * N + 8;
  return quad::composite_gauss(
      [&](double r) {
        return quad::two_pi * r * quad::periodic_mean([&](double t) { return integrand(evaluate_disk(f, r, t)); }, M);
      },
      0.0, 1.0, 1, rule);
}

}  // namespace detail

inline double disk_area_quadrature(const DiskMap& f) {
  return detail::disk_integral(f, [](const DiskJet& j) { return j.jacobian; });
}

inline double disk_energy_quadrature(const DiskMap& f) {
  return detail::disk_integral(f, [](const DiskJet& j) { return j.grad_norm_sq; });
}

/// ∫_T |f_θ|·|(|f|)_ρ| dθ by an M-point trapezoid rule.
inline double boundary_abs_det(const DiskMap& f, int M = 0) {
  if (M <= 0) M = std::max(4096, 16 * f.order());
  return quad::two_pi * quad::periodic_mean(
                            [&](double t) {
                              const DiskJet j = evaluate_disk(f, 1.0, t);
                              const double mod = std::abs(j.value);
                              if (mod == 0.0) return 0.0;
                              const double mod_rho = std::real(std::conj(j.value) * j.d_rho) / mod;
                              return std::abs(j.d_theta) * std::abs(mod_rho);
                            },
                            M);
}

struct JacobianEnergyChain {
  double boundary_abs_det = 0.0;  // ∫_T |det Df|
  double disk_energy = 0.0;       // ∬_D |Df|²
  double twice_area = 0.0;        // 2∬_D det Df
  double area = 0.0;
  bool area_is_pi = false;        // sense-preserving degree-one extension, |area − π| <= 1e-8
  bool chain_holds = false;       // boundary_abs_det >= disk_energy >= twice_area with 1e-8 slack
};

inline JacobianEnergyChain jacobian_energy_chain(const DiskMap& f) {
  JacobianEnergyChain c;
  c.boundary_abs_det = boundary_abs_det(f);
  c.disk_energy = disk_energy(f);
  c.area = disk_area(f);
  c.twice_area = 2.0 * c.area;
  if (!std::isfinite(c.boundary_abs_det) || !std::isfinite(c.disk_energy) || !std::isfinite(c.area))
    throw RangeError("jacobian_energy_chain: non-finite sums");
  c.area_is_pi = std::abs(c.area - std::numbers::pi) <= 1e-8;
  c.chain_holds = c.boundary_abs_det >= c.disk_energy - 1e-8 && c.disk_energy >= c.twice_area - 1e-8;
  return c;
}

namespace detail {

/// (1 − cos Δξ)/(1 − cos Δθ) written with half-angle sines; ξ'(θ)² on the diagonal.
inline double kernel_ratio(double dxi, double dtheta, double diag) {
  const double s = std::sin(0.5 * dtheta);
  if (std::abs(s) < 1e-300) return diag;
  const double u = std::sin(0.5 * dxi);
  return (u * u) / (s * s);
}

}  // namespace detail

/// |f|_ρ(e^{iθ}) = (1/2π)∫ (1 − cos[ξ(θ)−ξ(φ)])/(1 − cos(θ−φ)) dφ, trapezoid with nodes aligned to θ
/// and the diagonal replaced by its limit ξ'(θ)².
inline double boundary_normal_derivative(const BoundaryHomeo& b, double theta, int M = 1024) {
  const double xt = b.xi(theta);
  const double diag = b.xi_prime(theta) * b.xi_prime(theta);
  return quad::periodic_mean(
      [&](double d) { return detail::kernel_ratio(xt - b.xi(theta - d), d, diag); }, M);
}

/// Re(f̄ f_ρ)/|f| on T from the coefficient table.
inline double boundary_normal_derivative_spectral(const DiskMap& f, double theta) {
  const DiskJet j = evaluate_disk(f, 1.0, theta);
  return std::real(std::conj(j.value) * j.d_rho) / std::abs(j.value);
}

/// ∬_{[0,2π]²} (1−cos[ξ(θ)−ξ(φ)])/(1−cos(θ−φ))·ζ'(θ) dθdφ by an M×M trapezoid rule.
inline double lemma62_functional(const BoundaryHomeo& b, int M = 256) {
  std::vector<double> xi(M), dz(M);
  for (int i = 0; i < M; ++i) {
    const double t = quad::two_pi * i / M;
    xi[i] = b.xi(t);
    dz[i] = b.zeta_prime(t);
  }
  const double h = quad::two_pi / M;
  double total = 0.0;
  for (int i = 0; i < M; ++i) {
    const double diag = (1.0 + dz[i]) * (1.0 + dz[i]);
    double row = 0.0;
    for (int j = 0; j < M; ++j) row += detail::kernel_ratio(xi[i] - xi[j], h * (i - j), diag);
    total += row * dz[i];
  }
  return total * h * h;
}

/// Ψ(α,β) = (1−cos α)(1−cos β) + (β − sin β) sin α.
inline double psi(double alpha, double beta) {
  return (1.0 - std::cos(alpha)) * (1.0 - std::cos(beta)) + (beta - std::sin(beta)) * std::sin(alpha);
}

/// The split of the functional over Q⁺ = {cos(θ−φ) >= 0} and Q⁻ with both A⁻ and B integrated by parts.
struct FunctionalSplit {
  double A_plus = 0.0;
  double A_minus = 0.0;
  double B_plus = 0.0;
  double B_minus = 0.0;
  double total = 0.0;        // A⁺ + A⁻ + B⁺ + B⁻
  double plus_lower = 0.0;   // ∬_{Q⁺} (1 − cos β) >= 0, the lower bound for A⁺ + B⁺
  double psi_min = 0.0;      // smallest Ψ(α, β) met at the Q⁻ quadrature nodes
};

/// Coordinates (φ, α = θ − φ): trapezoid in φ with M nodes, Gauss–Legendre in α on [0, π/2],
/// [π/2, 3π/2] and [3π/2, 2π] with `panels` panels of `order` nodes per unit of π/2.
inline FunctionalSplit functional_split(const BoundaryHomeo& b, int M = 256, int panels = 8, int order = 16) {
  const auto rule = quad::gauss_legendre(order);
  constexpr double pi = std::numbers::pi;
  struct Node {
    double alpha, weight;
  };
  std::vector<Node> plus_nodes, minus_nodes;
  auto add = [&](std::vector<Node>& out, double lo, double hi, int p) {
    const double h = (hi - lo) / p;
    for (int k = 0; k < p; ++k)
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        out.push_back({lo + h * (k + 0.5 + 0.5 * rule.nodes[q]), 0.5 * h * rule.weights[q]});
  };
  add(plus_nodes, 0.0, 0.5 * pi, panels);
  add(plus_nodes, 1.5 * pi, 2.0 * pi, panels);
  add(minus_nodes, 0.5 * pi, 1.5 * pi, 2 * panels);

  FunctionalSplit s;
  s.psi_min = std::numeric_limits<double>::infinity();
  const double hphi = quad::two_pi / M;
  for (int i = 0; i < M; ++i) {
    const double phi = hphi * i;
    const double zphi = b.zeta_at(phi);
    for (const Node& nd : plus_nodes) {
      const double th = phi + nd.alpha;
      const double beta = b.zeta_at(th) - zphi;
      const double one_minus_cb = 2.0 * std::pow(std::sin(0.5 * beta), 2);
      const double one_minus_ca = 2.0 * std::pow(std::sin(0.5 * nd.alpha), 2);
      const double w = nd.weight * hphi;
      s.A_plus += w * std::cos(nd.alpha) * one_minus_cb / one_minus_ca * b.zeta_prime(th);
      s.B_plus += w * one_minus_cb / one_minus_ca;
      s.plus_lower += w * one_minus_cb;
    }
    for (const Node& nd : minus_nodes) {
      const double th = phi + nd.alpha;
      const double beta = b.zeta_at(th) - zphi;
      const double one_minus_cb = 2.0 * std::pow(std::sin(0.5 * beta), 2);
      const double one_minus_ca = 2.0 * std::pow(std::sin(0.5 * nd.alpha), 2);
      const double w = nd.weight * hphi;
      s.A_minus += w * std::sin(nd.alpha) * (beta - std::sin(beta)) / (one_minus_ca * one_minus_ca);
      s.B_minus += w * one_minus_cb / one_minus_ca;
      s.psi_min = std::min(s.psi_min, psi(nd.alpha, beta));
    }
  }
  s.total = s.A_plus + s.A_minus + s.B_plus + s.B_minus;
  return s;
}

struct PsiReport {
  double min_value = 0.0;
  double min_alpha = 0.0;
  double min_beta = 0.0;
  long long points = 0;
  bool case1_decreasing = false;  // 1 − cos β + β − sin β on [−π/2, 0]
  bool case2_decreasing = false;  // 2 − 2cos β − β sin β on [−π, −π/2]
  double value_at_minus_half_pi = 0.0;
};

inline double psi_case1(double beta) { return 1.0 - std::cos(beta) + beta - std::sin(beta); }
inline double psi_case2(double beta) { return 2.0 - 2.0 * std::cos(beta) - beta * std::sin(beta); }

/// Ψ on a res×res grid of π/2 <= α <= 3π/2, −α <= β <= 2π − α, plus the two monotonicity facts.
inline PsiReport psi_region_check(int res = 1000) {
  if (res < 100) throw DomainError("psi_region_check: resolution must be >= 100");
  constexpr double pi = std::numbers::pi;
  PsiReport r;
  r.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < res; ++i) {
    const double alpha = 0.5 * pi + pi * i / (res - 1);
    for (int j = 0; j < res; ++j) {
      const double beta = -alpha + quad::two_pi * j / (res - 1);
      const double v = psi(alpha, beta);
      ++r.points;
      if (v < r.min_value) {
        r.min_value = v;
        r.min_alpha = alpha;
        r.min_beta = beta;
      }
    }
  }
  const int K = 10 * res;
  r.case1_decreasing = r.case2_decreasing = true;
  for (int k = 0; k < K; ++k) {
    const double b0 = -0.5 * pi + 0.5 * pi * k / K, b1 = -0.5 * pi + 0.5 * pi * (k + 1) / K;
    if (psi_case1(b1) > psi_case1(b0)) r.case1_decreasing = false;
    const double c0 = -pi + 0.5 * pi * k / K, c1 = -pi + 0.5 * pi * (k + 1) / K;
    if (psi_case2(c1) > psi_case2(c0)) r.case2_decreasing = false;
  }
  r.value_at_minus_half_pi = psi(0.5 * pi, -0.5 * pi);
  return r;
}

// BHM text format: "BHM 1" then lines "Z <n> <re> <im>" for n >= 0 (ζ₋ₙ = conj ζₙ implied, ζ₀ real).

inline BoundaryHomeo parse_bhm(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header = false;
  double z0 = 0.0;
  std::map<int, cplx> z;
  bool seen0 = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "BHM" || tok[1] != "1") throw ParseError("expected 'BHM 1'", lineno);
      header = true;
      continue;
    }
    if (tok.size() != 4 || tok[0] != "Z") throw ParseError("expected 'Z n re im'", lineno);
    const long n = detail::parse_int(tok[1], lineno);
    if (n < 0 || n > 1000000) throw ParseError("index must lie in [0, 1e6]", lineno);
    const double re = detail::parse_real(tok[2], lineno), im = detail::parse_real(tok[3], lineno);
    if (n == 0) {
      if (seen0) throw ParseError("duplicate index 0", lineno);
      if (im != 0.0) throw ParseError("zeta_0 must be real", lineno);
      seen0 = true;
      z0 = re;
    } else {
      if (z.count(static_cast<int>(n))) throw ParseError("duplicate index " + std::to_string(n), lineno);
      z[static_cast<int>(n)] = {re, im};
    }
  }
  if (!header) throw ParseError("empty BHM input", lineno);
  try {
    return BoundaryHomeo(z0, std::move(z));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

inline BoundaryHomeo read_bhm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_bhm(in);
}

inline std::string to_bhm(const BoundaryHomeo& b) {
  std::ostringstream out;
  out << std::setprecision(17) << "BHM 1\n";
  out << "Z 0 " << b.zeta0() << " 0\n";
  for (const auto& [n, c] : b.zeta()) out << "Z " << n << ' ' << c.real() << ' ' << c.imag() << "\n";
  return out.str();
}

}  // namespace nitsche

#endif
