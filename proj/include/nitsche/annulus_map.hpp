#ifndef NITSCHE_ANNULUS_MAP_HPP
#define NITSCHE_ANNULUS_MAP_HPP

// Harmonic maps of the normalized annulus A(1, R) stored as Laurent-type coefficient tables
//   h(z) = a0 log|z| + b0 + sum_{n != 0} (a_n z^n + b_n zbar^{-n}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "nitsche/errors.hpp"
#include "nitsche/quadrature.hpp"

namespace nitsche {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Largest |n| log R allowed for a coefficient that grows towards the outer circle.
inline constexpr double kGrowthCap = 650.0;

/// Coefficient pair of the n-th orthogonal component a_n z^n + b_n zbar^{-n}.
struct Mode {
  cplx a{};
  cplx b{};
};

class AnnulusMap {
 public:
  using Terms = std::map<int, Mode>;

  AnnulusMap(double R, cplx log_a0, cplx log_b0, Terms terms = {})
      : R_(R), a0_(log_a0), b0_(log_b0), terms_(std::move(terms)) {
    if (!(R_ > 1.0) || !std::isfinite(R_))
      throw DomainError("AnnulusMap: outer radius must be finite and > 1");
    if (!finite(a0_) || !finite(b0_)) throw DomainError("AnnulusMap: non-finite log-term coefficient");
    const double logR = std::log(R_);
    for (const auto& [n, m] : terms_) {
      if (n == 0) throw DomainError("AnnulusMap: index 0 belongs to the log term");
      if (!finite(m.a) || !finite(m.b))
        throw DomainError("AnnulusMap: non-finite coefficient at n = " + std::to_string(n));
      const bool grows = (n > 0 && m.a != 0.0) || (n < 0 && m.b != 0.0);
      if (grows && std::abs(n) * logR > kGrowthCap)
        throw RangeError("AnnulusMap: |n| log R exceeds " + std::to_string(kGrowthCap) + " at n = " +
                         std::to_string(n));
    }
  }

  /// Map given on A(r, R) in the variable z; returns the same map in zeta = z / r on A(1, R/r).
  static AnnulusMap from_general_annulus(double r, double R, cplx log_a0, cplx log_b0, const Terms& terms) {
    if (!(r > 0.0) || !(R > r)) throw DomainError("from_general_annulus: need 0 < r < R");
    Terms scaled;
    for (const auto& [n, m] : terms) scaled[n] = {m.a * std::pow(r, n), m.b * std::pow(r, -n)};
    return AnnulusMap(R / r, log_a0, log_b0 + log_a0 * std::log(r), std::move(scaled));
  }

  static AnnulusMap identity(double R) { return AnnulusMap(R, 0.0, 0.0, {{1, {1.0, 0.0}}}); }
  static AnnulusMap constant(double R, cplx c) { return AnnulusMap(R, 0.0, c); }

  double outer_radius() const { return R_; }
  cplx log_a0() const { return a0_; }
  cplx log_b0() const { return b0_; }
  const Terms& terms() const { return terms_; }

  Mode mode(int n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? Mode{} : it->second;
  }

  /// Truncation order N = max |n| over stored terms, at least 1.
  int order() const {
    int N = 1;
    for (const auto& [n, m] : terms_) N = std::max(N, std::abs(n));
    return N;
  }

  /// |a0| + |b0| + sum (|a_n| + |b_n|).
  double l1_norm() const {
    double s = std::abs(a0_) + std::abs(b0_);
    for (const auto& [n, m] : terms_) s += std::abs(m.a) + std::abs(m.b);
    return s;
  }

  /// Post-composition with the rotation w -> e^{i alpha} w.
  AnnulusMap rotated(double alpha) const {
    const cplx r = std::polar(1.0, alpha);
    Terms t;
    for (const auto& [n, m] : terms_) t[n] = {r * m.a, r * m.b};
    return AnnulusMap(R_, r * a0_, r * b0_, std::move(t));
  }

  /// Same coefficients on A(1, R_new).
  AnnulusMap with_outer_radius(double R_new) const { return AnnulusMap(R_new, a0_, b0_, terms_); }

 private:
  static bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

  double R_;
  cplx a0_;
  cplx b0_;
  Terms terms_;
};

/// First-order data of h at z = rho e^{i theta}.
struct PolarJet {
  cplx value{};
  cplx d_rho{};
  cplx d_theta{};
  cplx d_z{};
  cplx d_zbar{};
  double jacobian = 0.0;      // |h_z|^2 - |h_zbar|^2
  double grad_norm_sq = 0.0;  // |Dh|^2 = 2(|h_z|^2 + |h_zbar|^2)
};

namespace detail {

inline void check_radius(const AnnulusMap& map, double rho) {
  const double R = map.outer_radius();
  constexpr double slack = 1e-14;
  if (!(rho >= 1.0 - slack) || !(rho <= R * (1.0 + slack)))
    throw DomainError("point outside the closed annulus 1 <= |z| <= R (|z| = " + std::to_string(rho) + ")");
}

}  // namespace detail

/// Term-wise evaluation at rho e^{i theta}. The polar derivatives and the Wirtinger derivatives are
/// computed along separate routes so that the relations between them can be checked.
inline PolarJet evaluate_polar(const AnnulusMap& map, double rho, double theta) {
  detail::check_radius(map, rho);
  const cplx z = std::polar(rho, theta);
  const cplx zb = std::conj(z);
  const cplx a0 = map.log_a0();
  PolarJet jet;
  jet.value = a0 * std::log(rho) + map.log_b0();
  jet.d_rho = a0 / rho;
  jet.d_z = a0 / (2.0 * z);
  jet.d_zbar = a0 / (2.0 * zb);
  for (const auto& [n, m] : map.terms()) {
    const double rn = std::pow(rho, n);
    const double rmn = 1.0 / rn;
    const cplx e = std::polar(1.0, n * theta);
    const cplx radial = m.a * rn + m.b * rmn;
    jet.value += radial * e;
    jet.d_rho += static_cast<double>(n) * (m.a * rn - m.b * rmn) / rho * e;
    jet.d_theta += I * static_cast<double>(n) * radial * e;
    // h_z = n a_n z^{n-1},  h_zbar = -n b_n zbar^{-n-1}
    jet.d_z += static_cast<double>(n) * m.a * std::pow(z, n - 1);
    jet.d_zbar -= static_cast<double>(n) * m.b * std::pow(zb, -n - 1);
  }
  const double pz = std::norm(jet.d_z);
  const double pzb = std::norm(jet.d_zbar);
  jet.jacobian = pz - pzb;
  jet.grad_norm_sq = 2.0 * (pz + pzb);
  return jet;
}

inline PolarJet evaluate(const AnnulusMap& map, cplx z) {
  const double rho = std::abs(z);
  detail::check_radius(map, rho);
  return evaluate_polar(map, rho, std::arg(z));
}

/// Value only; cheaper than a full jet.
inline cplx value_at(const AnnulusMap& map, double rho, double theta) {
  detail::check_radius(map, rho);
  cplx v = map.log_a0() * std::log(rho) + map.log_b0();
  for (const auto& [n, m] : map.terms()) {
    const double rn = std::pow(rho, n);
    v += (m.a * rn + m.b / rn) * std::polar(1.0, n * theta);
  }
  return v;
}

/// Fourier coefficients c_{-N..N} of a function on a circle.
class TrigSeries {
 public:
  explicit TrigSeries(int order) : N_(order), c_(2 * order + 1) {
    if (order < 0) throw DomainError("TrigSeries: negative order");
  }
  int order() const { return N_; }
  cplx& operator[](int n) { return c_.at(n + N_); }
  cplx operator[](int n) const { return c_.at(n + N_); }
  cplx value(double theta) const {
    cplx s{};
    for (int n = -N_; n <= N_; ++n) s += (*this)[n] * std::polar(1.0, n * theta);
    return s;
  }

 private:
  int N_;
  std::vector<cplx> c_;
};

/// Trace of h on |z| = rho as a Fourier series of order N (exact, coefficient-wise).
inline TrigSeries trace(const AnnulusMap& map, double rho, int N) {
  detail::check_radius(map, rho);
  TrigSeries s(N);
  s[0] = map.log_a0() * std::log(rho) + map.log_b0();
  for (const auto& [n, m] : map.terms())
    if (std::abs(n) <= N) s[n] = m.a * std::pow(rho, n) + m.b * std::pow(rho, -n);
  return s;
}

inline TrigSeries inner_trace(const AnnulusMap& map) { return trace(map, 1.0, map.order()); }
inline TrigSeries outer_trace(const AnnulusMap& map) { return trace(map, map.outer_radius(), map.order()); }

/// Harmonic map on A(1, R) with prescribed traces on |z| = 1 and |z| = R, solved mode by mode.
inline AnnulusMap solve_dirichlet(const TrigSeries& inner, const TrigSeries& outer, double R) {
  if (!(R > 1.0) || !std::isfinite(R)) throw DomainError("solve_dirichlet: R must be > 1");
  if (inner.order() != outer.order()) throw DomainError("solve_dirichlet: mismatched index ranges");
  const double logR = std::log(R);
  AnnulusMap::Terms terms;
  for (int n = -inner.order(); n <= inner.order(); ++n) {
    if (n == 0) continue;
    const cplx cin = inner[n], cout = outer[n];
    if (cin == 0.0 && cout == 0.0) continue;
    const int m = std::abs(n);
    // Scaled form of a + b = cin, a R^n + b R^{-n} = cout; denominators 1 - R^{-2m} > 0.
    const double decay = std::exp(-m * logR);        // R^{-m}
    const double denom = -std::expm1(-2.0 * m * logR);  // 1 - R^{-2m}
    Mode md;
    if (n > 0) {
      md.a = (cout * decay - cin * decay * decay) / denom;
      md.b = (cin - cout * decay) / denom;
    } else {
      md.a = (cin - cout * decay) / denom;
      md.b = (cout * decay - cin * decay * decay) / denom;
    }
    terms[n] = md;
  }
  const cplx b0 = inner[0];
  const cplx a0 = (outer[0] - inner[0]) / logR;
  return AnnulusMap(R, a0, b0, std::move(terms));
}

/// Mod A(1, R) = log R.
inline double conformal_modulus(const AnnulusMap& map) { return std::log(map.outer_radius()); }

/// True iff max(|a0|, max_n |b_n|) <= tol * max_n |a_n|. The zero map is reported as conformal.
inline bool is_conformal(const AnnulusMap& map, double tol) {
  if (tol < 0.0) throw DomainError("is_conformal: tol must be >= 0");
  double anti = std::abs(map.log_a0());
  double holo = 0.0;
  for (const auto& [n, m] : map.terms()) {
    anti = std::max(anti, std::abs(m.b));
    holo = std::max(holo, std::abs(m.a));
  }
  if (anti == 0.0) return true;
  return anti <= tol * holo;
}

/// Degree of h restricted to |z| = rho, from the accumulated argument increment.
/// Returns NaN if h vanishes on a sample.
inline double winding_number(const AnnulusMap& map, double rho, int samples = 0) {
  if (samples <= 0) samples = std::max(512, 32 * map.order());
  double total = 0.0;
  cplx prev = value_at(map, rho, 0.0);
  if (prev == 0.0) return std::nan("");
  for (int j = 1; j <= samples; ++j) {
    const cplx cur = value_at(map, rho, quad::two_pi * j / samples);
    if (cur == 0.0) return std::nan("");
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total / quad::two_pi;
}

}  // namespace nitsche

#endif
