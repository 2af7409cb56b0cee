#ifndef NITSCHE_TESTS_ORACLES_HPP
#define NITSCHE_TESTS_ORACLES_HPP

// Brute-force reference computations. Nothing here calls the library's closed forms: maps are
// summed term by term, derivatives come from finite differences and integrals from plain
// trapezoid / Simpson rules.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/disk_maps.hpp"

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// a₀ log|z| + b₀ + Σ aₙ zⁿ + bₙ z̄⁻ⁿ summed directly.
inline cplx h(const nitsche::AnnulusMap& m, cplx z) {
  cplx s = m.log_a0() * std::log(std::abs(z)) + m.log_b0();
  const cplx zb = std::conj(z);
  for (const auto& [n, c] : m.terms()) s += c.a * std::pow(z, n) + c.b * std::pow(zb, -n);
  return s;
}

inline cplx h_polar(const nitsche::AnnulusMap& m, double rho, double theta) { return h(m, std::polar(rho, theta)); }

/// Fourth-order central difference.
inline cplx diff(const std::function<cplx(double)>& f, double x, double step) {
  return (8.0 * (f(x + step) - f(x - step)) - (f(x + 2 * step) - f(x - 2 * step))) / (12.0 * step);
}

inline double diff_real(const std::function<double(double)>& f, double x, double step) {
  return (8.0 * (f(x + step) - f(x - step)) - (f(x + 2 * step) - f(x - 2 * step))) / (12.0 * step);
}

struct Wirtinger {
  cplx dz, dzbar;
};

inline Wirtinger wirtinger(const std::function<cplx(cplx)>& F, cplx z, double step = 1e-3) {
  const cplx fx = diff([&](double t) { return F(z + t); }, 0.0, step);
  const cplx fy = diff([&](double t) { return F(z + cplx(0.0, t)); }, 0.0, step);
  return {0.5 * (fx - cplx(0, 1) * fy), 0.5 * (fx + cplx(0, 1) * fy)};
}

inline double trapezoid_mean(const std::function<double(double)>& f, int M) {
  double s = 0.0;
  for (int j = 0; j < M; ++j) s += f(2.0 * pi * j / M);
  return s / M;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double step = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * step);
  return s * step / 3.0;
}

/// Simpson at n and 2n panels combined by one Richardson step.
inline double simpson_richardson(const std::function<double(double)>& f, double a, double b, int n) {
  const double coarse = simpson(f, a, b, n);
  const double fine = simpson(f, a, b, 2 * n);
  return (16.0 * fine - coarse) / 15.0;
}

inline double mean_U(const nitsche::AnnulusMap& m, double rho, int M = 128) {
  return trapezoid_mean([&](double t) { return std::norm(h_polar(m, rho, t)); }, M);
}

inline double dU(const nitsche::AnnulusMap& m, double rho, int M = 128, double step = 1e-3) {
  return diff_real([&](double r) { return mean_U(m, r, M); }, rho, step);
}

inline double ddU(const nitsche::AnnulusMap& m, double rho, int M = 128, double step = 2e-3) {
  return diff_real([&](double r) { return dU(m, r, M, 0.5 * step); }, rho, step);
}

/// ⨍_T Im(h̄ h_θ) with h_θ from differences in θ.
inline double winding_form(const nitsche::AnnulusMap& m, int M = 128) {
  return trapezoid_mean(
      [&](double t) {
        const cplx ht = diff([&](double s) { return h_polar(m, 1.0, s); }, t, 1e-3);
        return std::imag(std::conj(h_polar(m, 1.0, t)) * ht);
      },
      M);
}

/// ⨍_{T_ρ} (|h_z|² − |h_z̄|²) with Wirtinger derivatives by differences.
inline double mean_jacobian(const nitsche::AnnulusMap& m, double rho = 1.0, int M = 128) {
  return trapezoid_mean(
      [&](double t) {
        const Wirtinger w = wirtinger([&](cplx z) { return h(m, z); }, std::polar(rho, t));
        return std::norm(w.dz) - std::norm(w.dzbar);
      },
      M);
}

/// ∬_{A(1,ρ)} |Dh|² = 2∬(|h_z|² + |h_z̄|²) by Simpson in ρ and trapezoid in θ.
inline double energy(const nitsche::AnnulusMap& m, double rho, int n_rad = 200, int M = 64) {
  return 2.0 * pi * simpson_richardson(
                        [&](double r) {
                          return r * trapezoid_mean(
                                         [&](double t) {
                                           const Wirtinger w = wirtinger([&](cplx z) { return h(m, z); }, std::polar(r, t));
                                           return 2.0 * (std::norm(w.dz) + std::norm(w.dzbar));
                                         },
                                         M);
                        },
                        1.0, rho, n_rad);
}

// Identity: both sides assembled from brute means and a brute 2-D integral of the g-substitute.

inline double identity_lhs(const nitsche::AnnulusMap& m, double R, int M = 128) {
  const double R2 = R * R;
  const double U1 = mean_U(m, 1.0, M);
  return 2.0 * R2 / (R2 + 1.0) * mean_U(m, R, M) - (R2 + 1.0) / 2.0 * U1 - (R2 - 1.0) * 0.5 * dU(m, 1.0, M) -
         (R2 - 1.0) * std::log(R) * (winding_form(m, M) - U1);
}

inline double identity_rhs(const nitsche::AnnulusMap& m, double R, int n_rad = 200, int M = 64) {
  auto g = [&](cplx z) {
    const double r2 = std::norm(z);
    return 2.0 * std::conj(z) * h(m, z) / (r2 + 1.0);
  };
  const double R2 = R * R;
  auto radial = [&](double r) {
    const double w1 = (R2 - 1.0) * std::log(R / r) + (R2 - r * r) / (r * r);
    const double w2 = (R2 - r * r) - (R2 - 1.0) * std::log(R / r);
    const double avg = trapezoid_mean(
        [&](double t) {
          const Wirtinger d = wirtinger(g, std::polar(r, t), 1e-3 * r);
          return w1 * std::norm(d.dz) + w2 * std::norm(d.dzbar);
        },
        M);
    return 2.0 * r * avg;
  };
  return simpson_richardson(radial, 1.0, R, n_rad);
}

// Disk-side quantities for the harmonic extension of a boundary trace, built from samples.

/// Fourier coefficients of samples F(θ_j), j < M; returned as a map n → cₙ for |n| <= M/2 − 1.
inline std::vector<std::pair<int, cplx>> dft(const std::function<cplx(double)>& F, int M, double drop = 1e-18) {
  std::vector<cplx> s(M);
  for (int j = 0; j < M; ++j) s[j] = F(2.0 * pi * j / M);
  std::vector<std::pair<int, cplx>> out;
  for (int n = -M / 2 + 1; n < M / 2; ++n) {
    cplx c = 0.0;
    for (int j = 0; j < M; ++j) c += s[j] * std::polar(1.0, -2.0 * pi * n * j / M);
    c /= static_cast<double>(M);
    if (std::abs(c) > drop) out.push_back({n, c});
  }
  return out;
}

struct DiskQuantities {
  double boundary_abs_det = 0.0;  // ∫_T |det Df|
  double energy = 0.0;            // ∬_D |Df|²
  double area = 0.0;              // ∬_D det Df
};

/// f(ρe^{iθ}) = Σ cₙ ρ^{|n|} e^{inθ}; integrals by Simpson × trapezoid, derivatives by differences in ρ and θ.
inline DiskQuantities disk_quantities(const std::vector<std::pair<int, cplx>>& c, const std::function<cplx(double)>& f_theta_on_T,
                                      int n_rad = 100, int M = 128) {
  auto f = [&](double r, double t) {
    cplx s = 0.0;
    for (const auto& [n, cn] : c) s += cn * std::pow(r, std::abs(n)) * std::polar(1.0, n * t);
    return s;
  };
  auto jac = [&](double r, double t, double& grad2) {
    const cplx fr = diff([&](double x) { return f(x, t); }, r, 1e-3);
    const cplx ft = diff([&](double x) { return f(r, x); }, t, 1e-3);
    grad2 = std::norm(fr) + std::norm(ft) / (r * r);
    return std::imag(std::conj(fr) * ft) / r;
  };
  DiskQuantities q;
  q.boundary_abs_det = 2.0 * pi * trapezoid_mean(
                                      [&](double t) {
                                        const cplx fr = diff([&](double x) { return f(x, t); }, 1.0, 1e-3);
                                        return std::abs(std::imag(std::conj(fr) * f_theta_on_T(t)));
                                      },
                                      4 * M);
  // energy and area share one pass over the radial nodes
  std::vector<double> area_rows;
  q.energy = 2.0 * pi * simpson_richardson(
                            [&](double r) {
                              if (r == 0.0) {
                                area_rows.push_back(0.0);
                                return 0.0;
                              }
                              double e = 0.0, a = 0.0;
                              for (int j = 0; j < M; ++j) {
                                double g2;
                                a += jac(r, 2.0 * pi * j / M, g2);
                                e += g2;
                              }
                              area_rows.push_back(r * a / M);
                              return r * e / M;
                            },
                            0.0, 1.0, n_rad);
  // replay the same node sequence for the area
  std::size_t next = 0;
  q.area = 2.0 * pi * simpson_richardson([&](double) { return area_rows.at(next++); }, 0.0, 1.0, n_rad);
  return q;
}

inline DiskQuantities disk_quantities(const nitsche::BoundaryHomeo& b, int M_dft = 256, int n_rad = 60, int M = 128) {
  auto F = [&](double t) { return std::polar(1.0, b.xi(t)); };
  auto Ft = [&](double t) { return cplx(0.0, b.xi_prime(t)) * F(t); };
  return disk_quantities(dft(F, M_dft, 1e-16), Ft, n_rad, M);
}

/// Inner-trace extension of an annulus map h: f = P[h|_T].
inline DiskQuantities disk_quantities(const nitsche::AnnulusMap& m, int M_dft = 64, int n_rad = 100, int M = 128) {
  auto F = [&](double t) { return h_polar(m, 1.0, t); };
  auto Ft = [&](double t) { return diff(F, t, 1e-3); };
  return disk_quantities(dft(F, M_dft), Ft, n_rad, M);
}

/// U(ρ) − ((ρ+1/ρ)/2)²W − U̇(1) − (k/2)⨍_T J − (k/4π)[∫_T det Df − ∬|Df|²], every piece brute force.
inline double certificate(const nitsche::AnnulusMap& m, double rho) {
  const double k = rho * rho - 4.0 - 1.0 / (rho * rho);
  const DiskQuantities d = disk_quantities(m, 64, 60, 64);
  auto F = [&](double t) { return h_polar(m, 1.0, t); };
  const auto c = dft(F, 64);
  const double signed_det_T = 2.0 * pi * trapezoid_mean(
                                             [&](double t) {
                                               auto f = [&](double r, double s) {
                                                 cplx v = 0.0;
                                                 for (const auto& [n, cn] : c) v += cn * std::pow(r, std::abs(n)) * std::polar(1.0, n * s);
                                                 return v;
                                               };
                                               const cplx fr = diff([&](double x) { return f(x, t); }, 1.0, 1e-3);
                                               const cplx ft = diff([&](double x) { return f(1.0, x); }, t, 1e-3);
                                               return std::imag(std::conj(fr) * ft);
                                             },
                                             64);
  return mean_U(m, rho) - std::pow(0.5 * (rho + 1.0 / rho), 2) * winding_form(m) - dU(m, 1.0) -
         0.5 * k * mean_jacobian(m) - k / (4.0 * pi) * (signed_det_T - d.energy);
}

struct QCoefficients {
  double A, B, C;
};

/// Coefficients of the mode-n form read off the brute certificate by polarization.
inline QCoefficients qform_by_polarization(int n, double rho) {
  const double R = rho + 1.0;
  auto single = [&](cplx a, cplx b) {
    if (n == 0) return nitsche::AnnulusMap(R, a, b);
    return nitsche::AnnulusMap(R, 0.0, 0.0, {{n, {a, b}}});
  };
  const double A = certificate(single(1.0, 0.0), rho);
  const double B = certificate(single(0.0, 1.0), rho);
  const double AB = certificate(single(1.0, 1.0), rho);
  return {A, B, 0.5 * (AB - A - B)};
}

/// (1−cos α)(1−cos β) + (β − sin β) sin α.
inline double psi(double alpha, double beta) {
  return (1.0 - std::cos(alpha)) * (1.0 - std::cos(beta)) + (beta - std::sin(beta)) * std::sin(alpha);
}

}  // namespace oracle

#endif
