#ifndef NITSCHE_QUADRATURE_HPP
#define NITSCHE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nitsche::quad {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Gauss–Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on the three-term Legendre recurrence, Tricomi initial guesses.
inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (n == 1) return {{0.0}, {2.0}};
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x, double& deriv) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Composite Gauss–Legendre over [a, b] split into `panels` equal panels.
template <class F>
double composite_gauss(F&& f, double a, double b, int panels, const GaussRule& rule) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    total += 0.5 * h * s;
  }
  return total;
}

/// Mean of a 2π-periodic function over M equispaced nodes, offset by `phase`.
/// Exact for trigonometric polynomials of degree < M.
template <class F>
auto periodic_mean(F&& f, int M, double phase = 0.0) {
  using R = decltype(f(0.0));
  R s{};
  for (int j = 0; j < M; ++j) s += f(phase + two_pi * j / M);
  return s / static_cast<double>(M);
}

struct RefinedValue {
  double value = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Doubles the panel count of a composite rule until the relative change drops below `rel_tol`.
/// `integral(panels)` must evaluate the rule at the given panel count.
template <class G>
RefinedValue refine_by_doubling(G&& integral, int start_panels, double rel_tol, int max_panels = 4096) {
  RefinedValue out;
  int panels = start_panels;
  double prev = integral(panels);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = integral(panels);
    const double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) <= rel_tol * scale) {
      out.value = cur;
      out.panels = panels;
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  out.value = prev;
  out.panels = panels;
  return out;
}

}  // namespace nitsche::quad

#endif
