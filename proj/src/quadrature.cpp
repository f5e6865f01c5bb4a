#include "fsmooth/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsmooth/rng.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n and P_n' by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre_on(int n, double a, double b) {
  QuadratureRule base = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    base.nodes[i] = mid + hw * base.nodes[i];
    base.weights[i] *= hw;
  }
  return base;
}

double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("integrate_composite: need panels >= 1");
  const QuadratureRule rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  detail::CompensatedSum acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double hw = 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc.add(rule.weights[i] * hw * f(mid + hw * rule.nodes[i]));
    }
  }
  return acc.value();
}

namespace {

constexpr int kHaltonPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double radical_inverse(std::size_t index, int base) {
  double inv_base = 1.0 / base;
  double factor = inv_base;
  double value = 0.0;
  std::size_t i = index;
  while (i > 0) {
    value += static_cast<double>(i % static_cast<std::size_t>(base)) * factor;
    i /= static_cast<std::size_t>(base);
    factor *= inv_base;
  }
  return value;
}

}  // namespace

std::vector<double> halton_shifted(std::size_t count, int dim, std::uint64_t seed) {
  if (dim < 1 || dim > 20) throw std::invalid_argument("halton_shifted: dim must be in [1, 20]");
  CounterRng rng(seed, 0);
  std::vector<double> shift(static_cast<std::size_t>(dim));
  for (auto& s : shift) s = rng.next_uniform();

  std::vector<double> pts(count * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) {
      double v = radical_inverse(i + 1, kHaltonPrimes[j]) + shift[static_cast<std::size_t>(j)];
      if (v >= 1.0) v -= 1.0;
      pts[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] = v;
    }
  }
  return pts;
}

}  // namespace fsmooth
