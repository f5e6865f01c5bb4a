#include "fsmooth/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace fsmooth {

Radius::Radius(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument("Radius: value must be finite and positive");
  }
}

namespace detail {

// Series threshold for the third derivative. The closed form for order 3 sums
// four terms of size R^4/t^3 that cancel down to R^4*t/5, so it loses all
// precision below |t| ~ 1e-2 and the series must take over earlier.
constexpr double kSincSeriesThresholdOrder3 = 2e-2;

double sinc_value_series(double u, double R) {
  const double t = R * u;
  const double t2 = t * t;
  // sin(t)/t truncated after the t^10 term.
  const double s = 1.0 +
                   t2 * (-1.0 / 6.0 +
                         t2 * (1.0 / 120.0 +
                               t2 * (-1.0 / 5040.0 +
                                     t2 * (1.0 / 362880.0 + t2 * (-1.0 / 39916800.0)))));
  return R * s;
}

double sinc_value_direct(double u, double R) { return std::sin(R * u) / u; }

double sinc_deriv_series(double u, double R, int order) {
  const double t = R * u;
  const double t2 = t * t;
  switch (order) {
    case 1: {
      const double s = t * (-1.0 / 3.0 +
                            t2 * (1.0 / 30.0 +
                                  t2 * (-1.0 / 840.0 +
                                        t2 * (1.0 / 45360.0 + t2 * (-1.0 / 3991680.0)))));
      return R * R * s;
    }
    case 2: {
      const double s = -1.0 / 3.0 +
                       t2 * (1.0 / 10.0 +
                             t2 * (-1.0 / 168.0 +
                                   t2 * (1.0 / 6480.0 + t2 * (-1.0 / 443520.0))));
      return R * R * R * s;
    }
    case 3: {
      const double s = t * (1.0 / 5.0 +
                            t2 * (-1.0 / 42.0 +
                                  t2 * (1.0 / 1080.0 + t2 * (-1.0 / 55440.0))));
      return R * R * R * R * s;
    }
    default:
      throw std::invalid_argument("sinc_kernel_deriv: order must be 1, 2, or 3");
  }
}

double sinc_deriv_direct(double u, double R, int order) {
  const double s = std::sin(R * u);
  const double c = std::cos(R * u);
  const double u2 = u * u;
  switch (order) {
    case 1:
      return R * c / u - s / u2;
    case 2:
      return -R * R * s / u - 2.0 * R * c / u2 + 2.0 * s / (u2 * u);
    case 3:
      return -R * R * R * c / u + 3.0 * R * R * s / u2 + 6.0 * R * c / (u2 * u) -
             6.0 * s / (u2 * u2);
    default:
      throw std::invalid_argument("sinc_kernel_deriv: order must be 1, 2, or 3");
  }
}

}  // namespace detail

double sinc_kernel(double u, Radius R) {
  if (!std::isfinite(u)) throw std::invalid_argument("sinc_kernel: u must be finite");
  const double r = R.value();
  if (std::abs(r * u) < detail::kSincSeriesThreshold) {
    return detail::sinc_value_series(u, r);
  }
  return detail::sinc_value_direct(u, r);
}

double sinc_kernel_deriv(double u, Radius R, int order) {
  if (!std::isfinite(u)) {
    throw std::invalid_argument("sinc_kernel_deriv: u must be finite");
  }
  if (order < 1 || order > 3) {
    throw std::invalid_argument("sinc_kernel_deriv: order must be 1, 2, or 3");
  }
  const double r = R.value();
  const double threshold = order == 3 ? detail::kSincSeriesThresholdOrder3
                                      : detail::kSincSeriesThreshold;
  if (std::abs(r * u) < threshold) {
    return detail::sinc_deriv_series(u, r, order);
  }
  return detail::sinc_deriv_direct(u, r, order);
}

double product_kernel(std::span<const double> x, std::span<const double> xi, Radius R) {
  if (x.size() != xi.size()) {
    throw std::invalid_argument("product_kernel: dimension mismatch");
  }
  double p = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    p *= sinc_kernel(x[j] - xi[j], R);
  }
  return p;
}

}  // namespace fsmooth
