#pragma once

#include <span>

namespace fsmooth {

// Frequency cutoff of the sinc kernel; acts as an inverse bandwidth.
class Radius {
public:
  explicit Radius(double value);
  double value() const noexcept { return value_; }

private:
  double value_;
};

// sin(R u) / u. Switches to a truncated Taylor series near u = 0 where the
// direct quotient cancels.
double sinc_kernel(double u, Radius R);

// d^order/du^order of sin(R u)/u for order in {1, 2, 3}.
double sinc_kernel_deriv(double u, Radius R, int order);

// prod_j sin(R (x_j - xi_j)) / (x_j - xi_j); dimensions must agree.
double product_kernel(std::span<const double> x, std::span<const double> xi, Radius R);

namespace detail {

// Both evaluation paths exposed for the series/direct agreement checks.
// t = R*u is the dimensionless argument; thresholds are on |t|.
inline constexpr double kSincSeriesThreshold = 1e-4;
double sinc_value_series(double u, double R);
double sinc_value_direct(double u, double R);
double sinc_deriv_series(double u, double R, int order);
double sinc_deriv_direct(double u, double R, int order);

}  // namespace detail

}  // namespace fsmooth
