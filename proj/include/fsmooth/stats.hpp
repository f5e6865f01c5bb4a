#pragma once

#include <cstddef>
#include <span>

namespace fsmooth {

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse standard-normal CDF for p in (0, 1). Rational initial guess refined
// by one Halley step; absolute error well below 1e-8 over the full range.
double normal_quantile(double p);

double mean(std::span<const double> v);
// Sample variance with the n-1 denominator; requires v.size() >= 2.
double sample_variance(std::span<const double> v);

}  // namespace fsmooth
