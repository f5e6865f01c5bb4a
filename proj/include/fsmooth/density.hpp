#pragma once

#include <cstddef>
#include <vector>

#include "fsmooth/types.hpp"

namespace fsmooth {

struct DensityEvaluation {
  Point point;
  double raw_value = 0.0;
  double clipped_value = 0.0;
  // Plug-in variance R^d * max{f, 0} / (n pi^d) used by the pointwise interval.
  double variance_estimate = 0.0;
};

// Average of product sinc kernels over the sample, 1/(n pi^d) normalization.
DensityEvaluation density_at(const SampleMatrix& sample, std::span<const double> x,
                             const EstimatorConfig& cfg);

std::vector<DensityEvaluation> density_grid(const SampleMatrix& sample,
                                            const std::vector<Point>& grid,
                                            const EstimatorConfig& cfg, int threads = 1);

// Order-1 (gradient) or order-2 (Hessian) derivative tensor of the estimate.
DerivativeTensor density_derivative_at(const SampleMatrix& sample,
                                       std::span<const double> x, int order,
                                       const EstimatorConfig& cfg);

// Value and gradient in one pass over the sample.
void density_value_gradient(const SampleMatrix& sample, std::span<const double> x,
                            Radius R, double* value, double* gradient);

// Value, gradient, and Hessian (row-major d x d) in one pass; any output may
// be null.
void density_full_eval(const SampleMatrix& sample, std::span<const double> x, Radius R,
                       double* value, double* gradient, std::vector<double>* hessian);

// Closed-form radius rules. Supersmooth: 2 c1 R^alpha = log n. Ordinary
// smooth: R^(d + 2(beta-1)) = n. Proportionality constants are fixed to 1;
// the unknowable theory constants are deliberately not modeled.
Radius select_radius(const Smoothness& smoothness, std::size_t n, std::size_t d);

// Least-squares cross-validation over a candidate list, closed form through
// the reproducing identity int K_R(x-a) K_R(x-b) dx = pi K_R(a-b).
// Ties break toward the smaller radius.
Radius select_radius_lscv(const SampleMatrix& sample, const std::vector<Radius>& candidates);

// The LSCV criterion value for one radius (exposed for diagnostics and tests).
double lscv_criterion(const SampleMatrix& sample, Radius R);

IntervalEstimate pointwise_ci(const SampleMatrix& sample, std::span<const double> x,
                              const EstimatorConfig& cfg, double tau);

// Sample variance of the n per-observation kernel terms divided by R^d; its
// large-R limit is p0(x)/pi^d.
double variance_limit_check(const SampleMatrix& sample, std::span<const double> x,
                            const EstimatorConfig& cfg);

double apply_clip(double raw, ClipMode mode) noexcept;

}  // namespace fsmooth
