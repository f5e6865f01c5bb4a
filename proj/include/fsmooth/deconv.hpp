#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fsmooth/types.hpp"

namespace fsmooth {

// Known symmetric noise density, described by its (real-valued) Fourier
// transform. ft(0) = 1 and ft must not vanish on the integration box.
struct GaussianIsotropicNoise {
  double h;  // per-axis standard deviation, > 0
};

struct LaplaceProductNoise {
  double b;  // per-axis scale, > 0
};

struct CustomFourierNoise {
  std::function<double(std::span<const double>)> ft;  // s -> real
};

struct NoiseModel {
  std::variant<GaussianIsotropicNoise, LaplaceProductNoise, CustomFourierNoise> kind;
  int dim = 1;

  double fourier(std::span<const double> s) const;
};

struct IllPosedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DeconvEvaluation {
  Point theta;
  double raw_value = 0.0;
  std::optional<double> mc_std_error;  // present only for the Monte Carlo variant
};

// Shared frequency-domain state for the mixing-density estimate: per node s
// the quadrature weight over ft(s) plus the data sums of cos(s.X_i) and
// sin(s.X_i). Building it costs O(#nodes * n); each evaluation afterwards is
// O(#nodes) no matter how many points are queried. Tensor Gauss nodes for
// d <= 2, a seeded quasi-Monte Carlo box rule for d >= 3 where the tensor
// cost would be 8^d R^d.
class DeconvEvaluator {
public:
  DeconvEvaluator(const SampleMatrix& sample, const NoiseModel& noise,
                  const EstimatorConfig& cfg);

  std::size_t dim() const noexcept { return d_; }
  std::size_t node_count() const noexcept { return weight_over_ft_.size(); }

  double value(std::span<const double> theta) const;
  void value_gradient(std::span<const double> theta, double* value, double* grad) const;
  DerivativeTensor derivative(std::span<const double> theta, int order) const;

private:
  void check_theta(std::span<const double> theta) const;

  std::size_t n_, d_;
  std::vector<double> nodes_;           // node-major, d entries per node
  std::vector<double> weight_over_ft_;  // quadrature weight / ft(s)
  std::vector<double> cos_sum_;
  std::vector<double> sin_sum_;
  double norm_ = 0.0;
};

// Mixing-density estimate: average over observations of the box integral of
// cos(s.(theta - X_i)) / ft(s) over [-R, R]^d, 1/(2 pi)^d normalization.
DeconvEvaluation deconv_at(const SampleMatrix& sample, std::span<const double> theta,
                           const NoiseModel& noise, const EstimatorConfig& cfg);

DerivativeTensor deconv_derivative_at(const SampleMatrix& sample,
                                      std::span<const double> theta,
                                      const NoiseModel& noise, const EstimatorConfig& cfg,
                                      int order);

// One-dimensional Monte Carlo variant for Gaussian noise: frequencies are
// sampled uniformly on (0, R), m draws per observation (m = 1 matches the
// single-draw scheme; larger m averages them). The draws depend only on the
// seed and the sample's canonical row order, so a grid of theta values sees
// one realization of the random curve.
DeconvEvaluation deconv_at_mc(const SampleMatrix& sample, double theta, double h,
                              Radius R, int m, std::uint64_t seed);

DeconvEvaluation deconv_derivative_mc(const SampleMatrix& sample, double theta, double h,
                                      Radius R, int m, std::uint64_t seed);

namespace detail {
// Per-axis quadrature nodes/weights covering [-R, R] with about
// quad_points_per_radius * R Gauss points.
void deconv_axis_rule(const EstimatorConfig& cfg, std::vector<double>* nodes,
                      std::vector<double>* weights);
}  // namespace detail

}  // namespace fsmooth
