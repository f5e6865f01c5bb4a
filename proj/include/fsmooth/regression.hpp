#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fsmooth/types.hpp"

namespace fsmooth {

struct RegressionEvaluation {
  Point point;
  double m_hat = 0.0;
  double denominator = 0.0;  // density estimate at the point
  bool reliable = false;
};

struct DegenerateSmootherError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SmoothingMatrixSummary {
  double trace_l = 0.0;
  double trace_ltl = 0.0;
  std::size_t n = 0;

  double dof_denominator() const noexcept {
    return static_cast<double>(n) - 2.0 * trace_l + trace_ltl;
  }
};

// The sinc denominator can vanish far from data; below this floor the ratio
// is computed against the floor (keeping the sign) and flagged unreliable.
double regression_denominator_floor(Radius R, std::size_t n, std::size_t d) noexcept;

// Kernel-weighted response average m_hat = sum Y_i w_i / sum w_i.
RegressionEvaluation regress_at(const LabeledSample& data, std::span<const double> x,
                                const EstimatorConfig& cfg);

std::vector<RegressionEvaluation> regress_curve(const LabeledSample& data,
                                                const std::vector<Point>& curve,
                                                const EstimatorConfig& cfg,
                                                int threads = 1);

// Row-normalized smoother traces for the residual degrees of freedom.
SmoothingMatrixSummary smoothing_matrix_summary(const LabeledSample& data,
                                                const EstimatorConfig& cfg,
                                                std::size_t cap = 4000,
                                                std::uint64_t subsample_seed = 0x5eed,
                                                int threads = 1);

// Residual plug-in noise variance: RSS / (n - 2 tr L + tr L'L). The O(n^2)
// pairwise pass is bounded by a seeded row subsample of size `cap`.
double sigma2_hat(const LabeledSample& data, const EstimatorConfig& cfg,
                  std::size_t cap = 4000, std::uint64_t subsample_seed = 0x5eed,
                  int threads = 1);

// m_hat(x) +/- z sqrt(sigma2 R^d / (n pi^d |f_hat(x)|)); |.| rather than
// max{., 0} so the width stays finite for negative density estimates.
IntervalEstimate regress_ci(const LabeledSample& data, std::span<const double> x,
                            const EstimatorConfig& cfg, double tau,
                            std::size_t sigma_cap = 4000);

IntervalEstimate regress_ci_with_sigma(const LabeledSample& data, std::span<const double> x,
                                       const EstimatorConfig& cfg, double tau, double sigma2);

}  // namespace fsmooth
