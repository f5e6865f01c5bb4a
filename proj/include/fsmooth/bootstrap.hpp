#pragma once

#include <cstdint>
#include <vector>

#include "fsmooth/types.hpp"

namespace fsmooth {

struct BootstrapPlan {
  int replicates = 200;       // B
  std::uint64_t seed = 0;
  std::vector<Point> grid;    // evaluation grid discretizing the sup
};

struct BandEstimate {
  std::vector<Point> grid;
  std::vector<double> center;      // density estimate on the grid
  std::vector<double> half_width;  // identical at every grid point
  double level = 0.0;
  int replicates = 0;
  double eta = 0.0;  // empirical (1-tau) quantile of the sup deviations
  bool low_replicate_warning = false;  // B * tau < 1
};

// sqrt(n / R^d) * max_j |f_star_j - f_hat_j|.
double sup_deviation(std::span<const double> f_star, std::span<const double> f_hat,
                     std::size_t n, Radius R, std::size_t d);

// Uniform band via resampling: replicate b draws n rows with replacement using
// stream b of plan.seed, and eta is the order statistic ceil((1-tau) B) of the
// sup deviations. Replicates are order-independent, so the result is
// bit-identical for any thread count.
BandEstimate bootstrap_band(const SampleMatrix& sample, const EstimatorConfig& cfg,
                            const BootstrapPlan& plan, double tau, int threads = 1);

}  // namespace fsmooth
