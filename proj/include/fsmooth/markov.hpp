#pragma once

#include <cstdint>
#include <vector>

#include "fsmooth/types.hpp"

namespace fsmooth {

// Time-ordered series; rows are never reordered (consecutive pairs carry the
// transition information).
class MarkovSeries {
public:
  MarkovSeries(std::vector<double> row_major, std::size_t length, std::size_t dim);

  static MarkovSeries from_column(std::vector<double> column);

  std::size_t length() const noexcept { return t_; }
  std::size_t dim() const noexcept { return d_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * d_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * d_, d_};
  }

private:
  std::vector<double> data_;
  std::size_t t_ = 0;
  std::size_t d_ = 0;
};

struct TransitionEvaluation {
  Point x;
  Point y;
  double value = 0.0;
  double numerator_mass = 0.0;    // raw consecutive-pair kernel sum
  double denominator_mass = 0.0;  // raw marginal kernel sum over all rows
  bool reliable = false;
};

// Ratio estimate of the transition density at (x -> y): consecutive-pair
// kernel sum over the marginal kernel sum, one 1/pi factor per response axis.
// response_cols selects which coordinates of the successor state y refers to
// (defaults to all of them).
TransitionEvaluation transition_at(const MarkovSeries& series, std::span<const double> x,
                                   std::span<const double> y, const EstimatorConfig& cfg,
                                   const std::vector<std::size_t>& response_cols = {});

// Denominator computed once per x and reused across the y grid.
std::vector<TransitionEvaluation> transition_grid(
    const MarkovSeries& series, std::span<const double> x, const std::vector<Point>& y_grid,
    const EstimatorConfig& cfg, const std::vector<std::size_t>& response_cols = {},
    int threads = 1);

// X_{t+1} = rho X_t + sqrt(1 - rho^2) Z_t with seeded standard-normal draws.
MarkovSeries simulate_ar1(std::size_t length, double rho, double x0, std::uint64_t seed);

}  // namespace fsmooth
