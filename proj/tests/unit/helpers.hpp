#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "fsmooth/rng.hpp"
#include "fsmooth/types.hpp"

namespace testing {

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want, double floor = 1e-12) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream = 0) {
  fsmooth::CounterRng rng(seed, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_normal();
  return v;
}

inline fsmooth::SampleMatrix normal_sample(std::size_t n, std::uint64_t seed) {
  return fsmooth::SampleMatrix::from_column(normal_draws(n, seed));
}

inline std::vector<fsmooth::Point> grid1d(double lo, double hi, std::size_t count) {
  std::vector<fsmooth::Point> g;
  g.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = count == 1 ? 0.5 * (lo + hi)
                                : lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(count - 1);
    g.push_back({x});
  }
  return g;
}

inline double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Tail of int_T^inf sin(Rx)/x dx via the large-argument expansion of the sine
// integral: cos(z)/z + sin(z)/z^2 with z = R T (error O(1/z^3)).
inline double sinc_tail_integral(double R, double T) {
  const double z = R * T;
  return std::cos(z) / z + std::sin(z) / (z * z);
}

}  // namespace testing
