#include "fsmooth/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsmooth/density.hpp"
#include "fsmooth/rng.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

double sup_deviation(std::span<const double> f_star, std::span<const double> f_hat,
                     std::size_t n, Radius R, std::size_t d) {
  if (f_star.size() != f_hat.size()) {
    throw std::invalid_argument("sup_deviation: length mismatch");
  }
  double sup = 0.0;
  for (std::size_t j = 0; j < f_star.size(); ++j) {
    sup = std::max(sup, std::abs(f_star[j] - f_hat[j]));
  }
  return std::sqrt(static_cast<double>(n) / std::pow(R.value(), static_cast<double>(d))) * sup;
}

BandEstimate bootstrap_band(const SampleMatrix& sample, const EstimatorConfig& cfg,
                            const BootstrapPlan& plan, double tau, int threads) {
  if (plan.replicates < 1) throw std::invalid_argument("bootstrap_band: need B >= 1");
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("bootstrap_band: tau must lie in (0, 1)");
  }
  if (plan.grid.empty()) throw std::invalid_argument("bootstrap_band: empty grid");

  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  const std::size_t g = plan.grid.size();

  std::vector<double> center(g);
  detail::parallel_for(g, threads, [&](std::size_t j) {
    center[j] = density_at(sample, plan.grid[j], cfg).raw_value;
  });

  const std::size_t b_count = static_cast<std::size_t>(plan.replicates);
  std::vector<double> deviations(b_count);
  detail::parallel_for(b_count, threads, [&](std::size_t b) {
    CounterRng rng(plan.seed, b);
    std::vector<double> resampled(n * d);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = sample.row(rng.next_below(n));
      std::copy(row.begin(), row.end(), resampled.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    const SampleMatrix star(std::move(resampled), n, d);
    std::vector<double> f_star(g);
    for (std::size_t j = 0; j < g; ++j) {
      f_star[j] = density_at(star, plan.grid[j], cfg).raw_value;
    }
    deviations[b] = sup_deviation(f_star, center, n, cfg.R, d);
  });

  std::sort(deviations.begin(), deviations.end());
  const double bd = static_cast<double>(plan.replicates);
  std::size_t k = static_cast<std::size_t>(std::ceil((1.0 - tau) * bd));
  k = std::clamp<std::size_t>(k, 1, b_count);
  const double eta = deviations[k - 1];

  const double scale =
      std::sqrt(std::pow(cfg.R.value(), static_cast<double>(d)) / static_cast<double>(n));
  BandEstimate out;
  out.grid = plan.grid;
  out.center = std::move(center);
  out.half_width.assign(g, eta * scale);
  out.level = 1.0 - tau;
  out.replicates = plan.replicates;
  out.eta = eta;
  out.low_replicate_warning = bd * tau < 1.0;
  return out;
}

}  // namespace fsmooth
