#include "fsmooth/markov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsmooth/rng.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

MarkovSeries::MarkovSeries(std::vector<double> row_major, std::size_t length,
                           std::size_t dim) {
  if (length < 2 || dim < 1) {
    throw std::invalid_argument("MarkovSeries: need length >= 2 and dim >= 1");
  }
  if (row_major.size() != length * dim) {
    throw std::invalid_argument("MarkovSeries: data size does not match length x dim");
  }
  for (double v : row_major) {
    if (!std::isfinite(v)) throw std::invalid_argument("MarkovSeries: entries must be finite");
  }
  data_ = std::move(row_major);
  t_ = length;
  d_ = dim;
}

MarkovSeries MarkovSeries::from_column(std::vector<double> column) {
  const std::size_t t = column.size();
  return MarkovSeries(std::move(column), t, 1);
}

namespace {

std::vector<std::size_t> resolve_response(const MarkovSeries& series,
                                          std::span<const double> y,
                                          const std::vector<std::size_t>& response_cols) {
  std::vector<std::size_t> cols = response_cols;
  if (cols.empty()) {
    cols.resize(series.dim());
    for (std::size_t j = 0; j < series.dim(); ++j) cols[j] = j;
  }
  for (std::size_t c : cols) {
    if (c >= series.dim()) {
      throw std::invalid_argument("transition_at: response column out of range");
    }
  }
  if (y.size() != cols.size()) {
    throw std::invalid_argument("transition_at: y dimension does not match response columns");
  }
  return cols;
}

double x_weight(const MarkovSeries& series, std::size_t i, std::span<const double> x,
                Radius R) {
  double w = 1.0;
  const auto row = series.row(i);
  for (std::size_t j = 0; j < x.size(); ++j) {
    w *= sinc_kernel(x[j] - row[j], R);
  }
  return w;
}

}  // namespace

TransitionEvaluation transition_at(const MarkovSeries& series, std::span<const double> x,
                                   std::span<const double> y, const EstimatorConfig& cfg,
                                   const std::vector<std::size_t>& response_cols) {
  if (x.size() != series.dim()) {
    throw std::invalid_argument("transition_at: x dimension does not match series");
  }
  const std::vector<std::size_t> cols = resolve_response(series, y, response_cols);
  const std::size_t t = series.length();
  const Radius R = cfg.R;

  detail::CompensatedSum num, den;
  for (std::size_t i = 0; i < t; ++i) {
    const double w = x_weight(series, i, x, R);
    den.add(w);
    if (i + 1 < t) {
      double wy = 1.0;
      const auto next = series.row(i + 1);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        wy *= sinc_kernel(y[j] - next[cols[j]], R);
      }
      num.add(w * wy);
    }
  }

  TransitionEvaluation out;
  out.x.assign(x.begin(), x.end());
  out.y.assign(y.begin(), y.end());
  out.numerator_mass = num.value();
  out.denominator_mass = den.value();
  const double pi_dy = std::pow(std::numbers::pi, static_cast<double>(cols.size()));
  const double floor = 1e-10 * std::pow(R.value(), static_cast<double>(x.size())) *
                       std::pow(std::numbers::pi, static_cast<double>(x.size()));
  out.reliable = std::abs(out.denominator_mass) > floor;
  const double guarded =
      out.reliable ? out.denominator_mass
                   : (out.denominator_mass < 0.0 ? -floor : floor);
  out.value = out.numerator_mass / (pi_dy * guarded);
  return out;
}

std::vector<TransitionEvaluation> transition_grid(
    const MarkovSeries& series, std::span<const double> x, const std::vector<Point>& y_grid,
    const EstimatorConfig& cfg, const std::vector<std::size_t>& response_cols, int threads) {
  if (x.size() != series.dim()) {
    throw std::invalid_argument("transition_grid: x dimension does not match series");
  }
  const std::size_t t = series.length();
  const Radius R = cfg.R;

  // One pass for the x weights; the y grid reuses them.
  std::vector<double> w(t);
  detail::CompensatedSum den;
  for (std::size_t i = 0; i < t; ++i) {
    w[i] = x_weight(series, i, x, R);
    den.add(w[i]);
  }
  const double den_mass = den.value();

  std::vector<TransitionEvaluation> out(y_grid.size());
  detail::parallel_for(y_grid.size(), threads, [&](std::size_t g) {
    const auto& y = y_grid[g];
    const std::vector<std::size_t> cols = resolve_response(series, y, response_cols);
    detail::CompensatedSum num;
    for (std::size_t i = 0; i + 1 < t; ++i) {
      double wy = 1.0;
      const auto next = series.row(i + 1);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        wy *= sinc_kernel(y[j] - next[cols[j]], R);
      }
      num.add(w[i] * wy);
    }
    TransitionEvaluation ev;
    ev.x.assign(x.begin(), x.end());
    ev.y = y;
    ev.numerator_mass = num.value();
    ev.denominator_mass = den_mass;
    const double pi_dy = std::pow(std::numbers::pi, static_cast<double>(cols.size()));
    const double floor = 1e-10 * std::pow(R.value(), static_cast<double>(x.size())) *
                         std::pow(std::numbers::pi, static_cast<double>(x.size()));
    ev.reliable = std::abs(den_mass) > floor;
    const double guarded = ev.reliable ? den_mass : (den_mass < 0.0 ? -floor : floor);
    ev.value = ev.numerator_mass / (pi_dy * guarded);
    out[g] = ev;
  });
  return out;
}

MarkovSeries simulate_ar1(std::size_t length, double rho, double x0, std::uint64_t seed) {
  if (length < 2) throw std::invalid_argument("simulate_ar1: need length >= 2");
  if (!(rho > -1.0 && rho < 1.0)) {
    throw std::invalid_argument("simulate_ar1: rho must lie in (-1, 1)");
  }
  CounterRng rng(seed, 0);
  std::vector<double> x(length);
  const double scale = std::sqrt(1.0 - rho * rho);
  double cur = x0;
  for (std::size_t t = 0; t < length; ++t) {
    cur = rho * cur + scale * rng.next_normal();
    x[t] = cur;
  }
  return MarkovSeries::from_column(std::move(x));
}

}  // namespace fsmooth
