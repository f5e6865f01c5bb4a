#include "fsmooth/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fsmooth/density.hpp"
#include "fsmooth/rng.hpp"
#include "fsmooth/stats.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

namespace {

double pi_pow(std::size_t d) {
  return std::pow(std::numbers::pi, static_cast<double>(d));
}

double sign_or_plus(double v) noexcept { return v < 0.0 ? -1.0 : 1.0; }

LabeledSample subsample_rows(const LabeledSample& data, std::size_t cap,
                             std::uint64_t seed) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  CounterRng rng(seed, 0);
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t j = i + rng.next_below(n - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<double> x(cap * d);
  std::vector<double> y(cap);
  for (std::size_t i = 0; i < cap; ++i) {
    const auto row = data.x().row(idx[i]);
    std::copy(row.begin(), row.end(), x.begin() + static_cast<std::ptrdiff_t>(i * d));
    y[i] = data.y()[idx[i]];
  }
  return LabeledSample(SampleMatrix(std::move(x), cap, d), std::move(y));
}

}  // namespace

double regression_denominator_floor(Radius R, std::size_t n, std::size_t d) noexcept {
  return 1e-10 * std::pow(R.value(), static_cast<double>(d)) / static_cast<double>(n);
}

RegressionEvaluation regress_at(const LabeledSample& data, std::span<const double> x,
                                const EstimatorConfig& cfg) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (x.size() != d) throw std::invalid_argument("regress_at: dimension mismatch");
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("regress_at: non-finite point");
  }

  detail::CompensatedSum num, den;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = product_kernel(x, data.x().row(i), cfg.R);
    num.add(data.y()[i] * w);
    den.add(w);
  }
  const double norm = static_cast<double>(n) * pi_pow(d);
  const double a_hat = num.value() / norm;
  const double f_hat = den.value() / norm;
  const double floor = regression_denominator_floor(cfg.R, n, d);

  RegressionEvaluation out;
  out.point.assign(x.begin(), x.end());
  out.denominator = f_hat;
  out.reliable = std::abs(f_hat) > floor;
  const double guarded = out.reliable ? f_hat : sign_or_plus(f_hat) * floor;
  out.m_hat = a_hat / guarded;
  return out;
}

std::vector<RegressionEvaluation> regress_curve(const LabeledSample& data,
                                                const std::vector<Point>& curve,
                                                const EstimatorConfig& cfg, int threads) {
  std::vector<RegressionEvaluation> out(curve.size());
  detail::parallel_for(curve.size(), threads, [&](std::size_t i) {
    out[i] = regress_at(data, curve[i], cfg);
  });
  return out;
}

SmoothingMatrixSummary smoothing_matrix_summary(const LabeledSample& data,
                                                const EstimatorConfig& cfg, std::size_t cap,
                                                std::uint64_t subsample_seed, int threads) {
  if (cap >= 1 && data.size() > cap) {
    return smoothing_matrix_summary(subsample_rows(data, cap, subsample_seed), cfg, 0,
                                    subsample_seed, threads);
  }
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (n < 2) throw std::invalid_argument("smoothing_matrix_summary: need n >= 2");

  std::vector<double> diag(n), row_sq(n);
  const double kdiag = std::pow(cfg.R.value(), static_cast<double>(d));
  detail::parallel_for(n, threads, [&](std::size_t i) {
    const auto xi = data.x().row(i);
    detail::CompensatedSum den, sq;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = product_kernel(xi, data.x().row(j), cfg.R);
      den.add(w);
      sq.add(w * w);
    }
    const double deni = den.value();
    diag[i] = kdiag / deni;
    row_sq[i] = sq.value() / (deni * deni);
  });

  SmoothingMatrixSummary out;
  out.n = n;
  detail::CompensatedSum trl, trltl;
  for (std::size_t i = 0; i < n; ++i) {
    trl.add(diag[i]);
    trltl.add(row_sq[i]);
  }
  out.trace_l = trl.value();
  out.trace_ltl = trltl.value();
  return out;
}

double sigma2_hat(const LabeledSample& data, const EstimatorConfig& cfg, std::size_t cap,
                  std::uint64_t subsample_seed, int threads) {
  if (cap >= 1 && data.size() > cap) {
    return sigma2_hat(subsample_rows(data, cap, subsample_seed), cfg, 0, subsample_seed,
                      threads);
  }
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (n < 2) throw std::invalid_argument("sigma2_hat: need n >= 2");

  std::vector<double> residual_sq(n), diag(n), row_sq(n);
  const double kdiag = std::pow(cfg.R.value(), static_cast<double>(d));
  detail::parallel_for(n, threads, [&](std::size_t i) {
    const auto xi = data.x().row(i);
    detail::CompensatedSum num, den, sq;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = product_kernel(xi, data.x().row(j), cfg.R);
      num.add(data.y()[j] * w);
      den.add(w);
      sq.add(w * w);
    }
    const double deni = den.value();
    const double fitted = num.value() / deni;
    const double r = data.y()[i] - fitted;
    residual_sq[i] = r * r;
    diag[i] = kdiag / deni;
    row_sq[i] = sq.value() / (deni * deni);
  });

  detail::CompensatedSum rss, trl, trltl;
  for (std::size_t i = 0; i < n; ++i) {
    rss.add(residual_sq[i]);
    trl.add(diag[i]);
    trltl.add(row_sq[i]);
  }
  const double dof = static_cast<double>(n) - 2.0 * trl.value() + trltl.value();
  if (!(dof > 0.0)) {
    throw DegenerateSmootherError("sigma2_hat: n - 2 tr(L) + tr(L'L) is not positive");
  }
  return rss.value() / dof;
}

IntervalEstimate regress_ci_with_sigma(const LabeledSample& data, std::span<const double> x,
                                       const EstimatorConfig& cfg, double tau,
                                       double sigma2) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("regress_ci: tau must lie in (0, 1)");
  }
  const RegressionEvaluation eval = regress_at(data, x, cfg);
  if (eval.denominator == 0.0) {
    throw std::domain_error("regress_ci: density estimate is zero, interval width infinite");
  }
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const double z = normal_quantile(1.0 - tau / 2.0);
  const double half =
      z * std::sqrt(sigma2 * std::pow(cfg.R.value(), static_cast<double>(d)) /
                    (static_cast<double>(n) * pi_pow(d) * std::abs(eval.denominator)));

  IntervalEstimate out;
  out.point = eval.point;
  out.estimate = eval.m_hat;
  out.lower = eval.m_hat - half;
  out.upper = eval.m_hat + half;
  out.level = 1.0 - tau;
  out.degenerate = half == 0.0;
  return out;
}

IntervalEstimate regress_ci(const LabeledSample& data, std::span<const double> x,
                            const EstimatorConfig& cfg, double tau, std::size_t sigma_cap) {
  return regress_ci_with_sigma(data, x, cfg, tau, sigma2_hat(data, cfg, sigma_cap));
}

}  // namespace fsmooth
