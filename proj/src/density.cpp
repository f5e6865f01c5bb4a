#include "fsmooth/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsmooth/stats.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

namespace {

void check_dim(const SampleMatrix& sample, std::span<const double> x, const char* op) {
  if (x.size() != sample.cols()) {
    throw std::invalid_argument(std::string(op) + ": point dimension does not match sample");
  }
}

double pi_pow(std::size_t d) {
  return std::pow(std::numbers::pi, static_cast<double>(d));
}

}  // namespace

double apply_clip(double raw, ClipMode mode) noexcept {
  switch (mode) {
    case ClipMode::max_with_zero:
      return raw > 0.0 ? raw : 0.0;
    case ClipMode::absolute_value:
      return std::abs(raw);
    case ClipMode::none:
    default:
      return raw;
  }
}

DensityEvaluation density_at(const SampleMatrix& sample, std::span<const double> x,
                             const EstimatorConfig& cfg) {
  check_dim(sample, x, "density_at");
  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  const Radius R = cfg.R;

  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    acc.add(product_kernel(x, sample.row(i), R));
  }
  const double norm = static_cast<double>(n) * pi_pow(d);
  const double raw = acc.value() / norm;

  DensityEvaluation out;
  out.point.assign(x.begin(), x.end());
  out.raw_value = raw;
  out.clipped_value = apply_clip(raw, cfg.clip_mode);
  out.variance_estimate =
      std::pow(R.value(), static_cast<double>(d)) * std::max(raw, 0.0) / norm;
  return out;
}

std::vector<DensityEvaluation> density_grid(const SampleMatrix& sample,
                                            const std::vector<Point>& grid,
                                            const EstimatorConfig& cfg, int threads) {
  std::vector<DensityEvaluation> out(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t i) {
    out[i] = density_at(sample, grid[i], cfg);
  });
  return out;
}

void density_value_gradient(const SampleMatrix& sample, std::span<const double> x,
                            Radius R, double* value, double* gradient) {
  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  if (x.size() != d) throw std::invalid_argument("density_value_gradient: dimension mismatch");

  detail::CompensatedSum vacc;
  std::vector<detail::CompensatedSum> gacc(d);
  std::vector<double> k(d), k1(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = sample.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = x[j] - xi[j];
      k[j] = sinc_kernel(u, R);
      k1[j] = sinc_kernel_deriv(u, R, 1);
    }
    double prod = 1.0;
    for (std::size_t j = 0; j < d; ++j) prod *= k[j];
    vacc.add(prod);
    for (std::size_t j = 0; j < d; ++j) {
      double term = k1[j];
      for (std::size_t l = 0; l < d; ++l) {
        if (l != j) term *= k[l];
      }
      gacc[j].add(term);
    }
  }
  const double norm = static_cast<double>(n) * pi_pow(d);
  if (value != nullptr) *value = vacc.value() / norm;
  if (gradient != nullptr) {
    for (std::size_t j = 0; j < d; ++j) gradient[j] = gacc[j].value() / norm;
  }
}

void density_full_eval(const SampleMatrix& sample, std::span<const double> x, Radius R,
                       double* value, double* gradient, std::vector<double>* hessian) {
  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  if (x.size() != d) throw std::invalid_argument("density_full_eval: dimension mismatch");

  detail::CompensatedSum vacc;
  std::vector<detail::CompensatedSum> gacc(gradient != nullptr ? d : 0);
  std::vector<detail::CompensatedSum> hacc(hessian != nullptr ? d * d : 0);
  std::vector<double> k(d), k1(d), k2(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = sample.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = x[j] - xi[j];
      k[j] = sinc_kernel(u, R);
      if (gradient != nullptr || hessian != nullptr) k1[j] = sinc_kernel_deriv(u, R, 1);
      if (hessian != nullptr) k2[j] = sinc_kernel_deriv(u, R, 2);
    }
    double prod = 1.0;
    for (std::size_t j = 0; j < d; ++j) prod *= k[j];
    vacc.add(prod);
    if (gradient != nullptr) {
      for (std::size_t u = 0; u < d; ++u) {
        double term = k1[u];
        for (std::size_t l = 0; l < d; ++l) {
          if (l != u) term *= k[l];
        }
        gacc[u].add(term);
      }
    }
    if (hessian != nullptr) {
      for (std::size_t u = 0; u < d; ++u) {
        for (std::size_t v = u; v < d; ++v) {
          double term = 1.0;
          for (std::size_t l = 0; l < d; ++l) {
            if (l == u && l == v) {
              term *= k2[l];
            } else if (l == u || l == v) {
              term *= k1[l];
            } else {
              term *= k[l];
            }
          }
          hacc[u * d + v].add(term);
        }
      }
    }
  }
  const double norm = static_cast<double>(n) * pi_pow(d);
  if (value != nullptr) *value = vacc.value() / norm;
  if (gradient != nullptr) {
    for (std::size_t j = 0; j < d; ++j) gradient[j] = gacc[j].value() / norm;
  }
  if (hessian != nullptr) {
    hessian->assign(d * d, 0.0);
    for (std::size_t u = 0; u < d; ++u) {
      for (std::size_t v = u; v < d; ++v) {
        const double h = hacc[u * d + v].value() / norm;
        (*hessian)[u * d + v] = h;
        (*hessian)[v * d + u] = h;
      }
    }
  }
}

DerivativeTensor density_derivative_at(const SampleMatrix& sample,
                                       std::span<const double> x, int order,
                                       const EstimatorConfig& cfg) {
  check_dim(sample, x, "density_derivative_at");
  if (order != 1 && order != 2) {
    throw std::invalid_argument("density_derivative_at: order must be 1 or 2");
  }
  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  const Radius R = cfg.R;
  const double norm = static_cast<double>(n) * pi_pow(d);
  DerivativeTensor out(order, static_cast<int>(d));

  if (order == 1) {
    std::vector<double> grad(d);
    density_value_gradient(sample, x, R, nullptr, grad.data());
    for (std::size_t j = 0; j < d; ++j) out.at(static_cast<int>(j)) = grad[j];
    return out;
  }

  // Order 2: entry (u, v) multiplies K'' on the diagonal and K' K' off it.
  std::vector<detail::CompensatedSum> acc(d * d);
  std::vector<double> k(d), k1(d), k2(d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = sample.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double u = x[j] - xi[j];
      k[j] = sinc_kernel(u, R);
      k1[j] = sinc_kernel_deriv(u, R, 1);
      k2[j] = sinc_kernel_deriv(u, R, 2);
    }
    for (std::size_t u = 0; u < d; ++u) {
      for (std::size_t v = u; v < d; ++v) {
        double term = 1.0;
        for (std::size_t l = 0; l < d; ++l) {
          if (l == u && l == v) {
            term *= k2[l];
          } else if (l == u || l == v) {
            term *= k1[l];
          } else {
            term *= k[l];
          }
        }
        acc[u * d + v].add(term);
      }
    }
  }
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = u; v < d; ++v) {
      const double value = acc[u * d + v].value() / norm;
      out.at(static_cast<int>(u), static_cast<int>(v)) = value;
      out.at(static_cast<int>(v), static_cast<int>(u)) = value;
    }
  }
  return out;
}

Radius select_radius(const Smoothness& smoothness, std::size_t n, std::size_t d) {
  if (n < 2) throw std::invalid_argument("select_radius: need n >= 2");
  if (std::holds_alternative<Supersmooth>(smoothness)) {
    const auto& s = std::get<Supersmooth>(smoothness);
    if (!(s.alpha > 0.0) || !(s.c1 > 0.0)) {
      throw std::invalid_argument("select_radius: supersmooth needs alpha > 0 and c1 > 0");
    }
    return Radius(std::pow(std::log(static_cast<double>(n)) / (2.0 * s.c1), 1.0 / s.alpha));
  }
  const auto& o = std::get<OrdinarySmooth>(smoothness);
  if (!(o.beta > 1.0)) throw std::invalid_argument("select_radius: ordinary smooth needs beta > 1");
  const double expo = 1.0 / (static_cast<double>(d) + 2.0 * (o.beta - 1.0));
  return Radius(std::pow(static_cast<double>(n), expo));
}

double lscv_criterion(const SampleMatrix& sample, Radius R) {
  const std::size_t n = sample.rows();
  const std::size_t d = sample.cols();
  if (n < 3) throw std::invalid_argument("lscv_criterion: need n >= 3");
  const double pid = pi_pow(d);

  // sum over all ordered pairs (i, j) and over the off-diagonal part.
  detail::CompensatedSum all_pairs;
  detail::CompensatedSum off_diag;
  const double diag = std::pow(R.value(), static_cast<double>(d));  // K at 0 per axis
  for (std::size_t i = 0; i < n; ++i) {
    all_pairs.add(diag);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = product_kernel(sample.row(i), sample.row(j), R);
      all_pairs.add(2.0 * k);
      off_diag.add(2.0 * k);
    }
  }
  const double nn = static_cast<double>(n);
  return all_pairs.value() / (nn * nn * pid) -
         2.0 * off_diag.value() / (nn * (nn - 1.0) * pid);
}

Radius select_radius_lscv(const SampleMatrix& sample, const std::vector<Radius>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_radius_lscv: no candidates");
  if (candidates.size() == 1) return candidates.front();
  std::size_t best = 0;
  double best_score = lscv_criterion(sample, candidates[0]);
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    const double score = lscv_criterion(sample, candidates[c]);
    const bool better =
        score < best_score ||
        (score == best_score && candidates[c].value() < candidates[best].value());
    if (better) {
      best = c;
      best_score = score;
    }
  }
  return candidates[best];
}

IntervalEstimate pointwise_ci(const SampleMatrix& sample, std::span<const double> x,
                              const EstimatorConfig& cfg, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("pointwise_ci: tau must lie in (0, 1)");
  }
  const DensityEvaluation eval = density_at(sample, x, cfg);
  const double z = normal_quantile(1.0 - tau / 2.0);
  const double half = z * std::sqrt(eval.variance_estimate);

  IntervalEstimate out;
  out.point = eval.point;
  out.estimate = eval.raw_value;
  out.lower = eval.raw_value - half;
  out.upper = eval.raw_value + half;
  out.level = 1.0 - tau;
  out.degenerate = eval.raw_value <= 0.0;
  return out;
}

double variance_limit_check(const SampleMatrix& sample, std::span<const double> x,
                            const EstimatorConfig& cfg) {
  check_dim(sample, x, "variance_limit_check");
  const std::size_t n = sample.rows();
  if (n < 2) throw std::invalid_argument("variance_limit_check: need n >= 2");
  const std::size_t d = sample.cols();
  const double pid = pi_pow(d);

  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    terms[i] = product_kernel(x, sample.row(i), cfg.R) / pid;
  }
  return sample_variance(terms) / std::pow(cfg.R.value(), static_cast<double>(d));
}

}  // namespace fsmooth
