#include "fsmooth/deconv.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fsmooth/quadrature.hpp"
#include "fsmooth/rng.hpp"
#include "fsmooth/stats.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

namespace {

constexpr double kIllPosedCap = 1e12;
constexpr std::uint64_t kQmcSeed = 0x0ff5e7ull;

[[noreturn]] void throw_ill_posed(std::span<const double> s, double inv) {
  std::ostringstream msg;
  msg << "deconv: noise Fourier transform too small at frequency (";
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j) msg << ", ";
    msg << s[j];
  }
  msg << "); |1/ft| = " << inv;
  throw IllPosedError(msg.str());
}

}  // namespace

double NoiseModel::fourier(std::span<const double> s) const {
  if (std::holds_alternative<GaussianIsotropicNoise>(kind)) {
    const double h = std::get<GaussianIsotropicNoise>(kind).h;
    double q = 0.0;
    for (double v : s) q += v * v;
    return std::exp(-0.5 * h * h * q);
  }
  if (std::holds_alternative<LaplaceProductNoise>(kind)) {
    const double b = std::get<LaplaceProductNoise>(kind).b;
    double p = 1.0;
    for (double v : s) p *= 1.0 / (1.0 + b * b * v * v);
    return p;
  }
  return std::get<CustomFourierNoise>(kind).ft(s);
}

namespace detail {

void deconv_axis_rule(const EstimatorConfig& cfg, std::vector<double>* nodes,
                      std::vector<double>* weights) {
  const double R = cfg.R.value();
  const int m = std::max(4, static_cast<int>(std::ceil(cfg.quad_points_per_radius * R)));
  const QuadratureRule rule = gauss_legendre_on(m, -R, R);
  *nodes = rule.nodes;
  *weights = rule.weights;
}

}  // namespace detail

DeconvEvaluator::DeconvEvaluator(const SampleMatrix& sample, const NoiseModel& noise,
                                 const EstimatorConfig& cfg)
    : n_(sample.rows()), d_(sample.cols()) {
  if (noise.dim != static_cast<int>(d_)) {
    throw std::invalid_argument("deconv: noise dimension does not match sample");
  }

  if (d_ <= 2) {
    std::vector<double> axis_nodes, axis_weights;
    detail::deconv_axis_rule(cfg, &axis_nodes, &axis_weights);
    const std::size_t m = axis_nodes.size();
    const std::size_t total = d_ == 1 ? m : m * m;
    nodes_.resize(total * d_);
    weight_over_ft_.resize(total);
    for (std::size_t p = 0; p < total; ++p) {
      double w = 1.0;
      for (std::size_t j = 0; j < d_; ++j) {
        const std::size_t idx = (d_ == 1) ? p : (j == 0 ? p / m : p % m);
        nodes_[p * d_ + j] = axis_nodes[idx];
        w *= axis_weights[idx];
      }
      weight_over_ft_[p] = w;
    }
  } else {
    const double R = cfg.R.value();
    const std::size_t count = cfg.qmc_points;
    const std::vector<double> unit = halton_shifted(count, static_cast<int>(d_), kQmcSeed);
    nodes_.resize(count * d_);
    for (std::size_t p = 0; p < count * d_; ++p) {
      nodes_[p] = -R + 2.0 * R * unit[p];
    }
    const double volume = std::pow(2.0 * R, static_cast<double>(d_));
    weight_over_ft_.assign(count, volume / static_cast<double>(count));
  }

  // Fold 1/ft into the weights; reject near-vanishing noise transforms.
  for (std::size_t p = 0; p < weight_over_ft_.size(); ++p) {
    const std::span<const double> s{nodes_.data() + p * d_, d_};
    const double ft = noise.fourier(s);
    const double inv = 1.0 / ft;
    if (!std::isfinite(inv) || std::abs(inv) > kIllPosedCap) {
      throw_ill_posed(s, std::abs(inv));
    }
    weight_over_ft_[p] *= inv;
  }

  cos_sum_.assign(weight_over_ft_.size(), 0.0);
  sin_sum_.assign(weight_over_ft_.size(), 0.0);
  for (std::size_t p = 0; p < weight_over_ft_.size(); ++p) {
    const std::span<const double> s{nodes_.data() + p * d_, d_};
    detail::CompensatedSum cs, ss;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto xi = sample.row(i);
      double dot = 0.0;
      for (std::size_t j = 0; j < d_; ++j) dot += s[j] * xi[j];
      cs.add(std::cos(dot));
      ss.add(std::sin(dot));
    }
    cos_sum_[p] = cs.value();
    sin_sum_[p] = ss.value();
  }

  norm_ = 1.0 / (static_cast<double>(n_) *
                 std::pow(2.0 * std::numbers::pi, static_cast<double>(d_)));
}

void DeconvEvaluator::check_theta(std::span<const double> theta) const {
  if (theta.size() != d_) {
    throw std::invalid_argument("deconv: theta dimension does not match sample");
  }
}

double DeconvEvaluator::value(std::span<const double> theta) const {
  check_theta(theta);
  detail::CompensatedSum acc;
  for (std::size_t p = 0; p < weight_over_ft_.size(); ++p) {
    const std::span<const double> s{nodes_.data() + p * d_, d_};
    double dot = 0.0;
    for (std::size_t j = 0; j < d_; ++j) dot += s[j] * theta[j];
    acc.add(weight_over_ft_[p] * (std::cos(dot) * cos_sum_[p] + std::sin(dot) * sin_sum_[p]));
  }
  return norm_ * acc.value();
}

void DeconvEvaluator::value_gradient(std::span<const double> theta, double* value,
                                     double* grad) const {
  check_theta(theta);
  detail::CompensatedSum vacc;
  std::vector<detail::CompensatedSum> gacc(d_);
  for (std::size_t p = 0; p < weight_over_ft_.size(); ++p) {
    const std::span<const double> s{nodes_.data() + p * d_, d_};
    double dot = 0.0;
    for (std::size_t j = 0; j < d_; ++j) dot += s[j] * theta[j];
    const double c = std::cos(dot), sn = std::sin(dot);
    vacc.add(weight_over_ft_[p] * (c * cos_sum_[p] + sn * sin_sum_[p]));
    const double dphase = weight_over_ft_[p] * (sn * cos_sum_[p] - c * sin_sum_[p]);
    for (std::size_t j = 0; j < d_; ++j) gacc[j].add(-s[j] * dphase);
  }
  if (value != nullptr) *value = norm_ * vacc.value();
  if (grad != nullptr) {
    for (std::size_t j = 0; j < d_; ++j) grad[j] = norm_ * gacc[j].value();
  }
}

DerivativeTensor DeconvEvaluator::derivative(std::span<const double> theta, int order) const {
  check_theta(theta);
  if (order != 1 && order != 2) {
    throw std::invalid_argument("deconv_derivative_at: order must be 1 or 2");
  }
  DerivativeTensor out(order, static_cast<int>(d_));
  if (order == 1) {
    std::vector<double> grad(d_);
    value_gradient(theta, nullptr, grad.data());
    for (std::size_t j = 0; j < d_; ++j) out.at(static_cast<int>(j)) = grad[j];
    return out;
  }
  std::vector<detail::CompensatedSum> acc(d_ * d_);
  for (std::size_t p = 0; p < weight_over_ft_.size(); ++p) {
    const std::span<const double> s{nodes_.data() + p * d_, d_};
    double dot = 0.0;
    for (std::size_t j = 0; j < d_; ++j) dot += s[j] * theta[j];
    const double phase = weight_over_ft_[p] *
                         (std::cos(dot) * cos_sum_[p] + std::sin(dot) * sin_sum_[p]);
    for (std::size_t u = 0; u < d_; ++u) {
      for (std::size_t v = u; v < d_; ++v) {
        acc[u * d_ + v].add(-s[u] * s[v] * phase);
      }
    }
  }
  for (std::size_t u = 0; u < d_; ++u) {
    for (std::size_t v = u; v < d_; ++v) {
      const double x = norm_ * acc[u * d_ + v].value();
      out.at(static_cast<int>(u), static_cast<int>(v)) = x;
      out.at(static_cast<int>(v), static_cast<int>(u)) = x;
    }
  }
  return out;
}

DeconvEvaluation deconv_at(const SampleMatrix& sample, std::span<const double> theta,
                           const NoiseModel& noise, const EstimatorConfig& cfg) {
  const DeconvEvaluator ev(sample, noise, cfg);
  DeconvEvaluation out;
  out.theta.assign(theta.begin(), theta.end());
  out.raw_value = ev.value(theta);
  return out;
}

DerivativeTensor deconv_derivative_at(const SampleMatrix& sample,
                                      std::span<const double> theta,
                                      const NoiseModel& noise, const EstimatorConfig& cfg,
                                      int order) {
  const DeconvEvaluator ev(sample, noise, cfg);
  return ev.derivative(theta, order);
}

namespace {

DeconvEvaluation mc_estimate(const SampleMatrix& sample, double theta, double h, Radius R,
                             int m, std::uint64_t seed, bool derivative) {
  if (sample.cols() != 1) throw std::invalid_argument("deconv_at_mc: sample must be 1-d");
  if (m < 1) throw std::invalid_argument("deconv_at_mc: need m >= 1");
  if (h < 0.0) throw std::invalid_argument("deconv_at_mc: h must be nonnegative");
  const double r = R.value();
  if (0.5 * h * h * r * r > 700.0) {
    throw IllPosedError("deconv_at_mc: exp((hR)^2/2) overflows; reduce R or h");
  }

  const std::size_t n = sample.rows();
  CounterRng rng(seed, 0);
  std::vector<double> per_datum(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = sample(i, 0);
    detail::CompensatedSum acc;
    for (int j = 0; j < m; ++j) {
      const double u = rng.next_uniform(0.0, r);
      const double amp = std::exp(0.5 * u * u * h * h);
      const double arg = u * (theta - xi);
      const double t = derivative ? -(r / std::numbers::pi) * u * amp * std::sin(arg)
                                  : (r / std::numbers::pi) * amp * std::cos(arg);
      acc.add(t);
    }
    per_datum[i] = acc.value() / static_cast<double>(m);
  }

  detail::CompensatedSum total;
  for (double t : per_datum) total.add(t);

  DeconvEvaluation out;
  out.theta = {theta};
  out.raw_value = total.value() / static_cast<double>(n);
  if (n >= 2) {
    out.mc_std_error = std::sqrt(sample_variance(per_datum) / static_cast<double>(n));
  } else {
    out.mc_std_error = 0.0;
  }
  return out;
}

}  // namespace

DeconvEvaluation deconv_at_mc(const SampleMatrix& sample, double theta, double h,
                              Radius R, int m, std::uint64_t seed) {
  return mc_estimate(sample, theta, h, R, m, seed, false);
}

DeconvEvaluation deconv_derivative_mc(const SampleMatrix& sample, double theta, double h,
                                      Radius R, int m, std::uint64_t seed) {
  return mc_estimate(sample, theta, h, R, m, seed, true);
}

}  // namespace fsmooth
