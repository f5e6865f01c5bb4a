#include "fsmooth/simulate.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "fsmooth/rng.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

namespace {

void check_overrides(const ExampleSpec& spec, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : spec.overrides) {
    if (allowed.find(key) == allowed.end()) {
      throw std::invalid_argument("generate: unknown override '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("generate: override '" + key + "' must be finite");
    }
  }
}

double get_override(const ExampleSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.overrides.find(key);
  return it == spec.overrides.end() ? fallback : it->second;
}

LabeledSample generate_ex1(const ExampleSpec& spec) {
  check_overrides(spec, {"noise"});
  const double noise = get_override(spec, "noise", 1.0);
  if (noise < 0.0) throw std::invalid_argument("generate: ex1 noise must be >= 0");
  const std::size_t n = spec.n;
  CounterRng x1_rng(spec.seed, 0), z_rng(spec.seed, 1), eps_rng(spec.seed, 2);
  std::vector<double> x(n * 2), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = x1_rng.next_normal();
    const double x2 = x1 + 0.1 * z_rng.next_normal();
    x[i * 2] = x1;
    x[i * 2 + 1] = x2;
    y[i] = x1 * x1 - 3.0 * x2 + noise * eps_rng.next_normal();
  }
  return LabeledSample(SampleMatrix(std::move(x), n, 2), std::move(y));
}

LabeledSample generate_linear(const ExampleSpec& spec, std::size_t d) {
  check_overrides(spec, {"noise"});
  const double noise = get_override(spec, "noise", 0.01);
  if (noise < 0.0) throw std::invalid_argument("generate: noise must be >= 0");
  const std::size_t n = spec.n;
  CounterRng x_rng(spec.seed, 0), eps_rng(spec.seed, 1);
  std::vector<double> x(n * d), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = x_rng.next_normal();
      x[i * d + j] = xj;
      m += (static_cast<double>(j) + 1.0) / 4.0 * xj;
    }
    y[i] = m + noise * eps_rng.next_normal();
  }
  return LabeledSample(SampleMatrix(std::move(x), n, d), std::move(y));
}

SampleMatrix generate_ex4(const ExampleSpec& spec) {
  check_overrides(spec, {"h"});
  const double h = get_override(spec, "h", 0.1);
  if (h < 0.0) throw std::invalid_argument("generate: ex4 h must be >= 0");
  const std::size_t n = spec.n;
  CounterRng pick_rng(spec.seed, 0), theta_rng(spec.seed, 1), noise_rng(spec.seed, 2);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double center = pick_rng.next_uniform() < 0.6 ? -2.0 : 2.0;
    const double theta = center + 0.6 * theta_rng.next_normal();
    x[i] = theta + h * noise_rng.next_normal();
  }
  return SampleMatrix::from_column(std::move(x));
}

LabeledSample generate_ex5(const ExampleSpec& spec) {
  check_overrides(spec, {"sigma"});
  const double sigma = get_override(spec, "sigma", 0.6);
  if (sigma < 0.0) throw std::invalid_argument("generate: ex5 sigma must be >= 0");
  const std::size_t n = spec.n;
  CounterRng x_rng(spec.seed, 0), pick_rng(spec.seed, 1), noise_rng(spec.seed, 2);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x_rng.next_uniform(-2.0, 2.0);
    const double sign = pick_rng.next_uniform() < 0.5 ? -1.0 : 1.0;
    x[i] = xi;
    y[i] = sign * xi * xi + sigma * noise_rng.next_normal();
  }
  return LabeledSample(SampleMatrix::from_column(std::move(x)), std::move(y));
}

MarkovSeries generate_ex6(const ExampleSpec& spec) {
  check_overrides(spec, {"rho", "x0", "dim", "rho1", "rho2", "x0_2"});
  const double rho = get_override(spec, "rho", 0.6);
  const double x0 = get_override(spec, "x0", 0.5);
  const int dim = static_cast<int>(get_override(spec, "dim", 1.0));
  if (dim == 1) {
    return simulate_ar1(spec.n, rho, x0, spec.seed);
  }
  if (dim != 2) throw std::invalid_argument("generate: ex6 dim must be 1 or 2");
  const double rho1 = get_override(spec, "rho1", 0.3);
  const double rho2 = get_override(spec, "rho2", 0.7);
  const double x0_2 = get_override(spec, "x0_2", 0.2);
  if (!(rho > -1.0 && rho < 1.0) || rho1 * rho1 + rho2 * rho2 >= 1.0) {
    throw std::invalid_argument("generate: ex6 correlation parameters out of range");
  }
  const std::size_t t = spec.n;
  CounterRng z1_rng(spec.seed, 0), z2_rng(spec.seed, 1);
  std::vector<double> data(t * 2);
  double c1 = x0, c2 = x0_2;
  const double s1 = std::sqrt(1.0 - rho * rho);
  const double s2 = std::sqrt(1.0 - rho1 * rho1 - rho2 * rho2);
  for (std::size_t i = 0; i < t; ++i) {
    const double n1 = rho * c1 + s1 * z1_rng.next_normal();
    const double n2 = rho1 * c1 + rho2 * c2 + s2 * z2_rng.next_normal();
    data[i * 2] = n1;
    data[i * 2 + 1] = n2;
    c1 = n1;
    c2 = n2;
  }
  return MarkovSeries(std::move(data), t, 2);
}

}  // namespace

GeneratedData generate(const ExampleSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generate: need n >= 1");
  switch (spec.id) {
    case ExampleId::ex1:
      return generate_ex1(spec);
    case ExampleId::ex2:
      return generate_linear(spec, 4);
    case ExampleId::ex3:
      return generate_linear(spec, 5);
    case ExampleId::ex4:
      return generate_ex4(spec);
    case ExampleId::ex5:
      return generate_ex5(spec);
    case ExampleId::ex6:
      return generate_ex6(spec);
    case ExampleId::ex7:
      throw std::invalid_argument(
          "generate: example 7 uses an external daily-index dataset that is not "
          "bundled; ingest a CSV with the transition command instead");
  }
  throw std::invalid_argument("generate: unknown example id");
}

double gaussian_nw_baseline(const LabeledSample& data, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("gaussian_nw_baseline: h must be positive");
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (x.size() != d) throw std::invalid_argument("gaussian_nw_baseline: dimension mismatch");

  detail::CompensatedSum num, den;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = data.x().row(i);
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = x[j] - xi[j];
      w *= std::exp(-0.5 * u * u / (h * h)) / h;
    }
    num.add(data.y()[i] * w);
    den.add(w);
  }
  if (den.value() <= 0.0) {
    throw std::domain_error("gaussian_nw_baseline: all weights underflowed to zero");
  }
  return num.value() / den.value();
}

double mise(std::span<const double> estimate, std::span<const double> truth,
            std::span<const double> grid_weights) {
  if (estimate.size() != truth.size() || estimate.size() != grid_weights.size()) {
    throw std::invalid_argument("mise: length mismatch");
  }
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double diff = estimate[i] - truth[i];
    acc.add(grid_weights[i] * diff * diff);
  }
  return acc.value();
}

}  // namespace fsmooth
