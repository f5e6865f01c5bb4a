#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fsmooth/deconv.hpp"
#include "fsmooth/types.hpp"

namespace fsmooth {

struct GridStartSpec {
  Point lo;
  Point hi;
  std::vector<std::size_t> counts;  // per axis
};

struct AscentConfig {
  // Start set: all data points by default, or a regular grid, or explicit
  // points (grid starts suit mixing densities whose data live convolved).
  std::optional<GridStartSpec> grid_starts;
  std::optional<std::vector<Point>> explicit_starts;

  int max_iter = 200;
  // Zero means scale-aware default 1e-7 R^(d+1) / pi^d.
  double grad_tol = 0.0;
  // Zero means pi / (2R), half the kernel main lobe.
  double dedupe_radius = 0.0;
  double step_shrink = 0.5;
  // Candidate modes below ripple_fraction * max_start f are sinc side-lobe
  // bumps and get dropped.
  double ripple_fraction = 0.05;
};

struct ModeSet {
  std::vector<Point> modes;
  std::vector<double> values;            // estimator value at each mode
  std::vector<double> gradient_norms;
  std::vector<double> hessian_top_eigs;  // all < 0
  std::size_t k = 0;
  std::size_t starts_used = 0;
  std::size_t converged = 0;
};

// Local maxima of the density estimate by gradient ascent with Armijo
// backtracking on the raw (unclipped) estimate. The classical mean-shift
// fixed point is not usable here: the kernel takes negative values, so its
// ascent property does not hold.
ModeSet find_modes_density(const SampleMatrix& sample, const EstimatorConfig& cfg,
                           const AscentConfig& ascent, int threads = 1);

// Same ascent applied to the deconvolution estimate of the mixing density.
ModeSet find_modes_mixing(const SampleMatrix& sample, const NoiseModel& noise,
                          const EstimatorConfig& cfg, const AscentConfig& ascent,
                          int threads = 1);

// Max-min Euclidean distance between two nonempty finite point sets.
double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b);

namespace detail {
// Ascent driver shared by the density and mixing paths; eval fills value and
// gradient, hessian fills the d x d matrix.
using ValueGradFn = std::function<void(std::span<const double>, double*, double*)>;
using HessianFn = std::function<void(std::span<const double>, std::vector<double>*)>;

ModeSet ascend_modes(const std::vector<Point>& starts, std::size_t dim, Radius R,
                     const AscentConfig& ascent, const ValueGradFn& eval,
                     const HessianFn& hessian, int threads);

std::vector<Point> resolve_starts(const SampleMatrix& sample, const AscentConfig& ascent);
}  // namespace detail

}  // namespace fsmooth
