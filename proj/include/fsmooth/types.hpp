#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "fsmooth/kernel.hpp"

namespace fsmooth {

using Point = std::vector<double>;

// Fourier-transform tail classes used by the radius selection rules.
struct Supersmooth {
  double alpha;  // > 0
  double c1;     // > 0
};

struct OrdinarySmooth {
  double beta;  // > 1
};

using Smoothness = std::variant<Supersmooth, OrdinarySmooth>;

enum class ClipMode { none, max_with_zero, absolute_value };

struct EstimatorConfig {
  Radius R;
  ClipMode clip_mode = ClipMode::max_with_zero;
  // Per-axis quadrature density for deconvolution: ceil(points_per_radius * R)
  // Gauss points spread over [-R, R].
  double quad_points_per_radius = 8.0;
  // Box points for the d >= 3 quasi-Monte Carlo deconvolution fallback.
  std::size_t qmc_points = 32768;

  explicit EstimatorConfig(Radius radius) : R(radius) {}
};

// Immutable sample, one observation per row. Rows are stored in a canonical
// (lexicographic) order so every estimator sum runs in an input-order-free
// sequence; evaluations are then exactly invariant under row permutations.
class SampleMatrix {
public:
  SampleMatrix(std::vector<double> row_major, std::size_t n, std::size_t d);

  static SampleMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SampleMatrix from_column(std::vector<double> column);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return d_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * d_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * d_, d_};
  }
  std::span<const double> data() const noexcept { return data_; }

  // Original index of stored row i, so per-row side data (responses) can
  // follow the canonical reordering.
  std::size_t original_index(std::size_t i) const noexcept { return perm_[i]; }

private:
  SampleMatrix() = default;
  friend class LabeledSample;
  std::vector<double> data_;
  std::vector<std::size_t> perm_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
};

// Paired (x, y) sample; rows canonically ordered by x with y as tiebreak.
class LabeledSample {
public:
  LabeledSample(SampleMatrix x_unordered, std::vector<double> y);

  const SampleMatrix& x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::size_t size() const noexcept { return y_.size(); }
  std::size_t dim() const noexcept { return x_.cols(); }

private:
  SampleMatrix x_;
  std::vector<double> y_;
};

struct IntervalEstimate {
  Point point;
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;       // nominal 1 - tau
  bool degenerate = false;  // zero half-width because the density estimate was <= 0
};

// Symmetric derivative tensor of order 1 (gradient) or 2 (Hessian).
class DerivativeTensor {
public:
  DerivativeTensor(int order, int dim);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }

  double& at(int u);
  double at(int u) const;
  double& at(int u, int v);
  double at(int u, int v) const;

  const std::vector<double>& entries() const noexcept { return entries_; }
  std::vector<double>& entries() noexcept { return entries_; }

private:
  int order_;
  int dim_;
  std::vector<double> entries_;  // dim (order 1) or dim*dim row-major (order 2)
};

}  // namespace fsmooth
