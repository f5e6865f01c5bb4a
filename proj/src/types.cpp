#include "fsmooth/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fsmooth {

namespace {

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": entries must be finite");
    }
  }
}

bool row_less(const double* a, const double* b, std::size_t d) {
  return std::lexicographical_compare(a, a + d, b, b + d);
}

}  // namespace

SampleMatrix::SampleMatrix(std::vector<double> row_major, std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw std::invalid_argument("SampleMatrix: need n >= 1 and d >= 1");
  if (row_major.size() != n * d) {
    throw std::invalid_argument("SampleMatrix: data size does not match n x d");
  }
  check_finite(row_major, "SampleMatrix");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return row_less(row_major.data() + a * d, row_major.data() + b * d, d);
  });

  data_.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = row_major.data() + perm[i] * d;
    std::copy(src, src + d, data_.data() + i * d);
  }
  perm_ = std::move(perm);
  n_ = n;
  d_ = d;
}

SampleMatrix SampleMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("SampleMatrix: need at least one row");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw std::invalid_argument("SampleMatrix: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return SampleMatrix(std::move(flat), rows.size(), d);
}

SampleMatrix SampleMatrix::from_column(std::vector<double> column) {
  const std::size_t n = column.size();
  return SampleMatrix(std::move(column), n, 1);
}

LabeledSample::LabeledSample(SampleMatrix x_unordered, std::vector<double> y) {
  const std::size_t n = x_unordered.rows();
  const std::size_t d = x_unordered.cols();
  if (y.size() != n) throw std::invalid_argument("LabeledSample: x rows and y length differ");
  check_finite(y, "LabeledSample");

  // y arrives in the caller's original row order; route it through the
  // matrix's canonical permutation so pairs stay together, then break ties
  // among identical rows by y.
  std::vector<double> y_sorted(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted[i] = y[x_unordered.perm_[i]];

  const auto& data = x_unordered.data_;
  std::size_t run_begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool run_ends =
        i == n || row_less(data.data() + run_begin * d, data.data() + i * d, d);
    if (run_ends) {
      if (i - run_begin > 1) {
        std::sort(y_sorted.begin() + static_cast<std::ptrdiff_t>(run_begin),
                  y_sorted.begin() + static_cast<std::ptrdiff_t>(i));
      }
      run_begin = i;
    }
  }

  x_ = std::move(x_unordered);
  for (std::size_t i = 0; i < n; ++i) x_.perm_[i] = i;  // pairing is now by position
  y_ = std::move(y_sorted);
}

DerivativeTensor::DerivativeTensor(int order, int dim) : order_(order), dim_(dim) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("DerivativeTensor: order must be 1 or 2");
  }
  if (dim < 1) throw std::invalid_argument("DerivativeTensor: need dim >= 1");
  entries_.assign(order == 1 ? static_cast<std::size_t>(dim)
                             : static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                  0.0);
}

double& DerivativeTensor::at(int u) {
  if (order_ != 1) throw std::invalid_argument("DerivativeTensor: single index needs order 1");
  return entries_.at(static_cast<std::size_t>(u));
}

double DerivativeTensor::at(int u) const {
  return const_cast<DerivativeTensor*>(this)->at(u);
}

double& DerivativeTensor::at(int u, int v) {
  if (order_ != 2) throw std::invalid_argument("DerivativeTensor: double index needs order 2");
  return entries_.at(static_cast<std::size_t>(u) * static_cast<std::size_t>(dim_) +
                     static_cast<std::size_t>(v));
}

double DerivativeTensor::at(int u, int v) const {
  return const_cast<DerivativeTensor*>(this)->at(u, v);
}

}  // namespace fsmooth
