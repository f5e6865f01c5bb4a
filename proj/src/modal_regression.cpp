#include "fsmooth/modal_regression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsmooth/util.hpp"

namespace fsmooth {

namespace {

// Predictor weights are fixed along one conditional slice, so each y costs a
// single pass over the responses.
class ConditionalSlice {
public:
  ConditionalSlice(const LabeledSample& data, std::span<const double> x,
                   const EstimatorConfig& cfg)
      : data_(data), R_(cfg.R) {
    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    if (x.size() != d) {
      throw std::invalid_argument("conditional_modes: x dimension mismatch");
    }
    w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      w_[i] = product_kernel(x, data.x().row(i), R_);
    }
    norm_ = 1.0 / (static_cast<double>(n) *
                   std::pow(std::numbers::pi, static_cast<double>(d) + 1.0));
  }

  JointPartials eval(double y) const {
    detail::CompensatedSum v, dy, dyy;
    const auto ys = data_.y();
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const double u = y - ys[i];
      v.add(w_[i] * sinc_kernel(u, R_));
      dy.add(w_[i] * sinc_kernel_deriv(u, R_, 1));
      dyy.add(w_[i] * sinc_kernel_deriv(u, R_, 2));
    }
    JointPartials out;
    out.value = norm_ * v.value();
    out.dy = norm_ * dy.value();
    out.dyy = norm_ * dyy.value();
    return out;
  }

private:
  const LabeledSample& data_;
  Radius R_;
  std::vector<double> w_;
  double norm_ = 0.0;
};

}  // namespace

JointPartials joint_density_partials(const LabeledSample& data, std::span<const double> x,
                                     double y, const EstimatorConfig& cfg) {
  if (!std::isfinite(y)) throw std::invalid_argument("joint_density_partials: non-finite y");
  return ConditionalSlice(data, x, cfg).eval(y);
}

YRange default_y_range(const LabeledSample& data, Radius R) {
  const auto ys = data.y();
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  return {*lo - 3.0 / R.value(), *hi + 3.0 / R.value()};
}

ConditionalModeSet conditional_modes(const LabeledSample& data, std::span<const double> x,
                                     const EstimatorConfig& cfg, const AscentConfig& search,
                                     YRange y_range) {
  if (!(y_range.hi > y_range.lo)) {
    throw std::invalid_argument("conditional_modes: y_range must have positive length");
  }
  const double R = cfg.R.value();
  const std::size_t joint_dim = data.dim() + 1;
  const double grad_tol =
      search.grad_tol > 0.0
          ? search.grad_tol
          : 1e-7 * std::pow(R, static_cast<double>(joint_dim) + 1.0) /
                std::pow(std::numbers::pi, static_cast<double>(joint_dim));
  const double dedupe =
      search.dedupe_radius > 0.0 ? search.dedupe_radius : 0.5 * std::numbers::pi / R;

  const ConditionalSlice slice(data, x, cfg);

  const double spacing = 0.25 * std::numbers::pi / R;
  const std::size_t count =
      2 + static_cast<std::size_t>(std::ceil((y_range.hi - y_range.lo) / spacing));
  std::vector<double> ys(count), dys(count), fs(count);
  double max_f = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double y = y_range.lo + (y_range.hi - y_range.lo) * static_cast<double>(k) /
                                      static_cast<double>(count - 1);
    const JointPartials p = slice.eval(y);
    ys[k] = y;
    dys[k] = p.dy;
    fs[k] = p.value;
    max_f = std::max(max_f, p.value);
  }
  const double ripple_floor = search.ripple_fraction * max_f;

  ConditionalModeSet out;
  out.x.assign(x.begin(), x.end());
  for (std::size_t k = 0; k + 1 < count; ++k) {
    if (!(dys[k] > 0.0 && dys[k + 1] <= 0.0)) continue;

    // Safeguarded Newton on d/dy inside the bracket.
    double lo = ys[k], hi = ys[k + 1];
    double y = 0.5 * (lo + hi);
    JointPartials p = slice.eval(y);
    for (int iter = 0; iter < 80 && std::abs(p.dy) > grad_tol; ++iter) {
      double next = y - p.dy / p.dyy;
      if (!(p.dyy < 0.0) || !(next > lo && next < hi)) {
        next = 0.5 * (lo + hi);  // bisection fallback
      }
      if (p.dy > 0.0) {
        lo = y;
      } else {
        hi = y;
      }
      y = next;
      p = slice.eval(y);
      if (hi - lo < 1e-14 * (1.0 + std::abs(y))) break;
    }

    if (!(std::abs(p.dy) <= grad_tol)) continue;
    if (!(p.dyy < 0.0)) continue;
    if (!(p.value > 0.0 && p.value >= ripple_floor)) continue;
    // Branches closer than the kernel resolution merge; keep the higher one.
    if (!out.modes_y.empty() && y - out.modes_y.back() <= dedupe) {
      const std::size_t last = out.modes_y.size() - 1;
      const double f_last =
          slice.eval(out.modes_y[last]).value;
      if (p.value > f_last) {
        out.modes_y[last] = y;
        out.dy_certificates[last] = p.dy;
        out.dyy_certificates[last] = p.dyy;
      }
      continue;
    }
    out.modes_y.push_back(y);
    out.dy_certificates.push_back(p.dy);
    out.dyy_certificates.push_back(p.dyy);
  }
  return out;
}

ModalCurve modal_curve(const LabeledSample& data, const std::vector<Point>& x_grid,
                       const EstimatorConfig& cfg, const AscentConfig& search,
                       YRange y_range, int threads) {
  if (x_grid.empty()) throw std::invalid_argument("modal_curve: empty grid");
  ModalCurve out;
  out.x_grid = x_grid;
  out.mode_sets.resize(x_grid.size());
  detail::parallel_for(x_grid.size(), threads, [&](std::size_t i) {
    out.mode_sets[i] = conditional_modes(data, x_grid[i], cfg, search, y_range);
  });
  return out;
}

}  // namespace fsmooth
