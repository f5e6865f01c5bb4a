#include "fsmooth/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fsmooth/density.hpp"
#include "fsmooth/linalg.hpp"
#include "fsmooth/util.hpp"

namespace fsmooth {

namespace detail {

namespace {

constexpr double kArmijo = 1e-4;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

struct Candidate {
  Point x;
  double value = 0.0;
  double grad_norm = 0.0;
  double top_eig = 0.0;
  bool converged = false;
  double start_value = 0.0;
};

}  // namespace

std::vector<Point> resolve_starts(const SampleMatrix& sample, const AscentConfig& ascent) {
  if (ascent.explicit_starts.has_value()) {
    for (const auto& p : *ascent.explicit_starts) {
      if (p.size() != sample.cols()) {
        throw std::invalid_argument("find_modes: start dimension mismatch");
      }
    }
    return *ascent.explicit_starts;
  }
  if (ascent.grid_starts.has_value()) {
    const auto& g = *ascent.grid_starts;
    const std::size_t d = sample.cols();
    if (g.lo.size() != d || g.hi.size() != d || g.counts.size() != d) {
      throw std::invalid_argument("find_modes: grid start dimension mismatch");
    }
    std::vector<Point> pts;
    std::size_t total = 1;
    for (std::size_t c : g.counts) total *= std::max<std::size_t>(c, 1);
    pts.reserve(total);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t p = 0; p < total; ++p) {
      Point pt(d);
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t c = std::max<std::size_t>(g.counts[j], 1);
        pt[j] = c == 1 ? 0.5 * (g.lo[j] + g.hi[j])
                       : g.lo[j] + (g.hi[j] - g.lo[j]) * static_cast<double>(idx[j]) /
                             static_cast<double>(c - 1);
      }
      pts.push_back(std::move(pt));
      for (std::size_t j = d; j-- > 0;) {
        if (++idx[j] < std::max<std::size_t>(g.counts[j], 1)) break;
        idx[j] = 0;
      }
    }
    return pts;
  }
  std::vector<Point> pts;
  pts.reserve(sample.rows());
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    const auto row = sample.row(i);
    pts.emplace_back(row.begin(), row.end());
  }
  return pts;
}

ModeSet ascend_modes(const std::vector<Point>& starts, std::size_t dim, Radius R,
                     const AscentConfig& ascent, const ValueGradFn& eval,
                     const HessianFn& hessian, int threads) {
  if (ascent.max_iter < 1) throw std::invalid_argument("find_modes: need max_iter >= 1");
  const double grad_tol =
      ascent.grad_tol > 0.0
          ? ascent.grad_tol
          : 1e-7 * std::pow(R.value(), static_cast<double>(dim) + 1.0) /
                std::pow(std::numbers::pi, static_cast<double>(dim));
  const double dedupe =
      ascent.dedupe_radius > 0.0 ? ascent.dedupe_radius
                                 : 0.5 * std::numbers::pi / R.value();
  const double step_cap = 0.25 * std::numbers::pi / R.value();
  const double shrink = ascent.step_shrink;
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw std::invalid_argument("find_modes: step_shrink must lie in (0, 1)");
  }

  std::vector<Candidate> results(starts.size());
  detail::parallel_for(starts.size(), threads, [&](std::size_t s) {
    Candidate cand;
    cand.x = starts[s];
    std::vector<double> grad(dim), trial(dim), hess;
    double fx = 0.0;
    eval(cand.x, &fx, grad.data());
    cand.start_value = fx;

    for (int iter = 0; iter < ascent.max_iter; ++iter) {
      const double gn = norm2(grad);
      if (gn <= grad_tol) break;

      // Newton direction when the local curvature certifies a maximum;
      // otherwise plain gradient with a quarter-lobe step cap. Either way the
      // step is accepted only on Armijo sufficient increase, so the value
      // sequence is nondecreasing.
      std::vector<double> dir(grad.begin(), grad.end());
      double t = step_cap / gn;
      hessian(cand.x, &hess);
      if (symmetric_eig_max(hess, static_cast<int>(dim)) < 0.0) {
        std::vector<double> neg_h(hess.size());
        for (std::size_t j = 0; j < hess.size(); ++j) neg_h[j] = -hess[j];
        std::vector<double> newton;
        if (solve_dense(neg_h, grad, static_cast<int>(dim), &newton)) {
          double slope = 0.0;
          for (std::size_t j = 0; j < dim; ++j) slope += newton[j] * grad[j];
          if (slope > 0.0) {
            dir = std::move(newton);
            t = 1.0;
          }
        }
      }

      double slope = 0.0;
      for (std::size_t j = 0; j < dim; ++j) slope += dir[j] * grad[j];
      bool moved = false;
      for (int halving = 0; halving < 80; ++halving) {
        for (std::size_t j = 0; j < dim; ++j) trial[j] = cand.x[j] + t * dir[j];
        double ft = 0.0;
        eval(trial, &ft, nullptr);
        if (ft >= fx + kArmijo * t * slope) {
          cand.x = trial;
          fx = ft;
          moved = true;
          break;
        }
        t *= shrink;
        if (t * norm2(dir) < 1e-15) break;
      }
      if (!moved) break;
      eval(cand.x, &fx, grad.data());
    }

    cand.value = fx;
    cand.grad_norm = norm2(grad);
    if (cand.grad_norm <= grad_tol) {
      hessian(cand.x, &hess);
      cand.top_eig = symmetric_eig_max(hess, static_cast<int>(dim));
      cand.converged = cand.top_eig < 0.0 && fx > 0.0;
    }
    results[s] = std::move(cand);
  });

  double max_start_value = 0.0;
  for (const auto& c : results) max_start_value = std::max(max_start_value, c.start_value);
  const double ripple_floor = ascent.ripple_fraction * max_start_value;

  std::vector<std::size_t> order;
  std::size_t converged_count = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].converged) ++converged_count;
    if (results[i].converged && results[i].value >= ripple_floor) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return results[a].value > results[b].value;
  });

  ModeSet out;
  out.starts_used = starts.size();
  out.converged = converged_count;
  for (std::size_t idx : order) {
    bool duplicate = false;
    for (const auto& kept : out.modes) {
      if (dist2(results[idx].x, kept) <= dedupe) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    out.modes.push_back(results[idx].x);
    out.values.push_back(results[idx].value);
    out.gradient_norms.push_back(results[idx].grad_norm);
    out.hessian_top_eigs.push_back(results[idx].top_eig);
  }
  out.k = out.modes.size();
  return out;
}

}  // namespace detail

ModeSet find_modes_density(const SampleMatrix& sample, const EstimatorConfig& cfg,
                           const AscentConfig& ascent, int threads) {
  if (sample.rows() < 1) throw std::invalid_argument("find_modes_density: empty sample");
  const std::vector<Point> starts = detail::resolve_starts(sample, ascent);
  const std::size_t d = sample.cols();
  const auto eval = [&](std::span<const double> x, double* v, double* g) {
    if (g == nullptr) {
      density_full_eval(sample, x, cfg.R, v, nullptr, nullptr);
    } else {
      density_value_gradient(sample, x, cfg.R, v, g);
    }
  };
  const auto hess = [&](std::span<const double> x, std::vector<double>* h) {
    density_full_eval(sample, x, cfg.R, nullptr, nullptr, h);
  };
  return detail::ascend_modes(starts, d, cfg.R, ascent, eval, hess, threads);
}

ModeSet find_modes_mixing(const SampleMatrix& sample, const NoiseModel& noise,
                          const EstimatorConfig& cfg, const AscentConfig& ascent,
                          int threads) {
  if (sample.rows() < 1) throw std::invalid_argument("find_modes_mixing: empty sample");
  const std::vector<Point> starts = detail::resolve_starts(sample, ascent);
  const std::size_t d = sample.cols();
  const DeconvEvaluator ev(sample, noise, cfg);
  const auto eval = [&](std::span<const double> x, double* v, double* g) {
    if (g == nullptr) {
      if (v != nullptr) *v = ev.value(x);
    } else {
      ev.value_gradient(x, v, g);
    }
  };
  const auto hess = [&](std::span<const double> x, std::vector<double>* h) {
    const DerivativeTensor t = ev.derivative(x, 2);
    *h = t.entries();
  };
  return detail::ascend_modes(starts, d, cfg.R, ascent, eval, hess, threads);
}

double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty point set");
  const auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        if (p.size() != q.size()) {
          throw std::invalid_argument("hausdorff: dimension mismatch");
        }
        double s = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
        best = std::min(best, std::sqrt(s));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace fsmooth
