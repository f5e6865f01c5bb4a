#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fsmooth/bootstrap.hpp"
#include "fsmooth/deconv.hpp"
#include "fsmooth/density.hpp"
#include "fsmooth/markov.hpp"
#include "fsmooth/modal_regression.hpp"
#include "fsmooth/modes.hpp"
#include "fsmooth/regression.hpp"
#include "fsmooth/simulate.hpp"

namespace py = pybind11;
using namespace fsmooth;

namespace {

using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SampleMatrix to_sample(const DArray& arr) {
  const auto buf = arr.request();
  if (buf.ndim == 1) {
    std::vector<double> data(static_cast<const double*>(buf.ptr),
                             static_cast<const double*>(buf.ptr) + buf.shape[0]);
    return SampleMatrix::from_column(std::move(data));
  }
  if (buf.ndim != 2) throw std::invalid_argument("sample must be 1-d or (n, d)");
  const std::size_t n = static_cast<std::size_t>(buf.shape[0]);
  const std::size_t d = static_cast<std::size_t>(buf.shape[1]);
  std::vector<double> data(static_cast<const double*>(buf.ptr),
                           static_cast<const double*>(buf.ptr) + n * d);
  return SampleMatrix(std::move(data), n, d);
}

MarkovSeries to_series(const DArray& arr) {
  const auto buf = arr.request();
  if (buf.ndim == 1) {
    std::vector<double> data(static_cast<const double*>(buf.ptr),
                             static_cast<const double*>(buf.ptr) + buf.shape[0]);
    return MarkovSeries::from_column(std::move(data));
  }
  if (buf.ndim != 2) throw std::invalid_argument("series must be 1-d or (T, d)");
  const std::size_t t = static_cast<std::size_t>(buf.shape[0]);
  const std::size_t d = static_cast<std::size_t>(buf.shape[1]);
  std::vector<double> data(static_cast<const double*>(buf.ptr),
                           static_cast<const double*>(buf.ptr) + t * d);
  return MarkovSeries(std::move(data), t, d);
}

std::vector<Point> to_points(const DArray& arr, std::size_t d) {
  const auto buf = arr.request();
  std::vector<Point> pts;
  if (buf.ndim == 1) {
    if (d != 1) throw std::invalid_argument("points must be (m, d) for d > 1");
    for (py::ssize_t i = 0; i < buf.shape[0]; ++i) {
      pts.push_back({static_cast<const double*>(buf.ptr)[i]});
    }
    return pts;
  }
  if (buf.ndim != 2 || static_cast<std::size_t>(buf.shape[1]) != d) {
    throw std::invalid_argument("points must have shape (m, d)");
  }
  const double* p = static_cast<const double*>(buf.ptr);
  for (py::ssize_t i = 0; i < buf.shape[0]; ++i) {
    pts.emplace_back(p + i * buf.shape[1], p + (i + 1) * buf.shape[1]);
  }
  return pts;
}

NoiseModel make_noise(const std::string& kind, double param, int dim) {
  if (kind == "gaussian") return NoiseModel{GaussianIsotropicNoise{param}, dim};
  if (kind == "laplace") return NoiseModel{LaplaceProductNoise{param}, dim};
  if (kind == "point") {
    return NoiseModel{CustomFourierNoise{[](std::span<const double>) { return 1.0; }}, dim};
  }
  throw std::invalid_argument("noise kind must be 'gaussian', 'laplace', or 'point'");
}

DArray write_vector(const std::vector<double>& v) {
  DArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multivariate smoothing with the Fourier (sinc) kernel";

  m.def(
      "density",
      [](const DArray& sample, const DArray& points, double R, const std::string& clip) {
        const SampleMatrix s = to_sample(sample);
        EstimatorConfig cfg{Radius(R)};
        if (clip == "none") cfg.clip_mode = ClipMode::none;
        else if (clip == "abs") cfg.clip_mode = ClipMode::absolute_value;
        else cfg.clip_mode = ClipMode::max_with_zero;
        const auto evals = density_grid(s, to_points(points, s.cols()), cfg, 0);
        std::vector<double> raw, clipped;
        for (const auto& ev : evals) {
          raw.push_back(ev.raw_value);
          clipped.push_back(ev.clipped_value);
        }
        return py::make_tuple(write_vector(raw), write_vector(clipped));
      },
      py::arg("sample"), py::arg("points"), py::arg("R"), py::arg("clip") = "max0",
      "Density estimate at each point; returns (raw, clipped).");

  m.def(
      "density_gradient",
      [](const DArray& sample, const DArray& point, double R) {
        const SampleMatrix s = to_sample(sample);
        const auto pts = to_points(point, s.cols());
        const auto t = density_derivative_at(s, pts.at(0), 1, EstimatorConfig(Radius(R)));
        return write_vector(t.entries());
      },
      py::arg("sample"), py::arg("point"), py::arg("R"));

  m.def(
      "density_hessian",
      [](const DArray& sample, const DArray& point, double R) {
        const SampleMatrix s = to_sample(sample);
        const auto pts = to_points(point, s.cols());
        const auto t = density_derivative_at(s, pts.at(0), 2, EstimatorConfig(Radius(R)));
        const py::ssize_t d = static_cast<py::ssize_t>(s.cols());
        DArray out({d, d});
        std::copy(t.entries().begin(), t.entries().end(), out.mutable_data());
        return out;
      },
      py::arg("sample"), py::arg("point"), py::arg("R"));

  m.def(
      "select_radius",
      [](std::size_t n, std::size_t d, const std::string& kind, double alpha, double c1,
         double beta) {
        const Smoothness s = kind == "ordinary" ? Smoothness(OrdinarySmooth{beta})
                                                : Smoothness(Supersmooth{alpha, c1});
        return select_radius(s, n, d).value();
      },
      py::arg("n"), py::arg("d") = 1, py::arg("kind") = "supersmooth",
      py::arg("alpha") = 2.0, py::arg("c1") = 0.5, py::arg("beta") = 3.0,
      "Closed-form radius rule (supersmooth: 2 c1 R^alpha = log n; ordinary: "
      "R^(d+2(beta-1)) = n).");

  m.def(
      "select_radius_lscv",
      [](const DArray& sample, const std::vector<double>& candidates) {
        const SampleMatrix s = to_sample(sample);
        std::vector<Radius> c;
        for (double v : candidates) c.emplace_back(v);
        std::vector<double> scores;
        for (const auto& r : c) scores.push_back(lscv_criterion(s, r));
        return py::make_tuple(select_radius_lscv(s, c).value(), write_vector(scores));
      },
      py::arg("sample"), py::arg("candidates"),
      "Least-squares cross-validation; returns (chosen_R, scores).");

  m.def(
      "pointwise_ci",
      [](const DArray& sample, const DArray& points, double R, double tau) {
        const SampleMatrix s = to_sample(sample);
        std::vector<double> est, lower, upper;
        for (const auto& pt : to_points(points, s.cols())) {
          const auto ci = pointwise_ci(s, pt, EstimatorConfig(Radius(R)), tau);
          est.push_back(ci.estimate);
          lower.push_back(ci.lower);
          upper.push_back(ci.upper);
        }
        return py::make_tuple(write_vector(est), write_vector(lower), write_vector(upper));
      },
      py::arg("sample"), py::arg("points"), py::arg("R"), py::arg("tau") = 0.1);

  m.def(
      "bootstrap_band",
      [](const DArray& sample, const DArray& grid, double R, double tau, int replicates,
         std::uint64_t seed, int threads) {
        const SampleMatrix s = to_sample(sample);
        BootstrapPlan plan;
        plan.replicates = replicates;
        plan.seed = seed;
        plan.grid = to_points(grid, s.cols());
        const auto band = bootstrap_band(s, EstimatorConfig(Radius(R)), plan, tau, threads);
        py::dict out;
        out["center"] = write_vector(band.center);
        out["half_width"] = write_vector(band.half_width);
        out["eta"] = band.eta;
        out["level"] = band.level;
        return out;
      },
      py::arg("sample"), py::arg("grid"), py::arg("R"), py::arg("tau") = 0.1,
      py::arg("replicates") = 200, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "regress",
      [](const DArray& x, const DArray& y, const DArray& points, double R) {
        LabeledSample data(to_sample(x),
                           std::vector<double>(y.data(), y.data() + y.size()));
        std::vector<double> m_hat, den, reliable;
        for (const auto& pt : to_points(points, data.dim())) {
          const auto ev = regress_at(data, pt, EstimatorConfig(Radius(R)));
          m_hat.push_back(ev.m_hat);
          den.push_back(ev.denominator);
          reliable.push_back(ev.reliable ? 1.0 : 0.0);
        }
        return py::make_tuple(write_vector(m_hat), write_vector(den),
                              write_vector(reliable));
      },
      py::arg("x"), py::arg("y"), py::arg("points"), py::arg("R"),
      "Kernel regression; returns (m_hat, density, reliable).");

  m.def(
      "regress_ci",
      [](const DArray& x, const DArray& y, const DArray& point, double R, double tau,
         std::size_t sigma_cap) {
        LabeledSample data(to_sample(x),
                           std::vector<double>(y.data(), y.data() + y.size()));
        const auto pts = to_points(point, data.dim());
        const auto ci = regress_ci(data, pts.at(0), EstimatorConfig(Radius(R)), tau,
                                   sigma_cap);
        return py::make_tuple(ci.estimate, ci.lower, ci.upper);
      },
      py::arg("x"), py::arg("y"), py::arg("point"), py::arg("R"), py::arg("tau") = 0.1,
      py::arg("sigma_cap") = 4000);

  m.def(
      "sigma2_hat",
      [](const DArray& x, const DArray& y, double R, std::size_t cap) {
        LabeledSample data(to_sample(x),
                           std::vector<double>(y.data(), y.data() + y.size()));
        return sigma2_hat(data, EstimatorConfig(Radius(R)), cap);
      },
      py::arg("x"), py::arg("y"), py::arg("R"), py::arg("cap") = 4000);

  m.def(
      "deconv",
      [](const DArray& sample, const DArray& thetas, const std::string& noise_kind,
         double noise_param, double R, int order) {
        const SampleMatrix s = to_sample(sample);
        const NoiseModel noise = make_noise(noise_kind, noise_param,
                                            static_cast<int>(s.cols()));
        const DeconvEvaluator ev(s, noise, EstimatorConfig(Radius(R)));
        std::vector<double> vals;
        for (const auto& pt : to_points(thetas, s.cols())) {
          if (order == 0) {
            vals.push_back(ev.value(pt));
          } else if (order == 1 && s.cols() == 1) {
            vals.push_back(ev.derivative(pt, 1).at(0));
          } else {
            throw std::invalid_argument("order must be 0, or 1 with 1-d data");
          }
        }
        return write_vector(vals);
      },
      py::arg("sample"), py::arg("thetas"), py::arg("noise_kind") = "gaussian",
      py::arg("noise_param") = 0.1, py::arg("R") = 5.0, py::arg("order") = 0,
      "Mixing-density estimate (or its first derivative) under known noise.");

  m.def(
      "deconv_mc",
      [](const DArray& sample, const DArray& thetas, double h, double R, int draws,
         std::uint64_t seed, int order) {
        const SampleMatrix s = to_sample(sample);
        std::vector<double> vals, errs;
        for (const auto& pt : to_points(thetas, 1)) {
          const auto ev = order == 0
                              ? deconv_at_mc(s, pt[0], h, Radius(R), draws, seed)
                              : deconv_derivative_mc(s, pt[0], h, Radius(R), draws, seed);
          vals.push_back(ev.raw_value);
          errs.push_back(ev.mc_std_error.value_or(0.0));
        }
        return py::make_tuple(write_vector(vals), write_vector(errs));
      },
      py::arg("sample"), py::arg("thetas"), py::arg("h") = 0.1, py::arg("R") = 5.0,
      py::arg("draws") = 1, py::arg("seed") = 0, py::arg("order") = 0);

  m.def(
      "find_modes",
      [](const DArray& sample, double R, py::object grid_lo, py::object grid_hi,
         std::size_t grid_count, int threads) {
        const SampleMatrix s = to_sample(sample);
        AscentConfig ascent;
        if (!grid_lo.is_none() && !grid_hi.is_none()) {
          GridStartSpec gs;
          gs.lo = py::cast<std::vector<double>>(grid_lo);
          gs.hi = py::cast<std::vector<double>>(grid_hi);
          gs.counts.assign(s.cols(), grid_count);
          ascent.grid_starts = gs;
        }
        const ModeSet modes = find_modes_density(s, EstimatorConfig(Radius(R)), ascent,
                                                 threads);
        const py::ssize_t k = static_cast<py::ssize_t>(modes.k);
        const py::ssize_t d = static_cast<py::ssize_t>(s.cols());
        DArray pts({k, d});
        for (py::ssize_t i = 0; i < k; ++i) {
          std::copy(modes.modes[static_cast<std::size_t>(i)].begin(),
                    modes.modes[static_cast<std::size_t>(i)].end(),
                    pts.mutable_data() + i * d);
        }
        py::dict out;
        out["modes"] = pts;
        out["values"] = write_vector(modes.values);
        out["gradient_norms"] = write_vector(modes.gradient_norms);
        out["hessian_top_eigs"] = write_vector(modes.hessian_top_eigs);
        out["k"] = modes.k;
        return out;
      },
      py::arg("sample"), py::arg("R"), py::arg("grid_lo") = py::none(),
      py::arg("grid_hi") = py::none(), py::arg("grid_count") = 61, py::arg("threads") = 0,
      "Local modes of the density estimate (starts default to the data points).");

  m.def(
      "hausdorff",
      [](const DArray& a, const DArray& b) {
        const auto pa = a.request();
        const std::size_t d = pa.ndim == 1 ? 1 : static_cast<std::size_t>(pa.shape[1]);
        return hausdorff(to_points(a, d), to_points(b, d));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "conditional_modes",
      [](const DArray& x, const DArray& y, const DArray& at, double R, double y_lo,
         double y_hi) {
        LabeledSample data(to_sample(x),
                           std::vector<double>(y.data(), y.data() + y.size()));
        const auto pts = to_points(at, data.dim());
        YRange range{y_lo, y_hi};
        if (y_lo >= y_hi) range = default_y_range(data, Radius(R));
        const auto ms = conditional_modes(data, pts.at(0), EstimatorConfig(Radius(R)),
                                          AscentConfig{}, range);
        return py::make_tuple(write_vector(ms.modes_y), write_vector(ms.dy_certificates),
                              write_vector(ms.dyy_certificates));
      },
      py::arg("x"), py::arg("y"), py::arg("at"), py::arg("R"), py::arg("y_lo") = 0.0,
      py::arg("y_hi") = 0.0,
      "Conditional modes in y at a predictor point; default range covers the data.");

  m.def(
      "transition",
      [](const DArray& series, const DArray& x, const DArray& y_grid, double R,
         const std::vector<std::size_t>& response_cols, int threads) {
        const MarkovSeries ms = to_series(series);
        const std::size_t dy = response_cols.empty() ? ms.dim() : response_cols.size();
        const auto pts = to_points(y_grid, dy);
        const auto evals =
            transition_grid(ms, std::vector<double>(x.data(), x.data() + x.size()), pts,
                            EstimatorConfig(Radius(R)), response_cols, threads);
        std::vector<double> vals, reliable;
        for (const auto& ev : evals) {
          vals.push_back(ev.value);
          reliable.push_back(ev.reliable ? 1.0 : 0.0);
        }
        return py::make_tuple(write_vector(vals), write_vector(reliable));
      },
      py::arg("series"), py::arg("x"), py::arg("y_grid"), py::arg("R"),
      py::arg("response_cols") = std::vector<std::size_t>{}, py::arg("threads") = 0,
      "Markov transition density on a successor grid.");

  m.def(
      "simulate_ar1",
      [](std::size_t length, double rho, double x0, std::uint64_t seed) {
        const MarkovSeries s = simulate_ar1(length, rho, x0, seed);
        std::vector<double> v(length);
        for (std::size_t i = 0; i < length; ++i) v[i] = s(i, 0);
        return write_vector(v);
      },
      py::arg("length"), py::arg("rho"), py::arg("x0") = 0.5, py::arg("seed") = 0);

  m.def(
      "generate_example",
      [](int id, std::size_t n, std::uint64_t seed,
         const std::map<std::string, double>& overrides) {
        ExampleSpec spec;
        if (id < 1 || id > 7) throw std::invalid_argument("example id must be 1..7");
        spec.id = static_cast<ExampleId>(id);
        spec.n = n;
        spec.seed = seed;
        spec.overrides = overrides;
        const GeneratedData data = generate(spec);
        py::dict out;
        if (std::holds_alternative<LabeledSample>(data)) {
          const auto& ls = std::get<LabeledSample>(data);
          const py::ssize_t rows = static_cast<py::ssize_t>(ls.size());
          const py::ssize_t cols = static_cast<py::ssize_t>(ls.dim());
          DArray x({rows, cols});
          std::copy(ls.x().data().begin(), ls.x().data().end(), x.mutable_data());
          out["x"] = x;
          out["y"] = write_vector(std::vector<double>(ls.y().begin(), ls.y().end()));
        } else if (std::holds_alternative<SampleMatrix>(data)) {
          const auto& sm = std::get<SampleMatrix>(data);
          const py::ssize_t rows = static_cast<py::ssize_t>(sm.rows());
          const py::ssize_t cols = static_cast<py::ssize_t>(sm.cols());
          DArray x({rows, cols});
          std::copy(sm.data().begin(), sm.data().end(), x.mutable_data());
          out["x"] = x;
        } else {
          const auto& sr = std::get<MarkovSeries>(data);
          const py::ssize_t rows = static_cast<py::ssize_t>(sr.length());
          const py::ssize_t cols = static_cast<py::ssize_t>(sr.dim());
          DArray x({rows, cols});
          for (std::size_t i = 0; i < sr.length(); ++i) {
            std::copy(sr.row(i).begin(), sr.row(i).end(),
                      x.mutable_data() + static_cast<py::ssize_t>(i) * cols);
          }
          out["x"] = x;
        }
        return out;
      },
      py::arg("id"), py::arg("n"), py::arg("seed") = 0,
      py::arg("overrides") = std::map<std::string, double>{},
      "Seeded draw from one of the worked-example generators.");

  m.def(
      "gaussian_nw",
      [](const DArray& x, const DArray& y, const DArray& point, double h) {
        LabeledSample data(to_sample(x),
                           std::vector<double>(y.data(), y.data() + y.size()));
        const auto pts = to_points(point, data.dim());
        return gaussian_nw_baseline(data, pts.at(0), h);
      },
      py::arg("x"), py::arg("y"), py::arg("point"), py::arg("h"));

  m.def(
      "mise",
      [](const DArray& est, const DArray& truth, const DArray& weights) {
        return mise(std::span<const double>(est.data(), static_cast<std::size_t>(est.size())),
                    std::span<const double>(truth.data(), static_cast<std::size_t>(truth.size())),
                    std::span<const double>(weights.data(),
                                            static_cast<std::size_t>(weights.size())));
      },
      py::arg("estimate"), py::arg("truth"), py::arg("weights"));
}
