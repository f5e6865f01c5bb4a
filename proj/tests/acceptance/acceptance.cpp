// End-to-end acceptance runs: each check prints one PASS/FAIL line with the
// measured quantity and the pinned threshold, and the process exits nonzero
// if any check failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "fsmooth/bootstrap.hpp"
#include "fsmooth/deconv.hpp"
#include "fsmooth/density.hpp"
#include "fsmooth/markov.hpp"
#include "fsmooth/modal_regression.hpp"
#include "fsmooth/modes.hpp"
#include "fsmooth/quadrature.hpp"
#include "fsmooth/regression.hpp"
#include "fsmooth/rng.hpp"
#include "fsmooth/simulate.hpp"
#include "fsmooth/util.hpp"

using namespace fsmooth;
using std::numbers::pi;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_criterion_start;

void report(const std::string& id, bool pass, const std::string& detail) {
  const double seconds = std::chrono::duration_cast<std::chrono::duration<double>>(
                             std::chrono::steady_clock::now() - g_criterion_start)
                             .count();
  std::printf("[acceptance] %-38s %s  [%6.1f s]  (%s)\n", id.c_str(),
              pass ? "PASS" : "FAIL", seconds, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }

SampleMatrix normal_sample(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_normal();
  return SampleMatrix::from_column(std::move(v));
}

std::vector<Point> grid1d(double lo, double hi, std::size_t count) {
  std::vector<Point> g;
  for (std::size_t i = 0; i < count; ++i) {
    g.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1)});
  }
  return g;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// ---------------------------------------------------------------------------
// 1. Two-predictor regression benchmark against the product-Gaussian baseline.
// The evaluation point has vanishing design density, which makes single
// replicates heavy-tailed ratios; the replicate median is the stable center
// of the histogram this benchmark describes.
void criterion_1() {
  const int reps = 1000;
  std::vector<double> fourier(reps), gauss(reps);
  detail::parallel_for(reps, 0, [&](std::size_t rep) {
    ExampleSpec spec;
    spec.id = ExampleId::ex1;
    spec.n = 1000;
    spec.seed = 100000 + rep;
    const auto data = std::get<LabeledSample>(generate(spec));
    const EstimatorConfig cfg{Radius(9.0)};
    fourier[rep] = regress_at(data, std::vector<double>{1.0, 2.0}, cfg).m_hat;
    gauss[rep] = gaussian_nw_baseline(data, std::vector<double>{1.0, 2.0},
                                      std::pow(1000.0, -1.0 / 6.0));
  });
  double mean = 0.0;
  for (double v : fourier) mean += v;
  mean /= reps;
  const double f_center = median(fourier);
  const double g_center = median(gauss);
  const double f_off = std::abs(f_center + 5.0);
  const double g_off = std::abs(g_center + 5.0);
  const bool pass = f_off <= 0.3 && g_off >= 3.0 * f_off;
  report("C1 regression benchmark", pass,
         fmt("fourier median=%.3f (raw mean=%.2f), gaussian median=%.3f, "
             "offsets %.3f vs %.3f (need <=0.3 and >=3x)",
             f_center, mean, g_center, f_off, g_off));
}

// ---------------------------------------------------------------------------
// 2. Density accuracy and the near-1/n rate.
void criterion_2() {
  const SampleMatrix sample = normal_sample(10000, 4242);
  const Radius R = select_radius(Supersmooth{2.0, 0.5}, 10000, 1);
  const EstimatorConfig cfg{R};
  double sup = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double x = -3.0 + 6.0 * i / 300.0;
    sup = std::max(sup,
                   std::abs(density_at(sample, std::vector<double>{x}, cfg).raw_value -
                            phi(x)));
  }

  const auto grid = grid1d(-3.0, 3.0, 61);
  std::vector<double> weights(61, 6.0 / 60.0), truth;
  for (const auto& pt : grid) truth.push_back(phi(pt[0]));
  const auto replicate_ise = [&](std::size_t n, std::uint64_t seed) {
    const SampleMatrix s = normal_sample(n, seed);
    const EstimatorConfig c{select_radius(Supersmooth{2.0, 0.5}, n, 1)};
    std::vector<double> est;
    for (const auto& pt : grid) est.push_back(density_at(s, pt, c).raw_value);
    return mise(est, truth, weights);
  };
  const int reps = 50;
  std::vector<double> small_ise(reps), large_ise(reps);
  detail::parallel_for(reps, 0, [&](std::size_t rep) {
    small_ise[rep] = replicate_ise(1000, 52000 + rep);
    large_ise[rep] = replicate_ise(4000, 53000 + rep);
  });
  double s_bar = 0.0, l_bar = 0.0;
  for (int i = 0; i < reps; ++i) {
    s_bar += small_ise[i];
    l_bar += large_ise[i];
  }
  const double ratio = l_bar / s_bar;
  const bool pass = sup <= 0.03 && ratio <= 0.5;
  report("C2 density accuracy + rate", pass,
         fmt("sup|f-phi|=%.4f (<=0.03), ISE ratio n=4000/n=1000 = %.3f (<=0.5)", sup,
             ratio));
}

// ---------------------------------------------------------------------------
// 3. Deterministic truncation-bias envelope of the kernel-smoothed normal.
void criterion_3() {
  bool pass = true;
  std::string detail;
  double prev = 1e300;
  for (double r : {2.0, 3.0, 4.0}) {
    const Radius R(r);
    const int panels = static_cast<int>(std::ceil(20.0 * r));
    const double m_r = integrate_composite(
                           [&](double t) { return sinc_kernel(-t, R) * phi(t); }, -10.0,
                           10.0, panels) /
                       pi;
    const double err = std::abs(m_r - phi(0.0));
    const double envelope = 2.0 * std::exp(-0.5 * r * r);
    pass = pass && err <= envelope && err < prev;
    detail += fmt("R=%.0f err=%.2e<=%.2e ", r, err, envelope);
    prev = err;
  }
  report("C3 truncation-bias envelope", pass, detail + "monotone");
}

// ---------------------------------------------------------------------------
// 4. Reproducing-kernel identity and the closed-form cross-validation score.
void criterion_4() {
  double worst_identity = 0.0;
  for (double gap : {0.0, 0.3, 2.0}) {
    const double a = -gap / 2.0, b = gap / 2.0;
    for (double r : {2.0, 3.5}) {
      const Radius R(r);
      const double T = 2000.0;
      const double body = integrate_composite(
          [&](double x) { return sinc_kernel(x - a, R) * sinc_kernel(x - b, R); }, -T, T,
          16000, 8);
      double tail;
      if (a == b) {
        tail = 1.0 / (T - a) + 1.0 / (T + a);
      } else {
        tail = (std::log((T - b) / (T - a)) + std::log((T + a) / (T + b))) / (a - b);
      }
      const double lhs = body + 0.5 * std::cos(r * (a - b)) * tail;
      worst_identity = std::max(worst_identity, std::abs(lhs - pi * sinc_kernel(a - b, R)));
    }
  }

  const std::size_t n = 20;
  const SampleMatrix sample = normal_sample(n, 12);
  const Radius R(2.0);
  const EstimatorConfig cfg{R};
  const double T = 2000.0;
  const double body = integrate_composite(
      [&](double x) {
        const double f = density_at(sample, std::vector<double>{x}, cfg).raw_value;
        return f * f;
      },
      -T, T, 16000, 8);
  double tails = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sample(i, 0), b = sample(j, 0);
      double tail;
      if (a == b) {
        tail = 1.0 / (T - a) + 1.0 / (T + a);
      } else {
        tail = (std::log((T - b) / (T - a)) + std::log((T + a) / (T + b))) / (a - b);
      }
      tails += 0.5 * std::cos(R.value() * (a - b)) * tail;
    }
  }
  const double nn = static_cast<double>(n);
  const double int_f2 = body + tails / (nn * nn * pi * pi);
  double loo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) s += sinc_kernel(sample(i, 0) - sample(j, 0), R);
    }
    loo += s / ((nn - 1.0) * pi);
  }
  loo *= 2.0 / nn;
  const double lscv_gap = std::abs(lscv_criterion(sample, R) - (int_f2 - loo));

  const bool pass = worst_identity <= 1e-6 && lscv_gap <= 1e-6;
  report("C4 reproducing identities", pass,
         fmt("identity err=%.2e, lscv closed-vs-quadrature err=%.2e (<=1e-6)",
             worst_identity, lscv_gap));
}

// ---------------------------------------------------------------------------
// 5. Derivative tensors against central finite differences, d in {1,2,3}.
void criterion_5() {
  double worst = 0.0;
  for (std::size_t d : {1, 2, 3}) {
    CounterRng rng(1000 + d, 0);
    const std::size_t n = 300;
    std::vector<double> data(n * d);
    for (auto& v : data) v = rng.next_normal();
    const SampleMatrix sample(std::move(data), n, d);
    const EstimatorConfig cfg{Radius(3.0)};
    CounterRng prng(2000 + d, 0);
    for (int p = 0; p < 20; ++p) {
      std::vector<double> x(d);
      for (auto& v : x) v = prng.next_uniform(-2.0, 2.0);
      const auto grad = density_derivative_at(sample, x, 1, cfg);
      const auto hess = density_derivative_at(sample, x, 2, cfg);
      const double h = 1e-5;
      for (std::size_t u = 0; u < d; ++u) {
        auto xp = x, xm = x;
        xp[u] += h;
        xm[u] -= h;
        const double fd = (density_at(sample, xp, cfg).raw_value -
                           density_at(sample, xm, cfg).raw_value) /
                          (2.0 * h);
        worst = std::max(worst, std::abs(grad.at(static_cast<int>(u)) - fd) /
                                    std::max(std::abs(fd), 1e-6));
        for (std::size_t v = u; v < d; ++v) {
          auto yp = x, ym = x;
          yp[v] += h;
          ym[v] -= h;
          const double fd2 = (density_derivative_at(sample, yp, 1, cfg).at(
                                  static_cast<int>(u)) -
                              density_derivative_at(sample, ym, 1, cfg).at(
                                  static_cast<int>(u))) /
                             (2.0 * h);
          worst = std::max(worst,
                           std::abs(hess.at(static_cast<int>(u), static_cast<int>(v)) - fd2) /
                               std::max(std::abs(fd2), 1e-6));
        }
      }
    }
  }
  report("C5 derivative correctness", worst <= 1e-5,
         fmt("worst rel err vs finite differences = %.2e (<=1e-5)", worst));
}

// ---------------------------------------------------------------------------
// 6. Pointwise interval coverage. The radius constant is pinned so the
// plug-in variance sits in its asymptotic window (the R^alpha = C log n rule
// leaves C free).
void criterion_6() {
  const int reps = 500;
  std::vector<int> covered(reps);
  detail::parallel_for(reps, 0, [&](std::size_t rep) {
    const SampleMatrix sample = normal_sample(2000, 60000 + rep);
    const Radius R = select_radius(Supersmooth{2.0, 0.05}, 2000, 1);
    const auto ci = pointwise_ci(sample, std::vector<double>{0.0}, EstimatorConfig(R), 0.1);
    covered[rep] = (ci.lower <= phi(0.0) && phi(0.0) <= ci.upper) ? 1 : 0;
  });
  int c = 0;
  for (int v : covered) c += v;
  const double coverage = static_cast<double>(c) / reps;
  report("C6 pointwise interval coverage", coverage >= 0.85 && coverage <= 0.95,
         fmt("coverage=%.3f over 500 replicates (in [0.85, 0.95])", coverage));
}

// ---------------------------------------------------------------------------
// 7. Uniform bootstrap band coverage over 50 seeded replications.
void criterion_7() {
  const int reps = 50;
  std::vector<int> covered(reps);
  detail::parallel_for(reps, 0, [&](std::size_t rep) {
    const SampleMatrix sample = normal_sample(2000, 70000 + rep);
    const Radius R = select_radius(Supersmooth{2.0, 0.5}, 2000, 1);
    BootstrapPlan plan;
    plan.replicates = 200;
    plan.seed = 7000 + rep;
    plan.grid = grid1d(-3.0, 3.0, 61);
    const BandEstimate band = bootstrap_band(sample, EstimatorConfig(R), plan, 0.1, 1);
    bool all = true;
    for (std::size_t g = 0; g < band.grid.size(); ++g) {
      const double t = phi(band.grid[g][0]);
      if (t < band.center[g] - band.half_width[g] ||
          t > band.center[g] + band.half_width[g]) {
        all = false;
      }
    }
    covered[rep] = all ? 1 : 0;
  });
  int c = 0;
  for (int v : covered) c += v;
  const double frac = static_cast<double>(c) / reps;
  report("C7 bootstrap band coverage", frac >= 0.80,
         fmt("full-grid coverage in %.0f%% of 50 replications (>=80%%)", 100.0 * frac));
}

// ---------------------------------------------------------------------------
// 8. Deconvolution derivative zero-crossings near the mixing modes.
void criterion_8() {
  int ok = 0;
  const int seeds = 20;
  std::vector<int> results(seeds);
  detail::parallel_for(seeds, 0, [&](std::size_t seed) {
    ExampleSpec spec;
    spec.id = ExampleId::ex4;
    spec.n = 10000;
    spec.seed = 800 + seed;
    const auto sample = std::get<SampleMatrix>(generate(spec));
    const Radius R(5.0);
    double prev_t = -4.0;
    double prev = deconv_derivative_mc(sample, prev_t, 0.1, R, 1, 800 + seed).raw_value;
    std::vector<double> crossings;
    for (double t = -3.95; t <= 4.0; t += 0.05) {
      const double cur = deconv_derivative_mc(sample, t, 0.1, R, 1, 800 + seed).raw_value;
      if (prev > 0.0 && cur <= 0.0) {
        crossings.push_back(prev_t + 0.05 * prev / (prev - cur));
      }
      prev = cur;
      prev_t = t;
    }
    double lo = 1e9, hi = 1e9;
    for (double c : crossings) {
      lo = std::min(lo, std::abs(c + 2.0));
      hi = std::min(hi, std::abs(c - 2.0));
    }
    results[seed] = (lo < 0.15 && hi < 0.15) ? 1 : 0;
  });
  for (int v : results) ok += v;
  report("C8 deconvolution modes", ok >= 18,
         fmt("crossings within 0.15 of +-2 in %d/20 seeds (>=18)", ok));
}

// ---------------------------------------------------------------------------
// 9. Mode clustering on the two-component mixture.
void criterion_9() {
  // True mixture modes by bisection on the density derivative.
  const auto g_prime = [](double t) {
    const auto comp = [&](double m) { return std::exp(-(t - m) * (t - m) / 0.72); };
    return 0.6 * comp(-2.0) * (-(t + 2.0) / 0.36) + 0.4 * comp(2.0) * (-(t - 2.0) / 0.36);
  };
  const auto root = [&](double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g_prime(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double m1 = root(-3.0, -1.0), m2 = root(1.0, 3.0);

  const int seeds = 100;
  std::vector<int> k2(seeds);
  std::vector<double> haus(seeds);
  detail::parallel_for(seeds, 0, [&](std::size_t seed) {
    ExampleSpec spec;
    spec.id = ExampleId::ex4;
    spec.n = 5000;
    spec.seed = 900 + seed;
    spec.overrides["h"] = 0.0;  // sample the mixture directly
    const auto sample = std::get<SampleMatrix>(generate(spec));
    const Radius R = select_radius(Supersmooth{2.0, 0.18}, 5000, 1);
    AscentConfig ascent;
    ascent.grid_starts = GridStartSpec{{-4.5}, {4.5}, {61}};
    const ModeSet modes = find_modes_density(sample, EstimatorConfig(R), ascent, 1);
    k2[seed] = modes.k == 2 ? 1 : 0;
    haus[seed] = modes.k >= 1 ? hausdorff(modes.modes, {{m1}, {m2}}) : 1e9;
  });
  int c = 0;
  for (int v : k2) c += v;
  const double med = median(haus);
  report("C9 mode clustering", c >= 95 && med <= 0.1,
         fmt("k=2 in %d/100 seeds (>=95), median hausdorff=%.4f (<=0.1; true modes "
             "%.4f, %.4f)",
             c, med, m1, m2));
}

// ---------------------------------------------------------------------------
// 10. Modal regression branches against +-x^2. Where the estimate is bimodal,
// the outer modes are matched to the branches.
void criterion_10() {
  ExampleSpec spec;
  spec.id = ExampleId::ex5;
  spec.n = 10000;
  spec.seed = 1010;
  const auto data = std::get<LabeledSample>(generate(spec));
  const EstimatorConfig cfg{Radius(7.0)};

  std::vector<Point> grid;
  for (double ax : {1.0, -1.0}) {
    for (double x0 = 0.5; x0 <= 2.0001; x0 += 0.0625) grid.push_back({ax * x0});
  }
  const ModalCurve curve =
      modal_curve(data, grid, cfg, AscentConfig{}, YRange{-4.8, 4.8}, 0);

  // True conditional mode set of the mixture, for the diagnostic readout.
  const auto true_modes = [](double x) {
    const double mu = x * x, s2 = 0.36;
    const auto ddy = [&](double y) {
      return -(y - mu) / s2 * std::exp(-(y - mu) * (y - mu) / (2 * s2)) -
             (y + mu) / s2 * std::exp(-(y + mu) * (y + mu) / (2 * s2));
    };
    std::vector<Point> modes;
    double py = -5.0, pv = ddy(-5.0);
    for (double y = -4.99; y <= 5.0; y += 0.01) {
      const double cv = ddy(y);
      if (pv > 0.0 && cv <= 0.0) {
        double lo = py, hi = y;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          (ddy(mid) > 0.0 ? lo : hi) = mid;
        }
        modes.push_back({0.5 * (lo + hi)});
      }
      pv = cv;
      py = y;
    }
    return modes;
  };

  double sq = 0.0, sq_mid = 0.0;
  std::size_t pairs = 0, pairs_mid = 0, bimodal = 0, outer = 0, outer_bimodal = 0;
  std::vector<double> haus;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double x = grid[g][0];
    const auto& modes = curve.mode_sets[g].modes_y;
    if (!modes.empty()) {
      std::vector<Point> est;
      for (double m : modes) est.push_back({m});
      haus.push_back(hausdorff(est, true_modes(x)));
    }
    if (std::abs(x) >= 0.9) {
      ++outer;
      if (modes.size() >= 2) ++outer_bimodal;
    }
    if (modes.size() < 2) continue;
    ++bimodal;
    const double xx = x * x;
    const double e_lo = modes.front() + xx, e_hi = modes.back() - xx;
    sq += e_lo * e_lo + e_hi * e_hi;
    pairs += 2;
    if (std::abs(x) >= 1.0 && std::abs(x) <= 1.5) {
      sq_mid += e_lo * e_lo + e_hi * e_hi;
      pairs_mid += 2;
    }
  }
  const double rms = std::sqrt(sq / static_cast<double>(pairs));
  const double rms_mid = std::sqrt(sq_mid / static_cast<double>(pairs_mid));
  const bool branches_present = outer_bimodal >= (outer * 9) / 10;
  // Known red: near the pitchfork the +-x^2 oracle differs from the true
  // conditional modes by up to ~0.4, and the uniform design's edge biases the
  // outermost slices, so the full-domain RMS cannot reach 0.15 at n=1e4, R=7.
  report("C10 modal regression branches", rms <= 0.15 && branches_present,
         fmt("branch RMS=%.3f vs +-x^2 over +-[0.5,2] (<=0.15; %zu bimodal slices, "
             "bimodal where expected %zu/%zu); diagnostics: RMS=%.3f on |x| in "
             "[1,1.5], median hausdorff vs true mode set=%.3f",
             rms, bimodal, outer_bimodal, outer, rms_mid, median(haus)));
}

// ---------------------------------------------------------------------------
// 11. Markov transition density against the exact conditionals.
void criterion_11() {
  const MarkovSeries series = simulate_ar1(10000, 0.6, 0.5, 42);
  const EstimatorConfig cfg{Radius(3.2)};
  const auto grid = grid1d(-2.0, 2.0, 81);
  const auto evals = transition_grid(series, std::vector<double>{1.0}, grid, cfg, {}, 0);
  double sup1 = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double y = grid[g][0];
    const double truth =
        std::exp(-0.5 * (y - 0.6) * (y - 0.6) / 0.64) / std::sqrt(2.0 * pi * 0.64);
    sup1 = std::max(sup1, std::abs(evals[g].value - truth));
  }

  ExampleSpec spec;
  spec.id = ExampleId::ex6;
  spec.n = 100000;
  spec.seed = 6;
  spec.overrides["dim"] = 2.0;
  const auto series2 = std::get<MarkovSeries>(generate(spec));
  const EstimatorConfig cfg2{Radius(3.0)};
  const auto grid2 = grid1d(-2.5, 1.5, 81);
  const auto evals2 =
      transition_grid(series2, std::vector<double>{1.0, -1.0}, grid2, cfg2, {1}, 0);
  double sup2 = 0.0;
  for (std::size_t g = 0; g < grid2.size(); ++g) {
    const double y = grid2[g][0];
    const double truth =
        std::exp(-0.5 * (y + 0.4) * (y + 0.4) / 0.42) / std::sqrt(2.0 * pi * 0.42);
    sup2 = std::max(sup2, std::abs(evals2[g].value - truth));
  }
  report("C11 transition density", sup1 <= 0.05 && sup2 <= 0.07,
         fmt("1-d sup err=%.4f (<=0.05), 2-d sup err=%.4f (<=0.07)", sup1, sup2));
}

// ---------------------------------------------------------------------------
// 12. Invariance and determinism suite.
void criterion_12() {
  bool pass = true;
  std::string detail;

  const SampleMatrix sample = normal_sample(100, 17);
  const EstimatorConfig cfg{Radius(3.0)};

  {  // translation and scale
    const double c = 1.8;
    std::vector<double> shifted_rows, scaled_rows;
    for (std::size_t i = 0; i < sample.rows(); ++i) {
      shifted_rows.push_back(sample(i, 0) + c);
      scaled_rows.push_back(sample(i, 0) * c);
    }
    const SampleMatrix shifted = SampleMatrix::from_column(std::move(shifted_rows));
    const SampleMatrix scaled = SampleMatrix::from_column(std::move(scaled_rows));
    double worst = 0.0;
    for (double x : {-0.8, 0.2, 1.1}) {
      const double base = density_at(sample, std::vector<double>{x}, cfg).raw_value;
      const double moved =
          density_at(shifted, std::vector<double>{x + c}, cfg).raw_value;
      const double left =
          density_at(scaled, std::vector<double>{c * x}, cfg).raw_value;
      const double right =
          density_at(sample, std::vector<double>{x}, EstimatorConfig(Radius(3.0 * c)))
              .raw_value / c;
      worst = std::max(worst, std::abs(moved - base) / std::abs(base));
      worst = std::max(worst, std::abs(left - right) / std::abs(right));
    }
    pass = pass && worst <= 1e-12;
    detail += fmt("equivariance=%.1e ", worst);
  }

  {  // permutation invariance, exact
    std::vector<double> rows = {0.3, -1.2, 2.2, 0.01, -0.7};
    const SampleMatrix a(std::vector<double>(rows), rows.size(), 1);
    std::reverse(rows.begin(), rows.end());
    const SampleMatrix b(std::move(rows), 5, 1);
    bool exact = true;
    for (double x : {-0.5, 0.0, 1.7}) {
      exact = exact && density_at(a, std::vector<double>{x}, cfg).raw_value ==
                           density_at(b, std::vector<double>{x}, cfg).raw_value;
    }
    pass = pass && exact;
    detail += fmt("permutation=%s ", exact ? "exact" : "BROKEN");
  }

  {  // affine-Y equivariance and weight normalization
    CounterRng rng(3, 0);
    std::vector<double> x(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
      x[i] = rng.next_normal();
      y[i] = std::sin(x[i]);
    }
    std::vector<double> y2(40);
    for (std::size_t i = 0; i < 40; ++i) y2[i] = -2.0 * y[i] + 0.7;
    const LabeledSample base(SampleMatrix::from_column(std::vector<double>(x)),
                             std::vector<double>(y));
    const LabeledSample affine(SampleMatrix::from_column(std::vector<double>(x)),
                               std::move(y2));
    double worst = 0.0;
    for (double pt : {-0.4, 0.3}) {
      const auto ev = regress_at(base, std::vector<double>{pt}, cfg);
      const auto ev2 = regress_at(affine, std::vector<double>{pt}, cfg);
      worst = std::max(worst, std::abs(ev2.m_hat - (-2.0 * ev.m_hat + 0.7)));
    }
    pass = pass && worst <= 1e-10;
    detail += fmt("affineY=%.1e ", worst);

    double worst_row = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      double den = 0.0;
      for (std::size_t j = 0; j < base.size(); ++j) {
        den += sinc_kernel(base.x()(i, 0) - base.x()(j, 0), cfg.R);
      }
      double row_sum = 0.0;
      for (std::size_t j = 0; j < base.size(); ++j) {
        row_sum += sinc_kernel(base.x()(i, 0) - base.x()(j, 0), cfg.R) / den;
      }
      worst_row = std::max(worst_row, std::abs(row_sum - 1.0));
    }
    pass = pass && worst_row <= 1e-10;
    detail += fmt("rowsum=%.1e ", worst_row);
  }

  {  // conditional-mass identity via quadrature with analytic tails
    const MarkovSeries series = simulate_ar1(30, 0.5, 0.2, 77);
    const Radius R(2.0);
    const EstimatorConfig mcfg{R};
    const double x = series(4, 0);
    double s_head = 0.0, s_all = 0.0;
    for (std::size_t i = 0; i < series.length(); ++i) {
      const double w = sinc_kernel(x - series(i, 0), R);
      s_all += w;
      if (i + 1 < series.length()) s_head += w;
    }
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < series.length(); ++i) {
      lo = std::min(lo, series(i, 0));
      hi = std::max(hi, series(i, 0));
    }
    const double T = 200.0 / R.value();
    const double a = lo - T, b = hi + T;
    const double body = integrate_composite(
        [&](double y) {
          return transition_at(series, std::vector<double>{x}, std::vector<double>{y},
                               mcfg)
              .value;
        },
        a, b, static_cast<int>(std::ceil((b - a) * R.value())));
    double tails = 0.0;
    for (std::size_t i = 0; i + 1 < series.length(); ++i) {
      const double w = sinc_kernel(x - series(i, 0), R);
      const double succ = series(i + 1, 0);
      const double zr = R.value() * (b - succ), zl = R.value() * (succ - a);
      tails += w * (std::cos(zr) / zr + std::sin(zr) / (zr * zr) + std::cos(zl) / zl +
                    std::sin(zl) / (zl * zl));
    }
    const double mass = body + tails / (pi * s_all);
    const double err = std::abs(mass - s_head / s_all);
    pass = pass && err <= 1e-3;
    detail += fmt("condmass=%.1e ", err);
  }

  {  // derivative tensor symmetry, exact
    CounterRng rng(9, 0);
    std::vector<double> data(60 * 3);
    for (auto& v : data) v = rng.next_normal();
    const SampleMatrix s3(std::move(data), 60, 3);
    const auto h = density_derivative_at(s3, std::vector<double>{0.2, -0.4, 0.9}, 2,
                                         EstimatorConfig(Radius(2.5)));
    bool sym = true;
    for (int u = 0; u < 3; ++u) {
      for (int v = 0; v < 3; ++v) sym = sym && h.at(u, v) == h.at(v, u);
    }
    pass = pass && sym;
    detail += fmt("tensor=%s ", sym ? "exact" : "BROKEN");
  }

  {  // determinism under fixed seeds, including across thread counts
    ExampleSpec spec;
    spec.id = ExampleId::ex1;
    spec.n = 200;
    spec.seed = 31;
    const auto a = std::get<LabeledSample>(generate(spec));
    const auto b = std::get<LabeledSample>(generate(spec));
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = same && a.y()[i] == b.y()[i] && a.x()(i, 0) == b.x()(i, 0);
    }
    BootstrapPlan plan;
    plan.replicates = 32;
    plan.seed = 1234;
    plan.grid = grid1d(-2.0, 2.0, 21);
    const auto band1 = bootstrap_band(sample, cfg, plan, 0.1, 1);
    const auto band4 = bootstrap_band(sample, cfg, plan, 0.1, 4);
    same = same && band1.eta == band4.eta && band1.center == band4.center;
    pass = pass && same;
    detail += fmt("determinism=%s", same ? "exact" : "BROKEN");
  }

  report("C12 invariance suite", pass, detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                          criterion_5, criterion_6, criterion_7, criterion_8,
                          criterion_9, criterion_10, criterion_11, criterion_12};
  for (auto* criterion : criteria) {
    g_criterion_start = std::chrono::steady_clock::now();
    criterion();
  }
  const double seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(
          std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("[acceptance] %d of 12 criteria passed in %.1f s\n", 12 - g_failures,
              seconds);
  return g_failures == 0 ? 0 : 1;
}
