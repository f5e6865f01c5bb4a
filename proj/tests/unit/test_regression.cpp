#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "fsmooth/regression.hpp"
#include "fsmooth/rng.hpp"
#include "fsmooth/simulate.hpp"
#include "helpers.hpp"

using namespace fsmooth;
using std::numbers::pi;

namespace {

LabeledSample make_labeled(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = y.size();
  return LabeledSample(SampleMatrix(std::move(x), n, 1), std::move(y));
}

LabeledSample ex1_sample(std::size_t n, std::uint64_t seed) {
  ExampleSpec spec;
  spec.id = ExampleId::ex1;
  spec.n = n;
  spec.seed = seed;
  return std::get<LabeledSample>(generate(spec));
}

}  // namespace

TEST_CASE("constant responses are reproduced exactly where reliable") {
  CounterRng rng(1, 0);
  std::vector<double> x(40);
  for (auto& v : x) v = rng.next_normal();
  const LabeledSample data = make_labeled(std::move(x), std::vector<double>(40, 3.25));
  const EstimatorConfig cfg{Radius(3.0)};
  for (double pt : {-0.5, 0.0, 1.2}) {
    const auto ev = regress_at(data, std::vector<double>{pt}, cfg);
    REQUIRE(ev.reliable);
    CHECK(ev.m_hat == doctest::Approx(3.25).epsilon(1e-12));
  }
}

TEST_CASE("single observation returns its own response") {
  const LabeledSample data = make_labeled({0.7}, {42.0});
  const auto ev = regress_at(data, std::vector<double>{0.7}, EstimatorConfig(Radius(2.0)));
  CHECK(ev.m_hat == doctest::Approx(42.0).epsilon(1e-14));
  CHECK(ev.reliable);
}

TEST_CASE("a vanishing denominator is flagged unreliable") {
  // A lone observation evaluated at a kernel zero: the density estimate is
  // ~1e-17, far under the 1e-10 R^d / n floor.
  const LabeledSample data = make_labeled({0.0}, {1.0});
  const EstimatorConfig cfg{Radius(4.0)};
  const auto ev = regress_at(data, std::vector<double>{pi / 4.0}, cfg);
  CHECK_FALSE(ev.reliable);
  CHECK(std::isfinite(ev.m_hat));
  CHECK_THROWS_AS(
      regress_at(data, std::vector<double>{std::nan("")}, cfg), std::invalid_argument);
}

TEST_CASE("two-predictor benchmark centers near -5 across replicates") {
  // The evaluation point sits where the design density vanishes, so single
  // replicates are heavy-tailed; the median is the stable summary.
  std::vector<double> estimates;
  for (int rep = 0; rep < 9; ++rep) {
    const LabeledSample data = ex1_sample(1000, 4242 + rep);
    const EstimatorConfig cfg{Radius(9.0)};
    estimates.push_back(regress_at(data, std::vector<double>{1.0, 2.0}, cfg).m_hat);
  }
  std::sort(estimates.begin(), estimates.end());
  CHECK(std::abs(estimates[4] - (-5.0)) < 1.0);
}

TEST_CASE("noise variance: zero residuals and the exact 2x2 trace algebra") {
  CounterRng rng(2, 0);
  std::vector<double> x(30);
  for (auto& v : x) v = rng.next_normal();
  const LabeledSample constant = make_labeled(std::move(x), std::vector<double>(30, -1.0));
  const EstimatorConfig cfg{Radius(2.0)};
  CHECK(sigma2_hat(constant, cfg) == doctest::Approx(0.0).epsilon(1e-20));

  // n = 2: L and the dof denominator by hand.
  const double xa = 0.0, xb = 1.0, ya = 1.0, yb = 3.0;
  const LabeledSample two = make_labeled({xa, xb}, {ya, yb});
  const Radius R(2.0);
  const double k0 = 2.0;                      // kernel at zero = R
  const double k1 = sinc_kernel(xa - xb, R);  // cross kernel
  const double den = k0 + k1;
  const double l_diag = k0 / den, l_off = k1 / den;
  const double fit_a = (ya * k0 + yb * k1) / den;
  const double fit_b = (ya * k1 + yb * k0) / den;
  const double rss = (ya - fit_a) * (ya - fit_a) + (yb - fit_b) * (yb - fit_b);
  const double dof = 2.0 - 2.0 * (l_diag + l_diag) +
                     (l_diag * l_diag + l_off * l_off) * 2.0;
  CHECK(sigma2_hat(two, EstimatorConfig(R)) == doctest::Approx(rss / dof).epsilon(1e-12));

  const auto summary = smoothing_matrix_summary(two, EstimatorConfig(R));
  CHECK(summary.trace_l == doctest::Approx(2.0 * l_diag).epsilon(1e-12));
  CHECK(summary.trace_ltl ==
        doctest::Approx(2.0 * (l_diag * l_diag + l_off * l_off)).epsilon(1e-12));
}

TEST_CASE("noise variance recovers the generating sigma") {
  const LabeledSample data = ex1_sample(1000, 77);
  const double s2 = sigma2_hat(data, EstimatorConfig(Radius(9.0)));
  CHECK(s2 > 0.8);
  CHECK(s2 < 1.2);
}

TEST_CASE("subsample cap bounds the trace pass and stays deterministic") {
  const LabeledSample data = ex1_sample(900, 15);
  const EstimatorConfig cfg{Radius(9.0)};
  const double a = sigma2_hat(data, cfg, 300);
  const double b = sigma2_hat(data, cfg, 300);
  CHECK(a == b);
  CHECK(a > 0.5);
  CHECK(a < 1.6);
}

TEST_CASE("interval widths follow the plug-in algebra") {
  const LabeledSample one = make_labeled({0.0}, {5.0});
  const EstimatorConfig cfg{Radius(3.0)};
  const double tau = 0.31731050786291415;  // z = 1
  // f(0) = R/pi = R^d/(n pi^d) at n = 1, so the half-width equals sigma.
  const auto ci = regress_ci_with_sigma(one, std::vector<double>{0.0}, cfg, tau, 4.0);
  CHECK(ci.upper - ci.estimate == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ci.estimate == doctest::Approx(5.0).epsilon(1e-12));

  const auto zero_width = regress_ci_with_sigma(one, std::vector<double>{0.0}, cfg, 0.1, 0.0);
  CHECK(zero_width.lower == zero_width.upper);
  CHECK(zero_width.degenerate);
}

TEST_CASE("interval coverage where the normal limit applies") {
  // A 1-d isotropic design with positive density at the target; the
  // Ex1-style ridge point has vanishing density there and no CLT.
  int covered = 0;
  const int reps = 120;
  const double truth = std::sin(0.5);
  for (int rep = 0; rep < reps; ++rep) {
    CounterRng xr(700 + rep, 0), er(700 + rep, 1);
    const std::size_t n = 1500;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = xr.next_normal();
      y[i] = std::sin(x[i]) + er.next_normal();
    }
    const LabeledSample data(SampleMatrix::from_column(std::move(x)), std::move(y));
    const EstimatorConfig cfg{Radius(4.0)};
    const auto ci = regress_ci(data, std::vector<double>{0.5}, cfg, 0.1, 800);
    if (ci.lower <= truth && truth <= ci.upper) ++covered;
  }
  const double coverage = static_cast<double>(covered) / reps;
  CHECK(coverage > 0.8);
  CHECK(coverage <= 1.0);
}

TEST_CASE("affine equivariance in the responses") {
  CounterRng rng(3, 0);
  std::vector<double> x(50), y(50);
  for (std::size_t i = 0; i < 50; ++i) {
    x[i] = rng.next_normal();
    y[i] = std::sin(x[i]) + 0.1 * rng.next_normal();
  }
  std::vector<double> y2(50);
  for (std::size_t i = 0; i < 50; ++i) y2[i] = -2.0 * y[i] + 0.7;
  const LabeledSample base = make_labeled(std::vector<double>(x), std::vector<double>(y));
  const LabeledSample scaled = make_labeled(std::move(x), std::move(y2));
  const EstimatorConfig cfg{Radius(3.0)};
  for (double pt : {-0.4, 0.3, 0.9}) {
    const auto ev = regress_at(base, std::vector<double>{pt}, cfg);
    const auto ev2 = regress_at(scaled, std::vector<double>{pt}, cfg);
    if (!ev.reliable) continue;
    CHECK(std::abs(ev2.m_hat - (-2.0 * ev.m_hat + 0.7)) < 1e-10);
  }
}

TEST_CASE("translation equivariance in the predictors") {
  CounterRng rng(14, 0);
  std::vector<double> x(60), y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    x[i] = rng.next_normal();
    y[i] = x[i] * x[i];
  }
  std::vector<double> moved(60);
  for (std::size_t i = 0; i < 60; ++i) moved[i] = x[i] + 2.5;
  const LabeledSample base = make_labeled(std::vector<double>(x), std::vector<double>(y));
  const LabeledSample shifted = make_labeled(std::move(moved), std::move(y));
  const EstimatorConfig cfg{Radius(3.0)};
  const auto ev = regress_at(base, std::vector<double>{0.5}, cfg);
  const auto ev2 = regress_at(shifted, std::vector<double>{3.0}, cfg);
  CHECK(testing::rel_err(ev2.m_hat, ev.m_hat) < 1e-12);
}

TEST_CASE("smoother rows are normalized: sigma2 ignores response shifts") {
  const LabeledSample data = ex1_sample(300, 5);
  std::vector<double> shifted_y(data.y().begin(), data.y().end());
  for (auto& v : shifted_y) v += 11.0;
  std::vector<double> x(data.x().data().begin(), data.x().data().end());
  const LabeledSample shifted(SampleMatrix(std::move(x), data.size(), data.dim()),
                              std::move(shifted_y));
  const EstimatorConfig cfg{Radius(7.0)};
  CHECK(sigma2_hat(data, cfg) == doctest::Approx(sigma2_hat(shifted, cfg)).epsilon(1e-9));
}

TEST_CASE("interpolation in the large-radius limit") {
  const std::vector<double> x = {0.0, 0.8, 1.7, 2.9, 4.1};
  const std::vector<double> y = {0.5, -0.25, 0.125, 0.4, -0.15};
  double min_gap = 1e300;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      min_gap = std::min(min_gap, std::abs(x[i] - x[j]));
    }
  }
  const LabeledSample data =
      make_labeled(std::vector<double>(x), std::vector<double>(y));
  const EstimatorConfig cfg{Radius(1000.0 / min_gap)};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto ev = regress_at(data, std::vector<double>{x[j]}, cfg);
    CHECK(std::abs(ev.m_hat - y[j]) < 1e-3);
  }
}

TEST_CASE("four-predictor linear model along a parametric curve") {
  // The 0.1 tolerance needs the full-scale draw; at n = 1e5 the curve sits
  // too far out in the 4-d design for this accuracy (measured RMS ~0.2-0.3).
  ExampleSpec spec;
  spec.id = ExampleId::ex2;
  spec.n = 1000000;
  spec.seed = 2024;
  const auto data = std::get<LabeledSample>(generate(spec));
  const EstimatorConfig cfg{Radius(7.0)};

  std::vector<Point> curve;
  std::vector<double> truth;
  for (double t = -0.4; t <= 0.4001; t += 0.02) {
    const Point x = {std::sqrt(t + 2.0), t, std::sin(25.0 * (t + 2.0) / pi),
                     std::exp((t + 2.0) / 4.0)};
    double m = 0.0;
    for (std::size_t j = 0; j < 4; ++j) m += (static_cast<double>(j) + 1.0) / 4.0 * x[j];
    curve.push_back(x);
    truth.push_back(m);
  }
  const auto evals = regress_curve(data, curve, cfg, 2);
  double sq = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    REQUIRE(evals[i].reliable);
    sq += (evals[i].m_hat - truth[i]) * (evals[i].m_hat - truth[i]);
  }
  CHECK(std::sqrt(sq / static_cast<double>(curve.size())) <= 0.1);
}

TEST_CASE("five-predictor variant along the diagonal") {
  ExampleSpec spec;
  spec.id = ExampleId::ex3;
  spec.n = 100000;
  spec.seed = 515;
  const auto data = std::get<LabeledSample>(generate(spec));
  const EstimatorConfig cfg{Radius(5.0)};

  std::vector<Point> curve;
  std::vector<double> truth;
  for (double t = -0.6; t <= 0.6001; t += 0.03) {
    curve.push_back(Point(5, t));
    truth.push_back(t * (1.0 + 2.0 + 3.0 + 4.0 + 5.0) / 4.0);
  }
  const auto evals = regress_curve(data, curve, cfg, 2);
  double sq = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    REQUIRE(evals[i].reliable);
    sq += (evals[i].m_hat - truth[i]) * (evals[i].m_hat - truth[i]);
  }
  CHECK(std::sqrt(sq / static_cast<double>(curve.size())) <= 0.1);
}

TEST_CASE("regress_curve matches pointwise calls and handles constants") {
  const LabeledSample constant = make_labeled({0.0, 1.0, 2.0}, {7.0, 7.0, 7.0});
  const auto curve = testing::grid1d(0.0, 2.0, 9);
  const auto evals = regress_curve(constant, curve, EstimatorConfig(Radius(2.0)), 2);
  REQUIRE(evals.size() == curve.size());
  for (const auto& ev : evals) {
    if (ev.reliable) CHECK(ev.m_hat == doctest::Approx(7.0).epsilon(1e-10));
  }
}
