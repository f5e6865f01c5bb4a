#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "fsmooth/markov.hpp"
#include "fsmooth/types.hpp"

namespace fsmooth {

enum class ExampleId { ex1 = 1, ex2, ex3, ex4, ex5, ex6, ex7 };

// Seeded generators for the worked examples. Overrides (by name) adjust the
// documented parameters; unknown names are rejected.
//   ex1: d=2 regression, X2 = X1 + 0.1 Z, Y = X1^2 - 3 X2 + eps.
//   ex2: d=4 linear regression, slopes j/4, noise 0.01.
//   ex3: d=5 variant of ex2.
//   ex4: 1-d Gaussian-noise mixture, g = 0.6 N(-2, 0.6^2) + 0.4 N(2, 0.6^2).
//   ex5: modal regression, y | x equal mixture N(-x^2, 0.6^2), N(x^2, 0.6^2),
//        x uniform on (-2, 2).
//   ex6: AR(1) with rho = 0.6 from x0 = 0.5; override dim=2 for the coupled
//        two-dimensional recursion (rho1 = 0.3, rho2 = 0.7).
//   ex7: not generatable (external daily-index data; ingest a CSV instead).
struct ExampleSpec {
  ExampleId id = ExampleId::ex1;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::map<std::string, double> overrides;
};

using GeneratedData = std::variant<SampleMatrix, LabeledSample, MarkovSeries>;

GeneratedData generate(const ExampleSpec& spec);

// Product-Gaussian Nadaraya-Watson estimate with per-axis bandwidth h.
double gaussian_nw_baseline(const LabeledSample& data, std::span<const double> x, double h);

// Weighted squared-error sum; with cell-width weights this is a single
// replicate's integrated squared error.
double mise(std::span<const double> estimate, std::span<const double> truth,
            std::span<const double> grid_weights);

}  // namespace fsmooth
