#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fsmooth {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with n points, computed by Newton iteration on P_n.
// Exact for polynomials up to degree 2n-1.
QuadratureRule gauss_legendre(int n);

// Rule mapped onto [a, b].
QuadratureRule gauss_legendre_on(int n, double a, double b);

// Integrates f over [a, b] split into equal panels, `order` Gauss points per
// panel. Panel count is chosen by the caller to resolve any oscillation.
double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels, int order = 16);

// Shifted Halton point set in [0,1)^d: radical-inverse sequences in the first
// d prime bases with a seeded Cranley-Patterson rotation.
std::vector<double> halton_shifted(std::size_t count, int dim, std::uint64_t seed);

}  // namespace fsmooth
