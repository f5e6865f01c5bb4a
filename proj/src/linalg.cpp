#include "fsmooth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsmooth {

namespace {

std::vector<double> eig2(const std::vector<double>& m) {
  const double a = m[0], b = m[1], c = m[3];
  const double tr = a + c;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
  return {0.5 * tr + disc, 0.5 * tr - disc};
}

// Trigonometric solution of the symmetric 3x3 eigenproblem.
std::vector<double> eig3(const std::vector<double>& m) {
  const double a11 = m[0], a12 = m[1], a13 = m[2];
  const double a22 = m[4], a23 = m[5], a33 = m[8];
  const double p1 = a12 * a12 + a13 * a13 + a23 * a23;
  if (p1 == 0.0) {
    std::vector<double> eigs = {a11, a22, a33};
    std::sort(eigs.begin(), eigs.end(), std::greater<>());
    return eigs;
  }
  const double q = (a11 + a22 + a33) / 3.0;
  const double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) +
                    (a33 - q) * (a33 - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  // B = (A - qI)/p; r = det(B)/2 lies in [-1, 1] up to rounding.
  const double b11 = (a11 - q) / p, b22 = (a22 - q) / p, b33 = (a33 - q) / p;
  const double b12 = a12 / p, b13 = a13 / p, b23 = a23 / p;
  double r = 0.5 * (b11 * (b22 * b33 - b23 * b23) - b12 * (b12 * b33 - b23 * b13) +
                    b13 * (b12 * b23 - b22 * b13));
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  return {e1, e2, e3};
}

std::vector<double> jacobi(std::vector<double> a, int d) {
  const auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
             static_cast<std::size_t>(j)];
  };
  double scale = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(at(i, j)));
  if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(d), 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) off += at(i, j) * at(i, j);
    if (std::sqrt(off) <= 1e-10 * scale) break;

    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigs(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) eigs[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const std::vector<double>& m, int d) {
  if (d < 1) throw std::invalid_argument("symmetric_eigenvalues: need d >= 1");
  if (m.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix size mismatch");
  }
  if (d == 1) return {m[0]};
  if (d == 2) return eig2(m);
  if (d == 3) return eig3(m);
  return jacobi(m, d);
}

double symmetric_eig_max(const std::vector<double>& m, int d) {
  return symmetric_eigenvalues(m, d).front();
}

bool solve_dense(std::vector<double> a, std::vector<double> b, int d,
                 std::vector<double>* x) {
  const auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) +
             static_cast<std::size_t>(j)];
  };
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (std::abs(at(pivot, col)) < 1e-300) return false;
    if (pivot != col) {
      for (int j = 0; j < d; ++j) std::swap(at(pivot, j), at(col, j));
      std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
    }
    for (int r = col + 1; r < d; ++r) {
      const double factor = at(r, col) / at(col, col);
      if (factor == 0.0) continue;
      for (int j = col; j < d; ++j) at(r, j) -= factor * at(col, j);
      b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(col)];
    }
  }
  x->assign(static_cast<std::size_t>(d), 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < d; ++j) s -= at(r, j) * (*x)[static_cast<std::size_t>(j)];
    (*x)[static_cast<std::size_t>(r)] = s / at(r, r);
  }
  return true;
}

}  // namespace fsmooth
