#pragma once

#include <vector>

namespace fsmooth {

// Eigenvalues of a symmetric d x d matrix (row-major), descending order.
// Closed forms for d <= 3, cyclic Jacobi sweeps otherwise.
std::vector<double> symmetric_eigenvalues(const std::vector<double>& m, int d);

// Largest eigenvalue of a symmetric d x d matrix.
double symmetric_eig_max(const std::vector<double>& m, int d);

// Solves A x = b for a small dense d x d system by partial-pivot elimination.
// Returns false when the matrix is numerically singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int d,
                 std::vector<double>* x);

}  // namespace fsmooth
