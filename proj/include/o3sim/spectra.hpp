#pragma once

#include <cstdint>
#include <vector>

#include "o3sim/sparse.hpp"

namespace o3sim {

struct SpectrumOptions {
  // Below this dimension the full dense solver is used.
  std::int64_t dense_threshold = 2000;
  // Relative residual tolerance for the iterative path.
  double tol = 1e-10;
  int max_iterations = 600;
  std::uint64_t seed = 12345;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;           // ascending, size n_lowest
  std::vector<std::vector<cdouble>> vectors; // matching eigenvectors
  int iterations = 0;
  bool converged = true;
};

// Lowest n_lowest eigenpairs of a Hermitian operator. Dense solve for
// small matrices, Lanczos with full reorthogonalization otherwise.
// Throws std::runtime_error with residual diagnostics on non-convergence.
SpectrumResult low_spectrum(const SparseHermitian& h, int n_lowest,
                            const SpectrumOptions& opts = {});

}  // namespace o3sim
