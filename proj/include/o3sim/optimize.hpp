#pragma once

#include <functional>

namespace o3sim {

struct MinimizeResult {
  double x = 0.0;
  double f = 0.0;
  int n_evaluations = 0;
  // true when the minimum landed within tol of a bracket endpoint,
  // suggesting the true optimum lies outside [lo, hi].
  bool at_boundary = false;
};

// Golden-section search for a unimodal f on [lo, hi].
MinimizeResult minimize_scalar(const std::function<double(double)>& f,
                               double lo, double hi, double tol = 1e-4);

}  // namespace o3sim
