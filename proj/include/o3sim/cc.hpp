#pragma once

#include <cstdint>
#include <optional>

#include "o3sim/basis.hpp"
#include "o3sim/stats.hpp"

namespace o3sim {

// Sampling strategy for the MC energy estimators.
//  quasi_mc            Halton points, deterministic; stderr reported as 0.
//  gaussian_radial     pseudo-random; radii importance-sampled from a
//                      Gaussian(g, g/Lambda) proposal (good for Lambda >~ 3).
//  exact_radial_alpha0 pseudo-random; radii drawn exactly from the alpha=0
//                      density r^2 |psi|^2 via inverse-CDF tables.
// In the O(3) limit (no cutoff) the last two coincide: uniform angles only.
enum class CCSampler { quasi_mc, gaussian_radial, exact_radial_alpha0 };

struct CCConfig {
  double alpha = 0.0;
  std::size_t n_samples = 100000;
  CCSampler sampler = CCSampler::exact_radial_alpha0;
  std::uint64_t seed = 1;
  std::optional<double> lambda_cutoff;  // absent = O(3) limit

  void validate(double g_sq) const;  // alpha in [0, 4 g^2] by default
};

// Closed-form L=2 energies per site as functions of the variational
// parameter alpha. Both switch to small-alpha series below alpha = 1e-4
// and to overflow-safe asymptotic forms at large 4 g^2 alpha.
//   E0/L = -1/(4 g^2) + 1/(2 alpha) + (alpha - 2 g^2)/2 * coth(2 g^2 alpha)
double cc_energy_L2_closed_form(double g_sq, double alpha);
double cc_excited_L2_closed_form(double g_sq, double alpha);

// Rayleigh-quotient estimate of the per-site energy of the ground /
// first-excited variational state (the exponential nearest-neighbor
// Ansatz, multiplied by sum_x n3(x) for the excited state); correlated
// ratio with 100-block jackknife errors.
MCEstimate cc_energy_mc(const ModelParams& params, const CCConfig& cfg);
MCEstimate cc_excited_mc(const ModelParams& params, const CCConfig& cfg);

// Total-energy gap E1(alpha_excited) - E0(cfg.alpha) from one shared
// sample stream, jointly jackknifed. Requires a stochastic sampler.
MCEstimate cc_gap_mc(const ModelParams& params, const CCConfig& cfg,
                     double alpha_excited);

}  // namespace o3sim
