#pragma once

#include <span>

#include "o3sim/basis.hpp"
#include "o3sim/sparse.hpp"
#include "o3sim/spectra.hpp"

namespace o3sim {

// Generic chain Hamiltonian sharing the rotor's angular structure:
//   H = 1/(2 g^2) sum_x L^2(x) + sum_x c[x] * n(x).n(x+1) + shift * I
// with one coefficient per periodic link x -> x+1. The rotor and the
// cutoff-Lambda field Hamiltonians are both instances.
SparseHermitian build_chain_hamiltonian(const ModelParams& params,
                                        std::span<const double> link_coeffs,
                                        double diag_shift);

// Truncated-basis rotor Hamiltonian
//   H = 1/(2 g^2) sum_x L^2(x) - g^2 sum_x n(x).n(x+1)
// on a periodic chain; at L = 2 both terms of the link sum are kept, so
// the single physical link enters twice.
SparseHermitian build_rotor_hamiltonian(const ModelParams& params);

struct MassGapResult {
  double e0 = 0.0;
  double e1 = 0.0;
  double gap = 0.0;
  // |gap(l_max) - gap(l_max - 1)|, a truncation-convergence proxy.
  double truncation_error = 0.0;
};

MassGapResult mass_gap(const ModelParams& params,
                       const SpectrumOptions& opts = {});

}  // namespace o3sim
