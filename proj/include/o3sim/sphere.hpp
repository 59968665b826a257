#pragma once

#include <span>
#include <vector>

#include "o3sim/basis.hpp"
#include "o3sim/cc.hpp"
#include "o3sim/radial.hpp"
#include "o3sim/sparse.hpp"
#include "o3sim/stats.hpp"

namespace o3sim {

// Cutoff-Lambda field Hamiltonian
//   H = 1/(2 g^2) sum_x L^2(x) + sum_x [ (phi(x) - phi(x+1))^2 / 2 - g^2 ]
// in the |l, m; Lambda> product basis. The radial profile factorizes out,
// leaving the rotor kinetic diagonal l(l+1)/(2 g^2), a constant on-site
// shift m2/m0 - g^2 per site, and link couplings -(m1/m0)^2 times the
// angular n.n matrix elements. Entrywise this tends to the rotor
// Hamiltonian as Lambda -> infinity.
SparseHermitian build_sphere_hamiltonian(const ModelParams& params,
                                         const SphereBasisSpec& spec);

// Return amplitudes <Omega| e^{-i t H(r)} |Omega> for a frozen radial
// configuration r(x); |Omega> = all l=0. H(r) carries on-site shifts
// (r_x^2 + r_{x+1}^2)/2 - g^2 per link and couplings -r_x r_{x+1} (n.n).
std::vector<cdouble> return_amplitude_fixed_radii(
    const ModelParams& params, std::span<const double> radii,
    std::span<const double> times);

// O(3) reference: all radii frozen at g.
std::vector<double> return_probability_o3(const ModelParams& params,
                                          std::span<const double> times);

// |<Omega| e^{-itH} |Omega>|^2 at finite Lambda: radii sampled per site
// from r^2 |psi|^2, amplitudes averaged over samples, then squared;
// jackknife errors over 100 sample blocks. One shared radial stream
// serves all requested times.
std::vector<MCEstimate> evolve_return_probability_mc(
    const ModelParams& params, const SphereBasisSpec& spec,
    std::span<const double> times, const CCConfig& cfg);

// |<vac| e^{-itH} |Omega>|^2 where <vac| is the three-oscillator Fock
// vacuum at each site (Cartesian profile pi^{-3/4} e^{-|phi|^2/2}), the
// observable read off the qumode simulator. Same radial sampling as
// evolve_return_probability_mc, but each sample is reweighted by
// prod_x e^{-r_x^2/2} / psi(r_x) and the mean amplitude is scaled by
// (4 m0 / sqrt(pi))^{L/2} before squaring.
std::vector<MCEstimate> vacuum_projected_return_mc(
    const ModelParams& params, const SphereBasisSpec& spec,
    std::span<const double> times, const CCConfig& cfg);

}  // namespace o3sim
