#pragma once

#include <cstdint>
#include <vector>

namespace o3sim {

enum class Boundary { periodic };

// Lattice model parameters for the O(3) rotor chain.
struct ModelParams {
  int n_sites = 2;       // L
  double g_sq = 1.0;     // coupling g^2
  int l_max = 3;         // per-site angular momentum truncation
  Boundary boundary = Boundary::periodic;

  void validate() const;  // throws std::invalid_argument
  // per-site local dimension (l_max+1)^2
  int local_dim() const { return (l_max + 1) * (l_max + 1); }
  // total Hilbert space dimension local_dim()^L; throws on overflow of cap
  std::int64_t dimension(std::int64_t cap = (std::int64_t{1} << 31)) const;
};

// One (l, m) level of the single-site spherical-harmonic basis.
struct LevelLM {
  int l = 0;
  int m = 0;
};

// Per-site (l,m) occupation of the product basis, with the flat index
// convention: site-major, levels ordered by (l ascending, m ascending).
struct AngularBasisState {
  std::vector<LevelLM> quanta;

  static int level_index(int l, int m) { return l * l + (l + m); }
  static LevelLM level_from_index(int idx);

  std::int64_t flat_index(const ModelParams& p) const;
  static AngularBasisState from_flat_index(std::int64_t idx,
                                           const ModelParams& p);
};

}  // namespace o3sim
