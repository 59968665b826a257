#include "o3sim/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace o3sim {

void ModelParams::validate() const {
  if (n_sites < 2) throw std::invalid_argument("n_sites must be >= 2");
  if (g_sq <= 0.0) throw std::invalid_argument("g_sq must be positive");
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
}

std::int64_t ModelParams::dimension(std::int64_t cap) const {
  validate();
  std::int64_t dim = 1;
  const std::int64_t d = local_dim();
  for (int s = 0; s < n_sites; ++s) {
    if (dim > cap / d)
      throw std::runtime_error("Hilbert space dimension exceeds cap " +
                               std::to_string(cap));
    dim *= d;
  }
  return dim;
}

LevelLM AngularBasisState::level_from_index(int idx) {
  const int l = static_cast<int>(std::sqrt(static_cast<double>(idx)));
  return {l, idx - l * l - l};
}

std::int64_t AngularBasisState::flat_index(const ModelParams& p) const {
  if (static_cast<int>(quanta.size()) != p.n_sites)
    throw std::invalid_argument("state length != n_sites");
  std::int64_t idx = 0;
  for (const auto& q : quanta) {
    if (q.l < 0 || q.l > p.l_max || std::abs(q.m) > q.l)
      throw std::invalid_argument("invalid (l,m) in basis state");
    idx = idx * p.local_dim() + level_index(q.l, q.m);
  }
  return idx;
}

AngularBasisState AngularBasisState::from_flat_index(std::int64_t idx,
                                                     const ModelParams& p) {
  AngularBasisState s;
  s.quanta.resize(static_cast<std::size_t>(p.n_sites));
  const int d = p.local_dim();
  for (int site = p.n_sites - 1; site >= 0; --site) {
    s.quanta[static_cast<std::size_t>(site)] =
        level_from_index(static_cast<int>(idx % d));
    idx /= d;
  }
  return s;
}

}  // namespace o3sim
