#include "o3sim/rotor.hpp"

#include <cmath>
#include <stdexcept>

#include "o3sim/angular.hpp"

namespace o3sim {

namespace {

// Nonzero one-site matrix elements of X_M, indexed by (bra level, ket level).
struct XElement {
  int bra;  // level index of <l1,m1|
  int ket;  // level index of |l2,m2>
  double value;
};

std::vector<XElement> x_elements(int l_max, int M) {
  std::vector<XElement> out;
  for (int l1 = 0; l1 <= l_max; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= l_max; ++l2) {
        if (std::abs(l1 - l2) != 1) continue;
        const int m2 = m1 - M;
        if (std::abs(m2) > l2) continue;
        double v = x_matrix_element(l1, m1, M, l2, m2);
        if (v != 0.0)
          out.push_back({AngularBasisState::level_index(l1, m1),
                         AngularBasisState::level_index(l2, m2), v});
      }
  return out;
}

}  // namespace

SparseHermitian build_chain_hamiltonian(const ModelParams& params,
                                        std::span<const double> link_coeffs,
                                        double diag_shift) {
  params.validate();
  if (static_cast<int>(link_coeffs.size()) != params.n_sites)
    throw std::invalid_argument("need one link coefficient per site");
  const std::int64_t dim = params.dimension();
  const int L = params.n_sites;
  const int d = params.local_dim();
  SparseHermitian h(dim);

  // site-major strides: site x varies with stride d^(L-1-x)
  std::vector<std::int64_t> stride(L);
  stride[L - 1] = 1;
  for (int x = L - 2; x >= 0; --x) stride[x] = stride[x + 1] * d;

  // kinetic term: diagonal sum_x l_x (l_x + 1) / (2 g^2)
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    double kin = 0.0;
    std::int64_t rem = idx;
    for (int x = 0; x < L; ++x) {
      const int lev = static_cast<int>(rem / stride[x]);
      rem %= stride[x];
      const int l = AngularBasisState::level_from_index(lev).l;
      kin += l * (l + 1);
    }
    h.add(idx, idx, kin / (2.0 * params.g_sq) + diag_shift);
  }

  // link terms: sum_x c[x] sum_M (-1)^M X_M(x) X_{-M}(x+1), periodic.
  // Enumerate product-operator elements on the link, then scan states whose
  // levels on (x, x+1) match the ket pair.
  for (int M = -1; M <= 1; ++M) {
    const double sign = (M == 0) ? 1.0 : -1.0;
    const auto ex = x_elements(params.l_max, M);
    const auto ey = x_elements(params.l_max, -M);
    for (int x = 0; x < L; ++x) {
      const int y = (x + 1) % L;
      for (const auto& a : ex)
        for (const auto& b : ey) {
          const double coeff = link_coeffs[x] * sign * a.value * b.value;
          // iterate over all configurations of the other L-2 sites
          const std::int64_t sx = stride[x], sy = stride[y];
          for (std::int64_t idx = 0; idx < dim; ++idx) {
            const int lx = static_cast<int>((idx / sx) % d);
            const int ly = static_cast<int>((idx / sy) % d);
            if (lx != a.ket || ly != b.ket) continue;
            const std::int64_t jdx =
                idx + (a.bra - a.ket) * sx + (b.bra - b.ket) * sy;
            if (jdx >= idx) h.add(jdx, idx, coeff);
          }
        }
    }
  }
  h.compress(1e-15);
  return h;
}

SparseHermitian build_rotor_hamiltonian(const ModelParams& params) {
  params.validate();
  std::vector<double> coeffs(params.n_sites, -params.g_sq);
  return build_chain_hamiltonian(params, coeffs, 0.0);
}

MassGapResult mass_gap(const ModelParams& params, const SpectrumOptions& opts) {
  auto spectrum_gap = [&](int lmax) {
    ModelParams p = params;
    p.l_max = lmax;
    auto h = build_rotor_hamiltonian(p);
    auto s = low_spectrum(h, 2, opts);
    return s;
  };
  auto s = spectrum_gap(params.l_max);
  MassGapResult out;
  out.e0 = s.eigenvalues[0];
  out.e1 = s.eigenvalues[1];
  out.gap = out.e1 - out.e0;
  if (params.l_max >= 1) {
    auto sm = spectrum_gap(params.l_max - 1);
    out.truncation_error =
        std::abs(out.gap - (sm.eigenvalues[1] - sm.eigenvalues[0]));
  }
  return out;
}

}  // namespace o3sim
