#include "o3sim/sphere.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "o3sim/qmc.hpp"
#include "o3sim/rotor.hpp"

namespace o3sim {

SparseHermitian build_sphere_hamiltonian(const ModelParams& params,
                                         const SphereBasisSpec& spec) {
  params.validate();
  spec.validate();
  if (spec.n_sites != params.n_sites || spec.l_max != params.l_max)
    throw std::invalid_argument("SphereBasisSpec inconsistent with ModelParams");
  const RadialMoments m = radial_moments(spec);
  const double link = -(m.m1 / m.m0) * (m.m1 / m.m0);
  const double onsite = m.m2 / m.m0 - params.g_sq;
  std::vector<double> coeffs(params.n_sites, link);
  return build_chain_hamiltonian(params, coeffs, params.n_sites * onsite);
}

std::vector<cdouble> return_amplitude_fixed_radii(
    const ModelParams& params, std::span<const double> radii,
    std::span<const double> times) {
  params.validate();
  const int L = params.n_sites;
  if (static_cast<int>(radii.size()) != L)
    throw std::invalid_argument("need one radius per site");

  double shift = 0.0;
  std::vector<double> coeffs(L);
  for (int x = 0; x < L; ++x) {
    const int y = (x + 1) % L;
    coeffs[x] = -radii[x] * radii[y];
    shift += 0.5 * (radii[x] * radii[x] + radii[y] * radii[y]) - params.g_sq;
  }
  auto h = build_chain_hamiltonian(params, coeffs, shift);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.to_dense());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed in time evolution");
  // |Omega> (all l = 0) is flat index 0
  const Eigen::VectorXcd c0 = solver.eigenvectors().row(0).adjoint();
  std::vector<cdouble> out;
  out.reserve(times.size());
  for (double t : times) {
    cdouble amp = 0.0;
    for (Eigen::Index k = 0; k < c0.size(); ++k)
      amp += std::norm(c0(k)) *
             std::exp(cdouble(0.0, -t * solver.eigenvalues()(k)));
    out.push_back(amp);
  }
  return out;
}

std::vector<double> return_probability_o3(const ModelParams& params,
                                          std::span<const double> times) {
  std::vector<double> radii(params.n_sites, std::sqrt(params.g_sq));
  auto amps = return_amplitude_fixed_radii(params, radii, times);
  std::vector<double> out;
  out.reserve(amps.size());
  for (auto a : amps) out.push_back(std::norm(a));
  return out;
}

namespace {

// Shared radial-sampling kernel: accumulates per-sample amplitudes
// weight(r) * A(r, t), then block-jackknifes |scale * mean|^2.
std::vector<MCEstimate> weighted_return_mc(
    const ModelParams& params, const SphereBasisSpec& spec,
    std::span<const double> times, const CCConfig& cfg,
    const std::function<double(std::span<const double>)>& weight,
    double scale) {
  params.validate();
  spec.validate();
  cfg.validate(params.g_sq);
  const int L = params.n_sites;
  const std::size_t n = cfg.n_samples;
  const int nb = 100;
  if (n < static_cast<std::size_t>(nb))
    throw std::invalid_argument("need at least 100 samples for jackknife");

  RadialSampler radial(spec.lambda_cutoff, spec.g);
  HaltonSequence halton(L);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool quasi = cfg.sampler == CCSampler::quasi_mc;

  const std::size_t nt = times.size();
  // per-sample amplitudes, kept per time for the block jackknife
  std::vector<std::vector<cdouble>> amps(nt,
                                         std::vector<cdouble>(n, cdouble{}));
  std::vector<double> radii(L);
  std::vector<double> pt;
  for (std::size_t i = 0; i < n; ++i) {
    if (quasi) halton.next(pt);
    for (int x = 0; x < L; ++x)
      radii[x] = radial.sample(quasi ? pt[x] : unif(rng));
    const double w = weight(radii);
    auto a = return_amplitude_fixed_radii(params, radii, times);
    for (std::size_t k = 0; k < nt; ++k) amps[k][i] = w * a[k];
  }

  std::vector<MCEstimate> out(nt);
  const std::size_t per = n / nb;
  for (std::size_t k = 0; k < nt; ++k) {
    cdouble total{};
    for (std::size_t i = 0; i < per * nb; ++i) total += amps[k][i];
    const double full =
        std::norm(scale * total / static_cast<double>(per * nb));
    double ss = 0.0, mean_jack = 0.0;
    std::vector<double> leave(nb);
    for (int b = 0; b < nb; ++b) {
      cdouble blk{};
      for (std::size_t i = b * per; i < (b + 1) * per; ++i) blk += amps[k][i];
      leave[b] = std::norm(scale * (total - blk) /
                           static_cast<double>(per * (nb - 1)));
      mean_jack += leave[b];
    }
    mean_jack /= nb;
    for (int b = 0; b < nb; ++b)
      ss += (leave[b] - mean_jack) * (leave[b] - mean_jack);
    out[k].mean = full;
    // deterministic quasi-MC carries no stochastic error bar
    out[k].stderr_ =
        quasi ? 0.0 : std::sqrt(ss * (nb - 1) / static_cast<double>(nb));
    out[k].n_samples = per * nb;
  }
  return out;
}

}  // namespace

std::vector<MCEstimate> evolve_return_probability_mc(
    const ModelParams& params, const SphereBasisSpec& spec,
    std::span<const double> times, const CCConfig& cfg) {
  return weighted_return_mc(params, spec, times, cfg,
                            [](std::span<const double>) { return 1.0; }, 1.0);
}

std::vector<MCEstimate> vacuum_projected_return_mc(
    const ModelParams& params, const SphereBasisSpec& spec,
    std::span<const double> times, const CCConfig& cfg) {
  spec.validate();
  const double lam2 = spec.lambda_cutoff * spec.lambda_cutoff;
  const double g2 = spec.g * spec.g;
  auto weight = [lam2, g2](std::span<const double> radii) {
    double w = 1.0;
    for (double r : radii) {
      const double d = r * r - g2;
      // e^{-r^2/2} / psi(r), psi = e^{-Lambda^2 (r^2-g^2)^2 / (8 g^2)}
      w *= std::exp(-0.5 * r * r + lam2 * d * d / (8.0 * g2));
    }
    return w;
  };
  const RadialMoments m = radial_moments(spec);
  const double scale = std::pow(4.0 * m.m0 / std::sqrt(std::numbers::pi),
                                0.5 * params.n_sites);
  return weighted_return_mc(params, spec, times, cfg, weight, scale);
}

}  // namespace o3sim
