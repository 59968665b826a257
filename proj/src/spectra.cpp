#include "o3sim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace o3sim {

namespace {

using Vec = Eigen::VectorXcd;

SpectrumResult dense_spectrum(const SparseHermitian& h, int n_lowest) {
  Eigen::MatrixXcd m = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed");
  SpectrumResult out;
  for (int i = 0; i < n_lowest; ++i) {
    out.eigenvalues.push_back(solver.eigenvalues()(i));
    const auto v = solver.eigenvectors().col(i);
    out.vectors.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

SpectrumResult lanczos_spectrum(const SparseHermitian& h, int n_lowest,
                                const SpectrumOptions& opts) {
  const std::int64_t n = h.dimension();
  const int max_iter =
      static_cast<int>(std::min<std::int64_t>(opts.max_iterations, n));

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Vec v(n);
  for (std::int64_t i = 0; i < n; ++i) v(i) = {gauss(rng), gauss(rng)};
  v.normalize();

  std::vector<Vec> basis;  // kept for full reorthogonalization
  basis.push_back(v);
  std::vector<double> alpha, beta;
  Vec w(n);

  double scale = 1.0;
  for (const auto& e : h.entries()) scale = std::max(scale, std::abs(e.value));

  SpectrumResult out;
  for (int it = 0; it < max_iter; ++it) {
    const Vec& q = basis.back();
    h.apply({q.data(), static_cast<std::size_t>(n)},
            {w.data(), static_cast<std::size_t>(n)});
    double a = std::real(q.dot(w));
    alpha.push_back(a);
    w -= a * q;
    if (it > 0) w -= beta.back() * basis[basis.size() - 2];
    // full reorthogonalization, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;

    // Ritz check every few steps once we have enough vectors.
    const int k = it + 1;
    if (k >= n_lowest + 2 && (k % 5 == 0 || k == max_iter)) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) t(i, i) = alpha[i];
      for (int i = 0; i + 1 < k; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts(t);
      const double bnext = w.norm();
      bool ok = true;
      for (int j = 0; j < n_lowest; ++j) {
        // residual bound |beta_k * s_{k,j}|
        double res = bnext * std::abs(ts.eigenvectors()(k - 1, j));
        if (res > opts.tol * scale) {
          ok = false;
          break;
        }
      }
      if (ok || k == max_iter) {
        out.iterations = k;
        out.converged = ok;
        for (int j = 0; j < n_lowest; ++j) {
          out.eigenvalues.push_back(ts.eigenvalues()(j));
          Vec ev = Vec::Zero(n);
          for (int i = 0; i < k; ++i) ev += ts.eigenvectors()(i, j) * basis[i];
          ev.normalize();
          out.vectors.emplace_back(ev.data(), ev.data() + ev.size());
        }
        if (!ok) {
          std::ostringstream msg;
          msg << "Lanczos did not converge after " << k << " iterations (dim "
              << n << "): worst residual bound " << bnext
              << ", tol " << opts.tol * scale;
          throw std::runtime_error(msg.str());
        }
        return out;
      }
    }

    double b = w.norm();
    if (b < 1e-14 * scale) {
      // invariant subspace exhausted; restart with a fresh random vector
      for (std::int64_t i = 0; i < n; ++i) w(i) = {gauss(rng), gauss(rng)};
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& bb : basis) w -= bb.dot(w) * bb;
      b = w.norm();
      if (b < 1e-14) break;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw std::runtime_error("Lanczos exhausted Krylov space without converging");
}

}  // namespace

SpectrumResult low_spectrum(const SparseHermitian& h, int n_lowest,
                            const SpectrumOptions& opts) {
  if (n_lowest <= 0 || n_lowest > h.dimension())
    throw std::invalid_argument("n_lowest out of range");
  if (h.dimension() < opts.dense_threshold) return dense_spectrum(h, n_lowest);
  return lanczos_spectrum(h, n_lowest, opts);
}

}  // namespace o3sim
