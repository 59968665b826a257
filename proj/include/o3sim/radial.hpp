#pragma once

#include <vector>

namespace o3sim {

// Basis specification for the cutoff-Lambda field formulation: each site
// carries a radial wave function psi(r) with |psi|^2 ~ exp(-L^2(r^2-g^2)^2
// / (4 g^2)), concentrated on the sphere |phi| = g, so only the angular
// (l, m) labels remain as quantum numbers.
struct SphereBasisSpec {
  double lambda_cutoff = 1.0;  // Lambda
  double g = 1.0;              // sphere radius sqrt(g^2)
  int l_max = 3;
  int n_sites = 2;

  void validate() const;  // throws std::invalid_argument
  // upper limit of the radial quadrature domain; captures > 1 - 1e-12
  // of the weight for lambda >= 1
  double r_max() const { return g + 12.0 * g / lambda_cutoff; }
};

// m_k = int_0^inf r^{2+k} |psi(r)|^2 dr (unnormalized), k in {0,1,2,4}.
// m2/m0 -> g^2 and (m1/m0)^2 -> g^2 as Lambda -> infinity.
struct RadialMoments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
};

// Adaptive quadrature (relative tolerance 1e-10).
RadialMoments radial_moments(const SphereBasisSpec& spec);

// Samples r from the normalized density r^2 |psi(r)|^2 via a cached
// inverse-CDF table. Tables persist under $O3SIM_CACHE_DIR when set.
class RadialSampler {
 public:
  RadialSampler(double lambda_cutoff, double g, int table_size = 8192);

  // maps u in [0,1) through the inverse CDF
  double sample(double u) const;
  // unnormalized density r^2 |psi(r)|^2
  double density(double r) const;

  double lambda_cutoff() const { return lambda_; }
  double g() const { return g_; }

 private:
  double lambda_;
  double g_;
  std::vector<double> grid_;  // r values
  std::vector<double> cdf_;   // matching CDF values, cdf_.back() == 1
};

}  // namespace o3sim
