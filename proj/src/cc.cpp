#include "o3sim/cc.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "o3sim/qmc.hpp"
#include "o3sim/radial.hpp"

namespace o3sim {

void CCConfig::validate(double g_sq) const {
  if (alpha < 0.0 || alpha > 4.0 * g_sq)
    throw std::invalid_argument("alpha outside bracket [0, 4 g^2]");
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (lambda_cutoff && *lambda_cutoff <= 0.0)
    throw std::invalid_argument("lambda_cutoff must be positive");
}

double cc_energy_L2_closed_form(double g_sq, double alpha) {
  if (g_sq <= 0.0) throw std::invalid_argument("g_sq must be positive");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (alpha < 1e-4)  // series avoids the 1/(2 alpha) - coth cancellation
    return g_sq * alpha * (alpha - 2.0 * g_sq) / 3.0;
  const double y = 2.0 * g_sq * alpha;
  const double coth = y > 350.0 ? 1.0 : 1.0 / std::tanh(y);
  return -1.0 / (4.0 * g_sq) + 1.0 / (2.0 * alpha) +
         0.5 * (alpha - 2.0 * g_sq) * coth;
}

double cc_excited_L2_closed_form(double g_sq, double alpha) {
  if (g_sq <= 0.0) throw std::invalid_argument("g_sq must be positive");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const double g4 = g_sq * g_sq;
  if (alpha < 1e-4) {
    // both numerator and denominator of the rational part are O(alpha^3):
    // evaluate the expansion instead
    return (2.0 * g4 *
                (alpha * alpha * (16.0 * g_sq + 45.0) - 60.0 * alpha * g_sq -
                 45.0) +
            135.0) /
           (270.0 * g_sq);
  }
  const double x = 4.0 * g_sq * alpha;
  const double top =
      -4.0 * g_sq + alpha + 8.0 * g4 * (alpha + alpha * alpha * alpha);
  if (x > 700.0)  // exp(x) dominates both sides; cancel it
    return -g_sq + top / (4.0 * g_sq * alpha * (x - 1.0));
  // num and den are O(alpha^3) built from O(1) pieces, so near the series
  // switch the naive form loses ~10 digits.  Collect the exp-free part of
  // num analytically and route the rest through expm1 in extended precision.
  const long double a = alpha, G2 = g_sq, G4 = (long double)g4, X = x;
  const long double em = std::expm1(X);
  const long double num = 16.0L * G4 * a - 4.0L * G2 * a * a +
                          8.0L * G4 * a * a * a + em * (long double)top;
  const long double den = 4.0L * G2 * a * (X + (X - 1.0L) * em);
  return (double)(-G2 + num / den);
}

namespace {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};
inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
// component of v tangential to the unit vector n
inline Vec3 tangent(Vec3 v, Vec3 n) { return v + (-dot(v, n)) * n; }

struct SampleStreams {
  std::vector<double> num0, den0, num1, den1;
};

// Evaluates ground (alpha_g) and excited (alpha_e) integrand streams over
// one shared coordinate stream.
SampleStreams run_streams(const ModelParams& p, const CCConfig& cfg,
                          double alpha_g, double alpha_e) {
  p.validate();
  cfg.validate(p.g_sq);
  const int L = p.n_sites;
  const double g2 = p.g_sq;
  const bool finite_lambda = cfg.lambda_cutoff.has_value();
  const std::size_t n = cfg.n_samples;
  const int dim = finite_lambda ? 3 * L : 2 * L;

  const bool quasi = cfg.sampler == CCSampler::quasi_mc;
  HaltonSequence halton(quasi ? dim : 1);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;

  std::unique_ptr<RadialSampler> radial;
  double lam = 0.0, g = 0.0;
  if (finite_lambda) {
    lam = *cfg.lambda_cutoff;
    g = std::sqrt(g2);
    if (quasi || cfg.sampler == CCSampler::exact_radial_alpha0)
      radial = std::make_unique<RadialSampler>(lam, g);
  }

  SampleStreams s;
  s.num0.resize(n);
  s.den0.resize(n);
  s.num1.resize(n);
  s.den1.resize(n);

  std::vector<Vec3> nvec(L);
  std::vector<double> r(L, 1.0);
  std::vector<double> dots(L);
  std::vector<double> pt;
  std::size_t bad = 0;

  for (std::size_t i = 0; i < n; ++i) {
    double w_imp = 1.0;
    if (quasi) halton.next(pt);
    int k = 0;
    if (finite_lambda) {
      for (int x = 0; x < L; ++x) {
        if (quasi) {
          r[x] = radial->sample(pt[k++]);
        } else if (cfg.sampler == CCSampler::exact_radial_alpha0) {
          r[x] = radial->sample(unif(rng));
        } else {  // Gaussian(g, g/lambda) importance proposal
          const double z = gauss(rng);
          const double rx = g + (g / lam) * z;
          r[x] = rx;
          if (rx <= 0.0) {
            w_imp = 0.0;
          } else {
            const double d = rx * rx - g2;
            // target r^2 psi^2 over unnormalized proposal exp(-z^2/2)
            w_imp *= rx * rx *
                     std::exp(-lam * lam * d * d / (4.0 * g2) + 0.5 * z * z);
          }
        }
      }
    }
    for (int x = 0; x < L; ++x) {
      const double ct = quasi ? 2.0 * pt[k] - 1.0 : 2.0 * unif(rng) - 1.0;
      if (quasi) ++k;
      const double ph = 2.0 * std::numbers::pi * (quasi ? pt[k++] : unif(rng));
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      nvec[x] = {st * std::cos(ph), st * std::sin(ph), ct};
    }

    for (int x = 0; x < L; ++x) dots[x] = dot(nvec[x], nvec[(x + 1) % L]);

    auto eval = [&](double alpha, bool excited) {
      double S = 0.0, kin = 0.0, potential = 0.0;
      const double F = [&] {
        double f = 0.0;
        for (int x = 0; x < L; ++x) f += nvec[x].z;
        return f;
      }();
      for (int x = 0; x < L; ++x) {
        Vec3 gradS;
        if (finite_lambda) {
          const double dphi2 = r[x] * r[x] + r[(x + 1) % L] * r[(x + 1) % L] -
                               2.0 * r[x] * r[(x + 1) % L] * dots[x];
          S += -(alpha / (2.0 * L)) * dphi2;
          potential += 0.5 * dphi2 - g2;
          const int xm = (x + L - 1) % L, xp = (x + 1) % L;
          gradS = tangent((alpha * r[x] / L) *
                              (r[xm] * nvec[xm] + r[xp] * nvec[xp]),
                          nvec[x]);
        } else {
          S += (alpha * g2 / L) * dots[x];
          potential += -g2 * dots[x];
          const int xm = (x + L - 1) % L, xp = (x + 1) % L;
          gradS = tangent((alpha * g2 / L) * (nvec[xm] + nvec[xp]), nvec[x]);
        }
        if (!excited) {
          kin += dot(gradS, gradS);
        } else {
          Vec3 gradF = tangent(Vec3{0.0, 0.0, 1.0}, nvec[x]);
          Vec3 tot = gradF + F * gradS;
          kin += dot(tot, tot);
        }
      }
      kin /= 2.0 * g2;
      const double w = w_imp * std::exp(2.0 * S);
      struct R {
        double num, den;
      };
      if (!excited) return R{w * (kin + potential), w};
      return R{w * (kin + potential * F * F), w * F * F};
    };

    auto ge = eval(alpha_g, false);
    auto ee = eval(alpha_e, true);
    s.num0[i] = ge.num;
    s.den0[i] = ge.den;
    s.num1[i] = ee.num;
    s.den1[i] = ee.den;
    if (!std::isfinite(ge.num) || !std::isfinite(ge.den) ||
        !std::isfinite(ee.num) || !std::isfinite(ee.den))
      ++bad;
  }
  if (bad > 0)
    throw std::runtime_error("non-finite integrand samples: " +
                             std::to_string(bad));
  return s;
}

MCEstimate finalize(const std::vector<double>& num,
                    const std::vector<double>& den, const CCConfig& cfg,
                    int n_sites) {
  MCEstimate e;
  if (cfg.sampler == CCSampler::quasi_mc) {
    double tn = 0.0, td = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
      tn += num[i];
      td += den[i];
    }
    e.mean = tn / td / n_sites;
    e.stderr_ = 0.0;  // deterministic quasi-MC: no stochastic error bar
    e.n_samples = num.size();
    return e;
  }
  e = jackknife_ratio(num, den, 100);
  e.mean /= n_sites;
  e.stderr_ /= n_sites;
  return e;
}

}  // namespace

MCEstimate cc_energy_mc(const ModelParams& params, const CCConfig& cfg) {
  auto s = run_streams(params, cfg, cfg.alpha, cfg.alpha);
  return finalize(s.num0, s.den0, cfg, params.n_sites);
}

MCEstimate cc_excited_mc(const ModelParams& params, const CCConfig& cfg) {
  auto s = run_streams(params, cfg, cfg.alpha, cfg.alpha);
  return finalize(s.num1, s.den1, cfg, params.n_sites);
}

MCEstimate cc_gap_mc(const ModelParams& params, const CCConfig& cfg,
                     double alpha_excited) {
  if (cfg.sampler == CCSampler::quasi_mc)
    throw std::invalid_argument("cc_gap_mc needs a stochastic sampler");
  auto s = run_streams(params, cfg, cfg.alpha, alpha_excited);
  // the streams estimate total energies, so the ratio difference is the gap
  return jackknife_ratio_difference(s.num1, s.den1, s.num0, s.den0, 100);
}

}  // namespace o3sim
