#include "o3sim/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace o3sim {

namespace {

double radial_weight(double r, double lambda, double g) {
  const double g2 = g * g;
  const double d = r * r - g2;
  return std::exp(-lambda * lambda * d * d / (4.0 * g2));
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
// rule is symmetric).
constexpr double kGLNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGLWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

double gl16_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i)
    s += kGLWeight[i] * (f(c - h * kGLNode[i]) + f(c + h * kGLNode[i]));
  return s * h;
}

// Composite Gauss-Legendre with panel doubling until the relative change
// drops below rel_tol.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double rel_tol) {
  double prev = gl16_panel(f, a, b);
  for (int panels = 2; panels <= 4096; panels *= 2) {
    double cur = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i)
      cur += gl16_panel(f, a + i * h, a + (i + 1) * h);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw std::runtime_error("radial quadrature did not converge");
}

std::string cache_path(double lambda, double g, int table_size) {
  const char* dir = std::getenv("O3SIM_CACHE_DIR");
  if (!dir || !*dir) return {};
  char name[128];
  std::snprintf(name, sizeof name, "radial_cdf_%.10g_%.10g_%d.txt", lambda, g,
                table_size);
  return std::string(dir) + "/" + name;
}

}  // namespace

void SphereBasisSpec::validate() const {
  if (lambda_cutoff <= 0.0)
    throw std::invalid_argument("lambda_cutoff must be positive");
  if (g <= 0.0) throw std::invalid_argument("g must be positive");
  if (l_max < 0) throw std::invalid_argument("l_max must be >= 0");
  if (n_sites < 2) throw std::invalid_argument("n_sites must be >= 2");
}

RadialMoments radial_moments(const SphereBasisSpec& spec) {
  spec.validate();
  const double lam = spec.lambda_cutoff, g = spec.g;
  auto moment = [&](int k) {
    return adaptive_quadrature(
        [&](double r) { return std::pow(r, 2 + k) * radial_weight(r, lam, g); },
        0.0, spec.r_max(), 1e-10);
  };
  RadialMoments m;
  m.m0 = moment(0);
  m.m1 = moment(1);
  m.m2 = moment(2);
  m.m4 = moment(4);
  return m;
}

RadialSampler::RadialSampler(double lambda_cutoff, double g, int table_size)
    : lambda_(lambda_cutoff), g_(g) {
  if (lambda_cutoff <= 0.0 || g <= 0.0 || table_size < 16)
    throw std::invalid_argument("bad RadialSampler arguments");

  const std::string path = cache_path(lambda_, g_, table_size);
  if (!path.empty()) {
    std::ifstream in(path);
    if (in) {
      double r, c;
      while (in >> r >> c) {
        grid_.push_back(r);
        cdf_.push_back(c);
      }
      if (static_cast<int>(grid_.size()) == table_size) return;
      grid_.clear();
      cdf_.clear();
    }
  }

  const double hi = g_ + 12.0 * g_ / lambda_cutoff;
  grid_.resize(table_size);
  cdf_.resize(table_size);
  std::vector<double> pdf(table_size);
  for (int i = 0; i < table_size; ++i) {
    const double r = hi * i / (table_size - 1);
    grid_[i] = r;
    pdf[i] = r * r * radial_weight(r, lambda_, g_);
  }
  cdf_[0] = 0.0;
  for (int i = 1; i < table_size; ++i)
    cdf_[i] = cdf_[i - 1] +
              0.5 * (pdf[i] + pdf[i - 1]) * (grid_[i] - grid_[i - 1]);
  const double total = cdf_.back();
  for (auto& c : cdf_) c /= total;

  if (!path.empty()) {
    std::ofstream out(path);
    if (out) {
      out.precision(17);
      for (int i = 0; i < table_size; ++i)
        out << grid_[i] << ' ' << cdf_[i] << '\n';
    }
  }
}

double RadialSampler::sample(double u) const {
  if (u < 0.0 || u >= 1.0) throw std::invalid_argument("u must be in [0,1)");
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return grid_.front();
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  const double c0 = cdf_[i - 1], c1 = cdf_[i];
  const double t = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
  return grid_[i - 1] + t * (grid_[i] - grid_[i - 1]);
}

double RadialSampler::density(double r) const {
  if (r <= 0.0) return 0.0;
  return r * r * radial_weight(r, lambda_, g_);
}

}  // namespace o3sim
