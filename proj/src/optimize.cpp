#include "o3sim/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace o3sim {

MinimizeResult minimize_scalar(const std::function<double(double)>& f,
                               double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("need tol > 0");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  MinimizeResult out;
  out.x = fc < fd ? c : d;
  out.f = fc < fd ? fc : fd;
  out.n_evaluations = evals;
  out.at_boundary = (out.x - lo < tol) || (hi - out.x < tol);
  return out;
}

}  // namespace o3sim
