#include "o3sim/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace o3sim {
namespace {

constexpr int kMaxTwoJ = 2 * 24;  // supports j up to 24, factorials to 3j+1

const std::vector<double>& log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(3 * kMaxTwoJ + 2, 0.0);
    for (std::size_t n = 2; n < t.size(); ++n)
      t[n] = t[n - 1] + std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

// integer doubling of a half-integer argument, rejecting non-half-integers
int doubled(double x, const char* name) {
  const double two = 2.0 * x;
  const double r = std::round(two);
  if (std::abs(two - r) > 1e-9)
    throw std::invalid_argument(std::string(name) + " must be half-integer");
  return static_cast<int>(r);
}

}  // namespace

double wigner_3j(double j1, double j2, double j3,
                 double m1, double m2, double m3) {
  const int tj1 = doubled(j1, "j1"), tj2 = doubled(j2, "j2"),
            tj3 = doubled(j3, "j3");
  const int tm1 = doubled(m1, "m1"), tm2 = doubled(m2, "m2"),
            tm3 = doubled(m3, "m3");
  if (tj1 < 0 || tj2 < 0 || tj3 < 0)
    throw std::invalid_argument("wigner_3j: negative angular momentum");
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3)
    throw std::invalid_argument("wigner_3j: |m| > j");
  if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tj3 + tm3) % 2)
    throw std::invalid_argument("wigner_3j: j and m differ by non-integer");
  if (tj1 > kMaxTwoJ || tj2 > kMaxTwoJ || tj3 > kMaxTwoJ)
    throw std::invalid_argument("wigner_3j: j exceeds supported range");

  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;  // m-sums force integer total j

  const auto& lf = log_factorials();
  auto lfac = [&lf](int twice) -> double {
    return lf[static_cast<std::size_t>(twice / 2)];
  };

  const double log_delta =
      0.5 * (lfac(tj1 + tj2 - tj3) + lfac(tj1 - tj2 + tj3) +
             lfac(-tj1 + tj2 + tj3) - lfac(tj1 + tj2 + tj3 + 2));
  const double log_m =
      0.5 * (lfac(tj1 - tm1) + lfac(tj1 + tm1) + lfac(tj2 - tm2) +
             lfac(tj2 + tm2) + lfac(tj3 - tm3) + lfac(tj3 + tm3));

  const int k_min = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
  const int k_max = std::min({(tj1 + tj2 - tj3) / 2, (tj1 - tm1) / 2,
                              (tj2 + tm2) / 2});
  if (k_min > k_max) return 0.0;

  // Sum in linear space after peeling off the largest log magnitude.
  std::vector<double> logs(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    logs[static_cast<std::size_t>(k - k_min)] =
        -(lf[static_cast<std::size_t>(k)] +
          lfac(tj1 + tj2 - tj3 - 2 * k) + lfac(tj1 - tm1 - 2 * k) +
          lfac(tj2 + tm2 - 2 * k) + lfac(tj3 - tj2 + tm1 + 2 * k) +
          lfac(tj3 - tj1 - tm2 + 2 * k));
  }
  const double peak = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double term = std::exp(logs[static_cast<std::size_t>(k - k_min)] - peak);
    sum += (k % 2 == 0) ? term : -term;
  }

  const int phase = ((tj1 - tj2 - tm3) / 2) % 2 ? -1 : 1;
  return phase * sum * std::exp(log_delta + log_m + peak);
}

double x_matrix_element(int l1, int m1, int M, int l2, int m2) {
  if (l1 < 0 || l2 < 0 || std::abs(m1) > l1 || std::abs(m2) > l2)
    throw std::invalid_argument("x_matrix_element: invalid (l,m)");
  if (M < -1 || M > 1)
    throw std::invalid_argument("x_matrix_element: M must be in {-1,0,1}");
  if (std::abs(l1 - l2) != 1 || m1 != m2 + M) return 0.0;
  const double sign = (m1 % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(double(2 * l1 + 1) * double(2 * l2 + 1)) *
         wigner_3j(l1, 1, l2, 0, 0, 0) * wigner_3j(l1, 1, l2, -m1, M, m2);
}

}  // namespace o3sim
