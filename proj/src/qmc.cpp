#include "o3sim/qmc.hpp"

#include <stdexcept>

namespace o3sim {

namespace {
constexpr int kPrimes[64] = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
    43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};
}

double van_der_corput(std::uint64_t n, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (n > 0) {
    result += f * static_cast<double>(n % base);
    n /= base;
    f /= base;
  }
  return result;
}

HaltonSequence::HaltonSequence(int dim, std::uint64_t start_index)
    : dim_(dim), index_(start_index) {
  if (dim < 1 || dim > 64)
    throw std::invalid_argument("Halton dimension must be in [1, 64]");
  if (start_index == 0) throw std::invalid_argument("start_index must be >= 1");
}

void HaltonSequence::next(std::vector<double>& point) {
  point.resize(dim_);
  for (int d = 0; d < dim_; ++d) point[d] = van_der_corput(index_, kPrimes[d]);
  ++index_;
}

std::vector<double> HaltonSequence::next() {
  std::vector<double> p;
  next(p);
  return p;
}

}  // namespace o3sim
