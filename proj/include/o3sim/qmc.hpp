#pragma once

#include <cstdint>
#include <vector>

namespace o3sim {

// Halton low-discrepancy sequence in [0,1)^dim, dim <= 64 (first 64 primes
// as bases). Index 0 of the underlying van der Corput stream is skipped, so
// next() first returns (1/2, 1/3, 1/5, ...).
class HaltonSequence {
 public:
  explicit HaltonSequence(int dim, std::uint64_t start_index = 1);

  int dimension() const { return dim_; }
  void next(std::vector<double>& point);
  std::vector<double> next();

 private:
  int dim_;
  std::uint64_t index_;
};

// Radical-inverse of n in the given base.
double van_der_corput(std::uint64_t n, int base);

}  // namespace o3sim
