#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace o3sim {

using cdouble = std::complex<double>;

// Hermitian matrix stored as upper-triangle coordinate triplets
// (row <= col); the lower triangle is implied by conjugation.
class SparseHermitian {
 public:
  struct Entry {
    std::int64_t row;
    std::int64_t col;
    cdouble value;
  };

  explicit SparseHermitian(std::int64_t dimension);

  std::int64_t dimension() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Accumulates H[row,col] += value. Entries with row > col are folded
  // into the mirrored position, so the stored triangle stays canonical.
  void add(std::int64_t row, std::int64_t col, cdouble value);
  // Merges duplicate coordinates and drops negligible entries.
  void compress(double drop_tol = 0.0);

  // y = H x with Hermitian completion.
  void apply(std::span<const cdouble> x, std::span<cdouble> y) const;
  Eigen::MatrixXcd to_dense() const;

  // Plain-text export: header "dim N hermitian upper", then one
  // "row col re im" line per stored entry (0-indexed).
  void write_coordinate_text(std::ostream& os) const;
  static SparseHermitian read_coordinate_text(std::istream& is);

 private:
  std::int64_t dim_;
  std::vector<Entry> entries_;
};

}  // namespace o3sim
