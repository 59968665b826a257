#include "o3sim/sparse.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace o3sim {

SparseHermitian::SparseHermitian(std::int64_t dimension) : dim_(dimension) {
  if (dimension <= 0) throw std::invalid_argument("dimension must be positive");
}

void SparseHermitian::add(std::int64_t row, std::int64_t col, cdouble value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_)
    throw std::out_of_range("SparseHermitian::add index out of range");
  if (row > col) {
    std::swap(row, col);
    value = std::conj(value);
  }
  if (row == col && std::abs(value.imag()) > 1e-14 * std::abs(value.real()) + 1e-300)
    throw std::invalid_argument("diagonal entry must be real");
  entries_.push_back({row, col, value});
}

void SparseHermitian::compress(double drop_tol) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  if (drop_tol > 0.0) {
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [drop_tol](const Entry& e) {
                                  return std::abs(e.value) < drop_tol;
                                }),
                 merged.end());
  }
  entries_ = std::move(merged);
}

void SparseHermitian::apply(std::span<const cdouble> x, std::span<cdouble> y) const {
  if (static_cast<std::int64_t>(x.size()) != dim_ ||
      static_cast<std::int64_t>(y.size()) != dim_)
    throw std::invalid_argument("SparseHermitian::apply size mismatch");
  std::fill(y.begin(), y.end(), cdouble{0.0, 0.0});
  for (const auto& e : entries_) {
    y[static_cast<std::size_t>(e.row)] += e.value * x[static_cast<std::size_t>(e.col)];
    if (e.row != e.col)
      y[static_cast<std::size_t>(e.col)] +=
          std::conj(e.value) * x[static_cast<std::size_t>(e.row)];
  }
}

Eigen::MatrixXcd SparseHermitian::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& e : entries_) {
    m(e.row, e.col) += e.value;
    if (e.row != e.col) m(e.col, e.row) += std::conj(e.value);
  }
  return m;
}

void SparseHermitian::write_coordinate_text(std::ostream& os) const {
  os << "dim " << dim_ << " hermitian upper\n";
  os.precision(17);
  for (const auto& e : entries_)
    os << e.row << ' ' << e.col << ' ' << e.value.real() << ' '
       << e.value.imag() << '\n';
}

SparseHermitian SparseHermitian::read_coordinate_text(std::istream& is) {
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string kw_dim, kw_h, kw_u;
  std::int64_t dim = 0;
  hs >> kw_dim >> dim >> kw_h >> kw_u;
  if (kw_dim != "dim" || kw_h != "hermitian" || kw_u != "upper" || dim <= 0)
    throw std::runtime_error("bad coordinate-text header: " + header);
  SparseHermitian h(dim);
  std::int64_t r, c;
  double re, im;
  while (is >> r >> c >> re >> im) h.add(r, c, {re, im});
  return h;
}

}  // namespace o3sim
