#include "o3sim/cv/register.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace o3sim::cv {

namespace {

std::int64_t checked_size(int n_modes, int n_max) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be positive");
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  std::int64_t s = 1;
  for (int m = 0; m < n_modes; ++m) {
    if (s > QumodeRegister::kAmpCap / n_max)
      throw std::invalid_argument("register exceeds amplitude cap");
    s *= n_max;
  }
  return s;
}

}  // namespace

QumodeRegister::QumodeRegister(int n_modes, int n_max)
    : n_modes_(n_modes), n_max_(n_max) {
  amps_.assign(checked_size(n_modes, n_max), cdouble{});
  amps_[0] = 1.0;
}

std::int64_t QumodeRegister::mode_stride(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw std::out_of_range("bad mode index");
  std::int64_t s = 1;
  for (int m = n_modes_ - 1; m > mode; --m) s *= n_max_;
  return s;
}

double QumodeRegister::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void QumodeRegister::normalize() {
  const double n = norm_sq();
  if (n < 1e-300) throw std::runtime_error("cannot normalize null register");
  const double inv = 1.0 / std::sqrt(n);
  for (auto& a : amps_) a *= inv;
}

void QumodeRegister::record_leakage(double loss) {
  leakage_ += std::max(0.0, loss);
  if (leakage_ > leakage_threshold)
    throw std::runtime_error("cumulative leakage " + std::to_string(leakage_) +
                             " exceeds threshold " +
                             std::to_string(leakage_threshold) +
                             "; raise n_max or the threshold");
}

void QumodeRegister::append_vacuum_mode() {
  checked_size(n_modes_ + 1, n_max_);
  std::vector<cdouble> next(amps_.size() * n_max_, cdouble{});
  for (std::size_t i = 0; i < amps_.size(); ++i)
    next[i * n_max_] = amps_[i];
  amps_ = std::move(next);
  ++n_modes_;
}

QumodeRegister QumodeRegister::tensor(const QumodeRegister& a,
                                      const QumodeRegister& b) {
  if (a.n_max_ != b.n_max_) throw std::invalid_argument("n_max mismatch");
  checked_size(a.n_modes_ + b.n_modes_, a.n_max_);
  QumodeRegister out(a.n_modes_ + b.n_modes_, a.n_max_);
  out.amps_.assign(a.amps_.size() * b.amps_.size(), cdouble{});
  for (std::size_t i = 0; i < a.amps_.size(); ++i) {
    if (a.amps_[i] == cdouble{}) continue;
    for (std::size_t j = 0; j < b.amps_.size(); ++j)
      out.amps_[i * b.amps_.size() + j] = a.amps_[i] * b.amps_[j];
  }
  out.leakage_ = a.leakage_ + b.leakage_;
  out.post_prob_ = a.post_prob_ * b.post_prob_;
  out.leakage_threshold = std::min(a.leakage_threshold, b.leakage_threshold);
  return out;
}

cdouble overlap(const QumodeRegister& a, const QumodeRegister& b) {
  if (a.n_modes() != b.n_modes() || a.n_max() != b.n_max())
    throw std::invalid_argument("register shape mismatch");
  cdouble s{};
  auto pa = a.amplitudes();
  auto pb = b.amplitudes();
  for (std::int64_t i = 0; i < a.size(); ++i) s += std::conj(pa[i]) * pb[i];
  return s;
}

namespace {

// sum of |amp|^2 * f(n_i [, n_j]) divided by the norm
template <typename F>
double number_moment(const QumodeRegister& reg, F&& f) {
  double num = 0.0, den = 0.0;
  auto amps = reg.amplitudes();
  for (std::int64_t i = 0; i < reg.size(); ++i) {
    const double w = std::norm(amps[i]);
    if (w == 0.0) continue;
    num += w * f(i);
    den += w;
  }
  if (den < 1e-300) throw std::runtime_error("null register");
  return num / den;
}

}  // namespace

double expectation_number(const QumodeRegister& reg, int mode) {
  const std::int64_t st = reg.mode_stride(mode);
  const int nm = reg.n_max();
  return number_moment(reg, [&](std::int64_t i) {
    return static_cast<double>((i / st) % nm);
  });
}

double expectation_number_sq(const QumodeRegister& reg, int mode) {
  const std::int64_t st = reg.mode_stride(mode);
  const int nm = reg.n_max();
  return number_moment(reg, [&](std::int64_t i) {
    const double n = static_cast<double>((i / st) % nm);
    return n * n;
  });
}

double expectation_cross_number(const QumodeRegister& reg, int mode_i,
                                int mode_j) {
  const std::int64_t si = reg.mode_stride(mode_i);
  const std::int64_t sj = reg.mode_stride(mode_j);
  const int nm = reg.n_max();
  return number_moment(reg, [&](std::int64_t i) {
    return static_cast<double>((i / si) % nm) *
           static_cast<double>((i / sj) % nm);
  });
}

std::pair<QumodeRegister, double> project_mode(const QumodeRegister& reg,
                                               int mode, int n) {
  if (n < 0 || n >= reg.n_max())
    throw std::invalid_argument("projection photon number out of range");
  if (reg.n_modes() < 2)
    throw std::invalid_argument("cannot project the only mode away");
  const std::int64_t st = reg.mode_stride(mode);
  const int nm = reg.n_max();

  QumodeRegister out(reg.n_modes() - 1, reg.n_max());
  out.leakage_threshold = reg.leakage_threshold;
  out.record_leakage(reg.leakage());
  out.record_post_selection(reg.post_selection_probability());

  auto src = reg.amplitudes();
  auto dst = out.amplitudes();
  std::fill(dst.begin(), dst.end(), cdouble{});
  double captured = 0.0;
  // index = (outer * nm + n_mode) * st + inner, inner < st
  const std::int64_t outer_count = reg.size() / (st * nm);
  for (std::int64_t o = 0; o < outer_count; ++o)
    for (std::int64_t in = 0; in < st; ++in) {
      const cdouble v = src[(o * nm + n) * st + in];
      dst[o * st + in] = v;
      captured += std::norm(v);
    }
  const double total = reg.norm_sq();
  const double prob = total > 0.0 ? captured / total : 0.0;
  if (prob < 1e-12)
    throw std::runtime_error("degenerate post-selection: probability " +
                             std::to_string(prob));
  out.normalize();
  out.record_post_selection(prob);
  return {std::move(out), prob};
}

}  // namespace o3sim::cv
